#include "admtuple/tuple_state.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace admtuple {

TupleState::TupleState(ContextPtr context) : ctx_(std::move(context)) {
    if (!ctx_) throw std::invalid_argument("TupleState: null context");
    const auto& primes = ctx_->effective_primes();
    occupancy_.assign(ctx_->occupancy_size(), 0);
    free_.resize(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) free_[i] = static_cast<std::uint32_t>(primes[i]);
}

Value TupleState::diameter() const {
    if (values_.empty()) throw std::logic_error("diameter of an empty tuple is undefined");
    return values_.back() - values_.front();
}

bool TupleState::contains(Value v) const {
    return std::binary_search(values_.begin(), values_.end(), v);
}

bool TupleState::contains_index(std::size_t candidate_index) const {
    return std::binary_search(indices_.begin(), indices_.end(), candidate_index);
}

std::size_t TupleState::index_or_throw(Value v) const {
    auto idx = ctx_->index_of(v);
    if (!idx) throw std::logic_error("value " + std::to_string(v) + " is not a candidate");
    return *idx;
}

void TupleState::add(Value v) { add_index(index_or_throw(v)); }

void TupleState::remove(Value v) { remove_index(index_or_throw(v)); }

void TupleState::add_index(std::size_t ci) {
    auto pos = std::lower_bound(indices_.begin(), indices_.end(), ci);
    if (pos != indices_.end() && *pos == ci)
        throw std::logic_error("add: value " + std::to_string(ctx_->candidates()[ci]) + " already in H");
    const auto offset = pos - indices_.begin();
    indices_.insert(pos, ci);
    values_.insert(values_.begin() + offset, ctx_->candidates()[ci]);

    const auto row = ctx_->residues().row(ci);
    const auto offsets = ctx_->row_offsets();
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (++occupancy_[offsets[i] + row[i]] == 1) {
            if (--free_[i] == 0) ++violated_rows_;
        }
    }
}

void TupleState::remove_index(std::size_t ci) {
    auto pos = std::lower_bound(indices_.begin(), indices_.end(), ci);
    if (pos == indices_.end() || *pos != ci)
        throw std::logic_error("remove: value " + std::to_string(ctx_->candidates()[ci]) + " not in H");
    const auto offset = pos - indices_.begin();
    indices_.erase(pos);
    values_.erase(values_.begin() + offset);

    const auto row = ctx_->residues().row(ci);
    const auto offsets = ctx_->row_offsets();
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (--occupancy_[offsets[i] + row[i]] == 0) {
            if (free_[i]++ == 0) --violated_rows_;
        }
    }
}

int TupleState::violation_delta(Value v) const { return violation_delta_index(index_or_throw(v)); }

int TupleState::violation_delta_index(std::size_t ci, int cap) const {
    const auto row = ctx_->residues().row(ci);
    const auto offsets = ctx_->row_offsets();
    int delta = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (free_[i] == 1 && occupancy_[offsets[i] + row[i]] == 0) {
            if (++delta >= cap) break;
        }
    }
    return delta;
}

TupleState::Probe TupleState::probe_index(std::size_t ci) const {
    const auto row = ctx_->residues().row(ci);
    const auto offsets = ctx_->row_offsets();
    Probe out;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (free_[i] == 1 && occupancy_[offsets[i] + row[i]] == 0) {
            if (out.delta++ == 0) out.row = i;
            else break;
        }
    }
    return out;
}

std::size_t TupleState::violation_row(Value v) const { return violation_row_index(index_or_throw(v)); }

std::size_t TupleState::violation_row_index(std::size_t ci) const {
    const auto row = ctx_->residues().row(ci);
    const auto offsets = ctx_->row_offsets();
    std::size_t found = row.size();
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (free_[i] == 1 && occupancy_[offsets[i] + row[i]] == 0) {
            if (found != row.size()) throw std::logic_error("violation_row: more than one violated row");
            found = i;
        }
    }
    if (found == row.size()) throw std::logic_error("violation_row: no violated row");
    return found;
}

std::span<const std::uint32_t> TupleState::occupancy_row(std::size_t row) const {
    const auto offsets = ctx_->row_offsets();
    return std::span<const std::uint32_t>(occupancy_).subspan(offsets[row], offsets[row + 1] - offsets[row]);
}

std::uint32_t TupleState::occupancy(std::size_t row, std::size_t column) const {
    return occupancy_[ctx_->row_offsets()[row] + column];
}

bool operator==(const TupleState& a, const TupleState& b) {
    return a.ctx_ == b.ctx_ && a.values_ == b.values_ && a.occupancy_ == b.occupancy_ && a.free_ == b.free_ &&
           a.violated_rows_ == b.violated_rows_;
}

TupleState empty_state(ContextPtr context) { return TupleState(std::move(context)); }

TupleState rebuild(std::span<const Value> tuple, ContextPtr context) {
    TupleState state(context);
    const auto& primes = context->effective_primes();
    const auto offsets = context->row_offsets();
    for (std::size_t n = 0; n < tuple.size(); ++n) {
        if (n > 0 && tuple[n] <= tuple[n - 1])
            throw std::invalid_argument("rebuild: tuple must be strictly increasing");
        auto idx = context->index_of(tuple[n]);
        if (!idx) throw std::invalid_argument("rebuild: " + std::to_string(tuple[n]) + " is not a candidate");
        state.values_.push_back(tuple[n]);
        state.indices_.push_back(*idx);
        for (std::size_t i = 0; i < primes.size(); ++i)
            ++state.occupancy_[offsets[i] + static_cast<std::size_t>(residue(tuple[n], primes[i]))];
    }
    state.violated_rows_ = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const auto row = state.occupancy_row(i);
        state.free_[i] = static_cast<std::uint32_t>(std::count(row.begin(), row.end(), 0u));
        if (state.free_[i] == 0) ++state.violated_rows_;
    }
    return state;
}

Value diameter(std::span<const Value> tuple) {
    if (tuple.empty()) throw std::invalid_argument("diameter of an empty tuple is undefined");
    return tuple.back() - tuple.front();
}

std::size_t distance(std::span<const Value> a, std::span<const Value> b) {
    std::size_t common = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++common;
            ++i;
            ++j;
        }
    }
    return a.size() + b.size() - 2 * common;
}

}  // namespace admtuple
