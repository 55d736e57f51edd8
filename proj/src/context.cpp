#include "admtuple/context.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace admtuple {

ResidueTable::ResidueTable(std::span<const Value> candidates, const PrimeSet& primes)
    : width_(primes.size()), rows_(candidates.size()) {
    data_.resize(candidates.size() * width_);
    for (std::size_t r = 0; r < candidates.size(); ++r)
        for (std::size_t i = 0; i < width_; ++i)
            data_[r * width_ + i] = static_cast<std::uint32_t>(residue(candidates[r], primes[i]));
}

ResidueTable build_residue_table(std::span<const Value> candidates, const PrimeSet& primes) {
    return ResidueTable(candidates, primes);
}

namespace {

// Primes p of `full` for which the whole candidate set leaves some class empty.
PrimeSet never_violated(std::span<const Value> candidates, const PrimeSet& full) {
    std::vector<Value> out;
    std::vector<char> seen;
    for (Value p : full) {
        seen.assign(static_cast<std::size_t>(p), 0);
        Value occupied = 0;
        for (Value v : candidates) {
            auto& s = seen[residue(v, p)];
            if (!s) {
                s = 1;
                if (++occupied == p) break;
            }
        }
        if (occupied < p) out.push_back(p);
    }
    return PrimeSet(std::move(out));
}

}  // namespace

ProblemContext::ProblemContext(int k, Value upper, std::vector<Value> candidates, PrimeSet full,
                               PrimeSet sieve)
    : k_(k), upper_(upper), candidates_(std::move(candidates)), full_(std::move(full)),
      sieve_(std::move(sieve)) {
    if (k < 1) throw std::invalid_argument("context: k must be positive");
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
        if (candidates_[i] < 0 || candidates_[i] > upper_)
            throw std::invalid_argument("context: candidate " + std::to_string(candidates_[i]) +
                                        " outside [0, U]");
        if (i > 0 && candidates_[i] <= candidates_[i - 1])
            throw std::invalid_argument("context: candidates must be strictly increasing");
    }
    if (candidates_.size() < static_cast<std::size_t>(k))
        throw std::invalid_argument("context: only " + std::to_string(candidates_.size()) +
                                    " candidates for k = " + std::to_string(k) + "; raise U");
    for (Value p : sieve_)
        if (!full_.contains(p)) throw std::invalid_argument("context: sieve primes must be a subset of full");

    removable_ = never_violated(candidates_, full_);
    effective_ = full_.minus(removable_);
    residues_ = ResidueTable(candidates_, effective_);
    row_offsets_.assign(effective_.size() + 1, 0);
    for (std::size_t i = 0; i < effective_.size(); ++i)
        row_offsets_[i + 1] = row_offsets_[i] + static_cast<std::size_t>(effective_[i]);
}

std::optional<std::size_t> ProblemContext::index_of(Value v) const {
    auto it = std::lower_bound(candidates_.begin(), candidates_.end(), v);
    if (it == candidates_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - candidates_.begin());
}

double ProblemContext::surviving_fraction() const {
    return static_cast<double>(candidates_.size()) / static_cast<double>(upper_ + 1);
}

ContextPtr make_context(int k, Value upper, std::vector<Value> candidates, PrimeSet full, PrimeSet sieve) {
    return std::make_shared<const ProblemContext>(k, upper, std::move(candidates), std::move(full),
                                                  std::move(sieve));
}

double small_prime_threshold(int k) {
    const double kd = static_cast<double>(k);
    return std::sqrt(kd * std::log(kd));
}

Value default_upper_bound(int k) {
    const double kd = static_cast<double>(k);
    return static_cast<Value>(std::ceil(1.5 * (kd * std::log(kd) + kd)));
}

ContextPtr build_context(int k, Value upper, bool sieve_small_primes) {
    if (k < 2) throw std::invalid_argument("build_context: k must be at least 2");
    if (upper < k) throw std::invalid_argument("build_context: U must be at least k");

    PrimeSet full = primes_up_to(k);
    // p < sqrt(k ln k)  <=>  p^2 < k ln k for p >= 0.
    const double bound_sq = static_cast<double>(k) * std::log(static_cast<double>(k));
    std::vector<Value> small;
    if (sieve_small_primes)
        for (Value p : full)
            if (static_cast<double>(p) * static_cast<double>(p) < bound_sq) small.push_back(p);
    PrimeSet sieve(std::move(small));

    std::vector<Value> candidates;
    for (Value v = 0; v <= upper; ++v) {
        bool keep = true;
        for (Value p : sieve)
            if (v % p == 1) {
                keep = false;
                break;
            }
        if (keep) candidates.push_back(v);
    }
    return make_context(k, upper, std::move(candidates), std::move(full), std::move(sieve));
}

}  // namespace admtuple
