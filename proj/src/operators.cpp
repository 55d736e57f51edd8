#include "admtuple/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace admtuple {

InsertLevel insert_level(int level) {
    if (level < 0 || level > 2) throw std::invalid_argument("insert level must be 0, 1 or 2, got " + std::to_string(level));
    return static_cast<InsertLevel>(level);
}

namespace {

Side random_side(Rng& rng) {
    return std::uniform_int_distribution<int>(0, 1)(rng) == 0 ? Side::Left : Side::Right;
}

std::size_t side_index(const TupleState& state, Side side) {
    const auto idx = state.candidate_indices();
    return side == Side::Left ? idx.front() : idx.back();
}

}  // namespace

void side_remove(TupleState& state, Side side) {
    if (state.empty()) throw std::logic_error("side_remove: empty tuple");
    state.remove_index(side_index(state, side));
}

std::optional<std::size_t> side_add_candidate(const TupleState& state, Side side) {
    if (state.empty()) throw std::logic_error("side_add: empty tuple");
    const std::size_t n = state.context().candidates().size();
    std::size_t l = side_index(state, side);
    if (side == Side::Left) {
        while (l > 0) {
            --l;
            if (state.violation_delta_index(l, 1) == 0) return l;
        }
    } else {
        while (l + 1 < n) {
            ++l;
            if (state.violation_delta_index(l, 1) == 0) return l;
        }
    }
    return std::nullopt;
}

bool side_add(TupleState& state, Side side) {
    auto ci = side_add_candidate(state, side);
    if (!ci) return false;
    state.add_index(*ci);
    return true;
}

bool repair(TupleState& state, int k) {
    if (k < 0) throw std::invalid_argument("repair: negative k");
    const auto target = static_cast<std::size_t>(k);
    const auto candidates = state.context().candidates();
    while (state.size() < target) {
        if (state.empty()) return false;
        auto left = side_add_candidate(state, Side::Left);
        auto right = side_add_candidate(state, Side::Right);
        if (!left && !right) return false;
        if (left && right) {
            const Value d_left = state.back() - candidates[*left];
            const Value d_right = candidates[*right] - state.front();
            state.add_index(d_left <= d_right ? *left : *right);
        } else {
            state.add_index(left ? *left : *right);
        }
    }
    while (state.size() > target) {
        const auto values = state.values();
        const std::size_t n = values.size();
        // Removing the left end leaves [h_2, h_n]; the right end leaves [h_1, h_{n-1}].
        const Value d_left = n >= 2 ? values[n - 1] - values[1] : 0;
        const Value d_right = n >= 2 ? values[n - 2] - values[0] : 0;
        side_remove(state, d_left <= d_right ? Side::Left : Side::Right);
    }
    return true;
}

bool accept_worsening(Value d_new, Value d_old, double beta, Rng& rng) {
    const double gap = static_cast<double>(d_new - d_old);
    const double threshold = 0.5 / std::pow(gap, beta);
    return threshold > std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

ShiftOutcome shift_search(TupleState& state, int max_shifts, double beta, Rng& rng) {
    if (state.size() < 2) throw std::logic_error("shift_search: needs at least two elements");
    ShiftOutcome out;
    const std::size_t size_before = state.size();
    out.original_diameter = state.diameter();

    const Side side = random_side(rng);
    const Side back_side = reverse(side);

    // (removed, added) candidate indices of each successful shift.
    std::vector<std::pair<std::size_t, std::size_t>> moves;
    std::optional<std::size_t> dangling;  // removal whose matching add failed
    Value best_d = std::numeric_limits<Value>::max();
    std::size_t best_len = 0;

    for (int l = 0; l < max_shifts; ++l) {
        const std::size_t removed = side_index(state, back_side);
        state.remove_index(removed);
        auto added = side_add_candidate(state, side);
        if (!added) {
            dangling = removed;
            break;
        }
        state.add_index(*added);
        moves.emplace_back(removed, *added);
        const Value d = state.diameter();
        if (d < best_d) {
            best_d = d;
            best_len = moves.size();
        }
    }
    out.shifts = static_cast<int>(moves.size());
    if (best_len > 0) out.best_diameter = best_d;

    out.accepted = best_len > 0 &&
                   (best_d <= out.original_diameter || accept_worsening(best_d, out.original_diameter, beta, rng));

    if (dangling) state.add_index(*dangling);
    const std::size_t keep = out.accepted ? best_len : 0;
    while (moves.size() > keep) {
        auto [removed, added] = moves.back();
        moves.pop_back();
        state.remove_index(added);
        state.add_index(removed);
    }
    if (state.size() != size_before) throw std::logic_error("shift_search: size changed");
    return out;
}

ColumnCount second_best_column(const TupleState& state, std::size_t row) {
    const auto counts = state.occupancy_row(row);
    std::optional<ColumnCount> best;
    for (std::size_t j = 0; j < counts.size(); ++j) {
        if (counts[j] == 0) continue;
        if (!best || counts[j] < best->count) best = ColumnCount{j, counts[j]};
    }
    if (!best) throw std::logic_error("second_best_column: row has no occupied column");
    return *best;
}

std::vector<Value> members_of_cell(const TupleState& state, std::size_t row, std::size_t column) {
    const auto& residues = state.context().residues();
    std::vector<Value> out;
    const auto values = state.values();
    const auto indices = state.candidate_indices();
    for (std::size_t n = 0; n < values.size(); ++n)
        if (residues.at(indices[n], row) == column) out.push_back(values[n]);
    return out;
}

std::string_view action_name(InsertAction action) {
    switch (action) {
        case InsertAction::None: return "none";
        case InsertAction::Insert: return "insert";
        case InsertAction::Exchange: return "exchange";
        case InsertAction::Plateau: return "plateau";
    }
    return "unknown";
}

namespace {

// Swaps `queue` in for the members of (row, column). Returns false, with the
// state restored, if the result is not admissible.
bool try_exchange(TupleState& state, std::size_t row, std::size_t column, std::span<const std::size_t> queue) {
    const auto& residues = state.context().residues();
    std::vector<std::size_t> outgoing;
    for (std::size_t ci : state.candidate_indices())
        if (residues.at(ci, row) == column) outgoing.push_back(ci);
    for (std::size_t ci : queue) state.add_index(ci);
    for (std::size_t ci : outgoing) state.remove_index(ci);
    if (state.is_admissible()) return true;
    for (std::size_t ci : outgoing) state.add_index(ci);
    for (std::size_t ci : queue) state.remove_index(ci);
    return false;
}

}  // namespace

InsertOutcome insert_move(TupleState& state, const InsertOptions& options, Rng& rng) {
    InsertOutcome out;
    if (state.size() < 2) return out;
    const bool exchanges = options.level != InsertLevel::Zero;
    const bool immediate = !(exchanges && options.strict_levels);

    // (row, candidate index) for every candidate with violation count 1.
    std::vector<std::pair<std::size_t, std::size_t>> queued;
    const auto members = state.candidate_indices();
    std::size_t next_member = 1;
    const std::size_t last = members.back();
    for (std::size_t ci = members.front() + 1; ci < last; ++ci) {
        if (ci == members[next_member]) {
            ++next_member;
            continue;
        }
        const auto probe = state.probe_index(ci);
        if (probe.delta == 0) {
            if (!immediate) continue;
            state.add_index(ci);
            out.action = InsertAction::Insert;
            out.added = 1;
            return out;
        }
        if (probe.delta == 1 && exchanges) queued.emplace_back(probe.row, ci);
    }
    if (!exchanges || queued.empty()) return out;

    std::stable_sort(queued.begin(), queued.end(), [](auto& a, auto& b) { return a.first < b.first; });
    struct Group {
        std::size_t row;
        std::vector<std::size_t> values;
    };
    std::vector<Group> groups;
    for (auto [row, ci] : queued) {
        if (groups.empty() || groups.back().row != row) groups.push_back(Group{row, {}});
        groups.back().values.push_back(ci);
    }

    auto attempt = [&](const Group& g, InsertAction action, auto&& qualifies) {
        const auto sb = second_best_column(state, g.row);
        if (!qualifies(g.values.size(), sb.count)) return false;
        if (!try_exchange(state, g.row, sb.column, g.values)) {
            ++out.reverted;
            return false;
        }
        out.action = action;
        out.row = g.row;
        out.added = g.values.size();
        out.removed = sb.count;
        return true;
    };

    for (const auto& g : groups)
        if (attempt(g, InsertAction::Exchange, [](std::size_t q, std::uint32_t m) { return q > m; })) return out;

    if (options.level == InsertLevel::Two) {
        std::vector<std::size_t> order(groups.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t i : order)
            if (attempt(groups[i], InsertAction::Plateau, [](std::size_t q, std::uint32_t m) { return m > 0 && q == m; }))
                return out;
    }
    return out;
}

LocalSearchOutcome local_search(TupleState& state, int removals, int insert_budget, const InsertOptions& options,
                                Rng& rng) {
    if (state.empty()) throw std::logic_error("local_search: empty tuple");
    LocalSearchOutcome out;
    const int k = static_cast<int>(state.size());
    const Tuple input(state.values().begin(), state.values().end());
    out.diameter_before = state.diameter();

    for (int n = 0; n < removals && !state.empty(); ++n) side_remove(state, random_side(rng));

    for (int n = 0; n < insert_budget; ++n) {
        const auto move = insert_move(state, options, rng);
        ++out.insert_calls;
        out.reverted_exchanges += move.reverted;
        if (static_cast<int>(state.size()) >= k) {
            out.reached_k = true;
            break;
        }
        // Levels 0 and 1 are deterministic and level 2 only reorders rows
        // that already failed to qualify, so a miss repeats forever.
        if (move.action == InsertAction::None) break;
    }

    out.repaired = repair(state, k);
    if (!out.repaired) state = rebuild(input, state.context_ptr());
    out.diameter_after = state.diameter();
    return out;
}

}  // namespace admtuple
