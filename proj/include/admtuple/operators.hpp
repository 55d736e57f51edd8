#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "admtuple/tuple_state.hpp"
#include "admtuple/types.hpp"

namespace admtuple {

enum class Side { Left, Right };

constexpr Side reverse(Side side) { return side == Side::Left ? Side::Right : Side::Left; }

/// How far insert_move goes once no single value can be inserted:
///  0 - single inserts only
///  1 - also exchanges that grow the tuple
///  2 - also size-preserving (plateau) exchanges
enum class InsertLevel : int { Zero = 0, One = 1, Two = 2 };

/// Throws std::invalid_argument outside {0, 1, 2}.
InsertLevel insert_level(int level);

// -- side operators ----------------------------------------------------------

/// Drops the first (Left) or last (Right) element. Throws std::logic_error on
/// an empty tuple.
void side_remove(TupleState& state, Side side);

/// The candidate a side_add would insert, scanning outward from the side
/// element, or nullopt if every candidate on that side would break
/// admissibility. Requires a non-empty tuple.
std::optional<std::size_t> side_add_candidate(const TupleState& state, Side side);

/// Adds the nearest admissibility-preserving candidate beyond the given side.
/// Returns false and leaves the state untouched when none exists.
bool side_add(TupleState& state, Side side);

/// Grows (or shrinks) the tuple to exactly k elements one side at a time,
/// keeping whichever side gives the smaller diameter (Left on ties). Returns
/// false when growth stalls because neither side can add; the state is then
/// left at the stalled size.
bool repair(TupleState& state, int k);

// -- shift search --------------------------------------------------------------

struct ShiftOutcome {
    bool accepted = false;          ///< the state now holds the best shifted tuple
    int shifts = 0;                 ///< successful shifts performed
    Value original_diameter = 0;
    std::optional<Value> best_diameter;  ///< best diameter seen, if any shift succeeded
};

/// 0.5 / (d_new - d_old)^beta > U(0, 1). Only meaningful for d_new > d_old.
bool accept_worsening(Value d_new, Value d_old, double beta, Rng& rng);

/// Up to `max_shifts` shifts toward a random side (remove on the reverse side,
/// side_add on the chosen one), stopping at the first failed add. The best
/// intermediate tuple replaces the input if it is no wider, or by the
/// worsening rule otherwise; else the input is restored.
ShiftOutcome shift_search(TupleState& state, int max_shifts, double beta, Rng& rng);

// -- insert moves ----------------------------------------------------------------

struct ColumnCount {
    std::size_t column = 0;
    std::uint32_t count = 0;
};

/// The occupied column of `row` with the fewest members (lowest index on
/// ties). Throws std::logic_error if the row is empty.
ColumnCount second_best_column(const TupleState& state, std::size_t row);

/// Members h of the tuple with h mod p_row == column.
std::vector<Value> members_of_cell(const TupleState& state, std::size_t row, std::size_t column);

enum class InsertAction {
    None,      ///< no feasible move; state unchanged
    Insert,    ///< one value inserted: size + 1
    Exchange,  ///< Q_i added, W_{i,sb} removed with |Q_i| > m_{i,sb}
    Plateau,   ///< same exchange with |Q_i| == m_{i,sb}: size unchanged
};

std::string_view action_name(InsertAction action);

struct InsertOutcome {
    InsertAction action = InsertAction::None;
    std::size_t row = 0;        ///< exchange row
    std::size_t added = 0;      ///< |Q_i|, or 1 for Insert
    std::size_t removed = 0;    ///< m_{i,sb}
    std::size_t reverted = 0;   ///< exchanges undone because another row ran out of classes
};

struct InsertOptions {
    InsertLevel level = InsertLevel::Two;
    /// At levels 1 and 2, skip the immediate single insert and only exchange.
    bool strict_levels = false;
};

/// One pass over the candidates strictly between the tuple's ends that are
/// not in it. A candidate with violation count 0 is inserted at once. Those
/// with count 1 are collected per violated row into Q_i. Level >= 1 then takes
/// the first row (ascending) with |Q_i| > m_{i,sb} and swaps Q_i in for the
/// members of the second best column; level 2 next tries rows in random
/// order for |Q_i| == m_{i,sb} > 0. Exchanges that leave some other row
/// without a free class are reverted and the next row is tried. Never widens
/// the tuple. Requires at least two elements; smaller tuples return None.
InsertOutcome insert_move(TupleState& state, const InsertOptions& options, Rng& rng);

// -- local search -------------------------------------------------------------------

struct LocalSearchOutcome {
    bool repaired = false;         ///< false: repair stalled and the input was restored
    bool reached_k = false;        ///< insert phase got back to >= k elements
    Value diameter_before = 0;
    Value diameter_after = 0;
    std::size_t insert_calls = 0;
    std::size_t reverted_exchanges = 0;
};

/// `removals` random side removals, then up to `insert_budget` insert moves
/// (stopping once the size is back to k or a move finds nothing), then repair
/// to size k. Requires an admissible k-tuple.
LocalSearchOutcome local_search(TupleState& state, int removals, int insert_budget, const InsertOptions& options,
                                Rng& rng);

}  // namespace admtuple
