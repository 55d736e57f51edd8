#pragma once

#include <climits>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "admtuple/context.hpp"
#include "admtuple/types.hpp"

namespace admtuple {

/// A candidate tuple H drawn from the context's candidate set, kept in sync
/// with its occupancy matrix M and count array F.
///
/// M is stored flat and row-major with 0-based columns: occupancy(i, j) is the
/// number of elements h of H with h mod p_i == j, where p_i is the i-th
/// effective prime. free_counts()[i] is the number of zero entries of row i.
/// H is admissible over the effective primes iff every free count is positive;
/// the number of rows with a zero free count is tracked so that check is O(1).
///
/// Mutations cost O(|P|) plus the ordered insert into H. Contract violations
/// (adding a member, removing a non-member, values outside V) throw
/// std::logic_error.
class TupleState {
public:
    explicit TupleState(ContextPtr context);

    const ProblemContext& context() const { return *ctx_; }
    const ContextPtr& context_ptr() const { return ctx_; }

    std::span<const Value> values() const { return values_; }
    /// Positions of the elements of H in the candidate list, parallel to values().
    std::span<const std::size_t> candidate_indices() const { return indices_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    Value front() const { return values_.front(); }
    Value back() const { return values_.back(); }

    /// h_last - h_first; throws std::logic_error for an empty tuple.
    Value diameter() const;

    bool contains(Value v) const;
    bool contains_index(std::size_t candidate_index) const;

    void add(Value v);
    void remove(Value v);
    void add_index(std::size_t candidate_index);
    void remove_index(std::size_t candidate_index);

    /// Number of rows whose last free class v would fill. State is unchanged.
    int violation_delta(Value v) const;
    /// Same count, but stops once `cap` is reached.
    int violation_delta_index(std::size_t candidate_index, int cap = INT_MAX) const;

    /// The unique row that v would violate. Throws std::logic_error unless
    /// violation_delta(v) == 1.
    std::size_t violation_row(Value v) const;
    std::size_t violation_row_index(std::size_t candidate_index) const;

    struct Probe {
        int delta = 0;          ///< violation count, capped at 2
        std::size_t row = 0;    ///< first violated row when delta >= 1
    };
    /// Violation count capped at 2 together with the first violated row; one
    /// pass serves both the count check and the row lookup.
    Probe probe_index(std::size_t candidate_index) const;

    bool is_admissible() const { return violated_rows_ == 0; }
    std::size_t violated_rows() const { return violated_rows_; }

    std::size_t row_count() const { return free_.size(); }
    std::span<const std::uint32_t> occupancy() const { return occupancy_; }
    std::span<const std::uint32_t> occupancy_row(std::size_t row) const;
    std::uint32_t occupancy(std::size_t row, std::size_t column) const;
    std::span<const std::uint32_t> free_counts() const { return free_; }

    /// Same context object and identical H, M, F.
    friend bool operator==(const TupleState& a, const TupleState& b);

private:
    friend TupleState rebuild(std::span<const Value> tuple, ContextPtr context);

    std::size_t index_or_throw(Value v) const;

    ContextPtr ctx_;
    std::vector<Value> values_;
    std::vector<std::size_t> indices_;
    std::vector<std::uint32_t> occupancy_;
    std::vector<std::uint32_t> free_;
    std::size_t violated_rows_ = 0;
};

/// Empty tuple: all counters zero, f_i = p_i.
TupleState empty_state(ContextPtr context);

/// From-scratch construction of the state for H by direct counting, without
/// going through the incremental update path. Throws std::invalid_argument if
/// some element is outside the candidate set or H is not strictly increasing.
TupleState rebuild(std::span<const Value> tuple, ContextPtr context);

/// Last element minus first; throws std::invalid_argument on an empty tuple.
Value diameter(std::span<const Value> tuple);

/// |A union B| - |A intersect B| for two sorted sets: the number of single
/// add/remove moves separating them.
std::size_t distance(std::span<const Value> a, std::span<const Value> b);

}  // namespace admtuple
