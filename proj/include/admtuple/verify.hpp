#pragma once

#include <optional>
#include <span>

#include "admtuple/context.hpp"
#include "admtuple/types.hpp"

namespace admtuple::verify {

// Everything in this namespace works from the textbook definition (residues
// of every prime p <= k, computed on the spot) and shares no code with the
// incremental bookkeeping it is used to check.

struct Report {
    bool admissible = false;
    /// Smallest prime p <= k whose residue classes are all occupied.
    std::optional<Value> failing_prime;
};

/// Checks that `tuple` misses at least one residue class modulo every prime
/// p <= k. Primes above k cannot be exhausted by k elements. Throws
/// std::invalid_argument if the tuple is not strictly increasing or does not
/// have exactly k elements.
Report full_verify(std::span<const Value> tuple, int k);

/// Same check without the size requirement: every prime p <= |tuple|.
Report check_admissible(std::span<const Value> tuple);

struct Optimum {
    Value diameter = 0;
    Tuple witness;
};

/// Largest k the exhaustive searches accept.
inline constexpr int kMaxOracleK = 12;
inline constexpr int kMaxPerStartK = 10;

/// Minimal diameter of an admissible k-tuple, by depth-first branch and bound
/// over subsets of [0, cap] anchored at h_1 = 0. cap <= 0 selects
/// ceil(1.5 (k ln k + k)). Throws std::invalid_argument for k > 12 or k < 1,
/// std::runtime_error if no admissible tuple fits below cap.
Optimum brute_force_optimal(int k, Value cap = 0);

/// Minimal diameter among admissible k-tuples drawn from the context's
/// candidates with first element v, or nullopt if none exists. Throws
/// std::invalid_argument for k > 10.
std::optional<Value> per_start_optimal(int k, Value v, const ProblemContext& context);

/// Shared search: minimal-diameter admissible k-subset of `pool` (sorted)
/// containing pool[0]; nullopt if none.
std::optional<Optimum> min_diameter_with_first(std::span<const Value> pool, int k);

}  // namespace admtuple::verify
