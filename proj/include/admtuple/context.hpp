#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "admtuple/primes.hpp"
#include "admtuple/types.hpp"

namespace admtuple {

/// Precomputed residues r(v, i) = v mod p_i for every candidate v and every
/// prime p_i of one prime set. Stored row-major: one row per candidate.
class ResidueTable {
public:
    ResidueTable() = default;
    ResidueTable(std::span<const Value> candidates, const PrimeSet& primes);

    std::span<const std::uint32_t> row(std::size_t candidate_index) const {
        return {data_.data() + candidate_index * width_, width_};
    }
    std::uint32_t at(std::size_t candidate_index, std::size_t prime_index) const {
        return data_[candidate_index * width_ + prime_index];
    }

    std::size_t candidate_count() const { return rows_; }
    std::size_t prime_count() const { return width_; }
    std::size_t storage_size() const { return data_.size(); }

private:
    std::size_t width_ = 0;
    std::size_t rows_ = 0;
    std::vector<std::uint32_t> data_;
};

ResidueTable build_residue_table(std::span<const Value> candidates, const PrimeSet& primes);

/// Everything a search needs to know about one instance: target size k, the
/// candidate set V inside [0, U], and the prime sets
///   full      = all primes <= k
///   sieve     = small primes whose residue class 1 was removed from V
///   removable = primes that no subset of V can ever violate
///   effective = full - removable, the rows actually tracked during search.
/// Immutable once built; share it through ContextPtr.
class ProblemContext {
public:
    ProblemContext(int k, Value upper, std::vector<Value> candidates, PrimeSet full, PrimeSet sieve);

    int k() const { return k_; }
    Value upper() const { return upper_; }
    std::span<const Value> candidates() const { return candidates_; }
    const PrimeSet& full_primes() const { return full_; }
    const PrimeSet& sieve_primes() const { return sieve_; }
    const PrimeSet& removable_primes() const { return removable_; }
    const PrimeSet& effective_primes() const { return effective_; }
    const ResidueTable& residues() const { return residues_; }

    /// Offset of row i inside a flat occupancy matrix; the last entry is the total size.
    std::span<const std::size_t> row_offsets() const { return row_offsets_; }
    std::size_t occupancy_size() const { return row_offsets_.back(); }

    /// Position of v in the candidate list, if present.
    std::optional<std::size_t> index_of(Value v) const;
    bool contains(Value v) const { return index_of(v).has_value(); }

    /// Measured |V| / (U + 1).
    double surviving_fraction() const;

private:
    int k_;
    Value upper_;
    std::vector<Value> candidates_;
    PrimeSet full_, sieve_, removable_, effective_;
    ResidueTable residues_;
    std::vector<std::size_t> row_offsets_;
};

using ContextPtr = std::shared_ptr<const ProblemContext>;

/// Builds a context from an explicit candidate set. `full` supplies the primes
/// to test; removable and effective primes are derived from the candidates.
/// Throws std::invalid_argument on unsorted candidates, candidates outside
/// [0, upper], sieve not a subset of full, or fewer than k candidates.
ContextPtr make_context(int k, Value upper, std::vector<Value> candidates, PrimeSet full,
                        PrimeSet sieve = {});

/// Candidate and prime sets for target size k on [0, upper]:
/// full = primes <= k, sieve = primes < sqrt(k ln k), V = [0, upper] minus
/// every v = 1 (mod p) for p in sieve, then primes whose residues V can never
/// exhaust are dropped from the effective set. With sieve_small_primes off,
/// V is all of [0, upper].
ContextPtr build_context(int k, Value upper, bool sieve_small_primes = true);

/// ceil(1.5 * (k ln k + k)).
Value default_upper_bound(int k);

/// sqrt(k ln k), the small-prime threshold shared by the context sieve and the
/// greedy sieve.
double small_prime_threshold(int k);

}  // namespace admtuple
