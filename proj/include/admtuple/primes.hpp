#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "admtuple/types.hpp"

namespace admtuple {

/// Strictly increasing list of primes. Construction rejects composites and
/// unsorted or duplicated input.
class PrimeSet {
public:
    PrimeSet() = default;
    explicit PrimeSet(std::vector<Value> primes);

    std::span<const Value> values() const { return primes_; }
    std::size_t size() const { return primes_.size(); }
    bool empty() const { return primes_.empty(); }
    Value operator[](std::size_t i) const { return primes_[i]; }
    auto begin() const { return primes_.begin(); }
    auto end() const { return primes_.end(); }

    bool contains(Value p) const;

    /// Primes of this set strictly below `bound`.
    PrimeSet below(Value bound) const;

    /// Primes of this set that are not in `other`.
    PrimeSet minus(const PrimeSet& other) const;

    friend bool operator==(const PrimeSet&, const PrimeSet&) = default;

private:
    struct Trusted {};
    PrimeSet(Trusted, std::vector<Value> primes) : primes_(std::move(primes)) {}
    friend PrimeSet primes_up_to(Value n);

    std::vector<Value> primes_;
};

/// All primes <= n, increasing. Empty for n < 2.
PrimeSet primes_up_to(Value n);

bool is_prime(Value n);

/// Smallest prime strictly greater than n.
Value next_prime(Value n);

}  // namespace admtuple
