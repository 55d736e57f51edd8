#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include <doctest.h>

#include "admtuple/context.hpp"
#include "admtuple/primes.hpp"
#include "admtuple/tuple_state.hpp"

namespace testing {

using admtuple::Value;

// Every integer of [0, upper] is a candidate; `primes` are all tracked
// because the full interval exhausts every residue class.
inline admtuple::ContextPtr interval_context(int k, Value upper, std::vector<Value> primes) {
    std::vector<Value> all(static_cast<std::size_t>(upper + 1));
    std::iota(all.begin(), all.end(), Value{0});
    return admtuple::make_context(k, upper, std::move(all), admtuple::PrimeSet(std::move(primes)));
}

inline admtuple::ContextPtr interval_context(int k, Value upper) {
    auto primes = admtuple::primes_up_to(k);
    return interval_context(k, upper, std::vector<Value>(primes.begin(), primes.end()));
}

// Admissibility straight from the definition: some class mod p is missed.
inline bool misses_a_class(const std::vector<Value>& tuple, const std::vector<Value>& primes) {
    for (Value p : primes) {
        std::set<Value> classes;
        for (Value h : tuple) classes.insert(((h % p) + p) % p);
        if (static_cast<Value>(classes.size()) == p) return false;
    }
    return true;
}

inline std::vector<Value> trial_division_primes(Value n) {
    std::vector<Value> out;
    for (Value q = 2; q <= n; ++q) {
        bool prime = true;
        for (Value d = 2; d * d <= q; ++d)
            if (q % d == 0) prime = false;
        if (prime) out.push_back(q);
    }
    return out;
}

// Conservation and F-consistency, recomputed from the counters alone.
inline void expect_consistent(const admtuple::TupleState& state) {
    std::size_t violated = 0;
    for (std::size_t i = 0; i < state.row_count(); ++i) {
        const auto row = state.occupancy_row(i);
        REQUIRE(std::accumulate(row.begin(), row.end(), std::size_t{0}) == state.size());
        const auto zeros = static_cast<std::uint32_t>(std::count(row.begin(), row.end(), 0u));
        REQUIRE(state.free_counts()[i] == zeros);
        if (zeros == 0) ++violated;
    }
    REQUIRE(state.violated_rows() == violated);
}

}  // namespace testing
