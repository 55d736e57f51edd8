#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace admtuple {

/// Integer type for tuple elements. k <= 5000 keeps every value well inside 64 bits.
using Value = std::int64_t;

/// A strictly increasing sequence of integers.
using Tuple = std::vector<Value>;

/// The single seeded generator threaded through every randomized routine.
using Rng = std::mt19937_64;

/// Residue of v modulo p in [0, p), also for negative v.
inline Value residue(Value v, Value p) {
    Value r = v % p;
    return r < 0 ? r + p : r;
}

}  // namespace admtuple
