#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "admtuple/context.hpp"
#include "admtuple/types.hpp"

namespace admtuple::baselines {

/// The constructive sieve methods, from crudest to sharpest.
enum class Method {
    PrimesPastK,
    Eratosthenes,
    HensleyRichards,
    Schinzel,
    ShiftedSchinzel,
    ShiftedGreedy,
};

std::string_view method_name(Method method);
std::optional<Method> parse_method(std::string_view name);
std::span<const Method> all_methods();

struct SieveParams {
    /// Fixed start of the sieved interval for the shifted methods; unset scans.
    std::optional<Value> shift;
    /// Greedy threshold: primes p >= tau * sqrt(k ln k) are sieved greedily.
    double tau = 1.0;
};

/// Runs one method. Every output has exactly k elements and is admissible.
Tuple run(Method method, int k, const SieveParams& params = {});

/// The k smallest primes greater than k.
Tuple primes_past_k(int k);

/// The narrowest admissible window of k consecutive primes whose first prime
/// lies between 2 and the first prime past 2k.
Tuple eratosthenes_tuple(int k);

/// Integers of [-x/2, x/2] with no prime factor <= p_m, x the smallest width
/// holding k survivors, p_m the smallest prime for which one of the k-windows
/// of survivors is admissible. Returns the narrowest such window.
Tuple hensley_richards(int k);

/// Survivors of [s, s + x] after removing 1 mod 2 and 0 mod every odd prime
/// p <= p_m. p_m starts at sqrt(k ln k) and advances to the next prime while
/// no window is admissible. Unshifted: s = 0 (or `shift` when given). Shifted:
/// every even s in [-x/2, x/2].
Tuple schinzel(int k, bool shifted, std::optional<Value> shift = std::nullopt);

/// Shifted Schinzel pass for primes below tau * sqrt(k ln k), then for each
/// larger prime p <= k whose classes are all occupied, the least occupied
/// class (lowest index on ties) is removed. x is the smallest width leaving
/// k survivors. With `shift` unset, even shifts in [-x/2, x/2] are scanned:
/// all of them for k <= 1000, a coarse grid plus local refinement above.
Tuple shifted_greedy(int k, std::optional<Value> shift = std::nullopt, double tau = 1.0);

// -- building blocks shared with the solution database ---------------------

/// Narrowest window of k consecutive elements of `sorted` whose first element
/// lies in [first_lo, first_hi] and that misses a residue class modulo every
/// prime <= k. Ties go to the leftmost window.
std::optional<Tuple> best_admissible_window(std::span<const Value> sorted, int k, Value first_lo,
                                            Value first_hi);

/// Greedy residue-class sieve: for each prime in `primes` (ascending), if the
/// pool occupies every class, drop the members of a least occupied class
/// (lowest class on ties).
std::vector<Value> greedy_sieve(std::vector<Value> pool, std::span<const Value> primes);

/// Greedy sieve run inside a context: pool = candidates in [lo, lo + x],
/// greedy over the effective primes, x the smallest width leaving k
/// survivors with lo + x <= U. Returns the narrowest k-window whose first
/// element lies in [lo, first_hi], or nullopt when none fits below U.
std::optional<Tuple> context_greedy(const ProblemContext& context, Value lo, Value first_hi);

}  // namespace admtuple::baselines
