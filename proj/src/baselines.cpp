#include "admtuple/baselines.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "admtuple/primes.hpp"
#include "admtuple/tuple_state.hpp"

namespace admtuple::baselines {
namespace {

constexpr std::array kMethods{Method::PrimesPastK,     Method::Eratosthenes,    Method::HensleyRichards,
                              Method::Schinzel,        Method::ShiftedSchinzel, Method::ShiftedGreedy};

void require_k(int k) {
    if (k < 2) throw std::invalid_argument("sieve methods need k >= 2");
}

// Residue occupancy of a sliding window, for every prime <= k.
class SlidingOccupancy {
public:
    explicit SlidingOccupancy(int k) : primes_(primes_up_to(k)) {
        offsets_.assign(primes_.size() + 1, 0);
        for (std::size_t i = 0; i < primes_.size(); ++i) offsets_[i + 1] = offsets_[i] + primes_[i];
        counts_.assign(offsets_.back(), 0);
        occupied_.assign(primes_.size(), 0);
    }

    void add(Value v) {
        for (std::size_t i = 0; i < primes_.size(); ++i) {
            if (counts_[offsets_[i] + residue(v, primes_[i])]++ == 0) {
                if (++occupied_[i] == primes_[i]) ++exhausted_;
            }
        }
    }

    void remove(Value v) {
        for (std::size_t i = 0; i < primes_.size(); ++i) {
            if (--counts_[offsets_[i] + residue(v, primes_[i])] == 0) {
                if (occupied_[i]-- == primes_[i]) --exhausted_;
            }
        }
    }

    bool admissible() const { return exhausted_ == 0; }

private:
    PrimeSet primes_;
    std::vector<std::size_t> offsets_;
    std::vector<int> counts_;
    std::vector<Value> occupied_;
    std::size_t exhausted_ = 0;
};

// Integers of [lo, hi] avoiding the given (modulus, class) pairs.
std::vector<Value> sieve_interval(Value lo, Value hi, const std::vector<std::pair<Value, Value>>& removed) {
    std::vector<char> alive(static_cast<std::size_t>(hi - lo + 1), 1);
    for (auto [p, c] : removed) {
        Value first = lo + residue(c - lo, p);
        for (Value v = first; v <= hi; v += p) alive[static_cast<std::size_t>(v - lo)] = 0;
    }
    std::vector<Value> out;
    for (Value v = lo; v <= hi; ++v)
        if (alive[static_cast<std::size_t>(v - lo)]) out.push_back(v);
    return out;
}

std::vector<std::pair<Value, Value>> schinzel_classes(Value p_max) {
    std::vector<std::pair<Value, Value>> out{{2, 1}};
    for (Value p : primes_up_to(p_max))
        if (p != 2) out.emplace_back(p, 0);
    return out;
}

std::vector<std::pair<Value, Value>> multiples_classes(Value p_max) {
    std::vector<std::pair<Value, Value>> out;
    for (Value p : primes_up_to(p_max)) out.emplace_back(p, 0);
    return out;
}

Value largest_prime_at_most(Value n) {
    while (n >= 2 && !is_prime(n)) --n;
    return n;
}

Value rough_width(int k) {
    const double kd = k;
    return static_cast<Value>(std::ceil(kd * std::log(kd) + kd)) + 64;
}

// Smallest n >= lo_n with eval(n) >= k, by galloping from `hint` and then
// bisecting. eval must be defined on [lo_n, hi_n]; returns nullopt if even
// hi_n falls short.
std::optional<std::size_t> smallest_sufficient(std::size_t lo_n, std::size_t hi_n, std::size_t hint, int k,
                                               const std::function<std::size_t(std::size_t)>& eval) {
    if (lo_n > hi_n) return std::nullopt;
    hint = std::clamp(hint, lo_n, hi_n);
    const auto enough = [&](std::size_t n) { return eval(n) >= static_cast<std::size_t>(k); };
    std::size_t good, bad;  // enough(good), !enough(bad) or bad below range
    if (enough(hint)) {
        good = hint;
        std::size_t step = 1;
        for (;;) {
            if (good == lo_n) return good;
            std::size_t probe = good > lo_n + step ? good - step : lo_n;
            if (enough(probe)) {
                good = probe;
                step *= 2;
            } else {
                bad = probe;
                break;
            }
        }
    } else {
        bad = hint;
        std::size_t step = 1;
        for (;;) {
            if (bad == hi_n) return std::nullopt;
            std::size_t probe = std::min(hi_n, bad + step);
            if (enough(probe)) {
                good = probe;
                break;
            }
            bad = probe;
            step *= 2;
        }
    }
    while (good - bad > 1) {
        std::size_t mid = bad + (good - bad) / 2;
        if (enough(mid)) good = mid;
        else bad = mid;
    }
    return good;
}

struct GreedyOutcome {
    Tuple tuple;
    std::size_t pool_size = 0;
};

// Greedy stage on the first n elements of `line` from position `start`.
std::optional<GreedyOutcome> greedy_from(std::span<const Value> line, std::size_t start, std::size_t hint, int k,
                                         std::span<const Value> greedy_primes, Value first_lo, Value first_hi) {
    const std::size_t available = line.size() - start;
    auto eval = [&](std::size_t n) {
        return greedy_sieve(std::vector<Value>(line.begin() + start, line.begin() + start + n), greedy_primes).size();
    };
    auto n = smallest_sufficient(static_cast<std::size_t>(k), available, hint, k, eval);
    if (!n) return std::nullopt;
    auto survivors = greedy_sieve(std::vector<Value>(line.begin() + start, line.begin() + start + *n), greedy_primes);
    auto window = best_admissible_window(survivors, k, first_lo, first_hi);
    if (!window) return std::nullopt;
    return GreedyOutcome{std::move(*window), *n};
}

}  // namespace

std::string_view method_name(Method method) {
    switch (method) {
        case Method::PrimesPastK: return "primes-past-k";
        case Method::Eratosthenes: return "eratosthenes";
        case Method::HensleyRichards: return "hensley-richards";
        case Method::Schinzel: return "schinzel";
        case Method::ShiftedSchinzel: return "shifted-schinzel";
        case Method::ShiftedGreedy: return "shifted-greedy";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
    for (Method m : kMethods)
        if (method_name(m) == name) return m;
    return std::nullopt;
}

std::span<const Method> all_methods() { return kMethods; }

std::optional<Tuple> best_admissible_window(std::span<const Value> sorted, int k, Value first_lo, Value first_hi) {
    const auto n = sorted.size();
    const auto kk = static_cast<std::size_t>(k);
    std::size_t start = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), first_lo) - sorted.begin());
    if (k < 1 || start + kk > n || sorted[start] > first_hi) return std::nullopt;

    SlidingOccupancy window(k);
    for (std::size_t i = start; i < start + kk; ++i) window.add(sorted[i]);

    std::optional<std::size_t> best;
    Value best_d = std::numeric_limits<Value>::max();
    for (;;) {
        const Value d = sorted[start + kk - 1] - sorted[start];
        if (d < best_d && window.admissible()) {
            best_d = d;
            best = start;
        }
        if (start + kk >= n || sorted[start + 1] > first_hi) break;
        window.remove(sorted[start]);
        window.add(sorted[start + kk]);
        ++start;
    }
    if (!best) return std::nullopt;
    return Tuple(sorted.begin() + *best, sorted.begin() + *best + kk);
}

std::vector<Value> greedy_sieve(std::vector<Value> pool, std::span<const Value> primes) {
    std::vector<std::size_t> counts;
    for (Value p : primes) {
        if (static_cast<Value>(pool.size()) < p) continue;  // cannot occupy every class
        counts.assign(static_cast<std::size_t>(p), 0);
        for (Value v : pool) ++counts[residue(v, p)];
        auto least = std::min_element(counts.begin(), counts.end());
        if (*least == 0) continue;
        const Value cls = least - counts.begin();
        std::erase_if(pool, [&](Value v) { return residue(v, p) == cls; });
    }
    return pool;
}

std::optional<Tuple> context_greedy(const ProblemContext& context, Value lo, Value first_hi) {
    const auto candidates = context.candidates();
    const std::size_t start =
        static_cast<std::size_t>(std::lower_bound(candidates.begin(), candidates.end(), lo) - candidates.begin());
    if (start >= candidates.size()) return std::nullopt;
    auto outcome = greedy_from(candidates, start, static_cast<std::size_t>(context.k()), context.k(),
                               context.effective_primes().values(), lo, first_hi);
    if (!outcome) return std::nullopt;
    return std::move(outcome->tuple);
}

Tuple primes_past_k(int k) {
    require_k(k);
    Tuple out;
    Value p = k;
    while (static_cast<int>(out.size()) < k) {
        p = next_prime(p);
        out.push_back(p);
    }
    return out;
}

Tuple eratosthenes_tuple(int k) {
    require_k(k);
    const Value last_start = next_prime(2 * static_cast<Value>(k));
    Value bound = std::max<Value>(4 * last_start, 100);
    for (;;) {
        PrimeSet primes = primes_up_to(bound);
        auto it = std::find(primes.begin(), primes.end(), last_start);
        if (it != primes.end() && static_cast<std::size_t>(primes.end() - it) >= static_cast<std::size_t>(k)) {
            auto window = best_admissible_window(primes.values(), k, 2, last_start);
            if (!window) throw std::logic_error("eratosthenes: no admissible window");  // primes past k always are
            return *window;
        }
        bound *= 2;
    }
}

Tuple hensley_richards(int k) {
    require_k(k);
    for (Value p_max = 2; p_max <= k; p_max = next_prime(p_max)) {
        const auto classes = multiples_classes(p_max);
        Value half = rough_width(k);
        std::vector<Value> line;
        for (;;) {
            line = sieve_interval(-half, half, classes);
            if (line.size() >= static_cast<std::size_t>(k)) break;
            half *= 2;
        }
        // Smallest symmetric half-width holding k survivors.
        std::vector<Value> radii;
        radii.reserve(line.size());
        for (Value v : line) radii.push_back(v < 0 ? -v : v);
        std::nth_element(radii.begin(), radii.begin() + (k - 1), radii.end());
        const Value x_half = radii[k - 1];
        std::vector<Value> inside;
        for (Value v : line)
            if (v >= -x_half && v <= x_half) inside.push_back(v);
        if (auto window = best_admissible_window(inside, k, -x_half, x_half)) return *window;
    }
    // p_m past k removes class 0 for every prime <= k.
    throw std::logic_error("hensley_richards: no admissible window");
}

Tuple schinzel(int k, bool shifted, std::optional<Value> shift) {
    require_k(k);
    const Value s0 = shift.value_or(0);
    std::optional<Tuple> best;
    for (Value p_max = largest_prime_at_most(static_cast<Value>(std::floor(small_prime_threshold(k))));;
         p_max = next_prime(std::max<Value>(p_max, 2))) {
        const auto classes = schinzel_classes(std::max<Value>(p_max, 2));
        Value half = rough_width(k);
        std::vector<Value> line;
        std::size_t first = 0;
        for (;;) {
            line = sieve_interval(s0 - 2 * half, s0 + 2 * half, classes);
            first = static_cast<std::size_t>(std::lower_bound(line.begin(), line.end(), s0) - line.begin());
            if (line.size() - first >= static_cast<std::size_t>(k) &&
                line[first + k - 1] - s0 <= half)
                break;
            half *= 2;
        }
        auto at_origin = best_admissible_window(line, k, s0, line[first]);
        if (!shifted || shift) {
            if (at_origin) return *at_origin;
            continue;
        }
        const Value x = line[first + k - 1] - s0;
        if (auto window = best_admissible_window(line, k, s0 - x / 2, s0 + x / 2)) {
            if (!best || diameter(*window) < diameter(*best)) best = std::move(window);
        }
        if (at_origin) return *best;
    }
}

Tuple shifted_greedy(int k, std::optional<Value> shift, double tau) {
    require_k(k);
    if (!(tau > 0)) throw std::invalid_argument("shifted_greedy: tau must be positive");
    const double threshold = tau * small_prime_threshold(k);
    std::vector<Value> greedy_primes;
    Value schinzel_max = 2;
    for (Value p : primes_up_to(k)) {
        if (static_cast<double>(p) < threshold) schinzel_max = p;
        else greedy_primes.push_back(p);
    }
    const auto classes = schinzel_classes(schinzel_max);

    Value half = 2 * rough_width(k);
    for (;;) {
        const auto line = sieve_interval(-2 * half, 2 * half, classes);
        auto origin_of = [&](Value s) {
            return static_cast<std::size_t>(std::lower_bound(line.begin(), line.end(), s) - line.begin());
        };
        auto run_at = [&](std::size_t start, std::size_t hint) {
            return greedy_from(line, start, hint, k, greedy_primes, line[start],
                               std::numeric_limits<Value>::max());
        };

        if (shift) {
            const std::size_t start = origin_of(*shift);
            auto out = start < line.size() ? run_at(start, static_cast<std::size_t>(k)) : std::nullopt;
            if (out && out->tuple.back() < 2 * half) return std::move(out->tuple);
            half *= 2;
            continue;
        }

        const std::size_t origin = origin_of(0);
        auto at_zero = run_at(origin, static_cast<std::size_t>(k));
        if (!at_zero || at_zero->tuple.back() >= 2 * half) {
            half *= 2;
            continue;
        }
        const Value x = line[origin + at_zero->pool_size - 1];
        if (x + x / 2 >= 2 * half) {
            half *= 2;
            continue;
        }
        const std::size_t lo = origin_of(-x / 2);
        const std::size_t hi = origin_of(x / 2 + 1);  // exclusive

        Tuple best = at_zero->tuple;
        std::size_t best_start = origin;
        std::size_t hint = at_zero->pool_size;
        auto consider = [&](std::size_t start) {
            auto out = run_at(start, hint);
            if (!out) return;
            hint = out->pool_size;
            const Value d = diameter(out->tuple);
            const Value best_d = diameter(best);
            if (d < best_d || (d == best_d && start < best_start)) {
                best = std::move(out->tuple);
                best_start = start;
            }
        };

        const std::size_t count = hi - lo;
        const std::size_t step = k <= 1000 ? 1 : std::max<std::size_t>(1, count / 500);
        for (std::size_t start = lo; start < hi; start += step) consider(start);
        if (step > 1) {
            const std::size_t centre = best_start;
            const std::size_t from = centre > lo + step ? centre - step : lo;
            const std::size_t to = std::min(hi, centre + step + 1);
            for (std::size_t start = from; start < to; ++start) consider(start);
        }
        return best;
    }
}

Tuple run(Method method, int k, const SieveParams& params) {
    switch (method) {
        case Method::PrimesPastK: return primes_past_k(k);
        case Method::Eratosthenes: return eratosthenes_tuple(k);
        case Method::HensleyRichards: return hensley_richards(k);
        case Method::Schinzel: return schinzel(k, false, params.shift);
        case Method::ShiftedSchinzel: return schinzel(k, true, params.shift);
        case Method::ShiftedGreedy: return shifted_greedy(k, params.shift, params.tau);
    }
    throw std::invalid_argument("unknown sieve method");
}

}  // namespace admtuple::baselines
