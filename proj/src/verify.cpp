#include "admtuple/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace admtuple::verify {
namespace {

std::vector<Value> small_primes(Value n) {
    std::vector<Value> out;
    for (Value c = 2; c <= n; ++c) {
        bool prime = true;
        for (Value d = 2; d * d <= c; ++d)
            if (c % d == 0) {
                prime = false;
                break;
            }
        if (prime) out.push_back(c);
    }
    return out;
}

Value mod(Value v, Value p) {
    Value r = v % p;
    return r < 0 ? r + p : r;
}

Report check_primes(std::span<const Value> tuple, const std::vector<Value>& primes) {
    std::vector<char> seen;
    for (Value p : primes) {
        seen.assign(static_cast<std::size_t>(p), 0);
        Value distinct = 0;
        for (Value h : tuple) {
            auto& s = seen[mod(h, p)];
            if (!s) {
                s = 1;
                ++distinct;
            }
        }
        if (distinct >= p) return Report{false, p};
    }
    return Report{true, std::nullopt};
}

void require_increasing(std::span<const Value> tuple) {
    for (std::size_t i = 1; i < tuple.size(); ++i)
        if (tuple[i] <= tuple[i - 1]) throw std::invalid_argument("verify: tuple is not strictly increasing");
}

class BranchAndBound {
public:
    BranchAndBound(std::span<const Value> pool, int k) : pool_(pool), k_(k), primes_(small_primes(k)) {
        counts_.resize(primes_.size());
        occupied_.assign(primes_.size(), 0);
        for (std::size_t i = 0; i < primes_.size(); ++i) counts_[i].assign(primes_[i], 0);
    }

    std::optional<Optimum> run() {
        if (pool_.empty() || static_cast<int>(pool_.size()) < k_) return std::nullopt;
        best_ = std::numeric_limits<Value>::max();
        if (!push(pool_[0])) return std::nullopt;
        descend(1);
        if (best_tuple_.empty()) return std::nullopt;
        return Optimum{best_, best_tuple_};
    }

private:
    bool push(Value v) {
        for (std::size_t i = 0; i < primes_.size(); ++i) {
            const Value c = mod(v, primes_[i]);
            if (counts_[i][c] == 0 && occupied_[i] + 1 >= primes_[i]) {
                for (std::size_t u = 0; u < i; ++u) undo(u, mod(v, primes_[u]));
                return false;
            }
            if (counts_[i][c]++ == 0) ++occupied_[i];
        }
        chosen_.push_back(v);
        return true;
    }

    void undo(std::size_t i, Value c) {
        if (--counts_[i][c] == 0) --occupied_[i];
    }

    void pop() {
        const Value v = chosen_.back();
        chosen_.pop_back();
        for (std::size_t i = 0; i < primes_.size(); ++i) undo(i, mod(v, primes_[i]));
    }

    void descend(std::size_t next) {
        const auto remaining = static_cast<std::size_t>(k_) - chosen_.size();
        if (remaining == 0) {
            const Value d = chosen_.back() - chosen_.front();
            if (d < best_) {
                best_ = d;
                best_tuple_ = chosen_;
            }
            return;
        }
        for (std::size_t j = next; j + remaining <= pool_.size(); ++j) {
            // The last element sits at least remaining-1 positions further on.
            if (pool_[j + remaining - 1] - chosen_.front() >= best_) return;
            if (!push(pool_[j])) continue;
            descend(j + 1);
            pop();
        }
    }

    std::span<const Value> pool_;
    int k_;
    std::vector<Value> primes_;
    std::vector<std::vector<int>> counts_;
    std::vector<Value> occupied_;
    Tuple chosen_;
    Value best_ = 0;
    Tuple best_tuple_;
};

}  // namespace

Report full_verify(std::span<const Value> tuple, int k) {
    if (k < 1) throw std::invalid_argument("verify: k must be positive");
    if (tuple.size() != static_cast<std::size_t>(k))
        throw std::invalid_argument("verify: expected " + std::to_string(k) + " elements, got " +
                                    std::to_string(tuple.size()));
    require_increasing(tuple);
    return check_primes(tuple, small_primes(k));
}

Report check_admissible(std::span<const Value> tuple) {
    require_increasing(tuple);
    return check_primes(tuple, small_primes(static_cast<Value>(tuple.size())));
}

std::optional<Optimum> min_diameter_with_first(std::span<const Value> pool, int k) {
    if (k < 1) throw std::invalid_argument("verify: k must be positive");
    return BranchAndBound(pool, k).run();
}

Optimum brute_force_optimal(int k, Value cap) {
    if (k < 1 || k > kMaxOracleK)
        throw std::invalid_argument("brute_force_optimal: k must be in [1, " + std::to_string(kMaxOracleK) + "]");
    if (cap <= 0) {
        const double kd = k;
        cap = static_cast<Value>(std::ceil(1.5 * (kd * std::log(kd) + kd)));
        cap = std::max<Value>(cap, 2 * k);
    }
    std::vector<Value> pool(static_cast<std::size_t>(cap) + 1);
    for (Value v = 0; v <= cap; ++v) pool[v] = v;
    auto found = min_diameter_with_first(pool, k);
    if (!found) throw std::runtime_error("brute_force_optimal: no admissible tuple within cap");
    return *found;
}

std::optional<Value> per_start_optimal(int k, Value v, const ProblemContext& context) {
    if (k < 1 || k > kMaxPerStartK)
        throw std::invalid_argument("per_start_optimal: k must be in [1, " + std::to_string(kMaxPerStartK) + "]");
    const auto candidates = context.candidates();
    auto it = std::lower_bound(candidates.begin(), candidates.end(), v);
    if (it == candidates.end() || *it != v) return std::nullopt;
    auto found = min_diameter_with_first(std::span<const Value>(&*it, static_cast<std::size_t>(candidates.end() - it)), k);
    if (!found) return std::nullopt;
    return found->diameter;
}

}  // namespace admtuple::verify
