#include "admtuple/primes.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace admtuple {

PrimeSet::PrimeSet(std::vector<Value> primes) : primes_(std::move(primes)) {
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (!is_prime(primes_[i]))
            throw std::invalid_argument("PrimeSet: " + std::to_string(primes_[i]) + " is not prime");
        if (i > 0 && primes_[i] <= primes_[i - 1])
            throw std::invalid_argument("PrimeSet: primes must be strictly increasing");
    }
}

bool PrimeSet::contains(Value p) const {
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

PrimeSet PrimeSet::below(Value bound) const {
    PrimeSet out;
    for (Value p : primes_)
        if (p < bound) out.primes_.push_back(p);
    return out;
}

PrimeSet PrimeSet::minus(const PrimeSet& other) const {
    PrimeSet out;
    std::set_difference(primes_.begin(), primes_.end(), other.primes_.begin(), other.primes_.end(),
                        std::back_inserter(out.primes_));
    return out;
}

PrimeSet primes_up_to(Value n) {
    std::vector<Value> out;
    if (n < 2) return PrimeSet{};
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    for (Value i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (Value j = i * i; j <= n; j += i) composite[j] = true;
    }
    return PrimeSet(PrimeSet::Trusted{}, std::move(out));
}

bool is_prime(Value n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (Value d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

Value next_prime(Value n) {
    Value c = std::max<Value>(n + 1, 2);
    while (!is_prime(c)) ++c;
    return c;
}

}  // namespace admtuple
