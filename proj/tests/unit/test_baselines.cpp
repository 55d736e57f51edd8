#include <cmath>

#include <doctest.h>

#include "admtuple/baselines.hpp"
#include "admtuple/verify.hpp"
#include "support.hpp"

using namespace admtuple;
namespace bl = admtuple::baselines;

namespace {

void require_valid(const Tuple& t, int k) {
    REQUIRE(t.size() == static_cast<std::size_t>(k));
    REQUIRE(verify::full_verify(t, k).admissible);
}

}  // namespace

TEST_CASE("method names") {
    CHECK(bl::all_methods().size() == 6);
    for (auto m : bl::all_methods()) CHECK(bl::parse_method(bl::method_name(m)) == m);
    CHECK_FALSE(bl::parse_method("zhang").has_value());
}

TEST_CASE("primes past k") {
    CHECK(bl::primes_past_k(3) == Tuple{5, 7, 11});
    CHECK(bl::primes_past_k(5) == Tuple{7, 11, 13, 17, 19});
    require_valid(bl::primes_past_k(200), 200);
}

TEST_CASE("eratosthenes") {
    // Every window of three consecutive primes starting below 100, checked directly.
    const auto primes = testing::trial_division_primes(200);
    Value best = 1000;
    for (std::size_t i = 0; i + 2 < primes.size() && primes[i] < 100; ++i) {
        std::vector<Value> w{primes[i], primes[i + 1], primes[i + 2]};
        if (testing::misses_a_class(w, {2, 3})) best = std::min(best, w[2] - w[0]);
    }
    const auto t3 = bl::eratosthenes_tuple(3);
    require_valid(t3, 3);
    CHECK(diameter(t3) == best);
    for (int k : {10, 50, 100}) {
        const auto t = bl::eratosthenes_tuple(k);
        require_valid(t, k);
        CHECK(diameter(t) <= diameter(bl::primes_past_k(k)));
    }
}

TEST_CASE("every method yields a verified k-tuple") {
    for (int k : {2, 3, 10, 50, 100}) {
        for (auto m : bl::all_methods()) {
            CAPTURE(k);
            CAPTURE(bl::method_name(m));
            require_valid(bl::run(m, k), k);
        }
    }
}

TEST_CASE("hensley-richards") {
    for (int k : {10, 100, 1000}) require_valid(bl::hensley_richards(k), k);
    CHECK(diameter(bl::hensley_richards(10)) <= 2 * verify::brute_force_optimal(10).diameter);
    const double k = 1000;
    const double bound = k * std::log(k) + k * std::log(std::log(k)) - (1 + std::log(2.0)) * k + 2000;
    CHECK(static_cast<double>(diameter(bl::hensley_richards(1000))) <= bound);
    // Symmetric around 0.
    const auto t = bl::hensley_richards(100);
    CHECK(t.front() < 0);
    CHECK(t.back() > 0);
}

TEST_CASE("schinzel") {
    for (int k : {10, 100, 1000}) {
        const auto plain = bl::schinzel(k, false);
        const auto shifted = bl::schinzel(k, true);
        require_valid(plain, k);
        require_valid(shifted, k);
        CHECK(diameter(shifted) <= diameter(plain));
    }
    for (int k : {100, 300}) CHECK(diameter(bl::schinzel(k, false)) > 0);
    // Fixed shift: survivors of [s, s + x] only.
    const auto at = bl::schinzel(50, true, -100);
    require_valid(at, 50);
    CHECK(at.front() >= -100);
}

TEST_CASE("shifted greedy") {
    for (int k : {50, 105, 1000}) require_valid(bl::shifted_greedy(k), k);
    for (int k : {500, 1000}) CHECK(diameter(bl::shifted_greedy(k)) <= diameter(bl::schinzel(k, true)));
    CHECK(static_cast<double>(diameter(bl::shifted_greedy(1000))) <= 1.05 * (1000 * std::log(1000.0) + 1000));
    require_valid(bl::shifted_greedy(200, std::nullopt, 0.5), 200);
    require_valid(bl::shifted_greedy(200, std::nullopt, 2.0), 200);
}

TEST_CASE("greedy sieve helper") {
    // Classes mod 3 of 0..8 all hold three values: the lowest class index goes.
    const auto kept = bl::greedy_sieve({0, 1, 2, 3, 4, 5, 6, 7, 8}, std::vector<Value>{3});
    CHECK(kept == std::vector<Value>{1, 2, 4, 5, 7, 8});
    // Nothing to do when a class is already empty.
    CHECK(bl::greedy_sieve({0, 1, 3}, std::vector<Value>{3}) == std::vector<Value>{0, 1, 3});
}

TEST_CASE("best admissible window") {
    const std::vector<Value> line{0, 1, 2, 4, 6, 10};
    const auto w = bl::best_admissible_window(line, 3, 0, 10);
    REQUIRE(w.has_value());
    CHECK(*w == Tuple{4, 6, 10});
    CHECK_FALSE(bl::best_admissible_window(line, 3, 5, 10).has_value());
}

TEST_CASE("context greedy stays inside the context") {
    const auto ctx = build_context(50, default_upper_bound(50));
    const auto t = bl::context_greedy(*ctx, 0, 40);
    REQUIRE(t.has_value());
    require_valid(*t, 50);
    CHECK(t->front() <= 40);
    for (Value v : *t) CHECK(ctx->contains(v));
}
