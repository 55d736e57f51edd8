#include <sstream>
#include <stdexcept>

#include <doctest.h>

#include "admtuple/tuple_io.hpp"
#include "admtuple/verify.hpp"
#include "support.hpp"

using namespace admtuple;

namespace {

// Plain exhaustive search: every increasing tuple from 0 inside [0, cap].
Value exhaustive_min_diameter(int k, Value cap) {
    const auto primes = testing::trial_division_primes(k);
    Value best = cap + 1;
    std::vector<Value> cur{0};
    auto rec = [&](auto&& self, Value next) -> void {
        if (static_cast<int>(cur.size()) == k) {
            if (testing::misses_a_class(cur, primes)) best = std::min(best, cur.back());
            return;
        }
        for (Value v = next; v <= cap && v < best; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return best;
}

}  // namespace

TEST_CASE("full_verify") {
    const std::vector<Value> fig1{0, 2, 8, 12, 14, 18, 30};
    CHECK(verify::full_verify(fig1, 7).admissible);
    const auto bad = verify::full_verify(std::vector<Value>{0, 1, 2}, 3);
    CHECK_FALSE(bad.admissible);
    CHECK(bad.failing_prime == std::optional<Value>(2));
    const auto bad3 = verify::full_verify(std::vector<Value>{0, 2, 4}, 3);
    CHECK(bad3.failing_prime == std::optional<Value>(3));
    CHECK_THROWS_AS(verify::full_verify(fig1, 6), std::invalid_argument);
    CHECK_THROWS_AS(verify::full_verify(std::vector<Value>{0, 4, 2}, 3), std::invalid_argument);
    CHECK(verify::full_verify(std::vector<Value>{-4, -2, 2}, 3).admissible);
    CHECK(verify::check_admissible(std::vector<Value>{0, 2, 6, 8, 12}).admissible);
}

TEST_CASE("brute-force oracle against a plain enumeration") {
    for (int k = 2; k <= 6; ++k) {
        CAPTURE(k);
        CHECK(verify::brute_force_optimal(k).diameter == exhaustive_min_diameter(k, 2 * k * k));
    }
}

TEST_CASE("brute-force oracle values") {
    const Value known[] = {0, 0, 2, 6, 8, 12, 16, 20, 26, 30, 32, 36, 42};
    for (int k = 2; k <= 10; ++k) {
        const auto opt = verify::brute_force_optimal(k);
        CAPTURE(k);
        CHECK(opt.diameter == known[k]);
        CHECK(opt.witness.size() == static_cast<std::size_t>(k));
        CHECK(opt.witness.front() == 0);
        CHECK(diameter(opt.witness) == opt.diameter);
        CHECK(verify::full_verify(opt.witness, k).admissible);
    }
    CHECK_THROWS_AS(verify::brute_force_optimal(13), std::invalid_argument);
    CHECK_THROWS_AS(verify::brute_force_optimal(7, 15), std::runtime_error);
}

TEST_CASE("per-start oracle") {
    const auto ctx = build_context(5, 30);
    CHECK(verify::per_start_optimal(5, 0, *ctx) == std::optional<Value>(12));
    CHECK_FALSE(verify::per_start_optimal(5, 28, *ctx).has_value());
    // On the unsieved interval every start is a translate of start 0.
    const auto open = testing::interval_context(5, 60);
    CHECK(verify::per_start_optimal(5, 7, *open) == verify::per_start_optimal(5, 0, *open));
    CHECK_THROWS_AS(verify::per_start_optimal(11, 0, *ctx), std::invalid_argument);
}

TEST_CASE("tuple file round trip") {
    const Tuple t{3, 5, 9, 11};
    std::stringstream ss;
    write_tuple(ss, t);
    CHECK(ss.str().rfind("# k=4 diameter=8\n", 0) == 0);
    CHECK(read_tuple(ss) == t);

    std::istringstream commented("# header\n\n-2\n0\n  4\n# trailing\n");
    CHECK(read_tuple(commented) == Tuple{-2, 0, 4});

    std::istringstream unsorted("1\n1\n");
    CHECK_THROWS_AS(read_tuple(unsorted), std::runtime_error);
    std::istringstream junk("1\nx\n");
    CHECK_THROWS_AS(read_tuple(junk), std::runtime_error);
    CHECK_THROWS_AS(read_tuple_file("/nonexistent/tuple.txt"), std::runtime_error);
    CHECK(normalized(t) == Tuple{0, 2, 6, 8});
}
