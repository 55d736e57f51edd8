#include <random>
#include <stdexcept>

#include <doctest.h>

#include "admtuple/operators.hpp"
#include "admtuple/verify.hpp"
#include "support.hpp"

using namespace admtuple;

namespace {

TupleState state_of(std::vector<Value> h, const ContextPtr& ctx) { return rebuild(h, ctx); }

std::vector<Value> values_of(const TupleState& s) { return {s.values().begin(), s.values().end()}; }

bool gen_coin(std::mt19937_64& rng) { return rng() % 2 == 0; }

// Random admissible state: greedy fill of a random window in random order.
TupleState random_admissible(const ContextPtr& ctx, std::mt19937_64& rng, std::size_t max_size) {
    const auto cands = ctx->candidates();
    const std::size_t width = std::max<std::size_t>(4, cands.size() / 3);
    const std::size_t lo = rng() % (cands.size() - width + 1);
    std::vector<std::size_t> order(width);
    std::iota(order.begin(), order.end(), lo);
    std::shuffle(order.begin(), order.end(), rng);
    auto s = empty_state(ctx);
    for (std::size_t ci : order) {
        if (s.size() >= max_size) break;
        if (s.violation_delta_index(ci) == 0) s.add_index(ci);
    }
    // Thin the interior so that single inserts exist too.
    if (s.size() > 2 && gen_coin(rng))
        for (Value v : std::vector<Value>(s.values().begin() + 1, s.values().end() - 1))
            if (rng() % 8 == 0) s.remove(v);
    return s;
}

void require_closed(const TupleState& s) {
    REQUIRE(s.is_admissible());
    REQUIRE(s == rebuild(s.values(), s.context_ptr()));
    const auto v = values_of(s);
    REQUIRE(verify::check_admissible(v).admissible);
}

}  // namespace

TEST_CASE("side and level basics") {
    CHECK(reverse(Side::Left) == Side::Right);
    CHECK(reverse(Side::Right) == Side::Left);
    CHECK(insert_level(2) == InsertLevel::Two);
    CHECK_THROWS_AS(insert_level(3), std::invalid_argument);
    CHECK_THROWS_AS(insert_level(-1), std::invalid_argument);
}

TEST_CASE("side_remove") {
    const auto ctx = testing::interval_context(7, 30, {2, 3, 5, 7});
    auto s = state_of({0, 2, 8, 12, 14, 18, 30}, ctx);
    side_remove(s, Side::Right);
    CHECK(values_of(s) == std::vector<Value>{0, 2, 8, 12, 14, 18});
    CHECK(s.diameter() == 18);
    auto t = state_of({0, 2, 8}, ctx);
    side_remove(t, Side::Left);
    t.add(0);
    CHECK(t == state_of({0, 2, 8}, ctx));
    auto single = state_of({4}, ctx);
    side_remove(single, Side::Right);
    CHECK(single.empty());
    CHECK(single.is_admissible());
    CHECK_THROWS_AS(side_remove(single, Side::Left), std::logic_error);
}

TEST_CASE("side_add") {
    const auto ctx = build_context(7, 30);
    auto s = state_of({0, 2, 6}, ctx);
    CHECK(side_add(s, Side::Right));
    CHECK(values_of(s) == std::vector<Value>{0, 2, 6, 8});
    CHECK(s.is_admissible());

    auto left_edge = state_of({0, 2, 6}, ctx);
    CHECK_FALSE(side_add(left_edge, Side::Left));
    CHECK(left_edge == state_of({0, 2, 6}, ctx));

    auto right_edge = state_of({24, 26, 30}, ctx);
    CHECK_FALSE(side_add(right_edge, Side::Right));
    CHECK(right_edge.size() == 3);
}

TEST_CASE("repair") {
    const auto ctx = build_context(7, 30);
    auto exact = state_of({0, 2, 6, 8, 12, 18, 20}, ctx);
    CHECK(repair(exact, 7));
    CHECK(exact == state_of({0, 2, 6, 8, 12, 18, 20}, ctx));

    // Left is blocked at the first candidate: growth goes right.
    auto short_one = state_of({0, 2, 6, 8, 12, 18}, ctx);
    CHECK(repair(short_one, 7));
    CHECK(values_of(short_one) == std::vector<Value>{0, 2, 6, 8, 12, 18, 20});

    // Two removals, each on the side leaving the smaller diameter.
    const auto wide = testing::interval_context(4, 50, {2, 3});
    auto big = state_of({0, 20, 24, 26, 30, 42}, wide);
    CHECK(repair(big, 4));
    CHECK(values_of(big) == std::vector<Value>{20, 24, 26, 30});

    // Nowhere to grow.
    const auto tight = make_context(3, 6, {0, 2, 6}, primes_up_to(3));
    auto stuck = state_of({0, 2}, tight);
    CHECK_FALSE(repair(stuck, 5));
    CHECK(stuck.is_admissible());
}

TEST_CASE("accept_worsening frequency") {
    Rng rng(5);
    int hits = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) hits += accept_worsening(12, 11, 1.0, rng);
    CHECK(hits / double(n) == doctest::Approx(0.5).epsilon(0.04));
    hits = 0;
    for (int i = 0; i < n; ++i) hits += accept_worsening(14, 10, 0.0, rng);
    CHECK(hits / double(n) == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("shift_search") {
    Rng rng(3);
    SUBCASE("improving single shift is always kept") {
        const auto ctx = make_context(2, 30, {8, 10, 20, 22}, primes_up_to(2));
        for (int i = 0; i < 20; ++i) {
            auto s = state_of({10, 20}, ctx);
            const auto out = shift_search(s, 1, 1.0, rng);
            CHECK(out.accepted);
            CHECK(out.shifts == 1);
            CHECK(s.diameter() == 2);
        }
    }
    SUBCASE("failed first add returns the original") {
        const auto ctx = make_context(3, 6, {0, 2, 6}, primes_up_to(3));
        for (int i = 0; i < 10; ++i) {
            auto s = state_of({0, 2, 6}, ctx);
            const auto out = shift_search(s, 5, 1.0, rng);
            CHECK_FALSE(out.accepted);
            CHECK(out.shifts == 0);
            CHECK_FALSE(out.best_diameter.has_value());
            CHECK(s == state_of({0, 2, 6}, ctx));
        }
    }
    SUBCASE("closure and distance bound") {
        const auto ctx = build_context(60, default_upper_bound(60));
        std::mt19937_64 gen(9);
        for (int i = 0; i < 200; ++i) {
            auto s = random_admissible(ctx, gen, 60);
            if (s.size() < 2) continue;
            const auto before = values_of(s);
            const int nl = 1 + static_cast<int>(gen() % 10);
            const auto out = shift_search(s, nl, 1.0, rng);
            require_closed(s);
            CHECK(s.size() == before.size());
            const auto d = distance(before, values_of(s));
            CHECK((d == 0 || d <= static_cast<std::size_t>(2 * nl)));
            if (!out.accepted) CHECK(values_of(s) == before);
        }
    }
}

TEST_CASE("second_best_column and members_of_cell") {
    const auto ctx = testing::interval_context(3, 20, {3});
    const auto a = state_of({1, 2, 4, 7}, ctx);  // counts (0, 3, 1)
    auto sb = second_best_column(a, 0);
    CHECK(sb.column == 2);
    CHECK(sb.count == 1);
    const auto b = state_of({1, 2, 4, 5}, ctx);  // counts (0, 2, 2)
    sb = second_best_column(b, 0);
    CHECK(sb.column == 1);
    CHECK(sb.count == 2);
    CHECK_THROWS_AS(second_best_column(empty_state(ctx), 0), std::logic_error);

    const auto fig = testing::interval_context(7, 30, {2, 3, 5, 7});
    const auto s = state_of({0, 2, 8, 12, 14, 18, 30}, fig);
    CHECK(members_of_cell(s, 0, 0) == std::vector<Value>{0, 2, 8, 12, 14, 18, 30});
    CHECK(members_of_cell(s, 0, 1).empty());
    for (std::size_t i = 0; i < s.row_count(); ++i) {
        std::size_t total = 0;
        for (std::size_t j = 0; j < static_cast<std::size_t>(fig->effective_primes()[i]); ++j) {
            const auto w = members_of_cell(s, i, j);
            CHECK(w.size() == s.occupancy(i, j));
            total += w.size();
        }
        CHECK(total == s.size());
    }
}

TEST_CASE("insert_move") {
    Rng rng(1);
    const auto ctx = build_context(7, 30);
    auto s = state_of({0, 8}, ctx);
    const auto out = insert_move(s, {InsertLevel::Zero, false}, rng);
    CHECK(out.action == InsertAction::Insert);
    CHECK(values_of(s) == std::vector<Value>{0, 2, 8});

    auto tiny = state_of({0}, ctx);
    CHECK(insert_move(tiny, {}, rng).action == InsertAction::None);
    CHECK(action_name(InsertAction::Plateau) == "plateau");
}

TEST_CASE("insert_move cardinality semantics") {
    std::mt19937_64 gen(21);
    Rng rng(22);
    std::size_t fired[4] = {0, 0, 0, 0};
    for (int k : {30, 80}) {
        const auto ctx = build_context(k, default_upper_bound(k));
        for (int trial = 0; trial < 600; ++trial) {
            auto s = random_admissible(ctx, gen, static_cast<std::size_t>(k));
            if (s.size() < 2) continue;
            const auto level = static_cast<InsertLevel>(gen() % 3);
            const bool strict = gen() % 4 == 0;
            const auto before = s;
            const auto out = insert_move(s, {level, strict}, rng);
            ++fired[static_cast<int>(out.action)];
            require_closed(s);
            CHECK(s.diameter() <= before.diameter());
            switch (out.action) {
                case InsertAction::None: CHECK(s == before); break;
                case InsertAction::Insert:
                    CHECK_FALSE((strict && level != InsertLevel::Zero));
                    CHECK(s.size() == before.size() + 1);
                    break;
                case InsertAction::Exchange:
                    CHECK(level != InsertLevel::Zero);
                    CHECK(out.added > out.removed);
                    CHECK(s.size() == before.size() + out.added - out.removed);
                    break;
                case InsertAction::Plateau:
                    CHECK(level == InsertLevel::Two);
                    CHECK(out.added == out.removed);
                    CHECK(s.size() == before.size());
                    break;
            }
        }
    }
    CHECK(fired[static_cast<int>(InsertAction::Insert)] > 0);
    CHECK(fired[static_cast<int>(InsertAction::Plateau)] + fired[static_cast<int>(InsertAction::Exchange)] > 0);
}

TEST_CASE("local_search") {
    Rng rng(4);
    std::mt19937_64 gen(8);
    const int k = 40;
    const auto ctx = build_context(k, default_upper_bound(k));
    int improved = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto s = random_admissible(ctx, gen, static_cast<std::size_t>(k));
        if (s.size() < 2 || !repair(s, k)) continue;
        const auto before = values_of(s);
        const int removals = 1 + static_cast<int>(gen() % 3);
        const int budget = static_cast<int>(gen() % 50);
        const auto out = local_search(s, removals, budget, {}, rng);
        require_closed(s);
        CHECK(s.size() == static_cast<std::size_t>(k));
        CHECK(out.diameter_before == diameter(before));
        CHECK(out.diameter_after == s.diameter());
        if (!out.repaired) CHECK(values_of(s) == before);
        if (out.reached_k && out.repaired) {
            CHECK(out.diameter_after < out.diameter_before);
            ++improved;
        }
        if (budget == 0) CHECK(out.insert_calls == 0);
    }
    CHECK(improved > 0);
}

TEST_CASE("local_search re-inserts an interior value") {
    // One element short of the k=8 optimum, padded on the right: removing the
    // pad and inserting the missing interior value strictly improves.
    const auto opt = verify::brute_force_optimal(8);
    const auto ctx = testing::interval_context(8, 80);
    Rng rng(2);
    for (std::size_t drop = 1; drop + 1 < opt.witness.size(); ++drop) {
        std::vector<Value> h;
        for (std::size_t i = 0; i < opt.witness.size(); ++i)
            if (i != drop) h.push_back(opt.witness[i]);
        auto s = rebuild(h, ctx);
        REQUIRE(side_add(s, Side::Right));
        const Value d0 = s.diameter();
        bool better = false;
        for (int t = 0; t < 20 && !better; ++t) {
            auto trial = s;
            local_search(trial, 1, 10, {}, rng);
            better = trial.diameter() < d0;
        }
        CHECK(better);
    }
}
