#include "admtuple/rals.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "admtuple/baselines.hpp"
#include "admtuple/verify.hpp"

namespace admtuple::rals {

void RalsConfig::validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("rals config: " + what); };
    if (iterations < 0) fail("iterations must be >= 0");
    if (regions < 1) fail("regions must be >= 1");
    if (!(gamma >= 0.0 && gamma <= 1.0)) fail("gamma must lie in [0, 1]");
    if (tournament < 1) fail("tournament size must be >= 1");
    if (shifts < 1) fail("shift budget must be >= 1");
    if (!(beta >= 0.0)) fail("beta must be >= 0");
    if (removals_first < 0 || removals_second < 0) fail("removal counts must be >= 0");
    if (inserts_first < 0 || inserts_second < 0) fail("insert budgets must be >= 0");
    if (workers < 1) fail("workers must be >= 1");
    if (upper && *upper < 1) fail("U must be positive");
}

std::optional<RalsConfig> preset(std::string_view name) {
    if (name == "basever") return RalsConfig::basever();
    if (name == "best") return RalsConfig::best();
    return std::nullopt;
}

// -- database ------------------------------------------------------------------

SolutionDatabase::SolutionDatabase(int k, Value upper, int regions)
    : k_(k), upper_(upper), regions_(regions), region_best_(static_cast<std::size_t>(std::max(regions, 0))) {
    if (k < 1) throw std::invalid_argument("database: k must be positive");
    if (upper < 0) throw std::invalid_argument("database: U must be non-negative");
    if (regions < 1) throw std::invalid_argument("database: need at least one region");
}

int SolutionDatabase::region_of(Value v) const {
    if (v < 0 || v > upper_) throw std::out_of_range("database: value outside [0, U]");
    return static_cast<int>(v * regions_ / (upper_ + 1));
}

std::pair<Value, Value> SolutionDatabase::region_bounds(int r) const {
    const Value span = upper_ + 1;
    auto ceil_div = [](Value a, Value b) { return (a + b - 1) / b; };
    return {ceil_div(r * span, regions_), ceil_div((r + 1) * span, regions_) - 1};
}

SolutionDatabase::SaveResult SolutionDatabase::save(const Tuple& tuple) {
    if (tuple.size() != static_cast<std::size_t>(k_))
        throw std::invalid_argument("database: expected a " + std::to_string(k_) + "-tuple");
    if (tuple.front() < 0 || tuple.front() > upper_) throw std::invalid_argument("database: tuple starts outside [0, U]");
    auto report = verify::full_verify(tuple, k_);
    if (!report.admissible)
        throw std::invalid_argument("database: inadmissible tuple (prime " + std::to_string(*report.failing_prime) + ")");

    const Value v = tuple.front();
    const Value d = tuple.back() - tuple.front();
    SaveResult result = SaveResult::Inserted;
    auto it = entries_.find(v);
    if (it != entries_.end()) {
        if (d >= it->second.diameter) return SaveResult::Dominated;
        it->second = Entry{d, tuple};
        result = SaveResult::Improved;
    } else {
        entries_.emplace(v, Entry{d, tuple});
    }

    auto& slot = region_best_[static_cast<std::size_t>(region_of(v))];
    if (!slot) {
        slot = v;
    } else {
        const Value current = entries_.at(*slot).diameter;
        if (d < current || (d == current && v < *slot)) slot = v;
    }
    return result;
}

std::vector<Value> SolutionDatabase::region_candidates() const {
    std::vector<Value> out;
    for (const auto& slot : region_best_)
        if (slot) out.push_back(*slot);
    return out;
}

const SolutionDatabase::Entry& SolutionDatabase::best() const {
    if (entries_.empty()) throw std::logic_error("database is empty");
    const Entry* best = nullptr;
    for (const auto& [v, e] : entries_)
        if (!best || e.diameter < best->diameter) best = &e;
    return *best;
}

std::vector<std::pair<Value, Value>> SolutionDatabase::landscape() const {
    std::vector<std::pair<Value, Value>> out;
    out.reserve(entries_.size());
    for (const auto& [v, e] : entries_) out.emplace_back(v, e.diameter);
    return out;
}

SolutionDatabase db_init(const ProblemContext& context, int regions, InitReport* report) {
    SolutionDatabase db(context.k(), context.upper(), regions);
    InitReport local;
    for (int r = 0; r < regions; ++r) {
        auto [lo, hi] = db.region_bounds(r);
        std::optional<Tuple> tuple;
        if (lo <= hi) tuple = baselines::context_greedy(context, lo, hi);
        if (tuple) {
            db.save(*tuple);
        } else {
            local.empty_regions.push_back(r);
        }
    }
    local.entries = db.size();
    if (db.empty()) throw std::runtime_error("db_init: no region can host a " + std::to_string(context.k()) +
                                             "-tuple below U = " + std::to_string(context.upper()));
    if (report) *report = std::move(local);
    return db;
}

Value db_select_start(const SolutionDatabase& db, double gamma, int tournament, Rng& rng) {
    const auto candidates = db.region_candidates();
    if (candidates.empty()) throw std::logic_error("db_select: database is empty");
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < gamma) return candidates[pick(rng)];

    Value chosen = candidates[pick(rng)];
    for (int n = 1; n < tournament; ++n) {
        const Value other = candidates[pick(rng)];
        const Value d_other = db.at(other).diameter;
        const Value d_chosen = db.at(chosen).diameter;
        if (d_other < d_chosen || (d_other == d_chosen && other < chosen)) chosen = other;
    }
    return chosen;
}

TupleState db_select(const SolutionDatabase& db, const ContextPtr& context, double gamma, int tournament, Rng& rng) {
    const Value v = db_select_start(db, gamma, tournament, rng);
    return rebuild(db.at(v).tuple, context);
}

std::vector<std::pair<Value, Value>> landscape_snapshot(const SolutionDatabase& db) { return db.landscape(); }

// -- main loop -------------------------------------------------------------------

namespace {

struct SharedRun {
    SolutionDatabase& db;
    const ContextPtr& context;
    const RalsConfig& config;
    RalsResult& result;
    std::mutex mutex;
    std::atomic<int> next_iteration{0};
};

void run_worker(SharedRun& run, Rng rng) {
    const auto& config = run.config;
    InsertOptions first{config.level, config.strict_levels};
    InsertOptions second{config.level, config.strict_levels};
    int removals_first = config.removals_first;
    int removals_second = config.removals_second;
    if (config.literals_as_levels) {
        first.level = InsertLevel::One;
        second.level = InsertLevel::Two;
        removals_first = removals_second = 1;
    }

    for (;;) {
        const int t = run.next_iteration.fetch_add(1);
        if (t >= config.iterations) return;

        Value selected;
        TupleState state(run.context);
        {
            std::lock_guard lock(run.mutex);
            selected = db_select_start(run.db, config.gamma, config.tournament, rng);
            state = rebuild(run.db.at(selected).tuple, run.context);
        }

        std::vector<TraceRow> rows;
        std::size_t reverted = 0;
        std::size_t violations = 0;

        auto save = [&](std::string_view op) {
            std::lock_guard lock(run.mutex);
            const Tuple tuple(state.values().begin(), state.values().end());
            const auto res = run.db.save(tuple);
            rows.push_back(TraceRow{t + 1, run.db.best().diameter, selected, op,
                                    res != SolutionDatabase::SaveResult::Dominated});
        };

        shift_search(state, config.shifts, config.beta, rng);
        save("shift");

        auto local = [&](int removals, int inserts, const InsertOptions& options, std::string_view op) {
            const auto ls = local_search(state, removals, inserts, options, rng);
            reverted += ls.reverted_exchanges;
            if (ls.reached_k && ls.repaired && removals > 0 && !(ls.diameter_after < ls.diameter_before)) ++violations;
            save(op);
        };
        local(removals_first, config.inserts_first, first, "ls1");
        if (config.inserts_second > 0) local(removals_second, config.inserts_second, second, "ls2");

        std::lock_guard lock(run.mutex);
        auto& result = run.result;
        result.trace.insert(result.trace.end(), rows.begin(), rows.end());
        result.best_per_iteration.push_back(run.db.best().diameter);
        result.reverted_exchanges += reverted;
        result.improvement_claim_violations += violations;
    }
}

}  // namespace

RalsResult rals_solve(const ContextPtr& context, const RalsConfig& config) {
    config.validate();
    const auto started = std::chrono::steady_clock::now();
    RalsResult result;
    result.context = context;

    SolutionDatabase db = db_init(*context, config.regions, &result.init);
    result.initial_best = db.best().diameter;

    SharedRun run{db, context, config, result, {}, {0}};
    if (config.workers == 1) {
        run_worker(run, Rng(config.seed));
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < config.workers; ++w)
            threads.emplace_back([&run, seed = config.seed + static_cast<std::uint64_t>(w)] { run_worker(run, Rng(seed)); });
        for (auto& th : threads) th.join();
    }

    const auto& best = db.best();
    result.best = best.tuple;
    result.diameter = best.diameter;
    result.landscape = db.landscape();
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

RalsResult rals_solve(int k, const RalsConfig& config) {
    config.validate();
    const Value upper = config.upper.value_or(default_upper_bound(k));
    return rals_solve(build_context(k, upper, config.sieve_small_primes), config);
}

}  // namespace admtuple::rals
