#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "admtuple/context.hpp"
#include "admtuple/operators.hpp"
#include "admtuple/tuple_state.hpp"
#include "admtuple/types.hpp"

namespace admtuple::rals {

/// Tunables of the region-based adaptive local search. Defaults are the base
/// configuration; best() raises gamma to 0.1 and enables the second local
/// search with 10 insert moves.
struct RalsConfig {
    int iterations = 1000;       ///< T
    int regions = 20;            ///< N_R
    double gamma = 0.01;         ///< probability of a uniform pick in selection
    int tournament = 4;          ///< N_T
    int shifts = 10;             ///< N_L
    double beta = 1.0;           ///< worsening-acceptance exponent
    InsertLevel level = InsertLevel::Two;
    int removals_first = 1;      ///< N_S of the first local search
    int removals_second = 2;     ///< N_S of the second local search
    int inserts_first = 500;     ///< N_I1
    int inserts_second = 0;      ///< N_I2; 0 skips the second local search
    std::uint64_t seed = 1;
    std::optional<Value> upper;  ///< U; default ceil(1.5 (k ln k + k))
    /// Levels >= 1 skip the immediate single insert (alternative reading).
    bool strict_levels = false;
    /// Read the two local-search literals as insert levels 1 and 2 (with one
    /// removal each) instead of removal counts.
    bool literals_as_levels = false;
    /// Independent workers sharing one database. 1 = the sequential loop.
    int workers = 1;
    /// Drop class 1 modulo the small primes from V. Off keeps every integer
    /// of [0, U] as a candidate.
    bool sieve_small_primes = true;

    static RalsConfig basever() { return {}; }
    static RalsConfig best() {
        RalsConfig c;
        c.gamma = 0.1;
        c.inserts_second = 10;
        return c;
    }

    /// Throws std::invalid_argument on negative counts, gamma outside [0, 1],
    /// tournament < 1, shifts < 1, beta < 0 or regions < 1.
    void validate() const;
};

/// "basever" or "best".
std::optional<RalsConfig> preset(std::string_view name);

/// Best-so-far k-tuples indexed by their first element v, with f(v) the
/// diameter of the stored tuple. [0, U] is cut into N_R equal-width regions;
/// an entry belongs to the region holding its v.
class SolutionDatabase {
public:
    struct Entry {
        Value diameter = 0;
        Tuple tuple;
    };
    enum class SaveResult { Inserted, Improved, Dominated };

    SolutionDatabase(int k, Value upper, int regions);

    int k() const { return k_; }
    Value upper() const { return upper_; }
    int region_count() const { return regions_; }
    int region_of(Value v) const;
    /// Inclusive [lo, hi] of region r; lo > hi for a region narrower than one integer.
    std::pair<Value, Value> region_bounds(int r) const;

    /// Stores the tuple unless an entry with the same first element is at
    /// least as narrow. Throws std::invalid_argument if the tuple does not
    /// have k elements, is inadmissible, or starts outside [0, U].
    SaveResult save(const Tuple& tuple);

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::map<Value, Entry>& entries() const { return entries_; }
    const Entry& at(Value v) const { return entries_.at(v); }

    /// First element of region r's narrowest entry (smallest v on ties).
    std::optional<Value> region_best(int r) const { return region_best_[static_cast<std::size_t>(r)]; }
    /// region_best of every non-empty region, in region order.
    std::vector<Value> region_candidates() const;

    /// Narrowest entry overall (smallest v on ties). Throws on an empty database.
    const Entry& best() const;

    /// All (v, f(v)) pairs sorted by v.
    std::vector<std::pair<Value, Value>> landscape() const;

private:
    int k_;
    Value upper_;
    int regions_;
    std::map<Value, Entry> entries_;
    std::vector<std::optional<Value>> region_best_;
};

struct InitReport {
    std::size_t entries = 0;
    std::vector<int> empty_regions;
};

/// Seeds one greedy-sieve tuple per region: the candidates from the region's
/// lower end are greedily sieved over the effective primes and the narrowest
/// k-window starting inside the region is saved. Regions that cannot host a
/// k-tuple below U are reported. Throws std::runtime_error if no region can.
SolutionDatabase db_init(const ProblemContext& context, int regions, InitReport* report = nullptr);

/// First element of the selected entry: each non-empty region offers its best
/// entry; with probability gamma one of them is taken uniformly, otherwise
/// the narrowest of `tournament` uniform draws (with replacement). Throws
/// std::logic_error on an empty database.
Value db_select_start(const SolutionDatabase& db, double gamma, int tournament, Rng& rng);

/// The selected entry as a freshly rebuilt search state.
TupleState db_select(const SolutionDatabase& db, const ContextPtr& context, double gamma, int tournament, Rng& rng);

/// Sorted (v, f(v)) pairs.
std::vector<std::pair<Value, Value>> landscape_snapshot(const SolutionDatabase& db);

struct TraceRow {
    int iteration = 0;
    Value best_diameter = 0;
    Value selected_start = 0;
    std::string_view op;  ///< "shift", "ls1" or "ls2"
    bool accepted = false;  ///< the database kept the operator's output
};

struct RalsResult {
    Tuple best;                         ///< as stored (first element anywhere in [0, U])
    Value diameter = 0;
    std::vector<TraceRow> trace;
    std::vector<Value> best_per_iteration;  ///< entry t: best diameter after iteration t+1
    std::vector<std::pair<Value, Value>> landscape;
    InitReport init;
    Value initial_best = 0;             ///< best diameter straight after db_init
    double seconds = 0.0;
    std::size_t reverted_exchanges = 0;
    /// Local searches whose insert phase got back to k elements without
    /// ending strictly narrower than they started. Always zero unless the
    /// operators are broken.
    std::size_t improvement_claim_violations = 0;
    ContextPtr context;
};

/// The full search on a prepared context.
RalsResult rals_solve(const ContextPtr& context, const RalsConfig& config);

/// Builds the context (U from config.upper or the default) and runs the search.
RalsResult rals_solve(int k, const RalsConfig& config);

}  // namespace admtuple::rals
