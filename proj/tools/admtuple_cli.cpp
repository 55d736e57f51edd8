// admtuple: narrow admissible k-tuples from the command line.
//
// Exit codes: 0 success, 1 solver or verification failure, 2 usage error.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "admtuple/baselines.hpp"
#include "admtuple/context.hpp"
#include "admtuple/operators.hpp"
#include "admtuple/primes.hpp"
#include "admtuple/rals.hpp"
#include "admtuple/tuple_io.hpp"
#include "admtuple/verify.hpp"

namespace {

using namespace admtuple;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fixed(double x, int digits) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::fixed << std::setprecision(digits) << x;
    return os.str();
}

// Writes `out` only after it passes full_verify and survives a read-back.
void write_verified(const std::string& path, const Tuple& out, int k) {
    const auto report = verify::full_verify(out, k);
    if (!report.admissible)
        throw std::runtime_error("refusing to write an inadmissible tuple (fails at p=" +
                                 std::to_string(*report.failing_prime) + ")");
    write_tuple_file(path, out);
    if (read_tuple_file(path) != out) throw std::runtime_error("read-back mismatch for " + path);
}

// -- solve ----------------------------------------------------------------------

struct SolveFlags {
    int k = 0;
    std::string preset = "basever";
    std::string config_file;
    std::map<std::string, std::string> values;  // flag name -> raw value, set flags only
    std::string out, trace, landscape;
};

template <class T>
T parse_number(const std::string& key, const std::string& raw) {
    T value{};
    std::istringstream is(raw);
    is.imbue(std::locale::classic());
    if (!(is >> value) || !(is >> std::ws).eof()) throw UsageError("bad value for " + key + ": '" + raw + "'");
    return value;
}

void apply_setting(rals::RalsConfig& c, const std::string& key, const std::string& raw) {
    if (key == "T") c.iterations = parse_number<int>(key, raw);
    else if (key == "regions") c.regions = parse_number<int>(key, raw);
    else if (key == "gamma") c.gamma = parse_number<double>(key, raw);
    else if (key == "nt") c.tournament = parse_number<int>(key, raw);
    else if (key == "nl") c.shifts = parse_number<int>(key, raw);
    else if (key == "beta") c.beta = parse_number<double>(key, raw);
    else if (key == "level") c.level = insert_level(parse_number<int>(key, raw));
    else if (key == "ni1") c.inserts_first = parse_number<int>(key, raw);
    else if (key == "ni2") c.inserts_second = parse_number<int>(key, raw);
    else if (key == "ns1") c.removals_first = parse_number<int>(key, raw);
    else if (key == "ns2") c.removals_second = parse_number<int>(key, raw);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, raw);
    else if (key == "U") c.upper = parse_number<Value>(key, raw);
    else if (key == "workers") c.workers = parse_number<int>(key, raw);
    else if (key == "strict-levels") c.strict_levels = parse_number<int>(key, raw) != 0;
    else if (key == "literals-as-levels") c.literals_as_levels = parse_number<int>(key, raw) != 0;
    else if (key == "sieve") c.sieve_small_primes = parse_number<int>(key, raw) != 0;
    else throw UsageError("unknown setting '" + key + "'");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path);
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

rals::RalsConfig resolve_config(const SolveFlags& flags) {
    auto config = rals::preset(flags.preset);
    if (!config) throw UsageError("unknown preset '" + flags.preset + "'");
    if (!flags.config_file.empty())
        for (const auto& [key, raw] : read_config_file(flags.config_file)) {
            if (key == "preset") continue;  // presets come from --preset only
            apply_setting(*config, key, raw);
        }
    for (const auto& [key, raw] : flags.values) apply_setting(*config, key, raw);
    try {
        config->validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return *config;
}

int run_solve(const SolveFlags& flags) {
    const auto config = resolve_config(flags);
    const auto result = rals::rals_solve(flags.k, config);

    if (!verify::full_verify(result.best, flags.k).admissible) {
        std::cerr << "error: solver returned an inadmissible tuple\n";
        return kExitFailure;
    }
    if (!flags.out.empty()) write_verified(flags.out, normalized(result.best), flags.k);
    if (!flags.trace.empty()) {
        std::ofstream os(flags.trace);
        os << "iter,best_d,selected_v,op,accepted\n";
        for (const auto& row : result.trace)
            os << row.iteration << ',' << row.best_diameter << ',' << row.selected_start << ',' << row.op << ','
               << (row.accepted ? 1 : 0) << '\n';
    }
    if (!flags.landscape.empty()) {
        std::ofstream os(flags.landscape);
        os << "v,f_v\n";
        for (const auto& [v, f] : result.landscape) os << v << ',' << f << '\n';
    }
    std::cout << flags.k << ',' << result.diameter << ',' << fixed(result.seconds, 3) << '\n';
    return 0;
}

// -- sieve ----------------------------------------------------------------------

struct SieveFlags {
    std::string method;
    int k = 0;
    double tau = 1.0;
    std::optional<Value> shift;
    std::string out;
    std::string csv;
};

int run_sieve(const SieveFlags& flags) {
    const auto method = baselines::parse_method(flags.method);
    if (!method) throw UsageError("unknown method '" + flags.method + "'");
    const auto started = std::chrono::steady_clock::now();
    const Tuple tuple = baselines::run(*method, flags.k, baselines::SieveParams{flags.shift, flags.tau});
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (!verify::full_verify(tuple, flags.k).admissible) {
        std::cerr << "error: " << flags.method << " produced an inadmissible tuple\n";
        return kExitFailure;
    }
    if (!flags.out.empty()) write_verified(flags.out, tuple, flags.k);
    const std::string record = std::string(baselines::method_name(*method)) + ',' + std::to_string(flags.k) + ',' +
                               std::to_string(diameter(tuple)) + ',' + fixed(seconds, 3);
    if (!flags.csv.empty()) {
        std::ofstream os(flags.csv);
        os << "method,k,diameter,time\n" << record << '\n';
    }
    std::cout << record << '\n';
    return 0;
}

// -- bench ----------------------------------------------------------------------

struct BenchFlags {
    std::vector<int> k_list;
    std::vector<std::string> methods;
    std::vector<Value> targets;
    int runs = 1;
    std::uint64_t seed = 1;
    std::string preset = "best";
    std::optional<int> iterations;
    int workers = 1;
    bool no_time = false;
    std::string out;
};

struct RunRecord {
    Value diameter = 0;
    double seconds = 0.0;
};

RunRecord bench_one(const std::string& method, int k, std::uint64_t seed, const BenchFlags& flags) {
    const auto started = std::chrono::steady_clock::now();
    Tuple tuple;
    if (method == "rals") {
        auto config = *rals::preset(flags.preset);
        config.seed = seed;
        if (flags.iterations) config.iterations = *flags.iterations;
        tuple = rals::rals_solve(k, config).best;
    } else {
        tuple = baselines::run(*baselines::parse_method(method), k);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (!verify::full_verify(tuple, k).admissible) throw std::runtime_error(method + " produced an inadmissible tuple");
    return {diameter(tuple), seconds};
}

int run_bench(const BenchFlags& flags) {
    if (flags.k_list.empty()) throw UsageError("--k-list must not be empty");
    if (flags.runs < 1) throw UsageError("--runs must be >= 1");
    if (flags.workers < 1) throw UsageError("--workers must be >= 1");
    if (!rals::preset(flags.preset)) throw UsageError("unknown preset '" + flags.preset + "'");
    if (!flags.targets.empty() && flags.targets.size() != flags.k_list.size())
        throw UsageError("--target needs one diameter per entry of --k-list");
    for (const auto& m : flags.methods)
        if (m != "rals" && !baselines::parse_method(m)) throw UsageError("unknown method '" + m + "'");
    for (int k : flags.k_list)
        if (k < 2) throw UsageError("k must be >= 2");

    // Sieves are deterministic: one run each. RALS runs use seed + run index.
    struct Job {
        std::size_t cell;
        std::uint64_t seed;
    };
    struct Cell {
        std::string method;
        int k;
        std::optional<Value> target;
        std::vector<RunRecord> runs;
    };
    std::vector<Cell> cells;
    std::vector<Job> jobs;
    for (const auto& m : flags.methods)
        for (std::size_t i = 0; i < flags.k_list.size(); ++i) {
            Cell cell{m, flags.k_list[i], std::nullopt, {}};
            if (m == "rals" && !flags.targets.empty()) cell.target = flags.targets[i];
            const int n = m == "rals" ? flags.runs : 1;
            cell.runs.resize(static_cast<std::size_t>(n));
            for (int r = 0; r < n; ++r) jobs.push_back({cells.size(), flags.seed + static_cast<std::uint64_t>(r)});
            cells.push_back(std::move(cell));
        }

    std::vector<std::size_t> slot(jobs.size());
    {
        std::vector<std::size_t> filled(cells.size(), 0);
        for (std::size_t j = 0; j < jobs.size(); ++j) slot[j] = filled[jobs[j].cell]++;
    }
    std::mutex mutex;
    std::size_t next = 0;
    std::optional<std::string> failure;
    auto worker = [&] {
        for (;;) {
            std::size_t j;
            {
                std::lock_guard lock(mutex);
                if (next >= jobs.size() || failure) return;
                j = next++;
            }
            auto& cell = cells[jobs[j].cell];
            try {
                cell.runs[slot[j]] = bench_one(cell.method, cell.k, jobs[j].seed, flags);
            } catch (const std::exception& e) {
                std::lock_guard lock(mutex);
                failure = e.what();
            }
        }
    };
    std::vector<std::thread> threads;
    for (int w = 1; w < flags.workers; ++w) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
    if (failure) {
        std::cerr << "error: " << *failure << '\n';
        return kExitFailure;
    }

    std::ofstream file;
    if (!flags.out.empty()) file.open(flags.out);
    std::ostream& os = flags.out.empty() ? std::cout : file;
    os << "method,k,runs,min_d,mean_d" << (flags.no_time ? "" : ",mean_seconds") << ",succ_rate\n";
    for (const auto& cell : cells) {
        Value min_d = cell.runs.front().diameter;
        double sum_d = 0.0, sum_t = 0.0;
        std::size_t hits = 0;
        for (const auto& r : cell.runs) {
            min_d = std::min(min_d, r.diameter);
            sum_d += static_cast<double>(r.diameter);
            sum_t += r.seconds;
            if (cell.target && r.diameter <= *cell.target) ++hits;
        }
        const double n = static_cast<double>(cell.runs.size());
        os << cell.method << ',' << cell.k << ',' << cell.runs.size() << ',' << min_d << ',' << fixed(sum_d / n, 2);
        if (!flags.no_time) os << ',' << fixed(sum_t / n, 3);
        os << ',' << (cell.target ? fixed(static_cast<double>(hits) / n, 3) : std::string()) << '\n';
    }
    return 0;
}

// -- verify / oracle ------------------------------------------------------------

int run_verify(const std::string& path, int k) {
    const Tuple tuple = read_tuple_file(path);
    if (tuple.size() != static_cast<std::size_t>(k)) {
        std::cout << "fail: " << tuple.size() << " elements, expected " << k << '\n';
        return kExitFailure;
    }
    const auto report = verify::full_verify(tuple, k);
    if (!report.admissible) {
        std::cout << "fail: all classes occupied mod " << *report.failing_prime << '\n';
        return kExitFailure;
    }
    std::cout << "ok: k=" << k << " diameter=" << diameter(tuple) << '\n';
    return 0;
}

int run_oracle(int k, Value cap, const std::string& out) {
    if (k < 2 || k > verify::kMaxOracleK)
        throw UsageError("oracle supports 2 <= k <= " + std::to_string(verify::kMaxOracleK));
    const auto best = verify::brute_force_optimal(k, cap);
    if (!out.empty()) write_verified(out, best.witness, k);
    std::cout << k << ',' << best.diameter << '\n';
    return 0;
}

// -- improve ----------------------------------------------------------------------

struct ImproveFlags {
    std::string input;
    std::string out;
    int iterations = 100;
    int removals = 1;
    int inserts = 500;
    int shifts = 10;
    double beta = 1.0;
    int level = 2;
    std::uint64_t seed = 1;
};

// The tuple is normalized and searched over every integer of [0, U], so any
// admissible input is a valid starting point.
int run_improve(const ImproveFlags& flags) {
    const Tuple input = normalized(read_tuple_file(flags.input));
    const int k = static_cast<int>(input.size());
    if (k < 2) throw UsageError("improve needs at least two elements");
    if (!verify::full_verify(input, k).admissible) {
        std::cerr << "error: input tuple is not admissible\n";
        return kExitFailure;
    }
    const Value upper = std::max(default_upper_bound(k), diameter(input));
    std::vector<Value> all(static_cast<std::size_t>(upper + 1));
    std::iota(all.begin(), all.end(), Value{0});
    const auto context = make_context(k, upper, std::move(all), primes_up_to(k));

    Rng rng(flags.seed);
    const InsertOptions options{insert_level(flags.level), false};
    TupleState state = rebuild(input, context);
    Tuple best = input;
    for (int t = 0; t < flags.iterations; ++t) {
        shift_search(state, flags.shifts, flags.beta, rng);
        local_search(state, flags.removals, flags.inserts, options, rng);
        if (state.diameter() < diameter(best)) best.assign(state.values().begin(), state.values().end());
    }
    if (!flags.out.empty()) write_verified(flags.out, best, k);
    std::cout << k << ',' << diameter(input) << ',' << diameter(best) << '\n';
    return 0;
}

// -- sieve-context ------------------------------------------------------------------

int run_context(int k, std::optional<Value> upper) {
    const auto context = build_context(k, upper.value_or(default_upper_bound(k)));
    auto print = [](const char* name, const PrimeSet& primes) {
        std::cout << "# " << name;
        for (Value p : primes) std::cout << ' ' << p;
        std::cout << '\n';
    };
    std::cout << "# k=" << k << " U=" << context->upper() << " |V|=" << context->candidates().size() << '\n';
    print("P_C", context->full_primes());
    print("P_R", context->sieve_primes());
    print("P_L", context->removable_primes());
    print("P", context->effective_primes());
    for (Value v : context->candidates()) std::cout << v << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Narrow admissible prime k-tuples: sieves, region-based local search, verification."};
    app.require_subcommand(1);

    SolveFlags solve;
    auto* solve_cmd = app.add_subcommand("solve", "Run the region-based adaptive local search.\n"
                                                  "Prints k,diameter,seconds. Trace CSV: iter,best_d,selected_v,op,accepted. "
                                                  "Landscape CSV: v,f_v.");
    solve_cmd->add_option("--k", solve.k, "tuple size")->required()->check(CLI::Range(2, 1 << 20));
    solve_cmd->add_option("--preset", solve.preset, "basever or best")->capture_default_str();
    solve_cmd->add_option("--config", solve.config_file, "key=value file (keys as the flag names below)");
    struct Setting {
        const char* key;
        const char* help;
    };
    const Setting settings[] = {
        {"T", "iterations"},
        {"regions", "database regions N_R"},
        {"gamma", "uniform-selection probability"},
        {"nt", "tournament size N_T"},
        {"nl", "shift budget N_L"},
        {"beta", "worsening-acceptance exponent"},
        {"level", "insert level 0, 1 or 2"},
        {"ni1", "insert budget of the first local search"},
        {"ni2", "insert budget of the second local search (0 skips it)"},
        {"ns1", "removals of the first local search"},
        {"ns2", "removals of the second local search"},
        {"seed", "random seed (default 1)"},
        {"U", "upper end of the search range"},
        {"workers", "parallel workers sharing the database"},
        {"strict-levels", "1: levels 1 and 2 skip single inserts"},
        {"literals-as-levels", "1: run the two local searches at levels 1 and 2"},
        {"sieve", "0: keep every integer of [0, U] as a candidate (default 1)"},
    };
    for (const auto& s : settings) {
        const std::string key = s.key;
        solve_cmd->add_option_function<std::string>(
            "--" + key, [&solve, key](const std::string& raw) { solve.values[key] = raw; }, s.help);
    }
    solve_cmd->add_option("--out", solve.out, "tuple file");
    solve_cmd->add_option("--trace", solve.trace, "per-operator trace CSV");
    solve_cmd->add_option("--landscape", solve.landscape, "final database landscape CSV");

    SieveFlags sieve;
    auto* sieve_cmd = app.add_subcommand("sieve", "Run one classical sieve. Prints method,k,diameter,time.");
    std::string method_help = "one of:";
    for (auto m : baselines::all_methods()) method_help += " " + std::string(baselines::method_name(m));
    sieve_cmd->add_option("--method", sieve.method, method_help)->required();
    sieve_cmd->add_option("--k", sieve.k, "tuple size")->required()->check(CLI::Range(2, 1 << 20));
    sieve_cmd->add_option("--tau", sieve.tau, "shifted-greedy threshold factor")->capture_default_str();
    sieve_cmd->add_option("--shift", sieve.shift, "fixed interval start for the shifted methods");
    sieve_cmd->add_option("--out", sieve.out, "tuple file");
    sieve_cmd->add_option("--csv", sieve.csv, "CSV file with header method,k,diameter,time");

    BenchFlags bench;
    auto* bench_cmd = app.add_subcommand(
        "bench", "Compare methods over several k.\nCSV: method,k,runs,min_d,mean_d,mean_seconds,succ_rate "
                 "(succ_rate: fraction of rals runs reaching --target; empty otherwise).");
    bench_cmd->add_option("--k-list", bench.k_list, "comma-separated k values")->required()->delimiter(',');
    bench_cmd->add_option("--methods", bench.methods, "comma-separated methods (sieve names or rals)")
        ->required()
        ->delimiter(',');
    bench_cmd->add_option("--runs", bench.runs, "rals runs per k (seeds seed..seed+runs-1)")->capture_default_str();
    bench_cmd->add_option("--seed", bench.seed, "base seed")->capture_default_str();
    bench_cmd->add_option("--target", bench.targets, "target diameter per k")->delimiter(',');
    bench_cmd->add_option("--preset", bench.preset, "rals preset")->capture_default_str();
    bench_cmd->add_option("--T", bench.iterations, "rals iterations (overrides the preset)");
    bench_cmd->add_option("--workers", bench.workers, "parallel runs")->capture_default_str();
    bench_cmd->add_flag("--no-time", bench.no_time, "omit the timing column");
    bench_cmd->add_option("--out", bench.out, "CSV file (default stdout)");

    std::string verify_path;
    int verify_k = 0;
    auto* verify_cmd = app.add_subcommand("verify", "Check a tuple file for admissibility. Exit 0 pass, 1 fail.");
    verify_cmd->add_option("file", verify_path, "tuple file")->required();
    verify_cmd->add_option("--k", verify_k, "expected size")->required();

    int oracle_k = 0;
    Value oracle_cap = 0;
    std::string oracle_out;
    auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive optimal diameter for small k. Prints k,diameter.");
    oracle_cmd->add_option("--k", oracle_k, "tuple size")->required();
    oracle_cmd->add_option("--cap", oracle_cap, "search [0, cap]; 0 picks the default bound");
    oracle_cmd->add_option("--out", oracle_out, "witness tuple file");

    ImproveFlags improve;
    auto* improve_cmd =
        app.add_subcommand("improve", "Apply shift and local-search iterations to a tuple file. Prints k,before,after.");
    improve_cmd->add_option("file", improve.input, "tuple file")->required();
    improve_cmd->add_option("--iterations", improve.iterations)->capture_default_str();
    improve_cmd->add_option("--ns", improve.removals, "removals per local search")->capture_default_str();
    improve_cmd->add_option("--ni", improve.inserts, "insert budget")->capture_default_str();
    improve_cmd->add_option("--nl", improve.shifts, "shift budget")->capture_default_str();
    improve_cmd->add_option("--beta", improve.beta)->capture_default_str();
    improve_cmd->add_option("--level", improve.level)->check(CLI::Range(0, 2))->capture_default_str();
    improve_cmd->add_option("--seed", improve.seed)->capture_default_str();
    improve_cmd->add_option("--out", improve.out, "tuple file");

    int context_k = 0;
    std::optional<Value> context_upper;
    auto* context_cmd = app.add_subcommand("sieve-context", "Print the candidate set V and the prime sets.");
    context_cmd->add_option("--k", context_k, "tuple size")->required()->check(CLI::Range(2, 1 << 20));
    context_cmd->add_option("--U", context_upper, "upper end of the range");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*solve_cmd) return run_solve(solve);
        if (*sieve_cmd) return run_sieve(sieve);
        if (*bench_cmd) return run_bench(bench);
        if (*verify_cmd) return run_verify(verify_path, verify_k);
        if (*oracle_cmd) return run_oracle(oracle_k, oracle_cap, oracle_out);
        if (*improve_cmd) return run_improve(improve);
        if (*context_cmd) return run_context(context_k, context_upper);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
