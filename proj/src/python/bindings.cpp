#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "admtuple/baselines.hpp"
#include "admtuple/context.hpp"
#include "admtuple/rals.hpp"
#include "admtuple/tuple_io.hpp"
#include "admtuple/verify.hpp"

namespace py = pybind11;
using namespace admtuple;

namespace {

std::vector<Value> to_list(const PrimeSet& primes) { return {primes.values().begin(), primes.values().end()}; }

baselines::Method method_from(const std::string& name) {
    auto method = baselines::parse_method(name);
    if (!method) throw py::value_error("unknown sieve method: " + name);
    return *method;
}

rals::RalsConfig config_from(const std::string& preset) {
    auto config = rals::preset(preset);
    if (!config) throw py::value_error("unknown preset: " + preset);
    return *config;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Admissible prime k-tuples: baselines, region-based local search and verification.";

    py::class_<ProblemContext, std::shared_ptr<ProblemContext>>(m, "Context")
        .def_property_readonly("k", &ProblemContext::k)
        .def_property_readonly("upper", &ProblemContext::upper)
        .def_property_readonly("candidates",
                               [](const ProblemContext& c) {
                                   return std::vector<Value>(c.candidates().begin(), c.candidates().end());
                               })
        .def_property_readonly("full_primes", [](const ProblemContext& c) { return to_list(c.full_primes()); })
        .def_property_readonly("sieve_primes", [](const ProblemContext& c) { return to_list(c.sieve_primes()); })
        .def_property_readonly("removable_primes", [](const ProblemContext& c) { return to_list(c.removable_primes()); })
        .def_property_readonly("effective_primes", [](const ProblemContext& c) { return to_list(c.effective_primes()); })
        .def("surviving_fraction", &ProblemContext::surviving_fraction)
        .def("__contains__", &ProblemContext::contains);

    m.def(
        "build_context",
        [](int k, std::optional<Value> upper, bool sieve) {
            auto ctx = build_context(k, upper.value_or(default_upper_bound(k)), sieve);
            return std::const_pointer_cast<ProblemContext>(ctx);
        },
        py::arg("k"), py::arg("upper") = py::none(), py::arg("sieve_small_primes") = true);
    m.def("default_upper_bound", &default_upper_bound, py::arg("k"));

    m.def("sieve_methods", [] {
        std::vector<std::string> out;
        for (auto method : baselines::all_methods()) out.emplace_back(baselines::method_name(method));
        return out;
    });
    m.def(
        "sieve",
        [](const std::string& method, int k, std::optional<Value> shift, double tau) {
            return baselines::run(method_from(method), k, baselines::SieveParams{shift, tau});
        },
        py::arg("method"), py::arg("k"), py::arg("shift") = py::none(), py::arg("tau") = 1.0,
        "Runs one constructive baseline; the tuple is not normalized.");

    py::class_<rals::RalsConfig>(m, "RalsConfig")
        .def(py::init([](const std::string& preset) { return config_from(preset); }), py::arg("preset") = "basever")
        .def_readwrite("iterations", &rals::RalsConfig::iterations)
        .def_readwrite("regions", &rals::RalsConfig::regions)
        .def_readwrite("gamma", &rals::RalsConfig::gamma)
        .def_readwrite("tournament", &rals::RalsConfig::tournament)
        .def_readwrite("shifts", &rals::RalsConfig::shifts)
        .def_readwrite("beta", &rals::RalsConfig::beta)
        .def_property(
            "level", [](const rals::RalsConfig& c) { return static_cast<int>(c.level); },
            [](rals::RalsConfig& c, int level) { c.level = insert_level(level); })
        .def_readwrite("removals_first", &rals::RalsConfig::removals_first)
        .def_readwrite("removals_second", &rals::RalsConfig::removals_second)
        .def_readwrite("inserts_first", &rals::RalsConfig::inserts_first)
        .def_readwrite("inserts_second", &rals::RalsConfig::inserts_second)
        .def_readwrite("seed", &rals::RalsConfig::seed)
        .def_readwrite("upper", &rals::RalsConfig::upper)
        .def_readwrite("strict_levels", &rals::RalsConfig::strict_levels)
        .def_readwrite("literals_as_levels", &rals::RalsConfig::literals_as_levels)
        .def_readwrite("workers", &rals::RalsConfig::workers)
        .def_readwrite("sieve_small_primes", &rals::RalsConfig::sieve_small_primes)
        .def("validate", &rals::RalsConfig::validate);

    py::class_<rals::RalsResult>(m, "RalsResult")
        .def_readonly("best", &rals::RalsResult::best)
        .def_readonly("diameter", &rals::RalsResult::diameter)
        .def_readonly("initial_best", &rals::RalsResult::initial_best)
        .def_readonly("best_per_iteration", &rals::RalsResult::best_per_iteration)
        .def_readonly("landscape", &rals::RalsResult::landscape)
        .def_readonly("seconds", &rals::RalsResult::seconds)
        .def_property_readonly("normalized", [](const rals::RalsResult& r) { return normalized(r.best); });

    m.def(
        "solve",
        [](int k, const rals::RalsConfig& config) {
            py::gil_scoped_release release;
            return rals::rals_solve(k, config);
        },
        py::arg("k"), py::arg("config") = rals::RalsConfig::basever());

    m.def(
        "full_verify",
        [](const Tuple& tuple, int k) {
            const auto report = verify::full_verify(tuple, k);
            return py::make_tuple(report.admissible, report.failing_prime);
        },
        py::arg("tuple"), py::arg("k"), "(admissible, smallest failing prime or None)");
    m.def(
        "brute_force_optimal",
        [](int k, Value cap) {
            auto opt = verify::brute_force_optimal(k, cap);
            return py::make_tuple(opt.diameter, opt.witness);
        },
        py::arg("k"), py::arg("cap") = 0, "(diameter, witness) for k <= 12");

    m.def("read_tuple", &read_tuple_file, py::arg("path"));
    m.def("write_tuple", &write_tuple_file, py::arg("path"), py::arg("tuple"));
    m.def("normalized", &normalized, py::arg("tuple"));
}
