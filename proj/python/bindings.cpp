#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "chronoshed/active.hpp"
#include "chronoshed/busy.hpp"
#include "chronoshed/instances.hpp"
#include "chronoshed/io.hpp"
#include "chronoshed/maxflow.hpp"
#include "chronoshed/oracle.hpp"
#include "chronoshed/profile.hpp"

namespace py = pybind11;

namespace chronoshed {
namespace {

// The module speaks plain dicts/lists shaped exactly like the JSON documents the
// CLI reads and writes. Scalar costs and bounds come back as fractions.Fraction.

Json py_to_json(py::handle h) {
    if (h.is_none()) return nullptr;
    if (py::isinstance<py::bool_>(h)) return h.cast<bool>();
    if (py::isinstance<py::int_>(h)) return h.cast<std::int64_t>();
    if (py::isinstance<py::float_>(h)) return h.cast<double>();
    if (py::isinstance<py::str>(h)) return h.cast<std::string>();
    if (py::isinstance<py::dict>(h)) {
        Json o = Json::object();
        for (auto item : h.cast<py::dict>())
            o[py::str(item.first).cast<std::string>()] = py_to_json(item.second);
        return o;
    }
    if (py::isinstance<py::list>(h) || py::isinstance<py::tuple>(h)) {
        Json a = Json::array();
        for (auto item : h.cast<py::sequence>()) a.push_back(py_to_json(item));
        return a;
    }
    // fractions.Fraction (ints were caught above): canonical [num, den] pair
    if (py::hasattr(h, "numerator") && py::hasattr(h, "denominator")) {
        return Json::array({h.attr("numerator").cast<std::int64_t>(),
                            h.attr("denominator").cast<std::int64_t>()});
    }
    throw SchemaError("cannot place a " +
                      py::str(py::type::handle_of(h).attr("__name__")).cast<std::string>() +
                      " in a document");
}

py::object json_to_py(const Json& j) {
    switch (j.type()) {
    case Json::value_t::null: return py::none();
    case Json::value_t::boolean: return py::bool_(j.get<bool>());
    case Json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case Json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case Json::value_t::number_float: return py::float_(j.get<double>());
    case Json::value_t::string: return py::str(j.get<std::string>());
    case Json::value_t::array: {
        py::list out;
        for (const Json& v : j) out.append(json_to_py(v));
        return out;
    }
    case Json::value_t::object: {
        py::dict out;
        for (auto it = j.begin(); it != j.end(); ++it)
            out[py::str(it.key())] = json_to_py(it.value());
        return out;
    }
    default: throw InvariantViolation("unexpected json node type");
    }
}

py::object rat_to_py(const Rat& r) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(rat_str(r));
}

AnyInstance parse_instance(py::handle doc) { return instance_from_json(py_to_json(doc)); }

const ActiveInstance& as_active(const AnyInstance& inst, const char* op) {
    if (!std::holds_alternative<ActiveInstance>(inst))
        throw SchemaError(std::string(op) + " needs a slotted instance (kind \"active\")");
    return std::get<ActiveInstance>(inst);
}

const BusyInstance& as_busy(const AnyInstance& inst, const char* op) {
    if (!std::holds_alternative<BusyInstance>(inst))
        throw SchemaError(std::string(op) + " needs a continuous instance (kind \"busy\")");
    return std::get<BusyInstance>(inst);
}

void require_valid(const std::optional<std::string>& verdict) {
    if (verdict) throw InvariantViolation(*verdict);
}

CloseOrder make_close_order(const std::string& policy, std::uint64_t seed,
                            const std::vector<int>& order) {
    CloseOrder co;
    if (policy == "latest_first") co.policy = CloseOrder::Policy::LatestFirst;
    else if (policy == "earliest_first") co.policy = CloseOrder::Policy::EarliestFirst;
    else if (policy == "seeded") co.policy = CloseOrder::Policy::SeededRandom;
    else if (policy == "explicit") co.policy = CloseOrder::Policy::Explicit;
    else
        throw SchemaError("unknown close policy \"" + policy +
                          "\"; expected latest_first, earliest_first, seeded or explicit");
    co.seed = seed;
    co.order = order;
    return co;
}

TieBreak make_tie_break(const std::optional<std::uint64_t>& seed) {
    if (seed) return TieBreak{TieBreak::Mode::Seeded, *seed};
    return TieBreak{};
}

OracleBudget make_budget(std::optional<long> ms, std::optional<int> max_jobs,
                         std::optional<int> max_slots, std::optional<long> max_starts) {
    OracleBudget budget(ms);
    budget.max_jobs = max_jobs;
    budget.max_slots = max_slots;
    budget.max_starts = max_starts;
    return budget;
}

Json interval_json(const TimeInterval& iv) {
    return Json::array({rat_to_json(iv.start), rat_to_json(iv.end)});
}

py::dict busy_bounds_py(const BusyInstance& inst) {
    py::dict out;
    bool interval_only = true;
    for (const auto& j : inst.jobs)
        if (!j.is_interval()) interval_only = false;
    std::optional<Rat> opt_infty;
    if (!interval_only) opt_infty = convert_to_interval_unbounded(inst).cost;
    auto lb = lower_bounds(inst.jobs, inst.g.value_or(1), opt_infty);
    if (inst.g) out["mass"] = rat_to_py(lb.mass);
    out["span"] = rat_to_py(lb.span);
    if (lb.profile) out["profile"] = rat_to_py(*lb.profile);
    out["best"] = rat_to_py(lb.best());
    return out;
}

} // namespace

PYBIND11_MODULE(_chronoshed, m) {
    m.doc() = "Slotted active-slot and continuous busy-interval scheduling: approximation "
              "algorithms, exact baselines, lower bounds and validators. All operations "
              "take and return plain dicts shaped like the library's JSON documents; "
              "rational costs come back as fractions.Fraction.";
    m.attr("__version__") = "0.1.0";

    py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError");
    py::register_exception<BudgetError>(m, "BudgetError");
    py::register_exception<InvariantViolation>(m, "InvariantViolation");

    m.def(
        "feasible",
        [](py::handle instance, py::iterable slots) {
            AnyInstance any = parse_instance(instance);
            const auto& inst = as_active(any, "feasible");
            std::set<int> active;
            for (auto s : slots) active.insert(s.cast<int>());
            FeasibilityResult res = check_feasibility(inst, active);
            Json out{{"feasible", res.feasible}, {"assignment", res.assignment}};
            return json_to_py(out);
        },
        py::arg("instance"), py::arg("slots"),
        "Whether every job fits into the given active slots; returns {'feasible': bool, "
        "'assignment': {job id: [slot, ...]}} with a witness assignment when feasible.");

    m.def(
        "minimal",
        [](py::handle instance, const std::string& policy, std::uint64_t seed,
           const std::vector<int>& order) {
            AnyInstance any = parse_instance(instance);
            const auto& inst = as_active(any, "minimal");
            ActiveSchedule sched = minimal_feasible(inst, make_close_order(policy, seed, order));
            require_valid(validate_active_schedule(inst, sched));
            return json_to_py(schedule_to_json(sched));
        },
        py::arg("instance"), py::arg("policy") = "latest_first", py::arg("seed") = 0,
        py::arg("order") = std::vector<int>{},
        "Close slots one at a time while the rest stays feasible; the result opens at most "
        "three times the optimal number of slots. policy is one of latest_first, "
        "earliest_first, seeded (with seed) or explicit (with order).");

    m.def(
        "lp_round",
        [](py::handle instance) {
            AnyInstance any = parse_instance(instance);
            const auto& inst = as_active(any, "lp_round");
            LpRoundResult res = lp_round(inst);
            require_valid(validate_active_schedule(inst, res.schedule));
            py::dict out;
            out["lp_cost"] = rat_to_py(res.lp.cost());
            out["schedule"] = json_to_py(schedule_to_json(res.schedule));
            out["iterations"] = py::int_(res.rounding.iterations.size());
            return out;
        },
        py::arg("instance"),
        "Solve the fractional relaxation exactly, shift its mass toward deadlines, and round "
        "deadline by deadline; opens at most twice the fractional cost. Returns {'lp_cost': "
        "Fraction, 'schedule': doc, 'iterations': int}.");

    m.def(
        "tracking",
        [](py::handle instance, const std::optional<std::uint64_t>& seed) {
            AnyInstance any = parse_instance(instance);
            const auto& inst = as_busy(any, "tracking");
            for (const auto& j : inst.jobs)
                if (!j.is_interval())
                    throw SchemaError("tracking handles interval jobs only; use busy3 for "
                                      "flexible jobs");
            TrackingResult res = greedy_tracking(inst, make_tie_break(seed));
            std::vector<TimeInterval> placement;
            for (const auto& j : inst.jobs) placement.push_back(j.window());
            std::vector<std::vector<std::size_t>> bundles;
            for (const auto& b : res.bundles) bundles.push_back(b.jobs);
            require_valid(validate_bundles(inst, bundles, placement, res.cost));
            return json_to_py(schedule_to_json(inst, bundles, placement, res.cost));
        },
        py::arg("instance"), py::arg("seed") = std::nullopt,
        "Peel off maximum-length sets of disjoint intervals and pack capacity-many of them "
        "per machine. Interval jobs and finite capacity only.");

    m.def(
        "busy3",
        [](py::handle instance, const std::optional<std::uint64_t>& seed) {
            AnyInstance any = parse_instance(instance);
            const auto& inst = as_busy(any, "busy3");
            BusyApproxResult res = busy_three_approx(inst, make_tie_break(seed));
            std::vector<std::vector<std::size_t>> bundles;
            for (const auto& b : res.tracking.bundles) bundles.push_back(b.jobs);
            require_valid(validate_bundles(inst, bundles, res.placement, res.cost));
            return json_to_py(schedule_to_json(inst, bundles, res.placement, res.cost));
        },
        py::arg("instance"), py::arg("seed") = std::nullopt,
        "Pin flexible jobs to concrete intervals (optimally for unlimited capacity), then "
        "bundle tracks greedily; total busy time is at most three times optimal.");

    m.def(
        "preemptive",
        [](py::handle instance) {
            AnyInstance any = parse_instance(instance);
            const auto& inst = as_busy(any, "preemptive");
            PreemptiveSchedule sched = preemptive_unbounded(inst);
            require_valid(validate_preemptive(inst, sched));
            return json_to_py(schedule_to_json(inst, sched));
        },
        py::arg("instance"),
        "Exact minimum busy measure when jobs may preempt and capacity is unlimited.");

    m.def(
        "preemptive_bounded",
        [](py::handle instance) {
            AnyInstance any = parse_instance(instance);
            const auto& inst = as_busy(any, "preemptive_bounded");
            if (inst.unbounded())
                throw SchemaError("preemptive_bounded needs a finite capacity; use "
                                  "preemptive for the unlimited case");
            BoundedPreemptiveSchedule sched = chronoshed::preemptive_bounded(inst);
            require_valid(validate_bounded_preemptive(inst, sched));
            return json_to_py(schedule_to_json(inst, sched));
        },
        py::arg("instance"),
        "Split the unlimited-capacity preemptive solution into machines of capacity g; "
        "total busy time is at most twice the bounded preemptive optimum.");

    m.def(
        "convert_intervals",
        [](py::handle instance) {
            AnyInstance any = parse_instance(instance);
            const auto& inst = as_busy(any, "convert_intervals");
            ConversionResult res = convert_to_interval_unbounded(inst);
            Json placement = Json::object();
            for (std::size_t j = 0; j < inst.jobs.size(); ++j)
                placement[inst.jobs[j].id] = interval_json(res.placement[j]);
            Json runs = Json::array();
            for (const auto& iv : res.runs) runs.push_back(interval_json(iv));
            py::dict out;
            out["cost"] = rat_to_py(res.cost);
            out["placement"] = json_to_py(placement);
            out["runs"] = json_to_py(runs);
            out["instance"] = json_to_py(instance_to_json(res.rigid));
            return out;
        },
        py::arg("instance"),
        "Pin every flexible job to a sub-interval of its window so the busy length with "
        "unlimited capacity is minimal (exact). Returns the pinned placements, the busy "
        "runs, and the resulting all-interval instance.");

    m.def(
        "bounds",
        [](py::handle instance) {
            AnyInstance any = parse_instance(instance);
            if (std::holds_alternative<ActiveInstance>(any)) {
                const auto& inst = std::get<ActiveInstance>(any);
                py::dict out;
                out["demand"] = rat_to_py(Rat(ceil_rat(inst.total_demand() / inst.g)));
                return out;
            }
            return busy_bounds_py(std::get<BusyInstance>(any));
        },
        py::arg("instance"),
        "Lower bounds on the optimal cost, as {name: Fraction}. Slotted instances get the "
        "demand bound ceil(total demand / g); continuous instances get mass, span, the "
        "demand-profile bound when all jobs are intervals, and their maximum under 'best'.");

    m.def(
        "cover_bound",
        [](py::handle instance) {
            AnyInstance any = parse_instance(instance);
            return rat_to_py(preemptive_cover_bound(as_busy(any, "cover_bound")));
        },
        py::arg("instance"),
        "Exact minimum measure needed to cover every window with enough open time, ignoring "
        "capacity; equals the unlimited-capacity preemptive optimum.");

    m.def(
        "preemptive_bound",
        [](py::handle instance) {
            AnyInstance any = parse_instance(instance);
            return rat_to_py(preemptive_lower_bounds(as_busy(any, "preemptive_bound")));
        },
        py::arg("instance"),
        "Lower bound on the capacity-g preemptive optimum: the larger of the cover bound "
        "and total work / g.");

    m.def(
        "optimum",
        [](py::handle instance, std::optional<long> budget_ms, std::optional<int> max_jobs,
           std::optional<int> max_slots, std::optional<long> max_starts) {
            AnyInstance any = parse_instance(instance);
            OracleBudget budget = make_budget(budget_ms, max_jobs, max_slots, max_starts);
            if (std::holds_alternative<ActiveInstance>(any))
                return rat_to_py(Rat(opt_active(std::get<ActiveInstance>(any), budget).cost));
            const auto& inst = std::get<BusyInstance>(any);
            if (inst.unbounded()) return rat_to_py(opt_busy_unbounded(inst, budget));
            return rat_to_py(opt_busy(inst, budget).cost);
        },
        py::arg("instance"), py::arg("budget_ms") = std::nullopt,
        py::arg("max_jobs") = std::nullopt, py::arg("max_slots") = std::nullopt,
        py::arg("max_starts") = std::nullopt,
        "Exact optimal cost by exhaustive search, for small instances only. Raises "
        "BudgetError instead of degrading when the instance exceeds the structural caps or "
        "the wall-clock budget (CHRONOSHED_ORACLE_BUDGET_MS, default 10s).");

    m.def(
        "validate",
        [](py::handle instance, py::handle schedule) -> py::object {
            AnyInstance any = parse_instance(instance);
            ScheduleDoc doc = schedule_from_json(py_to_json(schedule));
            if (auto verdict = validate_document(any, doc)) return py::str(*verdict);
            return py::none();
        },
        py::arg("instance"), py::arg("schedule"),
        "Check a schedule document against its instance with the counting validators. "
        "Returns None when it holds up, otherwise the first violation found. Raises "
        "SchemaError when the document type does not fit the instance kind.");

    m.def(
        "generate",
        [](const std::string& kind, const std::optional<py::dict>& params) {
            std::map<std::string, std::string> p;
            if (params)
                for (auto item : *params)
                    p[py::str(item.first).cast<std::string>()] =
                        py::str(item.second).cast<std::string>();
            Fixture fx = generate(kind, p);
            return py::make_tuple(json_to_py(fixture_instance_json(fx)),
                                  json_to_py(fixture_metadata_json(fx)));
        },
        py::arg("kind"), py::arg("params") = std::nullopt,
        "Build a named instance family member; returns (instance, metadata) where metadata "
        "carries the known optima. Kinds: tight_minimal(g), integrality_gap(g), "
        "tracking_gadget(g, eps), clique(n, g), random_active(n, T, g, seed), "
        "random_busy(n, g, seed, integer_only). Parameter values may be str, int or "
        "Fraction.");

    m.def(
        "canonical",
        [](py::handle doc) { return canonical_dump(py_to_json(doc)); },
        py::arg("doc"),
        "Serialize a document the way the CLI writes files: sorted keys, two-space indent, "
        "trailing newline, rationals as [num, den] in lowest terms.");
}

} // namespace chronoshed
