// Command-line front end: solve / bound / verify / gen / bench.
// Exit codes: 0 ok, 1 schema or IO error, 2 infeasible instance, 3 invariant
// violation (including oracle budget exhaustion where an exact answer was required).

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "chronoshed/active.hpp"
#include "chronoshed/busy.hpp"
#include "chronoshed/instances.hpp"
#include "chronoshed/io.hpp"
#include "chronoshed/oracle.hpp"
#include "chronoshed/profile.hpp"
#include "chronoshed/svg.hpp"

using namespace chronoshed;

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    auto dt = std::chrono::steady_clock::now() - t0;
    return std::chrono::duration<double, std::milli>(dt).count();
}

const char* class_name(SlotClass c) {
    switch (c) {
        case SlotClass::Closed: return "closed";
        case SlotClass::Barely: return "barely";
        case SlotClass::Half: return "half";
        case SlotClass::Fully: return "fully";
    }
    return "?";
}

const char* charge_name(ChargeRecord::Kind k) {
    switch (k) {
        case ChargeRecord::Kind::SelfHalf: return "self_half";
        case ChargeRecord::Kind::Dependent: return "dependent";
        case ChargeRecord::Kind::Trio: return "trio";
        case ChargeRecord::Kind::Filler: return "filler";
    }
    return "?";
}

Json charge_to_json(const ChargeRecord& c) {
    Json j{{"kind", charge_name(c.kind)}, {"slot", c.slot}, {"value", rat_to_json(c.value)}};
    if (c.full_slot >= 0) j["full_slot"] = c.full_slot;
    if (c.dep_slot >= 0) {
        j["dep_slot"] = c.dep_slot;
        j["dep_value"] = rat_to_json(c.dep_value);
    }
    if (c.half_slot >= 0) {
        j["half_slot"] = c.half_slot;
        j["half_value"] = rat_to_json(c.half_value);
    }
    return j;
}

void write_trace(const std::string& path, const RoundingState& st) {
    std::ostringstream out;
    for (const auto& it : st.iterations) {
        Json line{{"index", it.index},
                  {"deadline", it.deadline},
                  {"block_mass", rat_to_json(it.block_mass)},
                  {"fully_opened", it.fully_opened},
                  {"frac_value", rat_to_json(it.frac_value)},
                  {"frac_class", class_name(it.frac_class)},
                  {"closed_frac", it.closed_frac},
                  {"opened", std::vector<int>(it.opened_cum.begin(), it.opened_cum.end())},
                  {"mass_cum", rat_to_json(it.mass_cum)}};
        line["proxy_in"] = it.proxy_in ? Json{rat_to_json(it.proxy_in->first), it.proxy_in->second}
                                       : Json(nullptr);
        line["proxy_out"] = it.proxy_out
                                ? Json{rat_to_json(it.proxy_out->first), it.proxy_out->second}
                                : Json(nullptr);
        line["merge_topped"] = it.merge_topped ? Json(*it.merge_topped) : Json(nullptr);
        line["frac_slot"] = it.frac_slot ? Json(*it.frac_slot) : Json(nullptr);
        line["charge"] = it.charge ? charge_to_json(*it.charge) : Json(nullptr);
        out << line.dump() << "\n";
    }
    write_text_file(path, out.str());
}

Json instance_descriptor(const std::string& label, const AnyInstance& inst) {
    Json d{{"name", label}, {"n", jobs_of(inst).size()}};
    if (std::holds_alternative<ActiveInstance>(inst)) {
        const auto& a = std::get<ActiveInstance>(inst);
        d["kind"] = "active";
        d["g"] = a.g;
        d["T"] = a.T;
    } else {
        const auto& b = std::get<BusyInstance>(inst);
        d["kind"] = "busy";
        if (b.g) d["g"] = *b.g;
        else d["g"] = "inf";
    }
    return d;
}

AnyInstance override_capacity(const AnyInstance& inst, int g) {
    if (std::holds_alternative<ActiveInstance>(inst))
        return make_active(g, std::get<ActiveInstance>(inst).jobs);
    return make_busy(g, std::get<BusyInstance>(inst).jobs);
}

// Everything one algorithm run produces, ready for report assembly.
struct RunOutcome {
    Json schedule;
    Rat cost;
    std::map<std::string, Rat> bounds;   // named lower bounds on the optimum cost
    std::optional<Rat> oracle;           // exact optimum when the budget allowed it
    double ms = 0;
    std::string svg;                     // rendering of the computed schedule
};

const ActiveInstance& need_active(const AnyInstance& inst, const std::string& algo) {
    if (!std::holds_alternative<ActiveInstance>(inst))
        throw SchemaError(algo + " needs a slotted instance (kind \"active\")");
    return std::get<ActiveInstance>(inst);
}

const BusyInstance& need_busy(const AnyInstance& inst, const std::string& algo) {
    if (!std::holds_alternative<BusyInstance>(inst))
        throw SchemaError(algo + " needs a continuous instance (kind \"busy\")");
    return std::get<BusyInstance>(inst);
}

void require_valid(const std::optional<std::string>& verdict) {
    if (verdict) throw InvariantViolation("computed schedule failed validation: " + *verdict);
}

// Lower bound on active slots: every slot hosts at most g units.
Rat active_demand_bound(const ActiveInstance& inst) {
    return Rat(ceil_rat(inst.total_demand() / inst.g));
}

std::optional<Rat> try_opt_active(const ActiveInstance& inst) {
    try {
        OracleBudget budget;
        return Rat(opt_active(inst, budget).cost);
    } catch (const BudgetError&) {
        return std::nullopt;
    }
}

std::optional<Rat> try_opt_busy(const BusyInstance& inst) {
    try {
        OracleBudget budget;
        if (inst.unbounded()) return opt_busy_unbounded(inst, budget);
        return opt_busy(inst, budget).cost;
    } catch (const BudgetError&) {
        return std::nullopt;
    }
}

// Busy-time lower bounds; span needs the exact unbounded optimum when jobs are
// flexible, which may itself exceed the conversion solver's budget.
void busy_bounds(const BusyInstance& inst, std::map<std::string, Rat>& out) {
    bool interval_only = true;
    for (const auto& j : inst.jobs)
        if (!j.is_interval()) interval_only = false;
    std::optional<Rat> opt_infty;
    if (!interval_only) {
        try {
            opt_infty = convert_to_interval_unbounded(inst).cost;
        } catch (const BudgetError&) {
        }
    }
    if (interval_only || opt_infty) {
        auto lb = lower_bounds(inst.jobs, inst.g.value_or(1), opt_infty);
        if (inst.g) out["mass"] = lb.mass;
        out["span"] = lb.span;
        if (lb.profile) out["profile"] = *lb.profile;
    } else if (inst.g) {
        out["mass"] = inst.total_length() / *inst.g;
    }
}

RunOutcome run_algorithm(const AnyInstance& any, const std::string& algo,
                         std::optional<std::uint64_t> seed) {
    RunOutcome out;
    auto t0 = std::chrono::steady_clock::now();
    if (algo == "minimal") {
        const auto& inst = need_active(any, algo);
        CloseOrder order;
        if (seed) order = CloseOrder{CloseOrder::Policy::SeededRandom, *seed, {}};
        auto sched = minimal_feasible(inst, order);
        out.ms = elapsed_ms(t0);
        require_valid(validate_active_schedule(inst, sched));
        out.schedule = schedule_to_json(sched);
        out.cost = sched.cost();
        out.bounds["demand"] = active_demand_bound(inst);
        out.oracle = try_opt_active(inst);
        out.svg = svg_active(inst, sched);
    } else if (algo == "lpround") {
        const auto& inst = need_active(any, algo);
        auto res = lp_round(inst);
        out.ms = elapsed_ms(t0);
        require_valid(validate_active_schedule(inst, res.schedule));
        out.schedule = schedule_to_json(res.schedule);
        out.cost = res.schedule.cost();
        out.bounds["demand"] = active_demand_bound(inst);
        out.bounds["lp"] = res.lp.cost();
        out.oracle = try_opt_active(inst);
        out.svg = svg_active(inst, res.schedule);
    } else if (algo == "tracking") {
        const auto& inst = need_busy(any, algo);
        for (const auto& j : inst.jobs)
            if (!j.is_interval())
                throw SchemaError("tracking handles interval jobs only; use busy3 for flexible jobs");
        TieBreak tb;
        if (seed) tb = TieBreak{TieBreak::Mode::Seeded, *seed};
        auto res = greedy_tracking(inst, tb);
        out.ms = elapsed_ms(t0);
        std::vector<TimeInterval> placement;
        for (const auto& j : inst.jobs) placement.push_back(j.window());
        std::vector<std::vector<std::size_t>> bundles;
        for (const auto& b : res.bundles) bundles.push_back(b.jobs);
        require_valid(validate_bundles(inst, bundles, placement, res.cost));
        out.schedule = schedule_to_json(inst, bundles, placement, res.cost);
        out.cost = res.cost;
        busy_bounds(inst, out.bounds);
        out.oracle = try_opt_busy(inst);
        out.svg = svg_busy(inst, bundles, placement);
    } else if (algo == "busy3") {
        const auto& inst = need_busy(any, algo);
        TieBreak tb;
        if (seed) tb = TieBreak{TieBreak::Mode::Seeded, *seed};
        auto res = busy_three_approx(inst, tb);
        out.ms = elapsed_ms(t0);
        std::vector<std::vector<std::size_t>> bundles;
        for (const auto& b : res.tracking.bundles) bundles.push_back(b.jobs);
        require_valid(validate_bundles(inst, bundles, res.placement, res.cost));
        out.schedule = schedule_to_json(inst, bundles, res.placement, res.cost);
        out.cost = res.cost;
        busy_bounds(inst, out.bounds);
        out.oracle = try_opt_busy(inst);
        out.svg = svg_busy(inst, bundles, res.placement);
    } else if (algo == "preempt-inf") {
        const auto& inst = need_busy(any, algo);
        auto sched = preemptive_unbounded(inst);
        out.ms = elapsed_ms(t0);
        require_valid(validate_preemptive(inst, sched));
        out.schedule = schedule_to_json(inst, sched);
        out.cost = sched.cost;
        out.bounds["cover"] = preemptive_cover_bound(inst);
        out.oracle = out.bounds["cover"]; // the cover relaxation is tight here
        out.svg = svg_preemptive(inst, sched);
    } else if (algo == "preempt-g") {
        const auto& inst = need_busy(any, algo);
        if (inst.unbounded())
            throw SchemaError("preempt-g needs a finite capacity; use preempt-inf");
        auto sched = preemptive_bounded(inst);
        out.ms = elapsed_ms(t0);
        require_valid(validate_bounded_preemptive(inst, sched));
        out.schedule = schedule_to_json(inst, sched);
        out.cost = sched.cost;
        out.bounds["cover"] = preemptive_cover_bound(inst);
        out.bounds["mass"] = inst.total_length() / *inst.g;
        out.svg = svg_preemptive(inst, sched.base);
    } else {
        throw SchemaError("unknown algorithm: " + algo);
    }
    return out;
}

// ratio of cost to the best available lower bound; the oracle value, when
// present, is the optimum itself and therefore the best bound of all.
std::optional<double> best_ratio(const RunOutcome& out) {
    std::optional<Rat> best;
    for (const auto& [name, v] : out.bounds) {
        (void)name;
        if (!best || v > *best) best = v;
    }
    if (out.oracle && (!best || *out.oracle > *best)) best = out.oracle;
    if (!best || *best <= 0) return std::nullopt;
    return rat_double(out.cost / *best);
}

Json run_report(const std::string& label, const AnyInstance& inst, const std::string& algo,
                const RunOutcome& out) {
    Json bounds = Json::object();
    for (const auto& [name, v] : out.bounds) bounds[name] = rat_to_json(v);
    Json rep{{"instance", instance_descriptor(label, inst)},
             {"algo", algo},
             {"cost", rat_to_json(out.cost)},
             {"bounds", bounds},
             {"wall_ms", out.ms},
             {"invariants", Json{{"schedule", "ok"}}}};
    rep["oracle"] = out.oracle ? rat_to_json(*out.oracle) : Json(nullptr);
    auto ratio = best_ratio(out);
    rep["ratio"] = ratio ? Json(*ratio) : Json(nullptr);
    return rep;
}

int cmd_solve(const std::string& in_path, const std::string& algo, std::optional<int> g_override,
              std::optional<std::uint64_t> seed, const std::string& svg_path,
              const std::string& out_path, const std::string& trace_path) {
    AnyInstance inst = instance_from_json(load_json_file(in_path));
    if (g_override) inst = override_capacity(inst, *g_override);

    RunOutcome out;
    if (algo == "lpround" && !trace_path.empty()) {
        // rerun via the decomposed pipeline so the iteration trace is available
        const auto& a = need_active(inst, algo);
        auto t0 = std::chrono::steady_clock::now();
        auto res = lp_round(a);
        out.ms = elapsed_ms(t0);
        write_trace(trace_path, res.rounding);
        require_valid(validate_active_schedule(a, res.schedule));
        out.schedule = schedule_to_json(res.schedule);
        out.cost = res.schedule.cost();
        out.bounds["demand"] = active_demand_bound(a);
        out.bounds["lp"] = res.lp.cost();
        out.oracle = try_opt_active(a);
        out.svg = svg_active(a, res.schedule);
    } else {
        out = run_algorithm(inst, algo, seed);
    }

    if (!svg_path.empty()) write_text_file(svg_path, out.svg);
    if (!out_path.empty()) write_text_file(out_path, canonical_dump(out.schedule));

    Json rep = run_report(in_path, inst, algo, out);
    rep["schedule"] = out.schedule;
    std::cout << canonical_dump(rep);
    return 0;
}

int cmd_bound(const std::string& in_path) {
    AnyInstance inst = instance_from_json(load_json_file(in_path));
    Json bounds = Json::object();
    std::optional<Rat> best;
    auto put = [&](const std::string& name, const Rat& v) {
        bounds[name] = rat_to_json(v);
        if (!best || v > *best) best = v;
    };
    if (std::holds_alternative<ActiveInstance>(inst)) {
        const auto& a = std::get<ActiveInstance>(inst);
        put("demand", active_demand_bound(a));
        put("lp", solve_active_lp(a).cost());
    } else {
        const auto& b = std::get<BusyInstance>(inst);
        std::map<std::string, Rat> bmap;
        busy_bounds(b, bmap);
        for (const auto& [name, v] : bmap) put(name, v);
        put("cover", preemptive_cover_bound(b));
    }
    Json rep{{"instance", instance_descriptor(in_path, inst)}, {"bounds", bounds}};
    rep["best"] = best ? rat_to_json(*best) : Json(nullptr);
    std::cout << canonical_dump(rep);
    return 0;
}

int cmd_verify(const std::string& in_path, const std::string& sched_path) {
    AnyInstance inst = instance_from_json(load_json_file(in_path));
    ScheduleDoc doc = schedule_from_json(load_json_file(sched_path));
    if (auto verdict = validate_document(inst, doc)) throw InvariantViolation(*verdict);
    std::cout << "ok\n";
    return 0;
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& raw) {
    std::map<std::string, std::string> params;
    for (const auto& chunk : raw) {
        std::istringstream ss(chunk);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw SchemaError("bad parameter \"" + item + "\"; expected key=value");
            params[item.substr(0, eq)] = item.substr(eq + 1);
        }
    }
    return params;
}

int cmd_gen(const std::string& kind, const std::vector<std::string>& raw_params,
            const std::string& out_path) {
    Fixture fx = generate(kind, parse_params(raw_params));
    std::string text = canonical_dump(fixture_instance_json(fx));
    if (out_path.empty()) std::cout << text;
    else write_text_file(out_path, text);
    std::cerr << canonical_dump(fixture_metadata_json(fx));
    return 0;
}

// ---- bench ----------------------------------------------------------------

struct BenchRow {
    std::string instance, kind, algo;
    std::size_t n = 0;
    std::string g;
    Rat cost;
    std::map<std::string, Rat> bounds;
    std::optional<Rat> oracle;
    std::optional<double> ratio;
    double ms = 0;
};

std::string csv_bound(const std::map<std::string, Rat>& bounds, const std::string& name) {
    auto it = bounds.find(name);
    return it == bounds.end() ? std::string() : rat_str(it->second);
}

void push_row(std::vector<BenchRow>& rows, const std::string& out_dir, bool svgs,
              const Fixture& fx, const std::string& algo, RunOutcome out) {
    // ground-truth metadata stands in for the oracle when enumeration is out of budget
    if (!out.oracle && fx.optimum) out.oracle = fx.optimum;
    BenchRow row;
    row.instance = fx.name;
    row.kind = std::holds_alternative<ActiveInstance>(fx.instance) ? "active" : "busy";
    row.algo = algo;
    row.n = jobs_of(fx.instance).size();
    if (row.kind == "active") {
        row.g = std::to_string(std::get<ActiveInstance>(fx.instance).g);
    } else {
        auto g = std::get<BusyInstance>(fx.instance).g;
        row.g = g ? std::to_string(*g) : "inf";
    }
    row.cost = out.cost;
    row.bounds = out.bounds;
    row.oracle = out.oracle;
    row.ratio = best_ratio(out);
    row.ms = out.ms;
    rows.push_back(row);
    if (svgs && !out.svg.empty())
        write_text_file(out_dir + "/" + fx.name + "_" + algo + ".svg", out.svg);
}

void bench_one(std::vector<BenchRow>& rows, const std::string& out_dir, bool svgs,
               const Fixture& fx, const std::string& algo,
               std::optional<std::uint64_t> seed = std::nullopt) {
    push_row(rows, out_dir, svgs, fx, algo, run_algorithm(fx.instance, algo, seed));
}

// First-fit baseline: in window-start order, put each interval job on the first
// machine that stays within capacity at every point. Comparator for the bench
// tables only; it carries no ratio guarantee and is not exposed through solve.
RunOutcome run_first_fit(const BusyInstance& inst) {
    if (inst.unbounded()) throw SchemaError("firstfit needs a finite capacity");
    for (const auto& j : inst.jobs)
        if (!j.is_interval()) throw SchemaError("firstfit handles interval jobs only");
    const int cap = *inst.g;
    auto t0 = std::chrono::steady_clock::now();

    std::vector<std::size_t> order(inst.jobs.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (inst.jobs[a].r != inst.jobs[b].r) return inst.jobs[a].r < inst.jobs[b].r;
        return a < b;
    });

    std::vector<std::vector<std::size_t>> bundles;
    for (std::size_t j : order) {
        const Job& cand = inst.jobs[j];
        auto fits = [&](const std::vector<std::size_t>& members) {
            // overlap with the candidate's window only grows at member starts,
            // so testing cand.r and every member start inside the window suffices
            auto load_at = [&](const Rat& x) {
                int c = 0;
                for (std::size_t k : members)
                    if (inst.jobs[k].r <= x && x < inst.jobs[k].d) ++c;
                return c;
            };
            if (load_at(cand.r) >= cap) return false;
            for (std::size_t k : members) {
                const Rat& s = inst.jobs[k].r;
                if (cand.r < s && s < cand.d && load_at(s) >= cap) return false;
            }
            return true;
        };
        bool placed = false;
        for (auto& members : bundles) {
            if (!fits(members)) continue;
            members.push_back(j);
            placed = true;
            break;
        }
        if (!placed) bundles.push_back({j});
    }

    std::vector<TimeInterval> placement;
    for (const auto& jb : inst.jobs) placement.push_back(jb.window());
    Rat cost = 0;
    for (const auto& members : bundles) {
        std::vector<TimeInterval> ivs;
        for (std::size_t k : members) ivs.push_back(inst.jobs[k].window());
        cost += span_of(ivs);
    }

    RunOutcome out;
    out.ms = elapsed_ms(t0);
    require_valid(validate_bundles(inst, bundles, placement, cost));
    out.schedule = schedule_to_json(inst, bundles, placement, cost);
    out.cost = cost;
    busy_bounds(inst, out.bounds);
    out.oracle = try_opt_busy(inst);
    out.svg = svg_busy(inst, bundles, placement);
    return out;
}

// the adversarial close order is part of the fixture's story; run it as its own row
void bench_adversarial(std::vector<BenchRow>& rows, const Fixture& fx) {
    const auto& inst = std::get<ActiveInstance>(fx.instance);
    CloseOrder order{CloseOrder::Policy::Explicit, 0, fx.adversarial_order};
    auto t0 = std::chrono::steady_clock::now();
    auto sched = minimal_feasible(inst, order);
    double ms = elapsed_ms(t0);
    require_valid(validate_active_schedule(inst, sched));
    BenchRow row;
    row.instance = fx.name;
    row.kind = "active";
    row.algo = "minimal-adversarial";
    row.n = inst.jobs.size();
    row.g = std::to_string(inst.g);
    row.cost = sched.cost();
    row.bounds["demand"] = active_demand_bound(inst);
    row.oracle = fx.optimum;
    if (fx.optimum && *fx.optimum > 0) row.ratio = rat_double(row.cost / *fx.optimum);
    row.ms = ms;
    rows.push_back(row);
}

std::vector<BenchRow> bench_paper(const std::string& out_dir, bool svgs) {
    std::vector<BenchRow> rows;
    for (int g : {4, 6}) {
        auto fx = tight_minimal(g);
        bench_adversarial(rows, fx);
        bench_one(rows, out_dir, svgs, fx, "minimal");
        bench_one(rows, out_dir, svgs, fx, "lpround");
    }
    for (int g : {2, 3}) {
        auto fx = integrality_gap(g);
        bench_one(rows, out_dir, svgs, fx, "minimal");
        bench_one(rows, out_dir, svgs, fx, "lpround");
    }
    {
        auto fx = tracking_gadget(2, Rat(1, 10));
        bench_one(rows, out_dir, svgs, fx, "busy3");
    }
    return rows;
}

std::vector<BenchRow> bench_random(const std::string& out_dir, bool svgs) {
    std::vector<BenchRow> rows;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto fx = random_active(5, 9, 2, seed);
        bench_one(rows, out_dir, svgs, fx, "minimal");
        bench_one(rows, out_dir, svgs, fx, "lpround");
    }
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto fx = random_busy(6, 2, seed, false);
        bench_one(rows, out_dir, svgs, fx, "busy3");
        bench_one(rows, out_dir, svgs, fx, "preempt-g");
    }
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Fixture fx;
        fx.name = "random_interval_n6_g2_s" + std::to_string(seed);
        fx.instance = random_interval_busy(6, 2, seed, false);
        bench_one(rows, out_dir, svgs, fx, "tracking");
        push_row(rows, out_dir, svgs, fx, "firstfit",
                 run_first_fit(std::get<BusyInstance>(fx.instance)));
    }
    return rows;
}

int cmd_bench(const std::string& suite, const std::string& out_dir, bool svgs) {
    std::filesystem::create_directories(out_dir);
    std::vector<BenchRow> rows;
    if (suite == "paper") rows = bench_paper(out_dir, svgs);
    else if (suite == "random") rows = bench_random(out_dir, svgs);
    else throw SchemaError("unknown suite: " + suite + " (expected paper or random)");

    std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
        return a.instance < b.instance;
    });

    std::ostringstream csv;
    csv << "instance,kind,n,g,algo,cost,mass,span,profile,oracle,ratio,ms\n";
    for (const auto& r : rows) {
        csv << r.instance << "," << r.kind << "," << r.n << "," << r.g << "," << r.algo << ","
            << rat_str(r.cost) << ",";
        // active instances report their single demand bound in the mass column
        if (r.kind == "active") csv << csv_bound(r.bounds, "demand") << ",,,";
        else
            csv << csv_bound(r.bounds, "mass") << "," << csv_bound(r.bounds, "span") << ","
                << csv_bound(r.bounds, "profile") << ",";
        csv << (r.oracle ? rat_str(*r.oracle) : std::string()) << ",";
        if (r.ratio) csv << *r.ratio;
        csv << "," << r.ms << "\n";
    }
    write_text_file(out_dir + "/results.csv", csv.str());
    std::cout << "wrote " << rows.size() << " rows to " << out_dir << "/results.csv\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"slotted active-time and busy-time scheduling toolkit"};
    app.require_subcommand(1);

    std::string in_path, algo, svg_path, out_path, trace_path, sched_path, kind, suite, out_dir;
    std::optional<int> g_override;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> raw_params;
    bool svgs = false;

    auto* solve = app.add_subcommand("solve", "run one algorithm on one instance");
    solve->add_option("--algo", algo, "minimal|lpround|tracking|busy3|preempt-inf|preempt-g")
        ->required();
    solve->add_option("--in", in_path, "instance JSON")->required();
    solve->add_option("--g", g_override, "override the instance capacity");
    solve->add_option("--seed", seed, "seed for randomized tie-breaking / close order");
    solve->add_option("--svg", svg_path, "write a Gantt rendering here");
    solve->add_option("--out", out_path, "write the schedule JSON here");
    solve->add_option("--trace", trace_path, "lpround: write per-iteration JSON lines here");

    auto* bound = app.add_subcommand("bound", "print lower bounds for an instance");
    bound->add_option("--in", in_path, "instance JSON")->required();

    auto* verify = app.add_subcommand("verify", "re-validate a schedule against its instance");
    verify->add_option("--in", in_path, "instance JSON")->required();
    verify->add_option("--schedule", sched_path, "schedule JSON")->required();

    auto* gen = app.add_subcommand("gen", "emit a named instance family member");
    gen->add_option("--kind", kind,
                    "tight_minimal|integrality_gap|tracking_gadget|clique|random_active|random_busy")
        ->required();
    gen->add_option("--params", raw_params, "key=value[,key=value...]");
    gen->add_option("--out", out_path, "write instance JSON here instead of stdout");

    auto* bench = app.add_subcommand("bench", "run a suite and write a CSV of ratios");
    bench->add_option("--suite", suite, "paper|random")->required();
    bench->add_option("--out", out_dir, "output directory")->required();
    bench->add_flag("--svg", svgs, "also write Gantt SVGs");

    try {
        app.parse(argc, argv);
        if (*solve) return cmd_solve(in_path, algo, g_override, seed, svg_path, out_path, trace_path);
        if (*bound) return cmd_bound(in_path);
        if (*verify) return cmd_verify(in_path, sched_path);
        if (*gen) return cmd_gen(kind, raw_params, out_path);
        if (*bench) return cmd_bench(suite, out_dir, svgs);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 1 : 0;
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 1;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return 3;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
