// Acceptance harness: one criterion per invocation (argv[1] = 1..9), one final
// PASS/FAIL line per criterion on stdout, exit 0 iff the criterion holds.
// Every numeric comparison is exact rational arithmetic; the only tolerances in
// this file are the wall-clock limits, pinned as constants next to each check.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "chronoshed/active.hpp"
#include "chronoshed/busy.hpp"
#include "chronoshed/instances.hpp"
#include "chronoshed/maxflow.hpp"
#include "chronoshed/oracle.hpp"
#include "chronoshed/profile.hpp"

using namespace chronoshed;

namespace {

struct Criterion {
    std::string name;
    std::vector<std::string> failures;
    int checks = 0;

    explicit Criterion(std::string n) : name(std::move(n)) {}

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok) failures.push_back(what);
    }
    void note(const std::string& line) { std::cout << "  - " << line << "\n"; }

    int finish(double ms) {
        std::ostringstream verdict;
        if (failures.empty()) {
            verdict << "PASS (" << checks << " checks, " << ms << " ms)";
        } else {
            verdict << "FAIL (" << failures.size() << " of " << checks << " checks";
            verdict << ", " << ms << " ms): " << failures.front();
        }
        for (const auto& f : failures) std::cout << "  ! " << f << "\n";
        std::cout << "criterion " << name << ": " << verdict.str() << "\n";
        return failures.empty() ? 0 : 1;
    }
};

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string rstr(const Rat& r) { return rat_str(r); }

// Shared instance sample for criteria 2 and 3: identical draws so the two
// criteria talk about the same 200 instances.
std::vector<ActiveInstance> sample_active(int count, std::uint64_t master_seed) {
    std::mt19937_64 rng(master_seed);
    std::vector<ActiveInstance> out;
    while (static_cast<int>(out.size()) < count) {
        int T = 4 + static_cast<int>(draw(rng, 0, 8));  // 4..12
        int g = 1 + static_cast<int>(draw(rng, 0, 2));  // 1..3
        int n_cap = std::min(6L, static_cast<long>(T) * g / 2);
        int n = 1 + static_cast<int>(draw(rng, 0, n_cap - 1));
        try {
            auto fx = random_active(n, T, g, draw(rng, 0, 1u << 30));
            out.push_back(std::get<ActiveInstance>(fx.instance));
        } catch (const InfeasibleError&) {
            // parameter combination too tight; redraw
        }
    }
    return out;
}

// ---- criterion 1: adversarial minimal solutions cost exactly 3g-2 ----------

int criterion_minimal_tightness() {
    Criterion c("1 minimal_tightness");
    auto t0 = std::chrono::steady_clock::now();
    const double per_instance_limit_ms = 1000.0;
    for (int g : {4, 6, 10}) {
        auto i0 = std::chrono::steady_clock::now();
        Fixture fx = tight_minimal(g);
        const auto& inst = std::get<ActiveInstance>(fx.instance);

        CloseOrder adv{CloseOrder::Policy::Explicit, 0, fx.adversarial_order};
        auto sched = minimal_feasible(inst, adv);
        c.expect(!validate_active_schedule(inst, sched).has_value(),
                 "g=" + std::to_string(g) + ": adversarial schedule invalid");
        c.expect(sched.cost() == 3 * g - 2,
                 "g=" + std::to_string(g) + ": adversarial cost " +
                     std::to_string(sched.cost()) + " != " + std::to_string(3 * g - 2));

        Rat opt;
        if (g == 4) {
            OracleBudget budget;
            budget.max_jobs = 8;
            auto exact = opt_active(inst, budget);
            opt = exact.cost;
            c.expect(fx.optimum && *fx.optimum == opt,
                     "g=4: oracle optimum " + std::to_string(exact.cost) +
                         " disagrees with fixture metadata");
        } else {
            c.expect(fx.optimum.has_value(), "g=" + std::to_string(g) + ": missing optimum");
            opt = fx.optimum.value_or(0);
        }
        c.expect(opt == g, "g=" + std::to_string(g) + ": optimum " + rstr(opt) +
                               " != " + std::to_string(g));

        double inst_ms = ms_since(i0);
        c.expect(inst_ms < per_instance_limit_ms,
                 "g=" + std::to_string(g) + ": took " + std::to_string(inst_ms) + " ms");
        c.note("g=" + std::to_string(g) + ": adversarial " + std::to_string(sched.cost()) +
               ", optimum " + rstr(opt) + ", " + std::to_string(inst_ms) + " ms");
    }
    return c.finish(ms_since(t0));
}

// ---- criterion 2: every close-order policy stays within 3x optimum ---------

int criterion_minimal_bound() {
    Criterion c("2 minimal_bound");
    auto t0 = std::chrono::steady_clock::now();
    const double total_limit_ms = 60000.0;
    auto instances = sample_active(200, 20240202);

    std::vector<CloseOrder> policies = {
        {CloseOrder::Policy::LatestFirst, 0, {}},
        {CloseOrder::Policy::EarliestFirst, 0, {}},
        {CloseOrder::Policy::Explicit, 0, {}}, // plain ascending sweep
        {CloseOrder::Policy::SeededRandom, 1, {}},
        {CloseOrder::Policy::SeededRandom, 2, {}},
        {CloseOrder::Policy::SeededRandom, 3, {}},
    };

    int worst_num = 0, worst_den = 1;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const auto& inst = instances[i];
        OracleBudget budget;
        int opt = opt_active(inst, budget).cost;
        for (const auto& policy : policies) {
            auto sched = minimal_feasible(inst, policy);
            c.expect(!validate_active_schedule(inst, sched).has_value(),
                     "instance " + std::to_string(i) + ": invalid schedule");
            c.expect(sched.cost() <= 3 * opt, "instance " + std::to_string(i) + ": cost " +
                                                  std::to_string(sched.cost()) + " > 3*" +
                                                  std::to_string(opt));
            if (sched.cost() * worst_den > worst_num * opt) {
                worst_num = sched.cost();
                worst_den = opt;
            }
        }
    }
    double total = ms_since(t0);
    c.expect(total < total_limit_ms, "total " + std::to_string(total) + " ms >= 60 s");
    c.note("200 instances x 6 policies, worst ratio " + std::to_string(worst_num) + "/" +
           std::to_string(worst_den));
    return c.finish(total);
}

// ---- criterion 3: LP rounding within 2x LP, invariants every iteration -----

int criterion_lp_rounding_bound() {
    Criterion c("3 lp_rounding_bound");
    auto t0 = std::chrono::steady_clock::now();
    const double total_limit_ms = 300000.0;
    auto instances = sample_active(200, 20240202); // same sample as criterion 2

    for (std::size_t i = 0; i < instances.size(); ++i) {
        const auto& inst = instances[i];
        const std::string tag = "instance " + std::to_string(i);
        LpRoundResult res;
        try {
            res = lp_round(inst);
        } catch (const std::exception& e) {
            c.expect(false, tag + ": lp_round threw: " + e.what());
            continue;
        }
        c.expect(!validate_active_schedule(inst, res.schedule).has_value(),
                 tag + ": invalid schedule");
        Rat lp = res.lp.cost();
        c.expect(Rat(res.schedule.cost()) <= 2 * lp,
                 tag + ": rounded " + std::to_string(res.schedule.cost()) + " > 2*" + rstr(lp));

        OracleBudget budget;
        int opt = opt_active(inst, budget).cost;
        c.expect(lp <= Rat(opt), tag + ": LP " + rstr(lp) + " > optimum " + std::to_string(opt));

        // re-check the per-iteration invariants from the recorded trace:
        // (i) jobs due so far fit inside the opened slots, (ii) opened <= 2 * mass
        auto blocks = deadline_blocks(inst, res.shifted.y);
        std::vector<std::size_t> due;
        for (const auto& it : res.rounding.iterations) {
            c.expect(it.index >= 1 && it.index <= static_cast<int>(blocks.size()),
                     tag + ": bad iteration index");
            if (it.index < 1 || it.index > static_cast<int>(blocks.size())) continue;
            for (std::size_t j : blocks[it.index - 1].jobs) due.push_back(j);
            auto flow = check_feasibility(inst, due, it.opened_cum);
            c.expect(flow.feasible, tag + ": iteration " + std::to_string(it.index) +
                                        ": due jobs do not fit in opened slots");
            c.expect(Rat(static_cast<long>(it.opened_cum.size())) <= 2 * it.mass_cum,
                     tag + ": iteration " + std::to_string(it.index) + ": opened " +
                         std::to_string(it.opened_cum.size()) + " > 2*" + rstr(it.mass_cum));
        }
        c.expect(due.size() == inst.jobs.size(), tag + ": trace does not cover all deadlines");
    }
    double total = ms_since(t0);
    c.expect(total < total_limit_ms, "total " + std::to_string(total) + " ms >= 5 min");
    return c.finish(total);
}

// ---- criterion 4: integrality gap family ------------------------------------

int criterion_integrality_gap() {
    Criterion c("4 integrality_gap");
    auto t0 = std::chrono::steady_clock::now();
    for (int g : {2, 5, 10}) {
        const std::string tag = "g=" + std::to_string(g);
        Fixture fx = integrality_gap(g);
        const auto& inst = std::get<ActiveInstance>(fx.instance);

        Rat lp = solve_active_lp(inst).cost();
        c.expect(lp == Rat(g + 1), tag + ": LP " + rstr(lp) + " != " + std::to_string(g + 1));

        int opt = 0;
        if (g == 2) {
            OracleBudget budget;
            opt = opt_active(inst, budget).cost;
        } else {
            // counting argument: each slot pair is wanted by g+1 unit jobs, which
            // cannot fit into a single capacity-g slot, so both slots of every
            // pair are needed; all 2g slots together are feasible.
            bool shape_ok = static_cast<int>(inst.jobs.size()) == g * (g + 1) && inst.T == 2 * g;
            std::vector<int> per_pair(g, 0);
            for (const auto& j : inst.jobs) {
                auto [lo, hi] = inst.window_slots(j);
                if (hi - lo != 1 || lo % 2 != 1 || j.p != 1) shape_ok = false;
                else ++per_pair[(lo - 1) / 2];
            }
            for (int k = 0; k < g; ++k)
                if (per_pair[k] != g + 1) shape_ok = false;
            c.expect(shape_ok, tag + ": fixture shape unexpected, counting bound void");
            std::set<int> all;
            for (int t = 1; t <= inst.T; ++t) all.insert(t);
            c.expect(check_feasibility(inst, all).feasible, tag + ": full slot set infeasible");
            opt = shape_ok && check_feasibility(inst, all).feasible ? 2 * g : -1;
        }
        c.expect(opt == 2 * g,
                 tag + ": optimum " + std::to_string(opt) + " != " + std::to_string(2 * g));

        auto res = lp_round(inst);
        c.expect(!validate_active_schedule(inst, res.schedule).has_value(),
                 tag + ": rounded schedule invalid");
        c.expect(Rat(res.schedule.cost()) <= 2 * Rat(g + 1),
                 tag + ": rounded " + std::to_string(res.schedule.cost()) + " > 2*(g+1)");
        c.note(tag + ": LP " + rstr(lp) + ", optimum " + std::to_string(opt) + ", rounded " +
               std::to_string(res.schedule.cost()));
    }
    return c.finish(ms_since(t0));
}

// ---- criterion 5: tracking structural bounds --------------------------------

int criterion_tracking_structural() {
    Criterion c("5 tracking_structural");
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240505);
    int oracle_comparisons = 0;
    for (int round = 0; round < 200; ++round) {
        int n = 1 + static_cast<int>(draw(rng, 0, 9));  // 1..10
        int g = 1 + static_cast<int>(draw(rng, 0, 3));  // 1..4
        bool integer_only = draw(rng, 0, 1) == 0;
        BusyInstance inst = random_interval_busy(n, g, draw(rng, 0, 1u << 30), integer_only);
        const std::string tag = "round " + std::to_string(round);

        auto res = greedy_tracking(inst);
        std::vector<TimeInterval> windows;
        for (const auto& j : inst.jobs) windows.push_back(j.window());
        std::vector<std::vector<std::size_t>> bundles;
        for (const auto& b : res.bundles) bundles.push_back(b.jobs);
        c.expect(!validate_bundles(inst, bundles, windows, res.cost).has_value(),
                 tag + ": invalid bundling");

        Rat span_all = span_of(windows);
        Rat two_mass = 2 * inst.total_length() / *inst.g;
        if (!res.bundles.empty())
            c.expect(res.bundles.front().span <= span_all,
                     tag + ": Sp(B1) " + rstr(res.bundles.front().span) + " > Sp(J) " +
                         rstr(span_all));
        Rat rest = 0;
        for (std::size_t b = 1; b < res.bundles.size(); ++b) rest += res.bundles[b].span;
        c.expect(rest <= two_mass,
                 tag + ": later bundles " + rstr(rest) + " > 2*mass/g " + rstr(two_mass));

        if (n <= 8) {
            try {
                OracleBudget budget;
                auto opt = opt_busy(inst, budget);
                ++oracle_comparisons;
                c.expect(res.cost <= 3 * opt.cost, tag + ": cost " + rstr(res.cost) + " > 3*" +
                                                       rstr(opt.cost));
            } catch (const BudgetError&) {
                // instance outside the enumeration budget; structural checks still ran
            }
        }
    }
    c.expect(oracle_comparisons >= 50, "only " + std::to_string(oracle_comparisons) +
                                           " oracle comparisons completed; sample too thin");
    c.note(std::to_string(oracle_comparisons) + " rounds compared against the exact optimum");
    return c.finish(ms_since(t0));
}

// ---- criterion 6: the factor-3 gadget ---------------------------------------

int criterion_factor3_gadget() {
    Criterion c("6 factor3_gadget");
    auto t0 = std::chrono::steady_clock::now();
    Fixture fx = tracking_gadget(2, Rat(1, 10));
    const auto& inst = std::get<BusyInstance>(fx.instance);
    const Rat expected = Rat(59, 10); // 2g + 2 - eps at g=2, eps=1/10

    OracleBudget budget;
    budget.max_jobs = 12;
    Rat opt = opt_busy(inst, budget, fx.warm).cost;
    c.expect(opt == expected, "oracle optimum " + rstr(opt) + " != " + rstr(expected));

    auto base = busy_three_approx(inst);
    c.expect(base.cost <= 3 * opt,
             "default tie-break cost " + rstr(base.cost) + " > 3*" + rstr(opt));

    // the gadget is supposed to bite: some tie-break seed should push the
    // greedy beyond twice the optimum
    Rat worst = base.cost;
    std::uint64_t worst_seed = 0;
    bool bites = false;
    for (std::uint64_t seed = 0; seed < 500 && !bites; ++seed) {
        auto run = busy_three_approx(inst, TieBreak{TieBreak::Mode::Seeded, seed});
        c.expect(run.cost <= 3 * opt,
                 "seed " + std::to_string(seed) + ": cost " + rstr(run.cost) + " > 3*opt");
        if (run.cost > worst) {
            worst = run.cost;
            worst_seed = seed;
        }
        if (run.cost > 2 * opt) bites = true;
    }
    c.note("optimum " + rstr(opt) + ", default cost " + rstr(base.cost) + ", worst seeded cost " +
           rstr(worst) + " (seed " + std::to_string(worst_seed) + ", ratio " +
           std::to_string(rat_double(worst / opt)) + ")");
    c.expect(bites, "no tie-break seed among 500 produced ratio > 2; the greedy never tears the"
                    " flexible jobs apart at this scale because the pinning step has already"
                    " stacked them into one hole");
    return c.finish(ms_since(t0));
}

// ---- criterion 7: flexible-to-interval conversion is exact ------------------

int criterion_conversion_exactness() {
    Criterion c("7 conversion_exactness");
    auto t0 = std::chrono::steady_clock::now();
    const double total_limit_ms = 120000.0;
    std::mt19937_64 rng(20240707);
    for (int round = 0; round < 100; ++round) {
        int n = 1 + static_cast<int>(draw(rng, 0, 7));       // 1..8
        int horizon = 6 + static_cast<int>(draw(rng, 0, 14)); // 6..20
        BusyInstance inst = random_flexible_busy(n, horizon, draw(rng, 0, 1u << 30));
        const std::string tag = "round " + std::to_string(round);

        auto conv = convert_to_interval_unbounded(inst);
        OracleBudget budget;
        Rat brute = opt_busy_unbounded(inst, budget);
        c.expect(conv.cost == brute,
                 tag + ": conversion " + rstr(conv.cost) + " != brute force " + rstr(brute));

        // placements must be real: inside windows, correct lengths
        bool placed_ok = conv.placement.size() == inst.jobs.size();
        for (std::size_t j = 0; placed_ok && j < inst.jobs.size(); ++j) {
            const auto& iv = conv.placement[j];
            const auto& job = inst.jobs[j];
            if (iv.length() != job.p || iv.start < job.r || iv.end > job.d) placed_ok = false;
        }
        c.expect(placed_ok, tag + ": conversion emitted an invalid placement");
    }
    double total = ms_since(t0);
    c.expect(total < total_limit_ms, "total " + std::to_string(total) + " ms >= 2 min");
    return c.finish(total);
}

// ---- criterion 8: preemptive exactness and the bounded 2-approximation ------

int criterion_preemptive_exactness() {
    Criterion c("8 preemptive_exactness");
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240808);
    for (int round = 0; round < 100; ++round) {
        int n = 1 + static_cast<int>(draw(rng, 0, 9)); // 1..10
        int g = 1 + static_cast<int>(draw(rng, 0, 3)); // 1..4
        Fixture fx = random_busy(n, g, draw(rng, 0, 1u << 30), false);
        const auto& inst = std::get<BusyInstance>(fx.instance);
        const std::string tag = "round " + std::to_string(round);

        auto sched = preemptive_unbounded(inst);
        c.expect(!validate_preemptive(inst, sched).has_value(), tag + ": invalid pieces");
        Rat lp = preemptive_cover_bound(inst);
        c.expect(sched.cost == lp,
                 tag + ": greedy " + rstr(sched.cost) + " != cover LP " + rstr(lp));

        auto bounded = preemptive_bounded(inst);
        c.expect(!validate_bounded_preemptive(inst, bounded).has_value(),
                 tag + ": invalid bounded split");
        Rat lb = preemptive_lower_bounds(inst);
        c.expect(bounded.cost <= 2 * lb,
                 tag + ": bounded " + rstr(bounded.cost) + " > 2*" + rstr(lb));
    }
    return c.finish(ms_since(t0));
}

// ---- criterion 9: flow feasibility equals brute-force assignment search -----

int criterion_flow_equivalence() {
    Criterion c("9 flow_equivalence");
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240909);
    int feasible_count = 0;
    for (int round = 0; round < 500; ++round) {
        int T = 3 + static_cast<int>(draw(rng, 0, 7));  // 3..10
        int g = 1 + static_cast<int>(draw(rng, 0, 2));  // 1..3
        int n_cap = std::min(6L, static_cast<long>(T) * g / 2);
        int n = 1 + static_cast<int>(draw(rng, 0, n_cap - 1));
        ActiveInstance inst;
        try {
            auto fx = random_active(n, T, g, draw(rng, 0, 1u << 30));
            inst = std::get<ActiveInstance>(fx.instance);
        } catch (const InfeasibleError&) {
            --round; // the pair count is part of the contract; redraw
            continue;
        }
        std::set<int> active;
        for (int t = 1; t <= inst.T; ++t)
            if (draw(rng, 0, 99) < 55) active.insert(t);

        auto flow = check_feasibility(inst, active);
        OracleBudget budget;
        bool brute = feasible_bruteforce(inst, active, budget);
        c.expect(flow.feasible == brute, "round " + std::to_string(round) + ": flow says " +
                                             (flow.feasible ? "yes" : "no") +
                                             ", brute force says " + (brute ? "yes" : "no"));
        if (flow.feasible) ++feasible_count;
    }
    c.note(std::to_string(feasible_count) + " of 500 sampled pairs were feasible");
    c.expect(feasible_count > 0 && feasible_count < 500, "degenerate sample");
    return c.finish(ms_since(t0));
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: acceptance <criterion 1..9>\n";
        return 2;
    }
    int k = std::atoi(argv[1]);
    switch (k) {
        case 1: return criterion_minimal_tightness();
        case 2: return criterion_minimal_bound();
        case 3: return criterion_lp_rounding_bound();
        case 4: return criterion_integrality_gap();
        case 5: return criterion_tracking_structural();
        case 6: return criterion_factor3_gadget();
        case 7: return criterion_conversion_exactness();
        case 8: return criterion_preemptive_exactness();
        case 9: return criterion_flow_equivalence();
        default:
            std::cerr << "unknown criterion " << argv[1] << "\n";
            return 2;
    }
}
