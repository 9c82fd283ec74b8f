#include "chronoshed/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <limits>
#include <tuple>

#include "chronoshed/busy.hpp"
#include "chronoshed/errors.hpp"
#include "chronoshed/lp.hpp"
#include "chronoshed/maxflow.hpp"

namespace chronoshed {

OracleBudget::OracleBudget(std::optional<long> ms) {
    if (ms) {
        ms_ = *ms;
    } else {
        ms_ = 10000;
        if (const char* env = std::getenv("CHRONOSHED_ORACLE_BUDGET_MS")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end && *end == '\0' && v > 0) ms_ = v;
        }
    }
    deadline_ = std::chrono::steady_clock::now() + std::chrono::milliseconds(ms_);
}

void OracleBudget::check() {
    if ((++calls_ & 0xffu) != 0) return;
    if (std::chrono::steady_clock::now() > deadline_)
        throw BudgetError("oracle ran past its " + std::to_string(ms_) + "ms budget");
}

namespace {

bool next_combination(std::vector<int>& c, int T) {
    const int k = static_cast<int>(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[i] < T - (k - 1 - i)) {
            ++c[i];
            for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

ActiveOpt opt_active(const ActiveInstance& inst, OracleBudget& budget) {
    const int job_cap = budget.max_jobs.value_or(7);
    const int slot_cap = budget.max_slots.value_or(14);
    if (static_cast<int>(inst.jobs.size()) > job_cap)
        throw BudgetError("exhaustive slot search capped at " + std::to_string(job_cap) +
                          " jobs, got " + std::to_string(inst.jobs.size()));
    if (inst.T > slot_cap)
        throw BudgetError("exhaustive slot search capped at " + std::to_string(slot_cap) +
                          " slots, got " + std::to_string(inst.T));
    ActiveOpt res;
    Rat mass = inst.total_demand();
    if (mass == 0) return res;
    long lb = to_i64(ceil_rat(mass / inst.g));
    for (int k = static_cast<int>(lb); k <= inst.T; ++k) {
        std::vector<int> comb(k);
        for (int i = 0; i < k; ++i) comb[i] = i + 1;
        while (true) {
            budget.check();
            std::set<int> active(comb.begin(), comb.end());
            auto f = check_feasibility(inst, active);
            if (f.feasible) {
                res.cost = k;
                res.slots = std::move(active);
                res.assignment = std::move(f.assignment);
                return res;
            }
            if (!next_combination(comb, inst.T)) break;
        }
    }
    throw InfeasibleError("no slot subset can host the demand");
}

namespace {

constexpr long kInf = std::numeric_limits<long>::max() / 4;

struct ScaledJob {
    long r, d, p;
};

long union_measure(std::vector<std::pair<long, long>> ivs) {
    std::sort(ivs.begin(), ivs.end());
    long total = 0, curs = 0, cure = std::numeric_limits<long>::min();
    bool open = false;
    for (const auto& [s, e] : ivs) {
        if (!open || s > cure) {
            if (open) total += cure - curs;
            curs = s;
            cure = e;
            open = true;
        } else {
            cure = std::max(cure, e);
        }
    }
    if (open) total += cure - curs;
    return total;
}

bool concurrency_ok(const std::vector<std::pair<long, long>>& ivs, long g) {
    std::vector<std::pair<long, int>> ev;
    for (const auto& [s, e] : ivs) {
        if (s == e) continue;
        ev.push_back({s, +1});
        ev.push_back({e, -1});
    }
    std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    long cur = 0;
    for (const auto& [t, delta] : ev) {
        (void)t;
        cur += delta;
        if (cur > g) return false;
    }
    return true;
}

// exact minimum union length of one machine's jobs, capacity respected
struct MachineSolver {
    const std::vector<ScaledJob>& all;
    long g;
    OracleBudget& budget;
    std::vector<std::size_t> members; // descending p
    long best = kInf;
    std::vector<long> cur, best_starts;
    std::vector<std::pair<long, long>> placed;

    MachineSolver(const std::vector<ScaledJob>& a, long g_, OracleBudget& b)
        : all(a), g(g_), budget(b) {}

    void rec(std::size_t k) {
        budget.check();
        if (union_measure(placed) >= best) return;
        if (k == members.size()) {
            if (concurrency_ok(placed, g)) {
                best = union_measure(placed);
                best_starts = cur;
            }
            return;
        }
        const auto& j = all[members[k]];
        long lo = j.r, hi = j.d - j.p;
        if (k > 0) {
            const auto& prev = all[members[k - 1]];
            if (prev.r == j.r && prev.d == j.d && prev.p == j.p) lo = std::max(lo, cur[k - 1]);
        }
        for (long s = lo; s <= hi; ++s) {
            cur[k] = s;
            placed.push_back({s, s + j.p});
            rec(k + 1);
            placed.pop_back();
        }
    }

    // returns span and start per member, or kInf when no placement fits
    std::pair<long, std::vector<long>> solve(const std::vector<std::size_t>& mem) {
        members = mem;
        std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
            if (all[a].p != all[b].p) return all[a].p > all[b].p;
            return a < b;
        });
        best = kInf;
        cur.assign(members.size(), 0);
        best_starts.clear();
        placed.clear();
        rec(0);
        return {best, best_starts};
    }
};

} // namespace

BusyOpt opt_busy(const BusyInstance& inst, OracleBudget& budget,
                 const std::optional<BusyOpt>& warm) {
    if (!inst.g) throw SchemaError("the bounded busy oracle needs a finite capacity");
    const long g = *inst.g;
    const std::size_t n = inst.jobs.size();

    const int job_cap = budget.max_jobs.value_or(8);
    if (static_cast<int>(n) > job_cap)
        throw BudgetError("exhaustive bundle search capped at " + std::to_string(job_cap) +
                          " jobs, got " + std::to_string(n));

    BusyOpt res;
    if (n == 0) {
        res.cost = 0;
        return res;
    }

    BigInt scale = 1;
    for (const auto& j : inst.jobs) {
        scale = lcm_big(scale, rat_den(j.r));
        scale = lcm_big(scale, rat_den(j.d));
        scale = lcm_big(scale, rat_den(j.p));
    }
    std::vector<ScaledJob> sj(n);
    Rat mass = 0;
    const long start_cap = budget.max_starts.value_or(128);
    for (std::size_t i = 0; i < n; ++i) {
        sj[i] = {rat_to_i64(Rat(inst.jobs[i].r * scale)), rat_to_i64(Rat(inst.jobs[i].d * scale)),
                 rat_to_i64(Rat(inst.jobs[i].p * scale))};
        long starts = sj[i].d - sj[i].p - sj[i].r + 1;
        if (starts > start_cap)
            throw BudgetError("job " + inst.jobs[i].id + " has " + std::to_string(starts) +
                              " candidate starts on the common grid, cap is " +
                              std::to_string(start_cap));
        mass += inst.jobs[i].p;
    }

    long incumbent = 0;
    std::vector<std::vector<std::size_t>> inc_bundles;
    std::vector<TimeInterval> inc_place(n);
    if (warm) {
        if (warm->placement.size() != n)
            throw InvariantViolation("warm start placement does not match the instance");
        if (auto msg = validate_bundles(inst, warm->bundles, warm->placement, warm->cost))
            throw InvariantViolation("warm start rejected: " + *msg);
        incumbent = rat_to_i64(Rat(warm->cost * scale));
        inc_bundles = warm->bundles;
        inc_place = warm->placement;
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            incumbent += sj[i].p;
            inc_bundles.push_back({i});
            inc_place[i] = {inst.jobs[i].r, inst.jobs[i].r + inst.jobs[i].p};
        }
    }

    // nothing can beat total work spread across full machines
    Rat floor_bound = mass / g;
    if (Rat(BigInt(incumbent), scale) <= floor_bound) {
        res.cost = Rat(BigInt(incumbent), scale);
        res.bundles = std::move(inc_bundles);
        res.placement = std::move(inc_place);
        return res;
    }

    MachineSolver solver(sj, g, budget);
    std::map<std::vector<std::size_t>, std::pair<long, std::vector<long>>> memo;
    auto machine_span = [&](const std::vector<std::size_t>& mem) {
        auto key = mem;
        std::sort(key.begin(), key.end());
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        auto val = solver.solve(key);
        // starts come back aligned to descending-p order; re-align to the key
        if (val.first < kInf) {
            std::vector<std::size_t> ordered = key;
            std::sort(ordered.begin(), ordered.end(), [&](std::size_t a, std::size_t b) {
                if (sj[a].p != sj[b].p) return sj[a].p > sj[b].p;
                return a < b;
            });
            std::vector<long> aligned(key.size(), 0);
            for (std::size_t k = 0; k < ordered.size(); ++k) {
                auto pos = std::lower_bound(key.begin(), key.end(), ordered[k]) - key.begin();
                aligned[static_cast<std::size_t>(pos)] = val.second[k];
            }
            val.second = std::move(aligned);
        }
        memo[key] = val;
        return val;
    };

    std::vector<std::size_t> ord(n);
    for (std::size_t i = 0; i < n; ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
        if (sj[a].p != sj[b].p) return sj[a].p > sj[b].p;
        return a < b;
    });

    std::vector<std::vector<std::size_t>> bundles;
    std::vector<long> spans;

    std::function<void(std::size_t, long)> bb = [&](std::size_t k, long partial) {
        budget.check();
        if (partial >= incumbent) return;
        if (k == n) {
            incumbent = partial;
            inc_bundles = bundles;
            for (std::size_t b = 0; b < bundles.size(); ++b) {
                auto key = bundles[b];
                std::sort(key.begin(), key.end());
                const auto& sol = memo.at(key);
                for (std::size_t m = 0; m < key.size(); ++m) {
                    long s = sol.second[m];
                    inc_place[key[m]] = {Rat(BigInt(s), scale),
                                         Rat(BigInt(s + sj[key[m]].p), scale)};
                }
            }
            return;
        }
        std::size_t job = ord[k];
        for (std::size_t b = 0; b <= bundles.size(); ++b) {
            long old = 0;
            if (b == bundles.size()) {
                bundles.push_back({job});
                spans.push_back(machine_span(bundles[b]).first);
            } else {
                old = spans[b];
                bundles[b].push_back(job);
                spans[b] = machine_span(bundles[b]).first;
            }
            if (spans[b] < kInf) bb(k + 1, partial - old + spans[b]);
            if (b == bundles.size() - 1 && bundles[b].size() == 1) {
                bundles.pop_back();
                spans.pop_back();
                break; // later empty machines are symmetric
            }
            bundles[b].pop_back();
            spans[b] = old;
        }
    };
    bb(0, 0);

    res.cost = Rat(BigInt(incumbent), scale);
    res.bundles = std::move(inc_bundles);
    res.placement = std::move(inc_place);
    return res;
}

Rat opt_busy_unbounded(const BusyInstance& inst, OracleBudget& budget) {
    const std::size_t n = inst.jobs.size();
    if (n == 0) return 0;

    const int job_cap = budget.max_jobs.value_or(8);
    if (static_cast<int>(n) > job_cap)
        throw BudgetError("exhaustive start search capped at " + std::to_string(job_cap) +
                          " jobs, got " + std::to_string(n));

    BigInt scale = 1;
    for (const auto& j : inst.jobs) {
        scale = lcm_big(scale, rat_den(j.r));
        scale = lcm_big(scale, rat_den(j.d));
        scale = lcm_big(scale, rat_den(j.p));
    }
    const long start_cap = budget.max_starts.value_or(128);
    std::vector<ScaledJob> sj(n);
    for (std::size_t i = 0; i < n; ++i) {
        sj[i] = {rat_to_i64(Rat(inst.jobs[i].r * scale)), rat_to_i64(Rat(inst.jobs[i].d * scale)),
                 rat_to_i64(Rat(inst.jobs[i].p * scale))};
        long starts = sj[i].d - sj[i].p - sj[i].r + 1;
        if (starts > start_cap)
            throw BudgetError("job " + inst.jobs[i].id + " has " + std::to_string(starts) +
                              " candidate starts on the common grid, cap is " +
                              std::to_string(start_cap));
    }

    std::vector<std::size_t> ord(n);
    for (std::size_t i = 0; i < n; ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(sj[a].r, sj[a].d, sj[a].p, a) < std::tie(sj[b].r, sj[b].d, sj[b].p, b);
    });

    // left-aligned placement as the starting incumbent
    std::vector<std::pair<long, long>> placed;
    for (std::size_t i = 0; i < n; ++i) placed.push_back({sj[i].r, sj[i].r + sj[i].p});
    long best = union_measure(placed);
    placed.clear();

    std::vector<long> cur(n, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        budget.check();
        if (union_measure(placed) >= best) return;
        if (k == n) {
            best = union_measure(placed);
            return;
        }
        const auto& j = sj[ord[k]];
        long lo = j.r, hi = j.d - j.p;
        if (k > 0) {
            const auto& prev = sj[ord[k - 1]];
            if (prev.r == j.r && prev.d == j.d && prev.p == j.p) lo = std::max(lo, cur[k - 1]);
        }
        for (long s = lo; s <= hi; ++s) {
            cur[k] = s;
            placed.push_back({s, s + j.p});
            rec(k + 1);
            placed.pop_back();
        }
    };
    rec(0);
    return Rat(BigInt(best), scale);
}

Rat preemptive_cover_bound(const BusyInstance& inst) {
    if (inst.jobs.empty()) return 0;
    std::vector<Rat> pts;
    for (const auto& j : inst.jobs) {
        pts.push_back(j.r);
        pts.push_back(j.d);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    LinearProgram lp;
    std::vector<int> cell(pts.size() ? pts.size() - 1 : 0, -1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        cell[i] = lp.add_var(Rat(0), pts[i + 1] - pts[i], Rat(1));
    for (const auto& j : inst.jobs) {
        std::vector<LinearProgram::Term> terms;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            if (j.r <= pts[i] && pts[i + 1] <= j.d) terms.push_back({cell[i], Rat(1)});
        lp.add_row(std::move(terms), Cmp::GE, j.p);
    }
    auto sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
        throw InvariantViolation("the open-measure relaxation must be solvable");
    return sol.objective;
}

Rat preemptive_lower_bounds(const BusyInstance& inst) {
    Rat cover = preemptive_cover_bound(inst);
    if (!inst.g) return cover;
    Rat mass = 0;
    for (const auto& j : inst.jobs) mass += j.p;
    return std::max<Rat>(cover, mass / *inst.g);
}

namespace {

bool assign_jobs(const ActiveInstance& inst, std::vector<int>& cap,
                 const std::vector<std::size_t>& order, std::size_t k, OracleBudget& budget) {
    budget.check();
    if (k == order.size()) return true;
    const Job& job = inst.jobs[order[k]];
    auto [lo, hi] = inst.window_slots(job);
    long need = rat_to_i64(job.p);
    std::vector<int> cand;
    for (int t = lo; t <= hi; ++t)
        if (t >= 1 && t <= inst.T && cap[t] > 0) cand.push_back(t);
    if (static_cast<long>(cand.size()) < need) return false;

    std::vector<std::size_t> pick;
    std::function<bool(std::size_t, long)> choose = [&](std::size_t from, long left) -> bool {
        if (left == 0) {
            for (auto c : pick) --cap[cand[c]];
            bool ok = assign_jobs(inst, cap, order, k + 1, budget);
            for (auto c : pick) ++cap[cand[c]];
            return ok;
        }
        if (cand.size() - from < static_cast<std::size_t>(left)) return false;
        for (std::size_t i = from; i < cand.size(); ++i) {
            pick.push_back(i);
            if (choose(i + 1, left - 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    return choose(0, need);
}

} // namespace

bool feasible_bruteforce(const ActiveInstance& inst, const std::set<int>& active,
                         OracleBudget& budget) {
    std::vector<int> cap(inst.T + 1, 0);
    for (int t : active)
        if (t >= 1 && t <= inst.T) cap[t] = inst.g;
    std::vector<std::size_t> order(inst.jobs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        auto wa = inst.window_slots(inst.jobs[a]), wb = inst.window_slots(inst.jobs[b]);
        long sa = wa.second - wa.first, sb = wb.second - wb.first;
        if (sa != sb) return sa < sb;
        return a < b;
    });
    return assign_jobs(inst, cap, order, 0, budget);
}

} // namespace chronoshed
