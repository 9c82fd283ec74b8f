#include "chronoshed/active.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "chronoshed/errors.hpp"

namespace chronoshed {

ActiveLpLayout active_lp_layout(const ActiveInstance& inst) {
    ActiveLpLayout lay;
    lay.T = inst.T;
    lay.n = static_cast<int>(inst.jobs.size());
    return lay;
}

LinearProgram build_active_lp(const ActiveInstance& inst) {
    const auto lay = active_lp_layout(inst);
    LinearProgram lp;
    for (int t = 1; t <= lay.T; ++t) lp.add_var(Rat(0), Rat(1), Rat(1));
    for (int t = 1; t <= lay.T; ++t) {
        for (int j = 0; j < lay.n; ++j) {
            auto [lo, hi] = inst.window_slots(inst.jobs[j]);
            bool inside = lo <= t && t <= hi;
            // out-of-window assignment variables are pinned at zero
            lp.add_var(Rat(0), inside ? std::optional<Rat>{} : std::optional<Rat>{Rat(0)}, Rat(0));
        }
    }
    for (int t = 1; t <= lay.T; ++t)
        for (int j = 0; j < lay.n; ++j)
            lp.add_row({{lay.x(t, j), Rat(1)}, {lay.y(t), Rat(-1)}}, Cmp::LE, Rat(0));
    for (int t = 1; t <= lay.T; ++t) {
        std::vector<LinearProgram::Term> terms;
        for (int j = 0; j < lay.n; ++j) terms.push_back({lay.x(t, j), Rat(1)});
        terms.push_back({lay.y(t), Rat(-inst.g)});
        lp.add_row(std::move(terms), Cmp::LE, Rat(0));
    }
    for (int j = 0; j < lay.n; ++j) {
        std::vector<LinearProgram::Term> terms;
        auto [lo, hi] = inst.window_slots(inst.jobs[j]);
        for (int t = lo; t <= hi; ++t) terms.push_back({lay.x(t, j), Rat(1)});
        lp.add_row(std::move(terms), Cmp::GE, inst.jobs[j].p);
    }
    return lp;
}

namespace {

FractionalSolution unpack(const ActiveInstance& inst, const std::vector<Rat>& raw) {
    const auto lay = active_lp_layout(inst);
    FractionalSolution sol;
    sol.y.resize(lay.T);
    sol.x.assign(lay.T, std::vector<Rat>(lay.n, Rat(0)));
    for (int t = 1; t <= lay.T; ++t) {
        sol.y[t - 1] = raw[lay.y(t)];
        for (int j = 0; j < lay.n; ++j) sol.x[t - 1][j] = raw[lay.x(t, j)];
    }
    return sol;
}

} // namespace

FractionalSolution solve_active_lp(const ActiveInstance& inst) {
    auto lp = build_active_lp(inst);
    auto sol = solve_lp(lp);
    if (sol.status == LpStatus::Infeasible)
        throw InfeasibleError("no fractional schedule exists for this instance");
    if (sol.status != LpStatus::Optimal)
        throw InvariantViolation("slot relaxation should be bounded");
    return unpack(inst, sol.x);
}

std::vector<DeadlineBlock> deadline_blocks(const ActiveInstance& inst, const std::vector<Rat>& y) {
    std::vector<int> deadlines;
    for (const auto& j : inst.jobs) deadlines.push_back(static_cast<int>(rat_to_i64(j.d)));
    std::sort(deadlines.begin(), deadlines.end());
    deadlines.erase(std::unique(deadlines.begin(), deadlines.end()), deadlines.end());

    std::vector<DeadlineBlock> blocks;
    int prev = 0;
    for (std::size_t i = 0; i < deadlines.size(); ++i) {
        DeadlineBlock b;
        b.index = static_cast<int>(i) + 1;
        b.begin = prev + 1;
        b.deadline = deadlines[i];
        b.mass = 0;
        for (int t = b.begin; t <= b.deadline; ++t) b.mass += y[t - 1];
        for (std::size_t j = 0; j < inst.jobs.size(); ++j)
            if (rat_to_i64(inst.jobs[j].d) == deadlines[i]) b.jobs.push_back(j);
        prev = b.deadline;
        blocks.push_back(std::move(b));
    }
    return blocks;
}

FractionalSolution right_shift(const ActiveInstance& inst, const FractionalSolution& frac) {
    const auto lay = active_lp_layout(inst);
    std::vector<Rat> ny(lay.T, Rat(0));
    for (const auto& b : deadline_blocks(inst, frac.y)) {
        BigInt fl = floor_rat(b.mass);
        Rat rem = b.mass - Rat(fl);
        long full = to_i64(fl);
        for (long k = 0; k < full; ++k) ny[b.deadline - 1 - k] = 1;
        if (rem > 0) ny[b.deadline - 1 - full] = rem;
    }

    // re-derive an assignment consistent with the shifted slot values
    LinearProgram lp;
    std::vector<std::vector<int>> xv(lay.T, std::vector<int>(lay.n, -1));
    for (int t = 1; t <= lay.T; ++t) {
        for (int j = 0; j < lay.n; ++j) {
            auto [lo, hi] = inst.window_slots(inst.jobs[j]);
            bool inside = lo <= t && t <= hi;
            Rat cap = inside ? ny[t - 1] : Rat(0);
            xv[t - 1][j] = lp.add_var(Rat(0), cap, Rat(0));
        }
    }
    for (int t = 1; t <= lay.T; ++t) {
        std::vector<LinearProgram::Term> terms;
        for (int j = 0; j < lay.n; ++j) terms.push_back({xv[t - 1][j], Rat(1)});
        lp.add_row(std::move(terms), Cmp::LE, Rat(inst.g) * ny[t - 1]);
    }
    for (int j = 0; j < lay.n; ++j) {
        std::vector<LinearProgram::Term> terms;
        auto [lo, hi] = inst.window_slots(inst.jobs[j]);
        for (int t = lo; t <= hi; ++t) terms.push_back({xv[t - 1][j], Rat(1)});
        lp.add_row(std::move(terms), Cmp::GE, inst.jobs[j].p);
    }
    auto sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
        throw InvariantViolation("shifting slot mass to the back of each deadline range must stay feasible");

    FractionalSolution out;
    out.y = std::move(ny);
    out.x.assign(lay.T, std::vector<Rat>(lay.n, Rat(0)));
    for (int t = 1; t <= lay.T; ++t)
        for (int j = 0; j < lay.n; ++j) out.x[t - 1][j] = sol.x[xv[t - 1][j]];

    Rat before = frac.cost(), after = out.cost();
    if (before != after)
        throw InvariantViolation("shift changed the opening cost from " + rat_str(before) + " to " + rat_str(after));
    return out;
}

namespace {

struct FullStatus {
    bool has_dependent = false;
    Rat dep_value;
    int dep_slot = -1;
    bool in_trio = false;
};

struct HalfStatus {
    Rat value;
    bool has_filler = false;
};

bool feasible_prefix(const ActiveInstance& inst, int deadline, const std::set<int>& opened) {
    std::vector<std::size_t> due;
    for (std::size_t j = 0; j < inst.jobs.size(); ++j)
        if (rat_to_i64(inst.jobs[j].d) <= deadline) due.push_back(j);
    return check_feasibility(inst, due, opened).feasible;
}

} // namespace

RoundingState round_active(const ActiveInstance& inst, const FractionalSolution& shifted) {
    RoundingState st;
    auto blocks = deadline_blocks(inst, shifted.y);

    std::map<int, FullStatus> fulls;  // chargeable fully open slots
    std::map<int, HalfStatus> halves; // half-open slots, for filler charges
    std::optional<std::pair<Rat, int>> proxy;
    Rat mass_cum = 0;

    for (const auto& b : blocks) {
        IterationRecord it;
        it.index = b.index;
        it.deadline = b.deadline;
        it.block_mass = b.mass;
        it.proxy_in = proxy;
        mass_cum += b.mass;

        BigInt fl = floor_rat(b.mass);
        long nfull = to_i64(fl);
        Rat frac = b.mass - Rat(fl);
        int frac_slot = b.deadline - static_cast<int>(nfull);

        if (proxy) {
            // merge the carried remainder into this block's fractional slot
            Rat merged = proxy->first + frac;
            if (merged <= 1) {
                int ptr = (frac_slot != b.begin - 1) ? frac_slot : proxy->second;
                frac = merged;
                frac_slot = ptr;
            } else {
                // overflow: fill the fractional slot completely, carry the excess
                st.opened.insert(frac_slot);
                fulls[frac_slot] = FullStatus{};
                it.merge_topped = frac_slot;
                it.fully_opened.push_back(frac_slot);
                int cand = frac_slot - 1;
                int ptr = (cand >= 1 && cand != b.begin - 1) ? cand : proxy->second;
                frac = merged - 1;
                frac_slot = ptr;
            }
            proxy.reset();
        }

        for (long k = 0; k < nfull; ++k) {
            int t = b.deadline - static_cast<int>(k);
            st.opened.insert(t);
            fulls[t] = FullStatus{};
            it.fully_opened.push_back(t);
        }

        if (frac > 0) {
            it.frac_slot = frac_slot;
            it.frac_value = frac;
            it.frac_class = classify_slot(frac);
            if (frac == 1) {
                st.opened.insert(frac_slot);
                fulls[frac_slot] = FullStatus{};
                it.fully_opened.push_back(frac_slot);
            } else if (frac >= Rat(1, 2)) {
                st.opened.insert(frac_slot);
                halves[frac_slot] = HalfStatus{frac, false};
                ChargeRecord rec;
                rec.kind = ChargeRecord::Kind::SelfHalf;
                rec.slot = frac_slot;
                rec.value = frac;
                st.ledger.push_back(rec);
                it.charge = rec;
            } else {
                // barely open: close it when the due jobs still fit, otherwise
                // open it and charge its cost to earlier mass
                if (feasible_prefix(inst, b.deadline, st.opened)) {
                    proxy = std::make_pair(frac, frac_slot);
                    it.closed_frac = true;
                } else {
                    st.opened.insert(frac_slot);
                    ChargeRecord rec;
                    rec.slot = frac_slot;
                    rec.value = frac;
                    bool charged = false;
                    for (auto& [t, fs] : fulls) {
                        if (!fs.has_dependent && !fs.in_trio) {
                            fs.has_dependent = true;
                            fs.dep_value = frac;
                            fs.dep_slot = frac_slot;
                            rec.kind = ChargeRecord::Kind::Dependent;
                            rec.full_slot = t;
                            charged = true;
                            break;
                        }
                    }
                    if (!charged) {
                        for (auto& [t, fs] : fulls) {
                            if (fs.has_dependent && !fs.in_trio && fs.dep_value + frac >= Rat(1, 2)) {
                                fs.in_trio = true;
                                rec.kind = ChargeRecord::Kind::Trio;
                                rec.full_slot = t;
                                rec.dep_slot = fs.dep_slot;
                                rec.dep_value = fs.dep_value;
                                // the trio replaces the dependent record it absorbs
                                for (auto& old : st.ledger) {
                                    if (old.kind == ChargeRecord::Kind::Dependent && old.slot == fs.dep_slot) {
                                        old = rec;
                                        charged = true;
                                        break;
                                    }
                                }
                                if (!charged)
                                    throw InvariantViolation("trio charge found no dependent record to absorb");
                                break;
                            }
                        }
                    }
                    if (!charged) {
                        for (auto& [t, hs] : halves) {
                            if (!hs.has_filler && hs.value + frac >= 1) {
                                hs.has_filler = true;
                                rec.kind = ChargeRecord::Kind::Filler;
                                rec.half_slot = t;
                                rec.half_value = hs.value;
                                charged = true;
                                break;
                            }
                        }
                        if (charged) st.ledger.push_back(rec);
                    } else if (rec.kind != ChargeRecord::Kind::Trio) {
                        st.ledger.push_back(rec);
                    }
                    if (!charged)
                        throw InvariantViolation("no slot available to charge at deadline " +
                                                 std::to_string(b.deadline));
                    it.charge = rec;
                }
            }
        }

        if (!feasible_prefix(inst, b.deadline, st.opened))
            throw InvariantViolation("jobs due by slot " + std::to_string(b.deadline) +
                                     " do not fit in the opened slots");
        if (Rat(static_cast<long>(st.opened.size())) > 2 * mass_cum)
            throw InvariantViolation("opened " + std::to_string(st.opened.size()) +
                                     " slots against mass " + rat_str(mass_cum));

        it.opened_cum = st.opened;
        it.mass_cum = mass_cum;
        it.proxy_out = proxy;
        st.iterations.push_back(std::move(it));
    }
    return st;
}

LpRoundResult lp_round(const ActiveInstance& inst) {
    LpRoundResult res;
    res.lp = solve_active_lp(inst);
    res.shifted = right_shift(inst, res.lp);
    res.rounding = round_active(inst, res.shifted);
    auto fin = check_feasibility(inst, res.rounding.opened);
    if (!fin.feasible)
        throw InvariantViolation("rounded slot set cannot host all jobs");
    res.schedule.active_slots = res.rounding.opened;
    res.schedule.assignment = std::move(fin.assignment);
    return res;
}

ActiveSchedule minimal_feasible(const ActiveInstance& inst, const CloseOrder& order) {
    std::set<int> active;
    for (int t = 1; t <= inst.T; ++t) active.insert(t);
    if (!check_feasibility(inst, active).feasible)
        throw InfeasibleError("instance infeasible even with every slot active");

    std::vector<int> seq;
    switch (order.policy) {
    case CloseOrder::Policy::LatestFirst:
        for (int t = inst.T; t >= 1; --t) seq.push_back(t);
        break;
    case CloseOrder::Policy::EarliestFirst:
        for (int t = 1; t <= inst.T; ++t) seq.push_back(t);
        break;
    case CloseOrder::Policy::SeededRandom: {
        for (int t = 1; t <= inst.T; ++t) seq.push_back(t);
        std::mt19937_64 rng(order.seed);
        // Fisher-Yates with explicit bounded draws, identical on every platform
        for (std::size_t i = seq.size(); i > 1; --i) {
            std::uint64_t r = rng() % i;
            std::swap(seq[i - 1], seq[r]);
        }
        break;
    }
    case CloseOrder::Policy::Explicit: {
        std::set<int> seen;
        for (int t : order.order) {
            if (t < 1 || t > inst.T)
                throw SchemaError("close order mentions slot " + std::to_string(t) +
                                  " outside 1.." + std::to_string(inst.T));
            if (seen.insert(t).second) seq.push_back(t);
        }
        for (int t = 1; t <= inst.T; ++t)
            if (!seen.count(t)) seq.push_back(t);
        break;
    }
    }

    for (int t : seq) {
        std::set<int> tentative = active;
        tentative.erase(t);
        if (check_feasibility(inst, tentative).feasible) active = std::move(tentative);
    }

    auto fin = check_feasibility(inst, active);
    if (!fin.feasible)
        throw InvariantViolation("closing loop ended on an infeasible slot set");
    ActiveSchedule sched;
    sched.active_slots = std::move(active);
    sched.assignment = std::move(fin.assignment);
    return sched;
}

std::optional<std::string> validate_active_schedule(const ActiveInstance& inst,
                                                    const ActiveSchedule& sched) {
    std::map<int, int> load;
    for (int t : sched.active_slots)
        if (t < 1 || t > inst.T)
            return "active slot " + std::to_string(t) + " outside the horizon";
    for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
        const auto& job = inst.jobs[j];
        auto itjob = sched.assignment.find(job.id);
        long need = rat_to_i64(job.p);
        if (itjob == sched.assignment.end()) {
            if (need > 0) return "job " + job.id + " missing from the assignment";
            continue;
        }
        const auto& slots = itjob->second;
        if (static_cast<long>(slots.size()) != need)
            return "job " + job.id + " got " + std::to_string(slots.size()) + " units, needs " +
                   std::to_string(need);
        std::set<int> uniq(slots.begin(), slots.end());
        if (uniq.size() != slots.size()) return "job " + job.id + " uses a slot twice";
        auto [lo, hi] = inst.window_slots(job);
        for (int t : slots) {
            if (t < lo || t > hi) return "job " + job.id + " scheduled at slot " + std::to_string(t) +
                                         " outside its window";
            if (!sched.active_slots.count(t))
                return "job " + job.id + " scheduled in inactive slot " + std::to_string(t);
            ++load[t];
        }
    }
    for (const auto& [t, c] : load)
        if (c > inst.g)
            return "slot " + std::to_string(t) + " runs " + std::to_string(c) + " jobs, capacity " +
                   std::to_string(inst.g);
    for (const auto& [id, slots] : sched.assignment) {
        bool known = false;
        for (const auto& job : inst.jobs)
            if (job.id == id) known = true;
        if (!known) return "assignment mentions unknown job " + id;
        (void)slots;
    }
    return std::nullopt;
}

} // namespace chronoshed
