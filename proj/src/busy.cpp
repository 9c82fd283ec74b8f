#include "chronoshed/busy.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "chronoshed/errors.hpp"

namespace chronoshed {

Track longest_track(const BusyInstance& inst, const std::vector<std::size_t>& avail, TieBreak tb) {
    for (auto idx : avail)
        if (!inst.jobs[idx].is_interval())
            throw SchemaError("track extraction needs pinned jobs; job " + inst.jobs[idx].id +
                              " still has slack");

    std::vector<std::size_t> order(avail);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Job &ja = inst.jobs[a], &jb = inst.jobs[b];
        if (ja.d != jb.d) return ja.d < jb.d;
        if (ja.r != jb.r) return ja.r < jb.r;
        if (ja.id != jb.id) return ja.id < jb.id;
        return a < b;
    });

    const std::size_t m = order.size();
    // pred[k]: how many of the first k-1 jobs end no later than job k starts
    std::vector<std::size_t> pred(m + 1, 0);
    std::vector<Rat> ends(m);
    for (std::size_t k = 0; k < m; ++k) ends[k] = inst.jobs[order[k]].d;
    for (std::size_t k = 1; k <= m; ++k) {
        const Rat& start = inst.jobs[order[k - 1]].r;
        std::size_t lo = 0, hi = k - 1; // count of ends <= start among first k-1
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (ends[mid] <= start)
                lo = mid + 1;
            else
                hi = mid;
        }
        pred[k] = lo;
    }

    std::vector<Rat> f(m + 1, Rat(0));
    for (std::size_t k = 1; k <= m; ++k) {
        Rat incl = inst.jobs[order[k - 1]].p + f[pred[k]];
        f[k] = std::max(f[k - 1], incl);
    }

    std::mt19937_64 rng(tb.seed);
    std::vector<std::size_t> picked;
    std::size_t k = m;
    while (k > 0) {
        Rat incl = inst.jobs[order[k - 1]].p + f[pred[k]];
        bool take;
        if (f[k] > f[k - 1])
            take = true;
        else if (incl < f[k])
            take = false;
        else
            // both choices optimal: default drops the latest-ending candidate
            take = tb.mode == TieBreak::Mode::Seeded ? (rng() & 1u) != 0 : false;
        if (take) {
            picked.push_back(order[k - 1]);
            k = pred[k];
        } else {
            --k;
        }
    }
    std::reverse(picked.begin(), picked.end());

    Track t;
    t.jobs = std::move(picked);
    t.length = 0;
    for (auto idx : t.jobs) t.length += inst.jobs[idx].p;
    return t;
}

TrackingResult greedy_tracking(const BusyInstance& inst, TieBreak tb) {
    if (!inst.g) throw SchemaError("bundling needs a finite capacity");
    TrackingResult res;
    res.cost = 0;

    std::vector<std::size_t> remaining;
    for (std::size_t i = 0; i < inst.jobs.size(); ++i) remaining.push_back(i);

    std::uint64_t round = 0;
    while (!remaining.empty()) {
        TieBreak tbr = tb;
        tbr.seed = tb.seed + 0x9e3779b97f4a7c15ULL * round++;
        Track t = longest_track(inst, remaining, tbr);
        if (t.jobs.empty())
            throw InvariantViolation("track extraction returned nothing for a nonempty job set");
        std::set<std::size_t> taken(t.jobs.begin(), t.jobs.end());
        std::vector<std::size_t> rest;
        for (auto idx : remaining)
            if (!taken.count(idx)) rest.push_back(idx);
        remaining = std::move(rest);
        res.tracks.push_back(std::move(t));
    }

    const std::size_t g = static_cast<std::size_t>(*inst.g);
    for (std::size_t i = 0; i < res.tracks.size(); i += g) {
        Bundle b;
        std::vector<TimeInterval> ivs;
        for (std::size_t k = i; k < std::min(i + g, res.tracks.size()); ++k) {
            b.tracks.push_back(k);
            for (auto idx : res.tracks[k].jobs) {
                b.jobs.push_back(idx);
                ivs.push_back(inst.jobs[idx].window());
            }
        }
        std::sort(b.jobs.begin(), b.jobs.end());
        b.cover = interval_union(ivs);
        b.span = span_of(b.cover);
        res.cost += b.span;
        res.bundles.push_back(std::move(b));
    }
    return res;
}

namespace {

// Exact minimum-length cover of flexible jobs by disjoint busy runs, on an
// integer grid. A run [s,e) can host a job released at or before s when
// s <= latest_start and e >= s + p, and a later-released job when e >= r + p.
struct RunsDp {
    struct Constraint {
        long r, d, p, x, y; // x: latest start, y: earliest end
    };
    static constexpr long INF = std::numeric_limits<long>::max() / 4;
    using Pending = std::vector<std::pair<long, long>>; // (x, p), antichain, x ascending
    using Key = std::tuple<std::size_t, long, Pending>;

    std::vector<Constraint> cs; // distinct, sorted by release
    std::vector<long> suffix_max_x;
    std::map<Key, long> memo;
    std::map<Key, std::pair<long, long>> choice;

    static void reduce(Pending& np) {
        std::sort(np.begin(), np.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first < b.first;
            return a.second > b.second;
        });
        Pending out;
        long pmax = std::numeric_limits<long>::min();
        for (const auto& e : np) {
            if (e.second > pmax) {
                out.push_back(e);
                pmax = e.second;
            }
        }
        np = std::move(out);
    }

    struct Transition {
        std::size_t i2;
        Pending np;
    };

    std::optional<Transition> apply(std::size_t i, const Pending& P, long s, long e) const {
        Transition tr;
        std::size_t k = i;
        for (const auto& [x, p] : P) {
            if (p > e - s) {
                if (x < e) return std::nullopt;
                tr.np.push_back({x, p});
            }
        }
        while (k < cs.size() && cs[k].r <= s) {
            if (cs[k].x < s) return std::nullopt;
            if (cs[k].p > e - s) {
                if (cs[k].x < e) return std::nullopt;
                tr.np.push_back({cs[k].x, cs[k].p});
            }
            ++k;
        }
        while (k < cs.size() && cs[k].r < e) {
            if (cs[k].y > e) {
                if (cs[k].x < e) return std::nullopt;
                tr.np.push_back({cs[k].x, cs[k].p});
            }
            ++k;
        }
        tr.i2 = k;
        reduce(tr.np);
        return tr;
    }

    long solve(std::size_t i, const Pending& P, long pos) {
        if (P.empty() && i == cs.size()) return 0;
        long cap = P.empty() ? suffix_max_x[i] : P.front().first;
        if (cap < pos) return INF;
        Key key{i, pos, P};
        auto hit = memo.find(key);
        if (hit != memo.end()) return hit->second;

        long best = INF;
        std::pair<long, long> bestse{-1, -1};
        // descending, so among equal-cost covers the latest start sticks
        for (long s = cap; s >= pos; --s) {
            bool dead = false;
            std::vector<long> ecand;
            for (const auto& [x, p] : P) {
                (void)x;
                ecand.push_back(s + p);
            }
            std::size_t k = i;
            while (k < cs.size() && cs[k].r <= s) {
                if (cs[k].x < s) {
                    dead = true;
                    break;
                }
                ecand.push_back(s + cs[k].p);
                ++k;
            }
            if (dead) continue; // an earlier start may still satisfy that job
            for (std::size_t m = k; m < cs.size(); ++m) ecand.push_back(cs[m].y);
            std::sort(ecand.begin(), ecand.end());
            ecand.erase(std::unique(ecand.begin(), ecand.end()), ecand.end());
            for (long e : ecand) {
                if (e <= s) continue;
                auto tr = apply(i, P, s, e);
                if (!tr) continue;
                long sub = solve(tr->i2, tr->np, e);
                if (sub >= INF) continue;
                long total = (e - s) + sub;
                if (total < best) {
                    best = total;
                    bestse = {s, e};
                }
            }
        }
        memo[key] = best;
        choice[key] = bestse;
        return best;
    }

    std::vector<std::pair<long, long>> runs() const {
        std::vector<std::pair<long, long>> out;
        std::size_t i = 0;
        Pending P;
        long pos = 0;
        while (!(P.empty() && i == cs.size())) {
            auto it = choice.find(Key{i, pos, P});
            if (it == choice.end() || it->second.first < 0)
                throw InvariantViolation("run reconstruction lost its trail");
            auto [s, e] = it->second;
            out.push_back({s, e});
            auto tr = apply(i, P, s, e);
            if (!tr) throw InvariantViolation("recorded run choice no longer applies");
            i = tr->i2;
            P = std::move(tr->np);
            pos = e;
        }
        return out;
    }
};

} // namespace

ConversionResult convert_to_interval_unbounded(const BusyInstance& inst) {
    ConversionResult res;
    res.rigid.g = inst.g;
    if (inst.jobs.empty()) {
        res.cost = 0;
        return res;
    }

    BigInt scale = 1;
    for (const auto& j : inst.jobs) {
        scale = lcm_big(scale, rat_den(j.r));
        scale = lcm_big(scale, rat_den(j.d));
        scale = lcm_big(scale, rat_den(j.p));
    }

    struct SKey {
        long r, d, p;
        bool operator<(const SKey& o) const {
            return std::tie(r, d, p) < std::tie(o.r, o.d, o.p);
        }
    };
    std::map<SKey, std::vector<std::size_t>> groups;
    long H = 0;
    for (std::size_t idx = 0; idx < inst.jobs.size(); ++idx) {
        const auto& j = inst.jobs[idx];
        SKey k{rat_to_i64(Rat(j.r * scale)), rat_to_i64(Rat(j.d * scale)), rat_to_i64(Rat(j.p * scale))};
        H = std::max(H, k.d);
        groups[k].push_back(idx);
    }
    if (H > 2000 || groups.size() > 48)
        throw BudgetError("busy-window search grid too large (horizon " + std::to_string(H) +
                          ", " + std::to_string(groups.size()) + " distinct shapes)");

    RunsDp dp;
    for (const auto& [k, idxs] : groups) {
        (void)idxs;
        dp.cs.push_back({k.r, k.d, k.p, k.d - k.p, k.r + k.p});
    }
    std::sort(dp.cs.begin(), dp.cs.end(), [](const auto& a, const auto& b) {
        return std::tie(a.r, a.d, a.p) < std::tie(b.r, b.d, b.p);
    });
    dp.suffix_max_x.assign(dp.cs.size() + 1, std::numeric_limits<long>::min() / 4);
    for (std::size_t i = dp.cs.size(); i-- > 0;)
        dp.suffix_max_x[i] = std::max(dp.cs[i].x, dp.suffix_max_x[i + 1]);

    long total = dp.solve(0, {}, 0);
    if (total >= RunsDp::INF)
        throw InvariantViolation("no busy-run cover found despite valid windows");
    auto sruns = dp.runs();

    for (const auto& [s, e] : sruns)
        res.runs.push_back({Rat(BigInt(s), scale), Rat(BigInt(e), scale)});

    res.placement.assign(inst.jobs.size(), TimeInterval{});
    for (const auto& [k, idxs] : groups) {
        bool placed = false;
        for (const auto& [s, e] : sruns) {
            long lo = std::max(s, k.r), hi = std::min(e, k.d);
            if (hi - lo >= k.p) {
                TimeInterval iv{Rat(BigInt(lo), scale), Rat(BigInt(lo + k.p), scale)};
                for (auto idx : idxs) res.placement[idx] = iv;
                placed = true;
                break;
            }
        }
        if (!placed) throw InvariantViolation("a job found no room in the chosen runs");
    }

    res.cost = span_of(res.placement);
    if (res.cost != Rat(BigInt(total), scale))
        throw InvariantViolation("placement length " + rat_str(res.cost) +
                                 " disagrees with run total " + rat_str(Rat(BigInt(total), scale)));

    for (std::size_t idx = 0; idx < inst.jobs.size(); ++idx) {
        Job j = inst.jobs[idx];
        j.r = res.placement[idx].start;
        j.d = res.placement[idx].end;
        j.p = res.placement[idx].length();
        res.rigid.jobs.push_back(std::move(j));
    }
    return res;
}

BusyApproxResult busy_three_approx(const BusyInstance& inst, TieBreak tb) {
    if (!inst.g) throw SchemaError("bundling needs a finite capacity");
    BusyApproxResult res;
    bool flexible = false;
    for (const auto& j : inst.jobs)
        if (!j.is_interval()) flexible = true;

    const BusyInstance* rigid = &inst;
    if (flexible) {
        res.conversion = convert_to_interval_unbounded(inst);
        rigid = &res.conversion->rigid;
        res.placement = res.conversion->placement;
    } else {
        for (const auto& j : inst.jobs) res.placement.push_back(j.window());
    }
    res.tracking = greedy_tracking(*rigid, tb);
    res.cost = res.tracking.cost;
    return res;
}

namespace {

// original-coordinate pieces of the current-coordinate interval [u, v)
std::vector<TimeInterval> slice_original(const std::vector<TimeInterval>& alive, const Rat& u,
                                         const Rat& v) {
    std::vector<TimeInterval> out;
    Rat acc = 0;
    for (const auto& seg : alive) {
        Rat len = seg.length();
        Rat lo = std::max(acc, u), hi = std::min<Rat>(acc + len, v);
        if (hi > lo) out.push_back({seg.start + (lo - acc), seg.start + (hi - acc)});
        acc += len;
    }
    return out;
}

std::vector<TimeInterval> cut_current(const std::vector<TimeInterval>& alive, const Rat& u,
                                      const Rat& v) {
    std::vector<TimeInterval> out;
    Rat acc = 0;
    for (const auto& seg : alive) {
        Rat len = seg.length();
        Rat lo = std::max(acc, u), hi = std::min<Rat>(acc + len, v);
        if (hi <= lo) {
            out.push_back(seg);
        } else {
            if (lo > acc) out.push_back({seg.start, seg.start + (lo - acc)});
            if (hi < acc + len) out.push_back({seg.start + (hi - acc), seg.end});
        }
        acc += len;
    }
    return out;
}

} // namespace

PreemptiveSchedule preemptive_unbounded(const BusyInstance& inst) {
    const std::size_t n = inst.jobs.size();
    PreemptiveSchedule res;
    res.pieces.assign(n, {});
    res.cost = 0;
    if (n == 0) return res;

    Rat horizon = 0;
    for (const auto& j : inst.jobs) horizon = std::max(horizon, j.d);
    std::vector<TimeInterval> alive{{Rat(0), horizon}};

    struct St {
        Rat r, d, rem;
    };
    std::vector<St> st;
    for (const auto& j : inst.jobs) st.push_back({j.r, j.d, j.p});

    while (true) {
        std::optional<Rat> d1;
        for (const auto& s : st)
            if (s.rem > 0 && (!d1 || s.d < *d1)) d1 = s.d;
        if (!d1) break;
        Rat L = 0;
        for (const auto& s : st)
            if (s.rem > 0 && s.d == *d1) L = std::max(L, s.rem);

        Rat u = *d1 - L, v = *d1;
        for (std::size_t j = 0; j < n; ++j) {
            if (st[j].rem <= 0) continue;
            Rat lo = std::max(u, st[j].r), hi = std::min(v, st[j].d);
            if (hi <= lo) continue;
            Rat m = std::min<Rat>(st[j].rem, hi - lo);
            auto orig = slice_original(alive, hi - m, hi);
            for (auto& iv : orig) res.pieces[j].push_back(iv);
            st[j].rem -= m;
        }

        auto opened = slice_original(alive, u, v);
        for (auto& iv : opened) res.cover.push_back(iv);
        res.cost += v - u;

        for (auto& s : st) {
            Rat cut_r = std::max<Rat>(Rat(0), std::min(v, s.r) - u);
            Rat cut_d = std::max<Rat>(Rat(0), std::min(v, s.d) - u);
            s.r -= cut_r;
            s.d -= cut_d;
        }
        alive = cut_current(alive, u, v);
    }

    res.cover = interval_union(res.cover);
    for (auto& p : res.pieces) p = interval_union(p);
    if (span_of(res.cover) != res.cost)
        throw InvariantViolation("opened blocks lost measure while mapping back");
    return res;
}

BoundedPreemptiveSchedule preemptive_bounded(const BusyInstance& inst) {
    if (!inst.g) throw SchemaError("capacity split needs a finite capacity");
    BoundedPreemptiveSchedule res;
    res.base = preemptive_unbounded(inst);
    res.cost = 0;

    std::set<Rat> points;
    for (const auto& pl : res.base.pieces)
        for (const auto& iv : pl) {
            points.insert(iv.start);
            points.insert(iv.end);
        }
    const std::size_t g = static_cast<std::size_t>(*inst.g);

    std::vector<Rat> pts(points.begin(), points.end());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        TimeInterval cell{pts[i], pts[i + 1]};
        std::vector<std::size_t> here;
        for (std::size_t j = 0; j < res.base.pieces.size(); ++j)
            for (const auto& iv : res.base.pieces[j])
                if (iv.start <= cell.start && cell.end <= iv.end) {
                    here.push_back(j);
                    break;
                }
        if (here.empty()) continue;
        BoundedPreemptiveSchedule::Segment seg;
        seg.interval = cell;
        for (std::size_t k = 0; k < here.size(); k += g) {
            std::vector<std::size_t> grp(here.begin() + k,
                                         here.begin() + std::min(k + g, here.size()));
            seg.groups.push_back(std::move(grp));
        }
        res.cost += cell.length() * Rat(static_cast<long>(seg.groups.size()));
        res.segments.push_back(std::move(seg));
    }
    return res;
}

std::optional<std::string> validate_bundles(const BusyInstance& inst,
                                            const std::vector<std::vector<std::size_t>>& bundles,
                                            const std::vector<TimeInterval>& placement,
                                            const Rat& claimed_cost) {
    const std::size_t n = inst.jobs.size();
    if (placement.size() != n) return "placement count differs from job count";
    for (std::size_t j = 0; j < n; ++j) {
        const auto& iv = placement[j];
        const auto& job = inst.jobs[j];
        if (iv.length() != job.p)
            return "job " + job.id + " placed for " + rat_str(iv.length()) + ", needs " +
                   rat_str(job.p);
        if (iv.start < job.r || iv.end > job.d)
            return "job " + job.id + " placed outside its window";
    }
    std::vector<int> seen(n, 0);
    for (const auto& b : bundles)
        for (auto j : b) {
            if (j >= n) return "bundle mentions an unknown job index";
            ++seen[j];
        }
    for (std::size_t j = 0; j < n; ++j)
        if (seen[j] != 1)
            return "job " + inst.jobs[j].id + " appears in " + std::to_string(seen[j]) +
                   " bundles";

    Rat total = 0;
    for (const auto& b : bundles) {
        std::vector<TimeInterval> ivs;
        for (auto j : b) ivs.push_back(placement[j]);
        total += span_of(ivs);
        if (inst.g) {
            // sweep: at equal coordinates, departures precede arrivals (half-open)
            std::vector<std::pair<Rat, int>> ev;
            for (auto j : b) {
                if (placement[j].empty()) continue;
                ev.push_back({placement[j].start, +1});
                ev.push_back({placement[j].end, -1});
            }
            std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b2) {
                if (a.first != b2.first) return a.first < b2.first;
                return a.second < b2.second;
            });
            long cur = 0;
            for (const auto& [t, delta] : ev) {
                (void)t;
                cur += delta;
                if (cur > *inst.g) return "a bundle runs more jobs at once than its capacity";
            }
        }
    }
    if (total != claimed_cost)
        return "bundle spans add up to " + rat_str(total) + ", claimed " + rat_str(claimed_cost);
    return std::nullopt;
}

std::optional<std::string> validate_preemptive(const BusyInstance& inst,
                                               const PreemptiveSchedule& sched) {
    const std::size_t n = inst.jobs.size();
    if (sched.pieces.size() != n) return "piece lists differ from job count";
    auto cover = interval_union(sched.cover);
    for (std::size_t j = 0; j < n; ++j) {
        const auto& job = inst.jobs[j];
        Rat done = 0;
        Rat sum = 0;
        for (const auto& iv : sched.pieces[j]) {
            if (iv.start < job.r || iv.end > job.d)
                return "job " + job.id + " runs outside its window";
            sum += iv.length();
            bool inside = false;
            for (const auto& c : cover)
                if (c.start <= iv.start && iv.end <= c.end) inside = true;
            if (!inside) return "job " + job.id + " runs outside the opened blocks";
        }
        done = span_of(sched.pieces[j]);
        if (done != sum) return "job " + job.id + " overlaps itself";
        if (sum != job.p)
            return "job " + job.id + " runs for " + rat_str(sum) + ", needs " + rat_str(job.p);
    }
    if (span_of(cover) != sched.cost)
        return "cover measures " + rat_str(span_of(cover)) + ", claimed " + rat_str(sched.cost);
    return std::nullopt;
}

std::optional<std::string> validate_bounded_preemptive(const BusyInstance& inst,
                                                       const BoundedPreemptiveSchedule& sched) {
    if (auto bad = validate_preemptive(inst, sched.base)) return bad;
    if (!inst.g) return "capacity-bounded schedule for an unbounded instance";
    const int g = *inst.g;
    const std::size_t n = inst.jobs.size();

    // segments must tile the opened blocks exactly
    std::vector<TimeInterval> segs;
    for (const auto& s : sched.segments) segs.push_back(s.interval);
    Rat seg_measure = 0;
    for (const auto& s : segs) seg_measure += s.length();
    auto seg_union = interval_union(segs);
    if (seg_measure != span_of(seg_union)) return "segments overlap";
    auto cover = interval_union(sched.base.cover);
    if (seg_union != cover) return "segments do not tile the opened blocks";

    Rat total = 0;
    for (const auto& seg : sched.segments) {
        std::vector<int> machine_of(n, -1);
        for (std::size_t m = 0; m < seg.groups.size(); ++m) {
            if (seg.groups[m].size() > static_cast<std::size_t>(g))
                return "a segment group exceeds the machine capacity";
            for (std::size_t j : seg.groups[m]) {
                if (j >= n) return "segment group mentions an unknown job index";
                if (machine_of[j] != -1)
                    return "job " + inst.jobs[j].id + " sits in two groups of one segment";
                machine_of[j] = static_cast<int>(m);
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            bool runs_here = false;
            for (const auto& iv : sched.base.pieces[j])
                if (iv.overlaps(seg.interval)) runs_here = true;
            if (runs_here && machine_of[j] == -1)
                return "job " + inst.jobs[j].id + " runs in a segment without a machine";
        }
        total += seg.interval.length() * Rat(static_cast<long>(seg.groups.size()));
    }
    if (total != sched.cost)
        return "segment machine time adds up to " + rat_str(total) + ", claimed " +
               rat_str(sched.cost);
    return std::nullopt;
}

} // namespace chronoshed
