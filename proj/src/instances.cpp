#include "chronoshed/instances.hpp"

#include <algorithm>
#include <sstream>

#include "chronoshed/errors.hpp"
#include "chronoshed/maxflow.hpp"

namespace chronoshed {

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    if (hi < lo) throw InvariantViolation("draw: empty range");
    return lo + rng() % (hi - lo + 1);
}

Fixture tight_minimal(int g) {
    if (g < 2) throw SchemaError("tight_minimal: g must be at least 2");
    std::vector<Job> jobs;
    jobs.push_back(job("long1", 0, 2 * g, g));
    jobs.push_back(job("long2", g, 3 * g, g));
    for (int i = 1; i <= g - 2; ++i)
        jobs.push_back(job("rigid" + std::to_string(i), g + 1, 2 * g - 1, g - 2));
    for (int i = 1; i <= g - 2; ++i)
        jobs.push_back(job("unita" + std::to_string(i), g + 1, 2 * g, 1));
    for (int i = 1; i <= g - 2; ++i)
        jobs.push_back(job("unitb" + std::to_string(i), g, 2 * g - 1, 1));

    Fixture f;
    f.name = "tight_minimal_g" + std::to_string(g);
    f.instance = make_active(g, std::move(jobs));
    f.optimum = Rat(g);
    f.adversarial_cost = Rat(3 * g - 2);
    // closing these two first walls the long jobs out of the middle strip
    f.adversarial_order = {g + 1, 2 * g};
    return f;
}

Fixture integrality_gap(int g) {
    if (g < 1) throw SchemaError("integrality_gap: g must be at least 1");
    std::vector<Job> jobs;
    for (int i = 1; i <= g; ++i)
        for (int k = 1; k <= g + 1; ++k)
            jobs.push_back(job("p" + std::to_string(i) + "u" + std::to_string(k),
                               2 * i - 2, 2 * i, 1));
    Fixture f;
    f.name = "integrality_gap_g" + std::to_string(g);
    f.instance = make_active(g, std::move(jobs));
    f.optimum = Rat(2 * g);
    f.lp_optimum = Rat(g + 1);
    return f;
}

Fixture tracking_gadget(int g, const Rat& eps) {
    if (g < 1) throw SchemaError("tracking_gadget: g must be at least 1");
    if (!(eps > 0 && eps < Rat(1, 2)))
        throw SchemaError("tracking_gadget: eps must lie strictly between 0 and 1/2");
    const Rat period = Rat(2) - eps;
    std::vector<Job> jobs;
    for (int k = 0; k < g; ++k) {
        const Rat off = Rat(k) * period;
        for (int i = 1; i <= g; ++i)
            jobs.push_back(jobq("g" + std::to_string(k) + "a" + std::to_string(i),
                                off, off + 1, Rat(1)));
        for (int i = 1; i <= g; ++i)
            jobs.push_back(jobq("g" + std::to_string(k) + "b" + std::to_string(i),
                                off + 1 - eps, off + 2 - eps, Rat(1)));
    }
    const Rat flex_len = Rat(1) - eps / 2;
    for (int i = 1; i <= 2 * g; ++i)
        jobs.push_back(jobq("flex" + std::to_string(i), Rat(0), Rat(g) * period, flex_len));

    Fixture f;
    std::ostringstream name;
    name << "tracking_gadget_g" << g << "_e" << rat_num(eps) << "_" << rat_den(eps);
    f.name = name.str();
    f.instance = make_busy(g, jobs);
    f.optimum = Rat(2 * g + 2) - eps;

    // the intended packing: one machine per clique side, flexible jobs stacked
    // g-high on two machines at the far left
    BusyOpt warm;
    warm.cost = *f.optimum;
    warm.placement.resize(jobs.size());
    for (int k = 0; k < g; ++k) {
        const Rat off = Rat(k) * period;
        std::vector<std::size_t> a, b;
        for (int i = 0; i < g; ++i) {
            std::size_t ai = static_cast<std::size_t>(k) * 2 * g + i;
            std::size_t bi = ai + g;
            a.push_back(ai);
            b.push_back(bi);
            warm.placement[ai] = {off, off + 1};
            warm.placement[bi] = {off + 1 - eps, off + 2 - eps};
        }
        warm.bundles.push_back(std::move(a));
        warm.bundles.push_back(std::move(b));
    }
    std::vector<std::size_t> f1, f2;
    for (int i = 0; i < 2 * g; ++i) {
        std::size_t fi = static_cast<std::size_t>(2) * g * g + i;
        warm.placement[fi] = {Rat(0), flex_len};
        (i < g ? f1 : f2).push_back(fi);
    }
    warm.bundles.push_back(std::move(f1));
    warm.bundles.push_back(std::move(f2));
    f.warm = std::move(warm);
    return f;
}

Fixture clique(int n, int g) {
    if (n < 1 || g < 1) throw SchemaError("clique: n and g must be positive");
    std::vector<Job> jobs;
    for (int i = 1; i <= n; ++i)
        jobs.push_back(job("c" + std::to_string(i), i - 1, i - 1 + n, n));

    // proper clique: some optimum groups consecutive jobs, so a blocks DP is exact.
    // block {i-k+1..i} spans [i-k, i-1+n), length n+k-1
    std::vector<Rat> dp(n + 1, Rat(0));
    for (int i = 1; i <= n; ++i) {
        std::optional<Rat> best;
        for (int k = 1; k <= std::min(g, i); ++k) {
            Rat cand = dp[i - k] + Rat(n + k - 1);
            if (!best || cand < *best) best = cand;
        }
        dp[i] = *best;
    }

    Fixture f;
    f.name = "clique_n" + std::to_string(n) + "_g" + std::to_string(g);
    f.instance = make_busy(g, std::move(jobs));
    f.optimum = dp[n];
    return f;
}

Fixture random_active(int n, int T, int g, std::uint64_t seed) {
    if (n < 1 || T < 1 || g < 1) throw SchemaError("random_active: n, T, g must be positive");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<Job> jobs;
        for (int j = 1; j <= n; ++j) {
            long r = static_cast<long>(draw(rng, 0, T - 1));
            long d = static_cast<long>(draw(rng, r + 1, T));
            long p = static_cast<long>(draw(rng, 1, d - r));
            jobs.push_back(job("j" + std::to_string(j), r, d, p));
        }
        ActiveInstance inst = make_active(g, std::move(jobs));
        std::set<int> all;
        for (int t = 1; t <= inst.T; ++t) all.insert(t);
        if (!check_feasibility(inst, all).feasible) continue;
        Fixture f;
        std::ostringstream name;
        name << "random_active_n" << n << "_T" << T << "_g" << g << "_s" << seed;
        f.name = name.str();
        f.instance = std::move(inst);
        return f;
    }
    throw InfeasibleError("random_active: no feasible draw in 200 attempts");
}

namespace {

Job draw_busy_job(std::mt19937_64& rng, const std::string& id, int n, bool integer_only,
                  bool force_interval) {
    long q = integer_only ? 1 : static_cast<long>(draw(rng, 1, 4));
    long horizon = 2 * n + 2;
    Rat r(static_cast<long>(draw(rng, 0, (horizon - 1) * q)), q);
    long len_num = static_cast<long>(draw(rng, 1, 4 * q));
    Rat len(len_num, q);
    Rat d = r + len;
    bool interval = force_interval || draw(rng, 0, 1) == 1;
    Rat p = interval ? len : Rat(static_cast<long>(draw(rng, 1, len_num)), q);
    return jobq(id, r, d, p);
}

} // namespace

Fixture random_busy(int n, int g, std::uint64_t seed, bool integer_only) {
    if (n < 1 || g < 1) throw SchemaError("random_busy: n and g must be positive");
    std::mt19937_64 rng(seed);
    std::vector<Job> jobs;
    for (int j = 1; j <= n; ++j)
        jobs.push_back(draw_busy_job(rng, "j" + std::to_string(j), n, integer_only, false));
    Fixture f;
    std::ostringstream name;
    name << "random_busy_n" << n << "_g" << g << "_s" << seed << (integer_only ? "_int" : "");
    f.name = name.str();
    f.instance = make_busy(g, std::move(jobs));
    return f;
}

BusyInstance random_interval_busy(int n, int g, std::uint64_t seed, bool integer_only) {
    if (n < 1 || g < 1) throw SchemaError("random_interval_busy: n and g must be positive");
    std::mt19937_64 rng(seed);
    std::vector<Job> jobs;
    for (int j = 1; j <= n; ++j)
        jobs.push_back(draw_busy_job(rng, "j" + std::to_string(j), n, integer_only, true));
    return make_busy(g, std::move(jobs));
}

BusyInstance random_flexible_busy(int n, int horizon, std::uint64_t seed) {
    if (n < 1 || horizon < 2) throw SchemaError("random_flexible_busy: need n >= 1, horizon >= 2");
    std::mt19937_64 rng(seed);
    std::vector<Job> jobs;
    for (int j = 1; j <= n; ++j) {
        long r = static_cast<long>(draw(rng, 0, horizon - 1));
        long w = static_cast<long>(draw(rng, 1, horizon - r));
        long p = static_cast<long>(draw(rng, 1, w));
        jobs.push_back(job("j" + std::to_string(j), r, r + w, p));
    }
    return make_busy(std::nullopt, std::move(jobs));
}

namespace {

const std::string& need(const std::map<std::string, std::string>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw SchemaError("missing parameter \"" + key + "\"");
    return it->second;
}

long param_long(const std::map<std::string, std::string>& params, const std::string& key) {
    const std::string& raw = need(params, key);
    try {
        std::size_t used = 0;
        long v = std::stol(raw, &used);
        if (used != raw.size()) throw std::invalid_argument(raw);
        return v;
    } catch (const std::exception&) {
        throw SchemaError("parameter \"" + key + "\" must be an integer, got \"" + raw + "\"");
    }
}

long param_long_or(const std::map<std::string, std::string>& params, const std::string& key,
                   long fallback) {
    return params.count(key) ? param_long(params, key) : fallback;
}

Rat param_rat(const std::map<std::string, std::string>& params, const std::string& key) {
    const std::string& raw = need(params, key);
    auto slash = raw.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigInt(raw));
        return Rat(BigInt(raw.substr(0, slash)), BigInt(raw.substr(slash + 1)));
    } catch (const std::exception&) {
        throw SchemaError("parameter \"" + key + "\" must be an integer or num/den, got \"" + raw + "\"");
    }
}

bool param_flag(const std::map<std::string, std::string>& params, const std::string& key,
                bool fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    if (it->second == "1" || it->second == "true") return true;
    if (it->second == "0" || it->second == "false") return false;
    throw SchemaError("parameter \"" + key + "\" must be a boolean, got \"" + it->second + "\"");
}

} // namespace

Fixture generate(const std::string& kind, const std::map<std::string, std::string>& params) {
    if (kind == "tight_minimal") return tight_minimal(static_cast<int>(param_long(params, "g")));
    if (kind == "integrality_gap") return integrality_gap(static_cast<int>(param_long(params, "g")));
    if (kind == "tracking_gadget")
        return tracking_gadget(static_cast<int>(param_long(params, "g")), param_rat(params, "eps"));
    if (kind == "clique")
        return clique(static_cast<int>(param_long(params, "n")), static_cast<int>(param_long(params, "g")));
    if (kind == "random_active")
        return random_active(static_cast<int>(param_long(params, "n")),
                             static_cast<int>(param_long(params, "T")),
                             static_cast<int>(param_long(params, "g")),
                             static_cast<std::uint64_t>(param_long_or(params, "seed", 1)));
    if (kind == "random_busy")
        return random_busy(static_cast<int>(param_long(params, "n")),
                           static_cast<int>(param_long(params, "g")),
                           static_cast<std::uint64_t>(param_long_or(params, "seed", 1)),
                           param_flag(params, "integer_only", false));
    throw SchemaError("unknown fixture kind \"" + kind + "\"");
}

} // namespace chronoshed
