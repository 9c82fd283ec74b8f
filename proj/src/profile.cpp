#include "chronoshed/profile.hpp"

#include <algorithm>

#include "chronoshed/errors.hpp"

namespace chronoshed {

DemandProfile demand_profile(const std::vector<Job>& jobs, int g) {
    if (g < 1) throw SchemaError("capacity g must be >= 1");
    for (const auto& j : jobs)
        if (!j.is_interval())
            throw SchemaError("demand profile needs interval jobs; '" + j.id + "' is flexible");

    std::vector<Rat> events;
    events.reserve(jobs.size() * 2);
    for (const auto& j : jobs) {
        events.push_back(j.r);
        events.push_back(j.d);
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());

    DemandProfile prof;
    for (std::size_t i = 0; i + 1 < events.size(); ++i) {
        TimeInterval cell{events[i], events[i + 1]};
        long raw = 0;
        for (const auto& j : jobs)
            if (j.r <= cell.start && cell.end <= j.d) ++raw;
        if (raw == 0) continue;
        long dem = (raw + g - 1) / g;
        if (!prof.entries.empty() && prof.entries.back().raw == raw &&
            prof.entries.back().interval.end == cell.start) {
            prof.entries.back().interval.end = cell.end;
        } else {
            prof.entries.push_back({cell, raw, dem});
        }
    }
    for (const auto& e : prof.entries) prof.weighted_cost += Rat(e.demand) * e.interval.length();
    return prof;
}

LowerBounds lower_bounds(const std::vector<Job>& jobs, int g, std::optional<Rat> opt_infty) {
    if (g < 1) throw SchemaError("capacity g must be >= 1");
    LowerBounds lb;
    bool all_interval = true;
    std::vector<TimeInterval> windows;
    for (const auto& j : jobs) {
        lb.mass += j.p;
        all_interval = all_interval && j.is_interval();
        windows.push_back(j.window());
    }
    lb.mass /= g;
    if (opt_infty) {
        lb.span = *opt_infty;
    } else if (all_interval) {
        lb.span = span_of(windows);
    } else {
        throw SchemaError("lower_bounds on flexible jobs needs the unbounded optimum passed in");
    }
    if (all_interval && !jobs.empty()) lb.profile = demand_profile(jobs, g).weighted_cost;
    return lb;
}

} // namespace chronoshed
