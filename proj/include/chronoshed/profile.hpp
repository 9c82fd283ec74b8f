#pragma once

#include <optional>
#include <vector>

#include "chronoshed/job.hpp"

namespace chronoshed {

// Piecewise-constant demand over time for a set of interval jobs: how many jobs are
// alive (raw) and how many capacity-g machines that forces (demand = ceil(raw/g)).
// Entries carry only raw > 0 stretches; adjacent entries with equal raw are merged,
// so consecutive entries differ in raw unless a zero-demand gap separates them.
struct DemandProfile {
    struct Entry {
        TimeInterval interval;
        long raw = 0;     // jobs alive throughout the interval
        long demand = 0;  // ceil(raw / g)
    };
    std::vector<Entry> entries;
    Rat weighted_cost = 0; // sum of demand * length; a lower bound on total busy time
};

// Preconditions: all jobs are interval jobs, g >= 1.
DemandProfile demand_profile(const std::vector<Job>& jobs, int g);

// The three busy-time lower bounds. `span` is Sp(J) for interval jobs; when the
// instance has flexible jobs the caller passes the exact unbounded-capacity optimum
// as `opt_infty` instead. `profile` is only defined for pure interval instances.
struct LowerBounds {
    Rat mass = 0;                 // total length / g
    Rat span = 0;                 // Sp(J), or the provided unbounded optimum
    std::optional<Rat> profile;   // weighted demand-profile cost
    Rat best() const {
        Rat b = mass > span ? mass : span;
        if (profile && *profile > b) b = *profile;
        return b;
    }
};

LowerBounds lower_bounds(const std::vector<Job>& jobs, int g,
                         std::optional<Rat> opt_infty = std::nullopt);

} // namespace chronoshed
