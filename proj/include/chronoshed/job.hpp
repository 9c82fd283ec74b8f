#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chronoshed/rational.hpp"
#include "chronoshed/time_interval.hpp"

namespace chronoshed {

// A job with release r, deadline d and processing demand p, all rational, 0 < p <= d - r.
// A job is an interval job when p == d - r (its placement is forced); otherwise it is
// flexible and a start time in [r, d-p] must be chosen.
struct Job {
    std::string id;
    Rat r;
    Rat d;
    Rat p;

    TimeInterval window() const { return {r, d}; }
    bool is_interval() const { return p == d - r; }
    Rat latest_start() const { return d - p; }    // x_j
    Rat earliest_end() const { return r + p; }    // y_j
};

// Throws SchemaError naming the offending job if r/d/p are inconsistent or ids repeat.
void validate_jobs(const std::vector<Job>& jobs);

// Slotted single-machine instance. Time is divided into unit slots; slot t (1-based)
// covers [t-1, t). A job may run in slots {r+1, ..., d}, at most one unit per slot,
// and an active slot hosts at most g units across all jobs. All job parameters must
// be integers; releases are normalized so that min r == 0.
struct ActiveInstance {
    int g = 1;
    std::vector<Job> jobs;
    int T = 0; // horizon: slots are 1..T, T = max deadline after normalization

    // Inclusive slot range {r+1, .., d} of a job.
    std::pair<int, int> window_slots(const Job& j) const {
        return {static_cast<int>(rat_to_i64(j.r)) + 1, static_cast<int>(rat_to_i64(j.d))};
    }
    Rat total_demand() const {
        Rat s = 0;
        for (auto& j : jobs) s += j.p;
        return s;
    }
};

// Validates, normalizes releases to start at 0, computes T.
ActiveInstance make_active(int g, std::vector<Job> jobs);

// Continuous-time instance for busy-time problems. g is the per-machine capacity;
// nullopt means unbounded capacity.
struct BusyInstance {
    std::optional<int> g;
    std::vector<Job> jobs;

    bool unbounded() const { return !g.has_value(); }
    Rat total_length() const {
        Rat s = 0;
        for (auto& j : jobs) s += j.p;
        return s;
    }
};

BusyInstance make_busy(std::optional<int> g, std::vector<Job> jobs);

using AnyInstance = std::variant<ActiveInstance, BusyInstance>;

inline const std::vector<Job>& jobs_of(const AnyInstance& inst) {
    return std::visit([](const auto& i) -> const std::vector<Job>& { return i.jobs; }, inst);
}

// Convenience constructor used throughout the tests.
inline Job job(std::string id, long r, long d, long p) {
    return Job{std::move(id), Rat(r), Rat(d), Rat(p)};
}
inline Job jobq(std::string id, Rat r, Rat d, Rat p) {
    return Job{std::move(id), std::move(r), std::move(d), std::move(p)};
}

} // namespace chronoshed
