#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chronoshed/job.hpp"
#include "chronoshed/time_interval.hpp"

namespace chronoshed {

// Leash for the exhaustive solvers: structural caps checked up front, plus a
// wall-clock limit polled during the search. Exceeding either is an error,
// never a silent approximation. The wall-clock default comes from the
// CHRONOSHED_ORACLE_BUDGET_MS environment variable, falling back to 10s.
// Structural caps left unset fall back to per-solver defaults.
class OracleBudget {
public:
    std::optional<int> max_jobs;
    std::optional<int> max_slots;
    std::optional<long> max_starts; // candidate starts per job, after grid scaling

    explicit OracleBudget(std::optional<long> ms = std::nullopt);
    void check();
    long millis() const { return ms_; }

private:
    long ms_ = 0;
    std::chrono::steady_clock::time_point deadline_;
    unsigned calls_ = 0;
};

struct ActiveOpt {
    int cost = 0;
    std::set<int> slots;
    std::map<std::string, std::vector<int>> assignment;
};

// Smallest number of active slots that admits a feasible assignment, found by
// trying slot subsets in order of increasing size.
ActiveOpt opt_active(const ActiveInstance& inst, OracleBudget& budget);

struct BusyOpt {
    Rat cost;
    std::vector<std::vector<std::size_t>> bundles; // job indices per machine
    std::vector<TimeInterval> placement;           // chosen interval per job
};

// Exact bounded-capacity busy cost by branch and bound over machine
// assignments, with per-machine placements solved by exhaustive search.
// A warm start, when given, is validated and used as the incumbent.
BusyOpt opt_busy(const BusyInstance& inst, OracleBudget& budget,
                 const std::optional<BusyOpt>& warm = std::nullopt);

// Exact busy measure with unlimited capacity, by exhaustive placement search.
Rat opt_busy_unbounded(const BusyInstance& inst, OracleBudget& budget);

// Exact preemptive unlimited-capacity optimum: cover each window with enough
// open measure, minimizing the total, as a linear program over elementary
// intervals. Solved exactly.
Rat preemptive_cover_bound(const BusyInstance& inst);

// max(open-measure relaxation, total work / g): a valid lower bound on the
// capacity-g preemptive optimum. With unlimited capacity the second term is
// dropped.
Rat preemptive_lower_bounds(const BusyInstance& inst);

// Direct assignment search, deliberately independent of the flow machinery.
bool feasible_bruteforce(const ActiveInstance& inst, const std::set<int>& active,
                         OracleBudget& budget);

} // namespace chronoshed
