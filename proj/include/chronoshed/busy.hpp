#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chronoshed/job.hpp"
#include "chronoshed/time_interval.hpp"

namespace chronoshed {

struct TieBreak {
    enum class Mode { SkipLater, Seeded };
    Mode mode = Mode::SkipLater;
    std::uint64_t seed = 0;
};

struct Track {
    std::vector<std::size_t> jobs; // pairwise disjoint, ascending by start
    Rat length;                    // total job length on the track
};

// Maximum-total-length set of pairwise disjoint intervals among `avail`.
// Ties between skipping and keeping the latest-ending candidate default to
// skipping it; Seeded mode flips a deterministic coin per tie instead.
Track longest_track(const BusyInstance& inst, const std::vector<std::size_t>& avail,
                    TieBreak tb = {});

struct Bundle {
    std::vector<std::size_t> tracks; // indices into TrackingResult::tracks
    std::vector<std::size_t> jobs;
    std::vector<TimeInterval> cover; // union of member intervals
    Rat span;
};

struct TrackingResult {
    std::vector<Track> tracks;   // in extraction order, longest first
    std::vector<Bundle> bundles; // g consecutive tracks per bundle
    Rat cost;                    // sum of bundle spans
};

// Peel off longest tracks until no job remains, then group g tracks per bundle.
// Interval jobs and finite g only.
TrackingResult greedy_tracking(const BusyInstance& inst, TieBreak tb = {});

struct ConversionResult {
    std::vector<TimeInterval> runs;      // disjoint busy windows, ascending
    std::vector<TimeInterval> placement; // chosen sub-interval per job
    BusyInstance rigid;                  // same jobs pinned to their placements
    Rat cost;                            // length of the placement union
};

// Pin every flexible job to a concrete sub-interval of its window so that the
// total busy length with unlimited capacity is as small as possible. Exact.
ConversionResult convert_to_interval_unbounded(const BusyInstance& inst);

struct BusyApproxResult {
    std::optional<ConversionResult> conversion; // set when the input had flexible jobs
    std::vector<TimeInterval> placement;        // final interval per job
    TrackingResult tracking;
    Rat cost;
};

// Pin flexible jobs first (optimally for unlimited capacity), then bundle
// tracks greedily. Needs finite g.
BusyApproxResult busy_three_approx(const BusyInstance& inst, TieBreak tb = {});

struct PreemptiveSchedule {
    std::vector<std::vector<TimeInterval>> pieces; // per job, disjoint, inside window
    std::vector<TimeInterval> cover;               // disjoint busy intervals opened
    Rat cost;                                      // measure of the cover
};

// Minimum busy measure for preemptive jobs with unlimited capacity: repeatedly
// open a block ending at the earliest deadline, run everything that overlaps,
// and cut the block out of the timeline.
PreemptiveSchedule preemptive_unbounded(const BusyInstance& inst);

struct BoundedPreemptiveSchedule {
    PreemptiveSchedule base;
    struct Segment {
        TimeInterval interval;
        std::vector<std::vector<std::size_t>> groups; // jobs per machine, each <= g
    };
    std::vector<Segment> segments;
    Rat cost; // sum over segments of length * group count
};

// Split the unlimited-capacity preemptive solution into machines of capacity g,
// at most one partially filled machine per segment.
BoundedPreemptiveSchedule preemptive_bounded(const BusyInstance& inst);

// Counting validators, independent of the solvers above. Return the first
// problem found, or nullopt when the claimed solution checks out.
std::optional<std::string> validate_bundles(const BusyInstance& inst,
                                            const std::vector<std::vector<std::size_t>>& bundles,
                                            const std::vector<TimeInterval>& placement,
                                            const Rat& claimed_cost);
std::optional<std::string> validate_preemptive(const BusyInstance& inst,
                                               const PreemptiveSchedule& sched);
std::optional<std::string> validate_bounded_preemptive(const BusyInstance& inst,
                                                       const BoundedPreemptiveSchedule& sched);

} // namespace chronoshed
