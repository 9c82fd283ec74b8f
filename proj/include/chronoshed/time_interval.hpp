#pragma once

#include <vector>

#include "chronoshed/rational.hpp"

namespace chronoshed {

// Half-open interval [start, end). Empty when end <= start.
struct TimeInterval {
    Rat start;
    Rat end;

    Rat length() const { return end > start ? end - start : Rat(0); }
    bool empty() const { return end <= start; }
    bool contains(const Rat& t) const { return start <= t && t < end; }
    bool overlaps(const TimeInterval& o) const { return start < o.end && o.start < end; }

    bool operator==(const TimeInterval& o) const { return start == o.start && end == o.end; }
};

inline TimeInterval intersect(const TimeInterval& a, const TimeInterval& b) {
    Rat s = a.start > b.start ? a.start : b.start;
    Rat e = a.end < b.end ? a.end : b.end;
    return {s, e};
}

// Measure of the union (the "span" Sp of a set of intervals).
Rat span_of(std::vector<TimeInterval> intervals);

// Union as a minimal sorted list of disjoint, non-touching intervals.
std::vector<TimeInterval> interval_union(std::vector<TimeInterval> intervals);

} // namespace chronoshed
