#include "chronoshed/time_interval.hpp"

#include <algorithm>

namespace chronoshed {

std::vector<TimeInterval> interval_union(std::vector<TimeInterval> intervals) {
    std::vector<TimeInterval> live;
    for (auto& iv : intervals)
        if (!iv.empty()) live.push_back(iv);
    std::sort(live.begin(), live.end(), [](const TimeInterval& a, const TimeInterval& b) {
        if (a.start != b.start) return a.start < b.start;
        return a.end < b.end;
    });
    std::vector<TimeInterval> out;
    for (auto& iv : live) {
        if (!out.empty() && iv.start <= out.back().end) {
            if (iv.end > out.back().end) out.back().end = iv.end;
        } else {
            out.push_back(iv);
        }
    }
    return out;
}

Rat span_of(std::vector<TimeInterval> intervals) {
    Rat total = 0;
    for (auto& iv : interval_union(std::move(intervals))) total += iv.length();
    return total;
}

} // namespace chronoshed
