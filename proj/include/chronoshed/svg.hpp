#pragma once

#include <string>
#include <vector>

#include "chronoshed/active.hpp"
#include "chronoshed/busy.hpp"
#include "chronoshed/job.hpp"

namespace chronoshed {

// Static Gantt renderings. One row per job (active, preemptive) or per machine
// (busy); shaded background bands mark paid time.
std::string svg_active(const ActiveInstance& inst, const ActiveSchedule& sched);
std::string svg_busy(const BusyInstance& inst,
                     const std::vector<std::vector<std::size_t>>& bundles,
                     const std::vector<TimeInterval>& placement);
std::string svg_preemptive(const BusyInstance& inst, const PreemptiveSchedule& sched);

} // namespace chronoshed
