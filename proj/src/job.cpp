#include "chronoshed/job.hpp"

#include <algorithm>
#include <set>

#include "chronoshed/errors.hpp"

namespace chronoshed {

void validate_jobs(const std::vector<Job>& jobs) {
    std::set<std::string> seen;
    for (const auto& j : jobs) {
        if (j.id.empty()) throw SchemaError("job with empty id");
        if (!seen.insert(j.id).second) throw SchemaError("duplicate job id '" + j.id + "'");
        if (j.d <= j.r)
            throw SchemaError("job '" + j.id + "': deadline " + rat_str(j.d) + " not after release " + rat_str(j.r));
        if (j.p <= 0) throw SchemaError("job '" + j.id + "': nonpositive length " + rat_str(j.p));
        if (j.p > j.d - j.r)
            throw SchemaError("job '" + j.id + "': length " + rat_str(j.p) + " exceeds window " +
                              rat_str(j.d - j.r));
    }
}

ActiveInstance make_active(int g, std::vector<Job> jobs) {
    if (g < 1) throw SchemaError("capacity g must be >= 1");
    validate_jobs(jobs);
    for (const auto& j : jobs) {
        if (!is_integer(j.r) || !is_integer(j.d) || !is_integer(j.p))
            throw SchemaError("job '" + j.id + "': slotted instances need integral r, d, p");
    }
    ActiveInstance inst;
    inst.g = g;
    if (!jobs.empty()) {
        Rat min_r = jobs.front().r;
        for (const auto& j : jobs) min_r = std::min(min_r, j.r);
        for (auto& j : jobs) {
            j.r -= min_r;
            j.d -= min_r;
        }
        Rat max_d = 0;
        for (const auto& j : jobs) max_d = std::max(max_d, j.d);
        inst.T = static_cast<int>(rat_to_i64(max_d));
    }
    inst.jobs = std::move(jobs);
    return inst;
}

BusyInstance make_busy(std::optional<int> g, std::vector<Job> jobs) {
    if (g && *g < 1) throw SchemaError("capacity g must be >= 1");
    validate_jobs(jobs);
    BusyInstance inst;
    inst.g = g;
    inst.jobs = std::move(jobs);
    return inst;
}

} // namespace chronoshed
