#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "chronoshed/job.hpp"

namespace chronoshed {

// Integer-capacity flow network (Dinic). Nodes are 0..n-1.
class FlowNetwork {
  public:
    explicit FlowNetwork(int n) : head_(n, -1) {}

    int node_count() const { return static_cast<int>(head_.size()); }
    // Returns an edge handle usable with flow_on() after max_flow().
    int add_edge(int from, int to, std::int64_t capacity);
    std::int64_t max_flow(int source, int sink);
    std::int64_t flow_on(int edge_handle) const;

  private:
    struct Edge {
        int to;
        int next;
        std::int64_t cap;
    };
    std::vector<Edge> edges_;
    std::vector<int> head_;
    std::vector<int> level_, iter_;

    bool bfs(int s, int t);
    std::int64_t dfs(int v, int t, std::int64_t f);
};

// Result of a slotted feasibility check: whether all demand fits into the active
// slots, and if so a witness assignment job id -> sorted slots (one unit per slot).
struct FeasibilityResult {
    bool feasible = false;
    std::map<std::string, std::vector<int>> assignment;
};

// Feasibility of serving every job of `inst` inside `active_slots` only: flow network
// with source -> job (cap p_j), job -> slot (cap 1, slots in the job's window),
// slot -> sink (cap g for active slots, 0 otherwise). Feasible iff max flow equals
// total demand.
FeasibilityResult check_feasibility(const ActiveInstance& inst, const std::set<int>& active_slots);

// Same check restricted to a subset of the instance's jobs (by index).
FeasibilityResult check_feasibility(const ActiveInstance& inst, const std::vector<std::size_t>& job_idx,
                                    const std::set<int>& active_slots);

} // namespace chronoshed
