#include "chronoshed/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>

#include "chronoshed/errors.hpp"

namespace chronoshed {

int FlowNetwork::add_edge(int from, int to, std::int64_t capacity) {
    int h = static_cast<int>(edges_.size());
    edges_.push_back({to, head_[from], capacity});
    head_[from] = h;
    edges_.push_back({from, head_[to], 0});
    head_[to] = h + 1;
    return h;
}

bool FlowNetwork::bfs(int s, int t) {
    level_.assign(head_.size(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int e = head_[v]; e != -1; e = edges_[e].next) {
            if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
                level_[edges_[e].to] = level_[v] + 1;
                q.push(edges_[e].to);
            }
        }
    }
    return level_[t] >= 0;
}

std::int64_t FlowNetwork::dfs(int v, int t, std::int64_t f) {
    if (v == t) return f;
    for (int& e = iter_[v]; e != -1; e = edges_[e].next) {
        Edge& ed = edges_[e];
        if (ed.cap > 0 && level_[ed.to] == level_[v] + 1) {
            std::int64_t d = dfs(ed.to, t, std::min(f, ed.cap));
            if (d > 0) {
                ed.cap -= d;
                edges_[e ^ 1].cap += d;
                return d;
            }
        }
    }
    return 0;
}

std::int64_t FlowNetwork::max_flow(int source, int sink) {
    std::int64_t flow = 0;
    while (bfs(source, sink)) {
        iter_ = head_;
        while (std::int64_t f = dfs(source, sink, std::numeric_limits<std::int64_t>::max()))
            flow += f;
    }
    return flow;
}

std::int64_t FlowNetwork::flow_on(int edge_handle) const {
    return edges_[edge_handle ^ 1].cap;
}

FeasibilityResult check_feasibility(const ActiveInstance& inst, const std::set<int>& active_slots) {
    std::vector<std::size_t> all(inst.jobs.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return check_feasibility(inst, all, active_slots);
}

FeasibilityResult check_feasibility(const ActiveInstance& inst, const std::vector<std::size_t>& job_idx,
                                    const std::set<int>& active_slots) {
    const int n = static_cast<int>(job_idx.size());
    const int T = inst.T;
    // nodes: 0 = source, 1..n = jobs, n+1..n+T = slots, n+T+1 = sink
    FlowNetwork net(n + T + 2);
    const int src = 0, snk = n + T + 1;
    std::int64_t demand = 0;
    std::vector<std::vector<std::pair<int, int>>> job_slot_edges(n); // (slot, edge handle)
    for (int k = 0; k < n; ++k) {
        const Job& j = inst.jobs[job_idx[k]];
        std::int64_t p = rat_to_i64(j.p);
        demand += p;
        net.add_edge(src, 1 + k, p);
        auto [lo, hi] = inst.window_slots(j);
        for (int t = lo; t <= hi; ++t) {
            int h = net.add_edge(1 + k, n + t, 1);
            job_slot_edges[k].push_back({t, h});
        }
    }
    for (int t = 1; t <= T; ++t) {
        std::int64_t cap = active_slots.count(t) ? inst.g : 0;
        net.add_edge(n + t, snk, cap);
    }
    FeasibilityResult res;
    res.feasible = net.max_flow(src, snk) == demand;
    if (res.feasible) {
        for (int k = 0; k < n; ++k) {
            std::vector<int>& slots = res.assignment[inst.jobs[job_idx[k]].id];
            for (auto [t, h] : job_slot_edges[k])
                if (net.flow_on(h) > 0) slots.push_back(t);
            std::sort(slots.begin(), slots.end());
        }
    }
    return res;
}

} // namespace chronoshed
