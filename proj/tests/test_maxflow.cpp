#include "doctest.h"

#include <algorithm>
#include <random>

#include "chronoshed/instances.hpp"
#include "chronoshed/maxflow.hpp"
#include "chronoshed/oracle.hpp"

using namespace chronoshed;

namespace {

// every assigned slot must be active, inside the job's window, used once per job,
// exactly p_j times in total, and never loaded beyond g
void check_witness(const ActiveInstance& inst, const std::set<int>& active,
                   const std::map<std::string, std::vector<int>>& assignment) {
    std::map<int, int> load;
    for (const auto& j : inst.jobs) {
        auto it = assignment.find(j.id);
        REQUIRE(it != assignment.end());
        auto slots = it->second;
        CHECK(slots.size() == static_cast<std::size_t>(rat_to_i64(j.p)));
        std::set<int> uniq(slots.begin(), slots.end());
        CHECK(uniq.size() == slots.size());
        auto [lo, hi] = inst.window_slots(j);
        for (int t : slots) {
            CHECK(active.count(t) == 1);
            CHECK(lo <= t);
            CHECK(t <= hi);
            ++load[t];
        }
    }
    for (const auto& [t, c] : load) {
        (void)t;
        CHECK(c <= inst.g);
    }
}

} // namespace

TEST_CASE("raw network pushes the expected flow") {
    FlowNetwork net(4);
    int e1 = net.add_edge(0, 1, 3);
    net.add_edge(0, 2, 2);
    net.add_edge(1, 3, 2);
    net.add_edge(2, 3, 3);
    net.add_edge(1, 2, 5);
    CHECK(net.max_flow(0, 3) == 5);
    CHECK(net.flow_on(e1) == 3);
}

TEST_CASE("single job is feasible inside its window only") {
    // anchor keeps the earliest release at 0 so "a" really spans [1,3)
    auto inst = make_active(2, {job("anchor", 0, 4, 1), job("a", 1, 3, 2)});
    CHECK(check_feasibility(inst, {2, 3}).feasible);
    CHECK(check_feasibility(inst, {1, 2}).feasible == false); // slot 1 is outside [1,3)
    CHECK(check_feasibility(inst, {2}).feasible == false);
}

TEST_CASE("capacity limits how much fits into one slot") {
    auto inst = make_active(2, {job("a", 0, 1, 1), job("b", 0, 1, 1), job("c", 0, 1, 1)});
    CHECK(!check_feasibility(inst, {1}).feasible);
    auto wide = make_active(3, {job("a", 0, 1, 1), job("b", 0, 1, 1), job("c", 0, 1, 1)});
    CHECK(check_feasibility(wide, {1}).feasible);
}

TEST_CASE("feasible checks return a valid witness") {
    auto inst = make_active(2, {job("a", 0, 4, 3), job("b", 1, 3, 2), job("c", 0, 2, 1)});
    std::set<int> active{1, 2, 3, 4};
    auto res = check_feasibility(inst, active);
    REQUIRE(res.feasible);
    check_witness(inst, active, res.assignment);
}

TEST_CASE("subset overload ignores the other jobs") {
    auto inst = make_active(1, {job("a", 0, 1, 1), job("b", 0, 1, 1)});
    CHECK(!check_feasibility(inst, {1}).feasible);
    CHECK(check_feasibility(inst, std::vector<std::size_t>{0}, {1}).feasible);
    CHECK(check_feasibility(inst, std::vector<std::size_t>{}, {}).feasible);
}

TEST_CASE("flow feasibility matches brute force on random pairs") {
    std::mt19937_64 rng(20240817);
    OracleBudget budget;
    for (int round = 0; round < 120; ++round) {
        int T = 3 + static_cast<int>(draw(rng, 0, 5));
        int g = 1 + static_cast<int>(draw(rng, 0, 2));
        // keep total demand below T*g or no feasible instance exists at all
        int n_cap = std::min(5, T * g / 2);
        int n = 1 + static_cast<int>(draw(rng, 0, n_cap - 1));
        auto fx = random_active(n, T, g, draw(rng, 0, 1u << 30));
        const auto& inst = std::get<ActiveInstance>(fx.instance);
        std::set<int> active;
        for (int t = 1; t <= inst.T; ++t)
            if (draw(rng, 0, 99) < 60) active.insert(t);
        auto res = check_feasibility(inst, active);
        CHECK(res.feasible == feasible_bruteforce(inst, active, budget));
        if (res.feasible) check_witness(inst, active, res.assignment);
    }
}
