#include "doctest.h"

#include "chronoshed/busy.hpp"
#include "chronoshed/errors.hpp"
#include "chronoshed/instances.hpp"
#include "chronoshed/oracle.hpp"
#include "chronoshed/profile.hpp"

using namespace chronoshed;

namespace {

std::vector<std::size_t> all_indices(const BusyInstance& inst) {
    std::vector<std::size_t> v(inst.jobs.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return v;
}

} // namespace

TEST_CASE("longest track skips the middle interval") {
    auto inst = make_busy(2, {job("a", 0, 2, 2), job("b", 1, 3, 2), job("c", 3, 4, 1)});
    auto track = longest_track(inst, all_indices(inst));
    CHECK(track.length == Rat(3));
    REQUIRE(track.jobs.size() == 2);
    CHECK(inst.jobs[track.jobs[0]].id == "a");
    CHECK(inst.jobs[track.jobs[1]].id == "c");
}

TEST_CASE("longest track prefers one long job over a short insider") {
    auto inst = make_busy(2, {job("a", 0, 5, 5), job("b", 1, 2, 1)});
    auto track = longest_track(inst, all_indices(inst));
    CHECK(track.length == Rat(5));
    REQUIRE(track.jobs.size() == 1);
    CHECK(inst.jobs[track.jobs[0]].id == "a");
}

TEST_CASE("greedy tracking bundles tracks g at a time") {
    auto inst = make_busy(2, {job("a", 0, 2, 2), job("b", 0, 2, 2), job("c", 0, 2, 2),
                              job("d", 2, 3, 1)});
    auto res = greedy_tracking(inst);
    REQUIRE(res.tracks.size() == 3);
    CHECK(res.tracks[0].length == Rat(3)); // a with d appended
    CHECK(res.tracks[1].length == Rat(2));
    CHECK(res.tracks[2].length == Rat(2));
    REQUIRE(res.bundles.size() == 2);
    CHECK(res.bundles[0].span == Rat(3));
    CHECK(res.bundles[1].span == Rat(2));
    CHECK(res.cost == Rat(5));
    std::vector<std::vector<std::size_t>> machines;
    for (const auto& b : res.bundles) machines.push_back(b.jobs);
    std::vector<TimeInterval> placement;
    for (const auto& j : inst.jobs) placement.push_back(j.window());
    CHECK(validate_bundles(inst, machines, placement, res.cost) == std::nullopt);
}

TEST_CASE("track lengths come out non-increasing") {
    for (std::uint64_t seed = 2; seed <= 14; ++seed) {
        auto inst = random_interval_busy(8, 3, seed, false);
        auto res = greedy_tracking(inst);
        for (std::size_t i = 1; i < res.tracks.size(); ++i)
            CHECK(res.tracks[i - 1].length >= res.tracks[i].length);
    }
}

TEST_CASE("tracking cost is bounded by span plus twice the scaled mass") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto inst = random_interval_busy(7, 2, seed, true);
        auto res = greedy_tracking(inst);
        std::vector<TimeInterval> windows;
        for (const auto& j : inst.jobs) windows.push_back(j.window());
        Rat span = span_of(windows);
        CHECK(res.bundles[0].span <= span);
        Rat rest = 0;
        for (std::size_t i = 1; i < res.bundles.size(); ++i) rest += res.bundles[i].span;
        CHECK(rest <= 2 * inst.total_length() / *inst.g);
    }
}

TEST_CASE("conversion pins a lone flexible job at its latest start") {
    auto inst = make_busy(std::nullopt, {job("a", 0, 5, 2)});
    auto res = convert_to_interval_unbounded(inst);
    CHECK(res.cost == Rat(2));
    REQUIRE(res.runs.size() == 1);
    CHECK(res.placement[0] == TimeInterval{Rat(3), Rat(5)});
}

TEST_CASE("conversion stacks two compatible jobs into one unit run") {
    auto inst = make_busy(std::nullopt, {job("a", 0, 3, 1), job("b", 0, 1, 1)});
    auto res = convert_to_interval_unbounded(inst);
    CHECK(res.cost == Rat(1));
    CHECK(res.placement[0] == TimeInterval{Rat(0), Rat(1)});
    CHECK(res.placement[1] == TimeInterval{Rat(0), Rat(1)});
}

TEST_CASE("conversion output is a valid rigid instance of the same jobs") {
    for (std::uint64_t seed = 5; seed <= 25; ++seed) {
        auto inst = random_flexible_busy(6, 14, seed);
        auto res = convert_to_interval_unbounded(inst);
        REQUIRE(res.rigid.jobs.size() == inst.jobs.size());
        for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
            const auto& orig = inst.jobs[j];
            const auto& placed = res.placement[j];
            CHECK(placed.length() == orig.p);
            CHECK(placed.start >= orig.r);
            CHECK(placed.end <= orig.d);
            CHECK(res.rigid.jobs[j].is_interval());
        }
        CHECK(span_of(res.placement) == res.cost);
    }
}

TEST_CASE("three-approximation stays within three lower bounds on interval jobs") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        auto inst = random_interval_busy(7, 2, seed, false);
        auto res = busy_three_approx(inst);
        auto lb = lower_bounds(inst.jobs, *inst.g);
        CHECK(res.cost >= lb.best());
        CHECK(res.cost <= 3 * lb.best());
    }
}

TEST_CASE("preemption squeezes two nested jobs into the tail") {
    auto inst = make_busy(std::nullopt, {job("j1", 0, 2, 1), job("j2", 0, 3, 2)});
    auto sched = preemptive_unbounded(inst);
    CHECK(sched.cost == Rat(2));
    CHECK(validate_preemptive(inst, sched) == std::nullopt);
}

TEST_CASE("identical units share the open block when capacity is unbounded") {
    auto inst = make_busy(std::nullopt, {job("a", 0, 2, 1), job("b", 0, 2, 1)});
    auto sched = preemptive_unbounded(inst);
    CHECK(sched.cost == Rat(1));
    CHECK(validate_preemptive(inst, sched) == std::nullopt);
}

TEST_CASE("bounded preemption pays for capacity one") {
    auto inst = make_busy(1, {job("a", 0, 2, 1), job("b", 0, 2, 1)});
    auto sched = preemptive_bounded(inst);
    CHECK(sched.cost == Rat(2));
    CHECK(validate_bounded_preemptive(inst, sched) == std::nullopt);
}

TEST_CASE("bounded preemption with room behaves like the unbounded one") {
    auto inst = make_busy(2, {job("a", 0, 2, 1), job("b", 0, 2, 1)});
    auto sched = preemptive_bounded(inst);
    CHECK(sched.cost == Rat(1));
    CHECK(validate_bounded_preemptive(inst, sched) == std::nullopt);
}

TEST_CASE("preemptive schedules on random rational instances verify cleanly") {
    for (std::uint64_t seed = 40; seed <= 60; ++seed) {
        auto fx = random_busy(8, 2, seed, false);
        const auto& inst = std::get<BusyInstance>(fx.instance);
        auto unb = make_busy(std::nullopt, inst.jobs);
        auto sched = preemptive_unbounded(unb);
        CHECK(validate_preemptive(unb, sched) == std::nullopt);
        auto bounded = preemptive_bounded(inst);
        CHECK(validate_bounded_preemptive(inst, bounded) == std::nullopt);
        CHECK(bounded.cost >= sched.cost);
    }
}

TEST_CASE("bundle validator flags out-of-window placements") {
    auto inst = make_busy(2, {job("a", 0, 2, 2), job("b", 2, 4, 2)});
    std::vector<std::vector<std::size_t>> machines{{0, 1}};
    std::vector<TimeInterval> placement{{Rat(0), Rat(2)}, {Rat(1), Rat(3)}};
    auto bad = validate_bundles(inst, machines, placement, Rat(3));
    REQUIRE(bad.has_value());
    CHECK(bad->find("b") != std::string::npos);
}

TEST_CASE("bundle validator enforces the per-machine capacity") {
    auto inst = make_busy(1, {job("a", 0, 2, 2), job("b", 0, 2, 2)});
    std::vector<std::vector<std::size_t>> machines{{0, 1}};
    std::vector<TimeInterval> placement{{Rat(0), Rat(2)}, {Rat(0), Rat(2)}};
    CHECK(validate_bundles(inst, machines, placement, Rat(2)).has_value());
}

TEST_CASE("preemptive validator demands full processing") {
    auto inst = make_busy(std::nullopt, {job("a", 0, 3, 2)});
    PreemptiveSchedule sched;
    sched.pieces = {{{Rat(0), Rat(1)}}};
    sched.cover = {{Rat(0), Rat(1)}};
    sched.cost = Rat(1);
    CHECK(validate_preemptive(inst, sched).has_value());
}
