#include "doctest.h"

#include "chronoshed/active.hpp"
#include "chronoshed/errors.hpp"
#include "chronoshed/instances.hpp"
#include "chronoshed/maxflow.hpp"
#include "chronoshed/oracle.hpp"

using namespace chronoshed;

TEST_CASE("slot classes split at zero, a half and one") {
    CHECK(classify_slot(Rat(0)) == SlotClass::Closed);
    CHECK(classify_slot(Rat(1, 4)) == SlotClass::Barely);
    CHECK(classify_slot(Rat(1, 2)) == SlotClass::Half);
    CHECK(classify_slot(Rat(3, 4)) == SlotClass::Half);
    CHECK(classify_slot(Rat(1)) == SlotClass::Fully);
}

TEST_CASE("right shift pushes block mass onto the late slots") {
    // two jobs ending at 2 and 4 induce blocks (0,2] and (2,4]
    auto inst = make_active(2, {job("a", 0, 2, 1), job("b", 0, 4, 2)});
    FractionalSolution frac;
    frac.y = {Rat(3, 10), Rat(9, 10), Rat(1, 2), Rat(4, 5)};
    // hand-build a compatible assignment: a needs 1, b needs 2
    frac.x = {{Rat(3, 10), Rat(0)},
              {Rat(7, 10), Rat(9, 10)},
              {Rat(0), Rat(1, 2)},
              {Rat(0), Rat(3, 5)}};
    auto shifted = right_shift(inst, frac);
    CHECK(shifted.y == std::vector<Rat>{Rat(1, 5), Rat(1), Rat(3, 10), Rat(1)});
    CHECK(shifted.cost() == frac.cost());
}

TEST_CASE("right shift is idempotent") {
    auto fx = random_active(5, 9, 2, 11);
    const auto& inst = std::get<ActiveInstance>(fx.instance);
    auto frac = solve_active_lp(inst);
    auto s1 = right_shift(inst, frac);
    auto s2 = right_shift(inst, s1);
    CHECK(s1.y == s2.y);
    CHECK(s1.cost() == frac.cost());
}

TEST_CASE("deadline blocks carry the mass between consecutive deadlines") {
    auto inst = make_active(2, {job("a", 0, 2, 1), job("b", 0, 4, 2), job("c", 1, 4, 1)});
    std::vector<Rat> y{Rat(1, 2), Rat(1, 2), Rat(1), Rat(1, 4)};
    auto blocks = deadline_blocks(inst, y);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].begin == 1);
    CHECK(blocks[0].deadline == 2);
    CHECK(blocks[0].mass == Rat(1));
    CHECK(blocks[0].jobs.size() == 1);
    CHECK(blocks[1].begin == 3);
    CHECK(blocks[1].deadline == 4);
    CHECK(blocks[1].mass == Rat(5, 4));
    CHECK(blocks[1].jobs.size() == 2);
}

TEST_CASE("rounding three units squeezed into two slots") {
    auto inst = make_active(2, {job("a", 0, 2, 1), job("b", 0, 2, 1), job("c", 0, 2, 1)});
    auto frac = right_shift(inst, solve_active_lp(inst));
    REQUIRE(frac.y == std::vector<Rat>{Rat(1, 2), Rat(1)});
    auto state = round_active(inst, frac);
    CHECK(state.opened == std::set<int>{1, 2});
    REQUIRE(state.ledger.size() == 1);
    CHECK(state.ledger[0].kind == ChargeRecord::Kind::SelfHalf);
    CHECK(state.ledger[0].slot == 1);
    CHECK(state.ledger[0].value == Rat(1, 2));
}

TEST_CASE("rounding the gap family doubles the fractional cost at worst") {
    auto fx = integrality_gap(2);
    const auto& inst = std::get<ActiveInstance>(fx.instance);
    auto res = lp_round(inst);
    CHECK(res.lp.cost() == Rat(3));
    CHECK(res.schedule.cost() == 4);
    CHECK(Rat(res.schedule.cost()) <= 2 * res.lp.cost());
    CHECK(validate_active_schedule(inst, res.schedule) == std::nullopt);
}

TEST_CASE("rounded schedules on random instances honor every invariant") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        auto fx = random_active(4, 8, 2, seed);
        const auto& inst = std::get<ActiveInstance>(fx.instance);
        auto res = lp_round(inst);
        CHECK(validate_active_schedule(inst, res.schedule) == std::nullopt);
        CHECK(Rat(res.schedule.cost()) <= 2 * res.lp.cost());
        // openings within twice the processed mass, per iteration
        for (const auto& it : res.rounding.iterations)
            CHECK(Rat(static_cast<long>(it.opened_cum.size())) <= 2 * it.mass_cum);
    }
}

TEST_CASE("ledger charges at most two openings onto any paying slot") {
    for (std::uint64_t seed = 30; seed <= 45; ++seed) {
        auto fx = random_active(5, 10, 3, seed);
        const auto& inst = std::get<ActiveInstance>(fx.instance);
        auto res = lp_round(inst);
        std::map<int, Rat> charged; // paying slot -> contributed value
        for (const auto& rec : res.rounding.ledger) {
            switch (rec.kind) {
                case ChargeRecord::Kind::SelfHalf:
                    CHECK(rec.value >= Rat(1, 2));
                    break;
                case ChargeRecord::Kind::Dependent:
                    charged[rec.full_slot] += rec.value;
                    break;
                case ChargeRecord::Kind::Trio:
                    CHECK(rec.value + rec.dep_value >= Rat(1, 2));
                    charged[rec.full_slot] += rec.value + rec.dep_value;
                    break;
                case ChargeRecord::Kind::Filler:
                    CHECK(rec.value + rec.half_value >= Rat(1));
                    break;
            }
        }
        for (const auto& [slot, v] : charged) {
            (void)slot;
            CHECK(v <= Rat(1)); // a fully open slot pays for at most one unit of extras
        }
    }
}

TEST_CASE("one slot suffices for one unit job") {
    auto inst = make_active(1, {job("a", 0, 3, 1)});
    auto sched = minimal_feasible(inst);
    CHECK(sched.cost() == 1);
    CHECK(validate_active_schedule(inst, sched) == std::nullopt);
}

TEST_CASE("minimal solutions are one-minimal") {
    for (std::uint64_t seed = 3; seed <= 12; ++seed) {
        auto fx = random_active(4, 9, 2, seed);
        const auto& inst = std::get<ActiveInstance>(fx.instance);
        auto sched = minimal_feasible(inst);
        CHECK(validate_active_schedule(inst, sched) == std::nullopt);
        for (int t : sched.active_slots) {
            auto fewer = sched.active_slots;
            fewer.erase(t);
            CHECK(!check_feasibility(inst, fewer).feasible);
        }
    }
}

TEST_CASE("every close-order policy yields a feasible minimal schedule") {
    auto fx = random_active(5, 10, 2, 77);
    const auto& inst = std::get<ActiveInstance>(fx.instance);
    for (auto policy : {CloseOrder::Policy::LatestFirst, CloseOrder::Policy::EarliestFirst,
                        CloseOrder::Policy::SeededRandom}) {
        CloseOrder order;
        order.policy = policy;
        order.seed = 5;
        auto sched = minimal_feasible(inst, order);
        CHECK(validate_active_schedule(inst, sched) == std::nullopt);
    }
}

TEST_CASE("the adversarial close order hits three g minus two") {
    auto fx = tight_minimal(4);
    const auto& inst = std::get<ActiveInstance>(fx.instance);
    CloseOrder order;
    order.policy = CloseOrder::Policy::Explicit;
    order.order = fx.adversarial_order;
    auto sched = minimal_feasible(inst, order);
    CHECK(sched.cost() == 10);
    CHECK(validate_active_schedule(inst, sched) == std::nullopt);
}

TEST_CASE("schedule validator spots tampering") {
    auto inst = make_active(1, {job("a", 0, 3, 1)});
    auto sched = minimal_feasible(inst);
    auto broken = sched;
    broken.assignment["a"] = {9}; // outside the horizon
    CHECK(validate_active_schedule(inst, broken).has_value());
    auto empty = sched;
    empty.assignment.clear();
    CHECK(validate_active_schedule(inst, empty).has_value());
}

TEST_CASE("infeasible instances are rejected up front") {
    // two unit jobs fighting for one slot of capacity one
    auto inst = make_active(1, {job("a", 0, 1, 1), job("b", 0, 1, 1)});
    CHECK_THROWS_AS(minimal_feasible(inst), InfeasibleError);
    CHECK_THROWS_AS(solve_active_lp(inst), InfeasibleError);
}
