#include "doctest.h"

#include <cmath>

#include "chronoshed/active.hpp"
#include "chronoshed/instances.hpp"
#include "chronoshed/lp.hpp"

using namespace chronoshed;

TEST_CASE("two-variable program solves exactly") {
    // min -x - 2y  s.t.  x + y <= 4, x <= 3, y <= 2  ->  x=2, y=2
    LinearProgram lp;
    int x = lp.add_var(Rat(0), std::nullopt, Rat(-1));
    int y = lp.add_var(Rat(0), Rat(2), Rat(-2));
    lp.add_row({{x, Rat(1)}, {y, Rat(1)}}, Cmp::LE, Rat(4));
    lp.add_row({{x, Rat(1)}}, Cmp::LE, Rat(3));
    auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == Rat(-6));
    CHECK(sol.x[x] == Rat(2));
    CHECK(sol.x[y] == Rat(2));
}

TEST_CASE("fractional optimum comes out exact, not rounded") {
    // min x + y  s.t.  3x + y >= 1, x + 3y >= 1  ->  x = y = 1/4
    LinearProgram lp;
    int x = lp.add_var(Rat(0), std::nullopt, Rat(1));
    int y = lp.add_var(Rat(0), std::nullopt, Rat(1));
    lp.add_row({{x, Rat(3)}, {y, Rat(1)}}, Cmp::GE, Rat(1));
    lp.add_row({{x, Rat(1)}, {y, Rat(3)}}, Cmp::GE, Rat(1));
    auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == Rat(1, 2));
    CHECK(sol.x[x] == Rat(1, 4));
    CHECK(sol.x[y] == Rat(1, 4));
}

TEST_CASE("equality rows are honored") {
    LinearProgram lp;
    int x = lp.add_var(Rat(0), std::nullopt, Rat(1));
    int y = lp.add_var(Rat(0), std::nullopt, Rat(3));
    lp.add_row({{x, Rat(1)}, {y, Rat(1)}}, Cmp::EQ, Rat(5));
    auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == Rat(5));
    CHECK(sol.x[x] == Rat(5));
}

TEST_CASE("infeasible programs are reported, not mangled") {
    LinearProgram lp;
    int x = lp.add_var(Rat(0), Rat(1), Rat(1));
    lp.add_row({{x, Rat(1)}}, Cmp::GE, Rat(2));
    CHECK(solve_lp(lp).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded programs are reported") {
    LinearProgram lp;
    int x = lp.add_var(Rat(0), std::nullopt, Rat(-1));
    lp.add_row({{x, Rat(-1)}}, Cmp::LE, Rat(0));
    CHECK(solve_lp(lp).status == LpStatus::Unbounded);
}

TEST_CASE("degenerate cycling candidate still terminates") {
    // classic cycling-prone tableau (needs the Bland fallback to finish)
    LinearProgram lp;
    int a = lp.add_var(Rat(0), std::nullopt, Rat(-3, 4));
    int b = lp.add_var(Rat(0), std::nullopt, Rat(150));
    int c = lp.add_var(Rat(0), std::nullopt, Rat(-1, 50));
    int d = lp.add_var(Rat(0), std::nullopt, Rat(6));
    lp.add_row({{a, Rat(1, 4)}, {b, Rat(-60)}, {c, Rat(-1, 25)}, {d, Rat(9)}}, Cmp::LE, Rat(0));
    lp.add_row({{a, Rat(1, 2)}, {b, Rat(-90)}, {c, Rat(-1, 50)}, {d, Rat(3)}}, Cmp::LE, Rat(0));
    lp.add_row({{c, Rat(1)}}, Cmp::LE, Rat(1));
    auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == Rat(-1, 20));
}

TEST_CASE("float backend agrees with the exact one") {
    LinearProgram lp;
    int x = lp.add_var(Rat(0), std::nullopt, Rat(1));
    int y = lp.add_var(Rat(0), std::nullopt, Rat(1));
    lp.add_row({{x, Rat(3)}, {y, Rat(1)}}, Cmp::GE, Rat(1));
    lp.add_row({{x, Rat(1)}, {y, Rat(3)}}, Cmp::GE, Rat(1));
    auto ex = solve_lp(lp);
    auto fl = solve_lp_float(lp);
    REQUIRE(fl.status == LpStatus::Optimal);
    CHECK(std::abs(fl.objective - rat_double(ex.objective)) < 1e-9);
}

TEST_CASE("variables may start above zero") {
    LinearProgram lp;
    int x = lp.add_var(Rat(2), Rat(10), Rat(1));
    lp.add_row({{x, Rat(1)}}, Cmp::LE, Rat(8));
    auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.x[x] == Rat(2));
}

TEST_CASE("slot relaxation has one variable per slot and per pair") {
    auto inst = make_active(2, {job("a", 0, 3, 2), job("b", 1, 3, 1)});
    auto lp = build_active_lp(inst);
    CHECK(lp.num_vars() == 9);          // 3 slot vars + 6 assignment vars
    CHECK(lp.rows.size() == 6 + 3 + 2); // coupling + capacity + coverage
}

TEST_CASE("relaxation value of the gap family is known in closed form") {
    auto fx = integrality_gap(2);
    auto frac = solve_active_lp(std::get<ActiveInstance>(fx.instance));
    CHECK(frac.cost() == Rat(3));
}

TEST_CASE("relaxation never exceeds the slot count and stays feasible") {
    auto fx = random_active(4, 8, 2, 7);
    const auto& inst = std::get<ActiveInstance>(fx.instance);
    auto frac = solve_active_lp(inst);
    CHECK(frac.cost() <= Rat(inst.T));
    for (int t = 0; t < inst.T; ++t) {
        Rat used = 0;
        for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
            CHECK(frac.x[t][j] <= frac.y[t]);
            used += frac.x[t][j];
        }
        CHECK(used <= Rat(inst.g) * frac.y[t]);
    }
    for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
        Rat got = 0;
        for (int t = 0; t < inst.T; ++t) got += frac.x[t][j];
        CHECK(got >= inst.jobs[j].p);
    }
}
