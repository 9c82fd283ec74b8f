#pragma once

#include <optional>
#include <vector>

#include "chronoshed/rational.hpp"

namespace chronoshed {

enum class Cmp { LE, GE, EQ };
enum class LpStatus { Optimal, Infeasible, Unbounded };

// Sparse-rows linear program: minimize c^T x subject to rows and per-variable
// bounds lower <= x <= upper (upper may be absent). Lower bounds must be finite.
struct LinearProgram {
    struct Term {
        int var;
        Rat coeff;
    };
    struct Row {
        std::vector<Term> terms;
        Cmp cmp;
        Rat rhs;
    };

    std::vector<Rat> objective;
    std::vector<Rat> lower;
    std::vector<std::optional<Rat>> upper;
    std::vector<Row> rows;

    int add_var(Rat lo = 0, std::optional<Rat> hi = std::nullopt, Rat obj = 0) {
        objective.push_back(std::move(obj));
        lower.push_back(std::move(lo));
        upper.push_back(std::move(hi));
        return static_cast<int>(objective.size()) - 1;
    }
    void add_row(std::vector<Term> terms, Cmp cmp, Rat rhs) {
        rows.push_back({std::move(terms), cmp, std::move(rhs)});
    }
    int num_vars() const { return static_cast<int>(objective.size()); }
};

template <class T>
struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    T objective{};
    std::vector<T> x;
};

// Exact rational simplex (two-phase dense tableau; Dantzig pricing with a permanent
// switch to Bland's rule after a run of degenerate pivots, so it always terminates).
// Used by every acceptance test and oracle.
LpSolution<Rat> solve_lp(const LinearProgram& lp);

// Floating-point backend with the same pivoting, epsilon 1e-9. For large benchmark
// runs where exact arithmetic is too slow.
LpSolution<double> solve_lp_float(const LinearProgram& lp);

} // namespace chronoshed
