#include "chronoshed/lp.hpp"

#include <algorithm>
#include <cstdlib>

#include "chronoshed/errors.hpp"

namespace chronoshed {

namespace {

template <class T>
struct Scal;

template <>
struct Scal<Rat> {
    static Rat from(const Rat& r) { return r; }
    static bool is_zero(const Rat& v) { return v == 0; }
    static bool is_neg(const Rat& v) { return v < 0; }
    static bool is_pos(const Rat& v) { return v > 0; }
    static bool lt(const Rat& a, const Rat& b) { return a < b; }
};

template <>
struct Scal<double> {
    static constexpr double eps = 1e-9;
    static double from(const Rat& r) { return rat_double(r); }
    static bool is_zero(double v) { return v > -eps && v < eps; }
    static bool is_neg(double v) { return v < -eps; }
    static bool is_pos(double v) { return v > eps; }
    static bool lt(double a, double b) { return a < b - eps; }
};

// Dense standard-form tableau solver.
template <class T>
class Simplex {
  public:
    // rows over nv structural columns, all constraints already rhs >= 0.
    std::vector<std::vector<T>> A; // m x (cols), slacks/artificials appended
    std::vector<T> rhs;
    std::vector<Cmp> cmp;
    int nv = 0;

    std::vector<int> basis;
    int cols = 0;
    int art_begin = 0;

    LpStatus run(const std::vector<T>& costs, std::vector<T>& out, T& obj_out) {
        const int m = static_cast<int>(A.size());
        // layout: structural | slack/surplus | artificial
        int extra = 0;
        for (auto c : cmp) extra += (c == Cmp::EQ ? 0 : 1);
        int n_art = 0;
        for (int i = 0; i < m; ++i)
            if (cmp[i] != Cmp::LE) ++n_art;
        art_begin = nv + extra;
        cols = art_begin + n_art;
        basis.assign(m, -1);
        int sl = nv, ar = art_begin;
        for (int i = 0; i < m; ++i) {
            A[i].resize(cols, T{});
            if (cmp[i] == Cmp::LE) {
                A[i][sl] = T(1);
                basis[i] = sl++;
            } else if (cmp[i] == Cmp::GE) {
                A[i][sl] = T(-1);
                ++sl;
                A[i][ar] = T(1);
                basis[i] = ar++;
            } else {
                A[i][ar] = T(1);
                basis[i] = ar++;
            }
        }

        if (n_art > 0) {
            std::vector<T> phase1(cols, T{});
            for (int j = art_begin; j < cols; ++j) phase1[j] = T(1);
            T p1obj{};
            if (!optimize(phase1, p1obj, /*phase1=*/true)) throw InvariantViolation("phase-1 LP unbounded");
            if (Scal<T>::is_pos(p1obj)) return LpStatus::Infeasible;
            purge_artificials();
        }

        std::vector<T> full_costs(cols, T{});
        for (int j = 0; j < nv && j < static_cast<int>(costs.size()); ++j) full_costs[j] = costs[j];
        T obj{};
        if (!optimize(full_costs, obj, /*phase1=*/false)) return LpStatus::Unbounded;
        out.assign(nv, T{});
        for (int i = 0; i < m; ++i)
            if (basis[i] >= 0 && basis[i] < nv) out[basis[i]] = rhs[i];
        obj_out = obj;
        return LpStatus::Optimal;
    }

  private:
    void pivot(int prow, int pcol) {
        const int m = static_cast<int>(A.size());
        T inv = A[prow][pcol];
        for (int j = 0; j < cols; ++j)
            if (!Scal<T>::is_zero(A[prow][j])) A[prow][j] = A[prow][j] / inv;
        rhs[prow] = rhs[prow] / inv;
        A[prow][pcol] = T(1);
        for (int i = 0; i < m; ++i) {
            if (i == prow) continue;
            T f = A[i][pcol];
            if (Scal<T>::is_zero(f)) continue;
            for (int j = 0; j < cols; ++j)
                if (!Scal<T>::is_zero(A[prow][j])) A[i][j] = A[i][j] - f * A[prow][j];
            rhs[i] = rhs[i] - f * rhs[prow];
            A[i][pcol] = T{};
        }
    }

    // Returns false on unbounded.
    bool optimize(const std::vector<T>& cost, T& obj_out, bool /*phase1*/) {
        const int m = static_cast<int>(A.size());
        std::vector<T> red(cost); // reduced costs
        T obj{};
        for (int i = 0; i < m; ++i) {
            int b = basis[i];
            if (Scal<T>::is_zero(cost[b])) continue;
            T cb = cost[b];
            for (int j = 0; j < cols; ++j)
                if (!Scal<T>::is_zero(A[i][j])) red[j] = red[j] - cb * A[i][j];
            obj = obj + cb * rhs[i];
        }
        bool bland = false;
        long degen = 0;
        const long degen_limit = 4L * (m + cols);
        while (true) {
            int pcol = -1;
            if (bland) {
                for (int j = 0; j < cols; ++j)
                    if (Scal<T>::is_neg(red[j])) {
                        pcol = j;
                        break;
                    }
            } else {
                for (int j = 0; j < cols; ++j)
                    if (Scal<T>::is_neg(red[j]) && (pcol < 0 || Scal<T>::lt(red[j], red[pcol]))) pcol = j;
            }
            if (pcol < 0) break;
            int prow = -1;
            for (int i = 0; i < m; ++i) {
                if (!Scal<T>::is_pos(A[i][pcol])) continue;
                if (prow < 0) {
                    prow = i;
                    continue;
                }
                T lhs = rhs[i] * A[prow][pcol];
                T rhs_ = rhs[prow] * A[i][pcol];
                if (Scal<T>::lt(lhs, rhs_) || (!Scal<T>::lt(rhs_, lhs) && basis[i] < basis[prow])) prow = i;
            }
            if (prow < 0) return false;
            bool degenerate = Scal<T>::is_zero(rhs[prow]);
            T delta = red[pcol];
            pivot(prow, pcol);
            basis[prow] = pcol;
            // update reduced costs and objective in place
            T f = red[pcol];
            for (int j = 0; j < cols; ++j)
                if (!Scal<T>::is_zero(A[prow][j])) red[j] = red[j] - f * A[prow][j];
            red[pcol] = T{};
            obj = obj + f * rhs[prow];
            (void)delta;
            if (degenerate) {
                if (++degen > degen_limit) bland = true;
            } else {
                degen = 0;
            }
        }
        obj_out = obj;
        return true;
    }

    // After phase 1: remove artificial columns; pivot out any artificial still basic.
    void purge_artificials() {
        const int m = static_cast<int>(A.size());
        for (int i = 0; i < m; ++i) {
            if (basis[i] < art_begin) continue;
            int pcol = -1;
            for (int j = 0; j < art_begin; ++j)
                if (!Scal<T>::is_zero(A[i][j])) {
                    pcol = j;
                    break;
                }
            if (pcol >= 0) {
                pivot(i, pcol);
                basis[i] = pcol;
            } else {
                // redundant row: zero it out; keep a harmless identity on the artificial
                for (int j = 0; j < cols; ++j) A[i][j] = T{};
                rhs[i] = T{};
                A[i][basis[i]] = T(1);
            }
        }
        for (int i = 0; i < m; ++i)
            for (int j = art_begin; j < cols; ++j)
                if (basis[i] != j) A[i][j] = T{};
    }
};

template <class T>
LpSolution<T> solve_impl(const LinearProgram& lp) {
    const int n = lp.num_vars();
    // Shift x = lower + u (u >= 0); substitute out fixed variables entirely.
    std::vector<bool> fixed(n, false);
    std::vector<int> to_col(n, -1);
    int nv = 0;
    for (int j = 0; j < n; ++j) {
        if (lp.upper[j] && *lp.upper[j] < lp.lower[j])
            return {LpStatus::Infeasible, T{}, {}};
        if (lp.upper[j] && *lp.upper[j] == lp.lower[j])
            fixed[j] = true;
        else
            to_col[j] = nv++;
    }

    Simplex<T> sx;
    sx.nv = nv;
    std::vector<std::vector<T>> dense_rows;
    std::vector<T> dense_rhs;
    std::vector<Cmp> dense_cmp;

    auto push_row = [&](const LinearProgram::Row& row) -> std::optional<bool> {
        // returns nullopt normally; false when the row proves infeasibility
        std::vector<T> r(nv, T{});
        Rat shift = row.rhs;
        int nnz = 0, last = -1;
        for (const auto& t : row.terms) {
            shift -= t.coeff * lp.lower[t.var];
            if (fixed[t.var]) continue;
            int c = to_col[t.var];
            r[c] = r[c] + Scal<T>::from(t.coeff);
            if (!Scal<T>::is_zero(r[c])) {
                // recount below
            }
        }
        for (int c = 0; c < nv; ++c)
            if (!Scal<T>::is_zero(r[c])) {
                ++nnz;
                last = c;
            }
        T b = Scal<T>::from(shift);
        if (nnz == 0) {
            bool ok = true;
            if (row.cmp == Cmp::LE) ok = !Scal<T>::is_neg(b);
            if (row.cmp == Cmp::GE) ok = !Scal<T>::is_pos(b);
            if (row.cmp == Cmp::EQ) ok = Scal<T>::is_zero(b);
            if (!ok) return false;
            return std::nullopt;
        }
        if (nnz == 1) {
            // single-variable row: drop when implied by u >= 0
            T a = r[last];
            if (row.cmp == Cmp::LE && Scal<T>::is_neg(a) && !Scal<T>::is_neg(b)) return std::nullopt;
            if (row.cmp == Cmp::GE && Scal<T>::is_pos(a) && !Scal<T>::is_pos(b)) return std::nullopt;
        }
        if (Scal<T>::is_neg(b)) {
            for (auto& v : r) v = -v;
            b = -b;
            dense_cmp.push_back(row.cmp == Cmp::LE ? Cmp::GE : (row.cmp == Cmp::GE ? Cmp::LE : Cmp::EQ));
        } else {
            dense_cmp.push_back(row.cmp);
        }
        dense_rows.push_back(std::move(r));
        dense_rhs.push_back(std::move(b));
        return std::nullopt;
    };

    for (const auto& row : lp.rows) {
        auto bad = push_row(row);
        if (bad.has_value()) return {LpStatus::Infeasible, T{}, {}};
    }
    // upper bounds u <= hi - lo
    for (int j = 0; j < n; ++j) {
        if (fixed[j] || !lp.upper[j]) continue;
        LinearProgram::Row r{{{j, Rat(1)}}, Cmp::LE, *lp.upper[j]};
        auto bad = push_row(r);
        if (bad.has_value()) return {LpStatus::Infeasible, T{}, {}};
    }

    sx.A = std::move(dense_rows);
    sx.rhs = std::move(dense_rhs);
    sx.cmp = std::move(dense_cmp);

    std::vector<T> costs(nv, T{});
    for (int j = 0; j < n; ++j)
        if (!fixed[j]) costs[to_col[j]] = Scal<T>::from(lp.objective[j]);

    std::vector<T> u;
    T obj{};
    LpStatus st = sx.run(costs, u, obj);
    LpSolution<T> sol;
    sol.status = st;
    if (st != LpStatus::Optimal) return sol;
    sol.x.assign(n, T{});
    sol.objective = T{};
    for (int j = 0; j < n; ++j) {
        sol.x[j] = Scal<T>::from(lp.lower[j]);
        if (!fixed[j]) sol.x[j] = sol.x[j] + u[to_col[j]];
        sol.objective = sol.objective + Scal<T>::from(lp.objective[j]) * sol.x[j];
    }
    return sol;
}

} // namespace

LpSolution<Rat> solve_lp(const LinearProgram& lp) { return solve_impl<Rat>(lp); }
LpSolution<double> solve_lp_float(const LinearProgram& lp) { return solve_impl<double>(lp); }

} // namespace chronoshed
