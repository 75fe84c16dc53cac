#include "secretshare/linprog.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "secretshare/errors.hpp"

namespace secretshare {

namespace {

constexpr double kTol = 1e-9;

// Tableau layout: columns [0, n) structural, [n, n+m) slack, [n+m, n+2m)
// artificial, last column RHS. Row m is the phase objective (maximization,
// stored negated so a positive entry means "improving column").
struct Tableau {
    std::size_t m, n;
    std::vector<std::vector<double>> t;  // (m+1) x (n + 2m + 1)
    std::vector<std::size_t> basis;      // basic column per row

    std::size_t cols() const { return n + 2 * m + 1; }
    std::size_t rhs() const { return cols() - 1; }

    void pivot(std::size_t prow, std::size_t pcol) {
        double piv = t[prow][pcol];
        for (auto& v : t[prow]) v /= piv;
        for (std::size_t r = 0; r <= m; ++r) {
            if (r == prow) continue;
            double f = t[r][pcol];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < cols(); ++c) t[r][c] -= f * t[prow][c];
        }
        basis[prow] = pcol;
    }

    // Bland's rule: entering = lowest-index improving column, leaving =
    // lowest-index row among the minimum-ratio ties. Returns false when the
    // objective is optimal; throws when unbounded columns are disallowed.
    enum class Step { Optimal, Pivoted, Unbounded };

    Step step(std::size_t allowed_cols) {
        std::size_t pcol = allowed_cols;
        for (std::size_t c = 0; c < allowed_cols; ++c) {
            if (t[m][c] > kTol) {
                pcol = c;
                break;
            }
        }
        if (pcol == allowed_cols) return Step::Optimal;

        std::size_t prow = m;
        double best = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
            if (t[r][pcol] > kTol) {
                double ratio = t[r][rhs()] / t[r][pcol];
                if (prow == m || ratio < best - kTol ||
                    (std::abs(ratio - best) <= kTol && basis[r] < basis[prow])) {
                    prow = r;
                    best = ratio;
                }
            }
        }
        if (prow == m) return Step::Unbounded;
        pivot(prow, pcol);
        return Step::Pivoted;
    }

    Step run(std::size_t allowed_cols, std::size_t max_iter) {
        for (std::size_t it = 0; it < max_iter; ++it) {
            Step s = step(allowed_cols);
            if (s != Step::Pivoted) return s;
        }
        throw SolverFailure("simplex did not terminate in " + std::to_string(max_iter) +
                            " pivots");
    }
};

}  // namespace

LpResult solve_lp(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                  const std::vector<double>& c) {
    const std::size_t m = A.size();
    const std::size_t n = c.size();

    Tableau tab;
    tab.m = m;
    tab.n = n;
    tab.t.assign(m + 1, std::vector<double>(n + 2 * m + 1, 0.0));
    tab.basis.assign(m, 0);

    for (std::size_t r = 0; r < m; ++r) {
        if (A[r].size() != n) throw SolverFailure("constraint row has wrong arity");
        double sign = (b[r] < 0.0) ? -1.0 : 1.0;
        for (std::size_t cidx = 0; cidx < n; ++cidx) tab.t[r][cidx] = sign * A[r][cidx];
        tab.t[r][n + r] = sign;            // slack
        tab.t[r][n + m + r] = 1.0;         // artificial
        tab.t[r][tab.rhs()] = sign * b[r];
        tab.basis[r] = n + m + r;
    }

    // Phase 1: maximize -sum(artificials); price out the artificial basis.
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t cidx = 0; cidx < tab.cols(); ++cidx)
            tab.t[m][cidx] += tab.t[r][cidx];
    for (std::size_t r = 0; r < m; ++r) tab.t[m][n + m + r] = 0.0;

    const std::size_t max_iter = 2000 + 50 * (m + n) * (m + n);
    tab.run(n + 2 * m, max_iter);

    LpResult res;
    if (tab.t[m][tab.rhs()] > 1e-7) {
        res.status = LpStatus::Infeasible;
        return res;
    }

    // Drive residual artificials out of the basis (degenerate rows).
    for (std::size_t r = 0; r < m; ++r) {
        if (tab.basis[r] >= n + m) {
            std::size_t pc = n + m;
            for (std::size_t cidx = 0; cidx < n + m; ++cidx) {
                if (std::abs(tab.t[r][cidx]) > kTol) {
                    pc = cidx;
                    break;
                }
            }
            if (pc < n + m) tab.pivot(r, pc);
            // else: redundant row, harmless to leave in place
        }
    }

    // Phase 2 objective.
    for (std::size_t cidx = 0; cidx < tab.cols(); ++cidx) tab.t[m][cidx] = 0.0;
    for (std::size_t cidx = 0; cidx < n; ++cidx) tab.t[m][cidx] = c[cidx];
    for (std::size_t r = 0; r < m; ++r) {
        if (tab.basis[r] < n && std::abs(tab.t[m][tab.basis[r]]) > 0.0) {
            double f = tab.t[m][tab.basis[r]];
            for (std::size_t cidx = 0; cidx < tab.cols(); ++cidx)
                tab.t[m][cidx] -= f * tab.t[r][cidx];
        }
    }
    // Phase 2 never admits artificial columns: allowed_cols stops at n + m.
    Tableau::Step s = tab.run(n + m, max_iter);
    if (s == Tableau::Step::Unbounded) {
        res.status = LpStatus::Unbounded;
        return res;
    }

    res.status = LpStatus::Optimal;
    res.x.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r)
        if (tab.basis[r] < n) res.x[tab.basis[r]] = tab.t[r][tab.rhs()];
    res.value = 0.0;
    for (std::size_t cidx = 0; cidx < n; ++cidx) res.value += c[cidx] * res.x[cidx];
    return res;
}

bool lp_feasible(const std::vector<std::vector<double>>& A, const std::vector<double>& b) {
    std::vector<double> c(A.empty() ? 0 : A[0].size(), 0.0);
    if (!A.empty() && A[0].empty()) c.clear();
    LpResult r = solve_lp(A, b, c);
    return r.status != LpStatus::Infeasible;
}

}  // namespace secretshare
