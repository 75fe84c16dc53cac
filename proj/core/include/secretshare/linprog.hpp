#ifndef SECRETSHARE_LINPROG_HPP
#define SECRETSHARE_LINPROG_HPP

#include <vector>

namespace secretshare {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    double value = 0.0;
    std::vector<double> x;
};

/// maximize c.x  subject to  A x <= b, x >= 0.
/// Dense two-phase simplex with Bland's rule; built for the small systems
/// of this project (at most ~2^(D+1) rows over at most 2D variables).
/// Throws SolverFailure if the tableau does not terminate.
LpResult solve_lp(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                  const std::vector<double>& c);

/// Feasibility of A x <= b, x >= 0.
bool lp_feasible(const std::vector<std::vector<double>>& A, const std::vector<double>& b);

}  // namespace secretshare

#endif
