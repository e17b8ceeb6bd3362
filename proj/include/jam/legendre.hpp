#pragma once

#include <Eigen/Dense>
#include <optional>

#include "jam/model.hpp"

namespace jam {

enum class CostStatus {
    finite,             // interior maximizer found
    infinite_escaping,  // value +inf, objective unbounded along a recession direction
    boundary,           // finite value attained only as a limit (no interior maximizer)
};

/// Result of a convex-conjugate evaluation L(x, beta) = sup_alpha {<alpha,
/// beta> - H(x, alpha)}.
struct CostEval {
    double value = 0.0;
    std::optional<Covector> maximizer;
    CostStatus status = CostStatus::finite;
};

struct CostOptions {
    int max_iterations = 500;
    double grad_tol = 1e-9;          // first-order condition on the free coordinates
    double alpha_norm_limit = 1e3;   // ||alpha|| beyond this triggers recession checks
    double escape_gain = 1e-12;      // per-iteration gain still counted as escaping
    double match_tol = 1e-9;         // tolerance for the pinned components (beta_s = 1, ...)
};

/// Numerical concave maximization (damped Newton with finite-difference
/// curvature and domain backtracking). beta_s != 1 or any velocity component
/// on an extinct degree immediately gives +inf.
CostEval cost_general(const MacroState& x, const Velocity& beta, const CostOptions& opt = {});

/// Closed form for the d-regular chain, x = (x1, x2, x3), beta = (b1, b2, b3).
/// Finite branch: b1 = 1, b2 = -2d, b3 in [-(d+1), -1]; the endpoints are
/// analytic limits. Requires x2 >= d x3 (membership in E).
CostEval cost_regular(int d, const Eigen::Vector3d& x, const Eigen::Vector3d& beta);

/// Reduced one-dimensional cost for the empties-only process:
/// L((t, u(t), x), (1, -2d, y)) with u(t) = d(1 - 2t). Returns +inf outside
/// the finite branch.
double cost_reduced(int d, double t, double x, double y);

}  // namespace jam
