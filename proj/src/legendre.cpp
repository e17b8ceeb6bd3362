#include "jam/legendre.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "jam/hamiltonian.hpp"

namespace jam {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

CostEval infinite() { return CostEval{inf, std::nullopt, CostStatus::infinite_escaping}; }

}  // namespace

CostEval cost_general(const MacroState& x, const Velocity& beta, const CostOptions& opt) {
    const int D = x.max_degree();
    if (beta.max_degree() != D)
        throw std::invalid_argument("cost_general: state and velocity sizes differ");

    const double sum_e = x.empty_mass();
    if (sum_e < hamiltonian_boundary_tol) {
        // H(x, .) == 0: the conjugate is 0 at beta = 0 and +inf elsewhere.
        if (std::abs(beta.s) > opt.match_tol || std::abs(beta.u) > opt.match_tol ||
            beta.e.cwiseAbs().maxCoeff() > opt.match_tol)
            return infinite();
        return CostEval{0.0, Covector::zero(D), CostStatus::finite};
    }

    // H is linear in alpha_s with slope 1, so beta_s must be 1.
    if (std::abs(beta.s - 1.0) > opt.match_tol) return infinite();
    // H does not depend on alpha_i when e_i = 0: those velocities must vanish.
    for (int i = 0; i <= D; ++i)
        if (x.e[i] == 0.0 && std::abs(beta.e[i]) > opt.match_tol) return infinite();

    // Free coordinates: alpha_u plus alpha_i for degrees with e_i > 0.
    std::vector<int> free_deg;
    for (int i = 0; i <= D; ++i)
        if (x.e[i] > 0.0) free_deg.push_back(i);
    const int n = 1 + static_cast<int>(free_deg.size());

    auto unpack = [&](const Eigen::VectorXd& z) {
        Covector a = Covector::zero(D);
        a.u = z[0];
        for (int i = 0; i < static_cast<int>(free_deg.size()); ++i) a.e[free_deg[i]] = z[1 + i];
        return a;
    };
    auto objective = [&](const Eigen::VectorXd& z, bool* ok) -> double {
        try {
            const Covector a = unpack(z);
            const double h = hamiltonian(x, a);
            *ok = true;
            return dot(a, beta) - h;
        } catch (const domain_error&) {
            *ok = false;
            return -inf;
        }
    };
    auto gradient = [&](const Eigen::VectorXd& z) {
        const Covector a = unpack(z);
        const Velocity ga = grad_alpha(x, a);
        Eigen::VectorXd g(n);
        g[0] = beta.u - ga.u;
        for (int i = 0; i < static_cast<int>(free_deg.size()); ++i)
            g[1 + i] = beta.e[free_deg[i]] - ga.e[free_deg[i]];
        return g;
    };

    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    bool ok = true;
    double f = objective(z, &ok);  // = 0 at alpha = 0
    double prev_f = f;

    for (int iter = 0; iter < opt.max_iterations; ++iter) {
        const Eigen::VectorXd g = gradient(z);
        if (g.cwiseAbs().maxCoeff() < opt.grad_tol) {
            const Covector a = unpack(z);
            return CostEval{dot(a, beta) - hamiltonian(x, a), a, CostStatus::finite};
        }

        // Curvature of H by central differences of the analytic gradient.
        Eigen::MatrixXd ddH(n, n);
        const double h = 1e-5 * std::max(1.0, z.cwiseAbs().maxCoeff());
        for (int j = 0; j < n; ++j) {
            Eigen::VectorXd zp = z, zm = z;
            zp[j] += h;
            zm[j] -= h;
            ddH.col(j) = (gradient(zm) - gradient(zp)) / (2.0 * h);  // -(dg) = +ddH
        }
        ddH = 0.5 * (ddH + ddH.transpose()).eval();

        // Damped Newton ascent direction: (ddH + mu I) s = g.
        Eigen::VectorXd step;
        double mu = 1e-12 * std::max(1.0, ddH.trace());
        for (;;) {
            Eigen::LDLT<Eigen::MatrixXd> ldlt(ddH + mu * Eigen::MatrixXd::Identity(n, n));
            step = ldlt.solve(g);
            if (ldlt.info() == Eigen::Success && step.allFinite() && g.dot(step) > 0.0) break;
            mu = std::max(mu * 10.0, 1e-10);
            if (mu > 1e12) {
                step = g;  // plain gradient ascent fallback
                break;
            }
        }

        // Backtracking line search with domain rejection.
        double t = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 60; ++ls) {
            bool cand_ok = false;
            const Eigen::VectorXd zc = z + t * step;
            const double fc = objective(zc, &cand_ok);
            if (cand_ok && fc > f + 1e-4 * t * g.dot(step)) {
                z = zc;
                f = fc;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if (!moved) {
            // No ascent possible along the Newton direction: try the raw gradient.
            t = 1.0;
            for (int ls = 0; ls < 60 && !moved; ++ls) {
                bool cand_ok = false;
                const Eigen::VectorXd zc = z + t * g;
                const double fc = objective(zc, &cand_ok);
                if (cand_ok && fc > f) {
                    z = zc;
                    f = fc;
                    moved = true;
                }
                t *= 0.5;
            }
            if (!moved) {
                // Flat to float precision: accept if the first-order condition
                // holds to the documented 1e-6, otherwise report failure.
                if (g.cwiseAbs().maxCoeff() <= 1e-6) {
                    const Covector a = unpack(z);
                    return CostEval{f, a, CostStatus::finite};
                }
                throw numerical_error("cost_general: line search stalled with gradient norm " +
                                      std::to_string(g.cwiseAbs().maxCoeff()));
            }
        }

        if (z.cwiseAbs().maxCoeff() > opt.alpha_norm_limit) {
            // Effective-domain edge: classify by whether the objective still climbs.
            if (f - prev_f > opt.escape_gain) return infinite();
            return CostEval{f, std::nullopt, CostStatus::boundary};
        }
        prev_f = f;
    }
    throw numerical_error("cost_general: no convergence after max iterations");
}

CostEval cost_regular(int d, const Eigen::Vector3d& x, const Eigen::Vector3d& beta) {
    if (d < 2) throw std::invalid_argument("cost_regular: d must be >= 2");
    const double x2 = x[1], x3 = x[2];
    const double b1 = beta[0], b2 = beta[1], b3 = beta[2];
    constexpr double match_tol = 1e-9;
    constexpr double limit_tol = 1e-12;

    // Frozen chain: once the empties are exhausted nothing moves.
    if (x3 == 0.0 && b3 == 0.0) return CostEval{0.0, std::nullopt, CostStatus::boundary};

    if (std::abs(b1 - 1.0) > match_tol || std::abs(b2 + 2.0 * d) > match_tol) return infinite();
    if (x3 < 0.0 || x2 < d * x3 - 1e-12 || x2 <= 0.0)
        throw std::invalid_argument("cost_regular: x outside E (requires x2 >= d x3 > 0)");

    const double r = std::min(1.0, d * x3 / x2);  // fraction of unpaired half-edges on empties
    if (r <= 0.0) return infinite();  // x3 = 0 with a moving velocity: H == 0, sup escapes

    // Velocities outside [-(d+1), -1] are unreachable: the sup escapes.
    if (b3 > -1.0 + limit_tol || b3 < -(d + 1.0) - limit_tol) return infinite();

    if (std::abs(b3 + 1.0) <= limit_tol) {
        // alpha_3 -> +inf limit: only the explored vertex leaves the empties.
        if (r >= 1.0) return infinite();
        return CostEval{-d * std::log1p(-r), std::nullopt, CostStatus::boundary};
    }
    if (std::abs(b3 + d + 1.0) <= limit_tol) {
        // alpha_3 -> -inf limit: all d pairings hit distinct empties.
        return CostEval{-d * std::log(r), std::nullopt, CostStatus::boundary};
    }
    if (r >= 1.0) return infinite();  // at the boundary u = d e only b3 = -(d+1) is free

    // Interior stationary point: e^{-a*} = (1-r)(-(b3+1)) / (r (b3+1+d)).
    const double m = (1.0 - r) * (-(b3 + 1.0)) / (r * (b3 + 1.0 + d));
    const double a_star = -std::log(m);
    const double A = 1.0 + (m - 1.0) * r;
    const double value = (b3 + 1.0) * a_star - d * std::log(A);
    Covector maximizer = Covector::zero(d);
    maximizer.e[d] = a_star;
    return CostEval{value, maximizer, CostStatus::finite};
}

double cost_reduced(int d, double t, double x, double y) {
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("cost_reduced: t must lie in [0,1]");
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("cost_reduced: x must lie in [0,1]");
    const double u = d * (1.0 - 2.0 * t);
    if (x == 0.0 && y == 0.0) return 0.0;
    if (u < d * x) throw std::invalid_argument("cost_reduced: requires u(t) >= d x");
    return cost_regular(d, Eigen::Vector3d(t, u, x), Eigen::Vector3d(1.0, -2.0 * d, y)).value;
}

}  // namespace jam
