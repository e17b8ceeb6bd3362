#include "jam/deviations.hpp"

#include <cmath>
#include <limits>

namespace jam {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

RateCurve rate_curve_regular(int d, double alpha0_min, double alpha0_max, int points,
                             double step) {
    if (points < 2) throw std::invalid_argument("rate_curve_regular: need at least 2 points");
    if (!(alpha0_min < alpha0_max))
        throw std::invalid_argument("rate_curve_regular: empty alpha0 range");
    RateCurve curve;
    curve.alpha0_grid.resize(points);
    curve.f_values.assign(points, std::numeric_limits<double>::quiet_NaN());
    curve.t_values.assign(points, std::numeric_limits<double>::quiet_NaN());
    curve.notes.assign(points, "");
    for (int i = 0; i < points; ++i) {
        const double a = alpha0_min + (alpha0_max - alpha0_min) * i / (points - 1);
        curve.alpha0_grid[i] = a;
        try {
            const HamiltonSolution sol = hamilton_path_regular(d, a, step);
            curve.f_values[i] = sol.action;
            curve.t_values[i] = sol.t_alpha0;
        } catch (const std::exception& err) {
            curve.notes[i] = err.what();
        }
    }
    return curve;
}

double alpha0_for_time(int d, double t_target, const Alpha0SearchOptions& opt) {
    if (!(t_target > 0.0) || !(t_target < 1.0))
        throw std::invalid_argument("alpha0_for_time: target time must lie in (0, 1)");
    // Blow-up of the tilted flow (supercritical alpha0) sits above every
    // classical extinction time, so for the monotone bisection it acts as
    // T = +inf.
    auto time_of = [&](double a) -> double {
        try {
            return hamilton_time_regular(d, a, opt.step);
        } catch (const numerical_error&) {
            return inf;
        }
    };
    double lo = -opt.bound, hi = opt.bound;
    const double t_lo = time_of(lo);
    const double t_hi = time_of(hi);
    if (t_target < t_lo - opt.time_tol || t_target > t_hi + opt.time_tol)
        throw infeasible_error("alpha0_for_time: target " + std::to_string(t_target) +
                               " outside reachable range [" + std::to_string(t_lo) + ", " +
                               std::to_string(t_hi) + "] for alpha0 in [-" +
                               std::to_string(opt.bound) + ", " + std::to_string(opt.bound) + "]");
    // T_{alpha0} is strictly increasing in alpha0.
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double t_mid = time_of(mid);
        if (std::abs(t_mid - t_target) < opt.time_tol) return mid;
        (t_mid < t_target ? lo : hi) = mid;
        if (hi - lo < 1e-14) break;
    }
    throw infeasible_error(
        "alpha0_for_time: target " + std::to_string(t_target) +
        " is not attained by any classical tilted flow (it lies in the boundary "
        "blow-up regime); nearest reachable time " +
        std::to_string(time_of(lo)));
}

double deviation_rate(int d, double epsilon, Side side, const Alpha0SearchOptions& opt) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("deviation_rate: epsilon must be positive");
    const double t_star = jamming_constant(d);
    const double target = side == Side::upper ? t_star + epsilon : t_star - epsilon;
    if (side == Side::upper && !(target < 1.0))
        throw std::invalid_argument("deviation_rate: requires T* + eps < 1");
    if (side == Side::lower && !(target > 0.0))
        throw std::invalid_argument("deviation_rate: requires T* - eps > 0");
    const double a0 = alpha0_for_time(d, target, opt);
    return hamilton_path_regular(d, a0, opt.step).action;
}

SetOptimum optimize_over_set_general(const DegreeDistribution& dist,
                                     const std::function<bool(const Trajectory&)>& predicate,
                                     const std::vector<Covector>& alpha0_grid, double step) {
    SetOptimum best;
    best.value = inf;
    for (const Covector& a0 : alpha0_grid) {
        HamiltonSolution sol;
        try {
            sol = hamilton_path(dist, a0, step);
        } catch (const numerical_error&) {
            continue;  // blown-up flow: no finite-action trajectory at this grid point
        } catch (const domain_error&) {
            continue;
        }
        if (!predicate(sol.trajectory)) continue;
        if (sol.action < best.value) {
            best.value = sol.action;
            best.alpha0 = a0;
        }
    }
    return best;
}

}  // namespace jam
