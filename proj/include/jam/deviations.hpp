#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "jam/model.hpp"
#include "jam/odeflow.hpp"

namespace jam {

enum class Side { upper, lower };

/// F(alpha0) and T_{alpha0} sampled over a scalar alpha0 grid (d-regular).
/// Grid points where the integration fails carry NaN entries and a note.
struct RateCurve {
    std::vector<double> alpha0_grid;
    std::vector<double> f_values;  // action F(alpha0)
    std::vector<double> t_values;  // extinction time T_{alpha0}
    std::vector<std::string> notes;  // empty string when the point is clean
};

RateCurve rate_curve_regular(int d, double alpha0_min, double alpha0_max, int points,
                             double step = default_ode_step);

struct Alpha0SearchOptions {
    double bound = 20.0;     // search interval [-bound, bound]
    double time_tol = 1e-8;  // |T_{alpha0} - target| tolerance
    double step = default_ode_step;
};

/// The unique alpha0 with T_{alpha0} = t_target (monotone bisection).
/// Throws infeasible_error when the target is unreachable within the bounds.
double alpha0_for_time(int d, double t_target, const Alpha0SearchOptions& opt = {});

/// Large-deviation rate F(alpha0(T* +/- eps)) for the independent-set size:
/// upper side bounds P(T_N*/N >= T* + eps), lower side P(T_N*/N <= T* - eps).
double deviation_rate(int d, double epsilon, Side side, const Alpha0SearchOptions& opt = {});

/// Grid relaxation of inf { F : trajectory of alpha0 satisfies the predicate }
/// over an arbitrary set of covector initial conditions (general degree law).
struct SetOptimum {
    std::optional<Covector> alpha0;  // empty when infeasible
    double value = 0.0;              // +inf when infeasible
};

SetOptimum optimize_over_set_general(const DegreeDistribution& dist,
                                     const std::function<bool(const Trajectory&)>& predicate,
                                     const std::vector<Covector>& alpha0_grid,
                                     double step = default_ode_step);

}  // namespace jam
