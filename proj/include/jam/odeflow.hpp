#pragma once

#include <vector>

#include "jam/model.hpp"

namespace jam {

/// Time-stamped path in E with per-degree extinction times. Coordinates are
/// frozen at 0 once their extinction event fires; past t_star the state is
/// the absorbed final state.
struct Trajectory {
    std::vector<double> times;
    std::vector<MacroState> states;
    std::vector<double> stop_times;  // t_i per degree; +inf if never reached
    double t_star = 0.0;             // global extinction time
    bool hit_horizon = false;        // reached t = 1 with empty mass left

    /// Linear interpolation; clamps to the endpoints (absorbed past t_star).
    MacroState at(double t) const;
};

/// Hamiltonian-flow trajectory plus adjoint path and accumulated action.
struct HamiltonSolution {
    Trajectory trajectory;
    std::vector<Covector> adjoint;  // aligned with trajectory.times
    Covector alpha0;
    double action = 0.0;    // F(alpha0) = integral of the running cost
    double t_alpha0 = 0.0;  // extinction time of the tilted flow
};

/// Default integrator step; fixed-step RK4 with event bisection.
inline constexpr double default_ode_step = 1e-4;
/// Empty mass below this level terminates the active dynamics.
inline constexpr double extinction_floor = 1e-10;

/// Integrates the zero-cost (fluid-limit) dynamics from (0, lambda, p).
Trajectory fluid_limit(const DegreeDistribution& dist, double step = default_ode_step);

/// Integrates dx = H_alpha(x, alpha), dalpha = -H_x(x, alpha) from
/// x(0) = (0, lambda, p), alpha(0) = alpha0, freezing each (e_i, alpha_i)
/// pair at the extinction of degree i, and accumulating the action
/// <alpha, dx> - H(x, alpha) along the flow.
HamiltonSolution hamilton_path(const DegreeDistribution& dist, const Covector& alpha0,
                               double step = default_ode_step);

/// Reduced two-dimensional tilted flow for the d-regular chain,
///   dx = -1 + d x / (e^y (2t - 1 + x) - x),
///   dy = d (1 - e^y) / (e^y (2t - 1 + x) - x),
/// from x(0) = 1, y(0) = alpha0. The reduced variables are exactly
/// (x, y) = (e, alpha_e); s = t and u = d(1 - 2t) are deterministic.
HamiltonSolution hamilton_path_regular(int d, double alpha0, double step = default_ode_step);

/// Extinction time of the reduced tilted flow only (no path storage).
double hamilton_time_regular(int d, double alpha0, double step = default_ode_step);

/// Closed-form fluid-limit empties curve e(t) for the d-regular chain
/// (0 past the jamming time).
double fluid_e_regular(int d, double t);

/// Jamming constant T*(d): (1 - e^{-2})/2 for d = 2,
/// [1 - (1/(d-1))^{2/(d-2)}] / 2 for d >= 3.
double jamming_constant(int d);

}  // namespace jam
