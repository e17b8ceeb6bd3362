#pragma once

#include "jam/model.hpp"

namespace jam {

/// Value and both analytic gradients of the limiting Hamiltonian
/// H(x, alpha) = log E[exp(<alpha, Z^x>)], the log-MGF of the one-step
/// increment law at macroscopic state x. H == 0 when the empty mass is zero.
struct HamiltonianEval {
    double value = 0.0;
    Velocity grad_alpha;  // d/d(alpha_s, alpha_u, alpha_0..alpha_D)
    Covector grad_x;      // d/d(s, u, e_0..e_D); the s-component is always 0
};

/// Empty mass below this threshold is treated as the boundary case H = 0.
inline constexpr double hamiltonian_boundary_tol = 1e-14;

double hamiltonian(const MacroState& x, const Covector& alpha);
Velocity grad_alpha(const MacroState& x, const Covector& alpha);
Covector grad_x(const MacroState& x, const Covector& alpha);

/// Single pass computing value and both gradients.
HamiltonianEval eval_hamiltonian(const MacroState& x, const Covector& alpha);

/// Flow-field variant used by the ODE integrators: identical to
/// eval_hamiltonian on the interior, but written in ratio form e_k / sum(e)
/// so that one-step trial integrations cross the extinction boundary
/// transversally (components may be slightly negative) instead of
/// flattening against it, which would hide the stopping-time events.
HamiltonianEval eval_hamiltonian_field(const MacroState& x, const Covector& alpha);

/// Closed form for the d-regular chain on (x1, x2, x3) = (s, u, e):
/// a1 - 2 d a2 - a3 + d log[1 + (e^{-a3} - 1) d x3 / x2] for x3 > 0, else 0.
double hamiltonian_regular(int d, double x1, double x2, double x3, double a1, double a2,
                           double a3);

}  // namespace jam
