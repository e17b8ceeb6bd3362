#include "jam/hamiltonian.hpp"

#include <cmath>
#include <limits>

namespace jam {

namespace {

// Shared evaluation core. Terms with e_k = 0 are skipped exactly; the inner
// base A = 1 + sum_j (e^{-alpha_j} - 1) j e_j / u must stay positive.
struct Core {
    int D = 0;
    double sum_e = 0.0;
    double A = 1.0;
    double log_A = 0.0;
    double value = 0.0;   // H
    Vec P;                // softmax weight of each degree term (0 where e_k = 0)
    Vec g;                // per-degree exponent alpha_s - 2 k alpha_u - alpha_k + k log A
    double mean_k = 0.0;  // sum_k k P_k
    bool boundary = false;
    bool zero_u = false;  // u == 0 (then only the degree-0 term exists)
};

Core evaluate_core(const MacroState& x, const Covector& alpha) {
    Core c;
    c.D = x.max_degree();
    if (alpha.max_degree() != c.D)
        throw std::invalid_argument("hamiltonian: state and covector sizes differ");
    c.sum_e = x.empty_mass();
    if (c.sum_e < hamiltonian_boundary_tol) {
        c.boundary = true;
        c.P = Vec::Zero(c.D + 1);
        c.g = Vec::Zero(c.D + 1);
        return c;
    }
    const double jeh = x.empty_half_edges();
    if (x.u <= 0.0) {
        if (jeh > 0.0)
            throw std::invalid_argument("hamiltonian: u must be positive when e_j > 0 for some j >= 1");
        c.zero_u = true;
    } else {
        double a = 0.0;
        for (int j = 1; j <= c.D; ++j) {
            if (x.e[j] <= 0.0) continue;
            a += std::expm1(-alpha.e[j]) * j * x.e[j] / x.u;
        }
        c.A = 1.0 + a;
        if (!(c.A > 0.0))
            throw domain_error("hamiltonian: inner log argument is non-positive (A = " +
                               std::to_string(c.A) + ")");
        c.log_A = std::log1p(a);
    }

    c.g = Vec::Zero(c.D + 1);
    Vec terms = Vec::Constant(c.D + 1, -std::numeric_limits<double>::infinity());
    double tmax = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= c.D; ++k) {
        c.g[k] = alpha.s - 2.0 * k * alpha.u - alpha.e[k] + k * c.log_A;
        if (x.e[k] <= 0.0) continue;
        terms[k] = std::log(x.e[k] / c.sum_e) + c.g[k];
        tmax = std::max(tmax, terms[k]);
    }
    double acc = 0.0;
    for (int k = 0; k <= c.D; ++k)
        if (x.e[k] > 0.0) acc += std::exp(terms[k] - tmax);
    c.value = tmax + std::log(acc);

    c.P = Vec::Zero(c.D + 1);
    for (int k = 0; k <= c.D; ++k) {
        if (x.e[k] <= 0.0) continue;
        c.P[k] = std::exp(terms[k] - c.value);
        c.mean_k += k * c.P[k];
    }
    return c;
}

Velocity grad_alpha_from(const Core& c, const MacroState& x, const Covector& alpha) {
    Velocity b = Velocity::zero(c.D);
    if (c.boundary) return b;
    b.s = c.P.sum();  // identically 1
    b.u = -2.0 * c.mean_k;
    for (int i = 0; i <= c.D; ++i) {
        double t = -c.P[i];
        if (i >= 1 && x.e[i] > 0.0 && !c.zero_u)
            t -= (i * x.e[i] * std::exp(-alpha.e[i]) / (x.u * c.A)) * c.mean_k;
        b.e[i] = t;
    }
    return b;
}

Covector grad_x_from(const Core& c, const MacroState& x, const Covector& alpha) {
    Covector g = Covector::zero(c.D);
    if (c.boundary) return g;
    g.s = 0.0;
    g.u = c.zero_u ? 0.0 : -(c.A - 1.0) * c.mean_k / (x.u * c.A);
    for (int i = 0; i <= c.D; ++i) {
        // d/de_i of log(sum_k e^{g_k} e_k) - log(sum_k e_k), written as
        // (P_i / r_i - 1) / sum_e to avoid cancellation when one degree
        // dominates near extinction.
        double lead;
        if (x.e[i] > 0.0) {
            const double r = x.e[i] / c.sum_e;
            lead = (c.P[i] / r - 1.0) / c.sum_e;
        } else {
            lead = std::expm1(c.g[i] - c.value) / c.sum_e;
        }
        double tilt = 0.0;
        if (i >= 1 && !c.zero_u) tilt = c.mean_k * std::expm1(-alpha.e[i]) * i / (x.u * c.A);
        g.e[i] = lead + tilt;
    }
    return g;
}

}  // namespace

double hamiltonian(const MacroState& x, const Covector& alpha) {
    return evaluate_core(x, alpha).value;
}

Velocity grad_alpha(const MacroState& x, const Covector& alpha) {
    const Core c = evaluate_core(x, alpha);
    return grad_alpha_from(c, x, alpha);
}

Covector grad_x(const MacroState& x, const Covector& alpha) {
    const Core c = evaluate_core(x, alpha);
    return grad_x_from(c, x, alpha);
}

HamiltonianEval eval_hamiltonian(const MacroState& x, const Covector& alpha) {
    const Core c = evaluate_core(x, alpha);
    return HamiltonianEval{c.value, grad_alpha_from(c, x, alpha), grad_x_from(c, x, alpha)};
}

HamiltonianEval eval_hamiltonian_field(const MacroState& x, const Covector& alpha) {
    const int D = x.max_degree();
    if (alpha.max_degree() != D)
        throw std::invalid_argument("hamiltonian: state and covector sizes differ");
    HamiltonianEval ev;
    ev.grad_alpha = Velocity::zero(D);
    ev.grad_x = Covector::zero(D);

    double sum_e = x.e.sum();
    if (std::abs(sum_e) < 1e-290) return ev;  // exactly extinct: frozen field
    const double guard = sum_e;

    double A = 1.0;
    const bool has_edges = x.u > 0.0;
    if (has_edges) {
        double a = 0.0;
        for (int j = 1; j <= D; ++j)
            if (x.e[j] != 0.0) a += std::expm1(-alpha.e[j]) * j * x.e[j] / x.u;
        A = 1.0 + a;
        if (!(A > 0.0))
            throw domain_error("hamiltonian: inner log argument is non-positive (A = " +
                               std::to_string(A) + ")");
    }
    const double log_A = std::log(A);

    // H = log(sum_k r_k e^{g_k}) with signed ratios r_k = e_k / sum(e); the
    // ratios stay O(1) through extinction because numerator and denominator
    // shrink together.
    Vec g(D + 1), r(D + 1);
    double gmax = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= D; ++k) {
        r[k] = x.e[k] / guard;
        g[k] = alpha.s - 2.0 * k * alpha.u - alpha.e[k] + k * log_A;
        if (r[k] != 0.0) gmax = std::max(gmax, g[k]);
    }
    double acc = 0.0;
    for (int k = 0; k <= D; ++k)
        if (r[k] != 0.0) acc += r[k] * std::exp(g[k] - gmax);
    if (!(acc > 0.0))
        throw domain_error("hamiltonian field: non-positive tilted mass near the boundary");
    ev.value = gmax + std::log(acc);

    double mean_k = 0.0, sum_w = 0.0;
    Vec E(D + 1);
    for (int k = 0; k <= D; ++k) {
        E[k] = std::exp(g[k] - ev.value);
        sum_w += r[k] * E[k];
        mean_k += k * r[k] * E[k];
    }
    ev.grad_alpha.s = sum_w;  // identically 1
    ev.grad_alpha.u = -2.0 * mean_k;
    ev.grad_x.u = has_edges ? -(A - 1.0) * mean_k / (x.u * A) : 0.0;
    for (int i = 0; i <= D; ++i) {
        double tilt = 0.0, c_i = 0.0;
        if (i >= 1 && has_edges) {
            c_i = std::expm1(-alpha.e[i]);
            tilt = i * x.e[i] * std::exp(-alpha.e[i]) / (x.u * A);
        }
        ev.grad_alpha.e[i] = -r[i] * E[i] - tilt * mean_k;
        ev.grad_x.e[i] = (E[i] - 1.0) / guard + (has_edges ? mean_k * c_i * i / (x.u * A) : 0.0);
    }
    return ev;
}

double hamiltonian_regular(int d, double x1, double x2, double x3, double a1, double a2,
                           double a3) {
    (void)x1;
    if (d < 2) throw std::invalid_argument("hamiltonian_regular: d must be >= 2");
    if (x3 <= 0.0) return 0.0;
    if (x2 <= 0.0) throw std::invalid_argument("hamiltonian_regular: requires x2 > 0 when x3 > 0");
    const double a = std::expm1(-a3) * d * x3 / x2;
    if (!(1.0 + a > 0.0))
        throw domain_error("hamiltonian_regular: inner log argument is non-positive");
    return a1 - 2.0 * d * a2 - a3 + d * std::log1p(a);
}

}  // namespace jam
