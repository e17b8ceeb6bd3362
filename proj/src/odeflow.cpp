#include "jam/odeflow.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "jam/hamiltonian.hpp"

namespace jam {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

using Frozen = std::vector<char>;
using Rhs = std::function<Vec(double, const Vec&, const Frozen&)>;

Vec rk4_step(const Rhs& f, double t, const Vec& y, double h, const Frozen& frozen) {
    const Vec k1 = f(t, y, frozen);
    const Vec k2 = f(t + 0.5 * h, y + 0.5 * h * k1, frozen);
    const Vec k3 = f(t + 0.5 * h, y + 0.5 * h * k2, frozen);
    const Vec k4 = f(t + h, y + h * k3, frozen);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct FlowResult {
    std::vector<double> times;
    std::vector<Vec> points;
    std::vector<double> stop_times;
    double t_star = 0.0;
    bool hit_horizon = false;
};

// Fixed-step RK4 over [0, 1] with two event kinds on the e-block
// (y[e_offset + i], i = 0..D): a per-degree zero crossing freezes that
// coordinate, and total active mass crossing the extinction floor ends the
// flow. Events are bracketed inside the offending step and refined by
// bisection on the one-step integrator to a 1e-10 time window.
FlowResult integrate_with_events(const Rhs& f, Vec y0, int max_degree, int e_offset, double h,
                                 bool store, const std::function<void(double, const Vec&)>& check) {
    const int D = max_degree;
    FlowResult res;
    res.stop_times.assign(D + 1, inf);
    Frozen frozen(D + 1, 0);
    double t = 0.0;
    Vec y = std::move(y0);
    for (int i = 0; i <= D; ++i) {
        if (y[e_offset + i] <= 0.0) {
            y[e_offset + i] = 0.0;
            frozen[i] = 1;
            res.stop_times[i] = 0.0;
        }
    }

    auto active_mass = [&](const Vec& v) {
        double m = 0.0;
        for (int i = 0; i <= D; ++i)
            if (!frozen[i]) m += std::max(0.0, v[e_offset + i]);
        return m;
    };
    auto active_count = [&] {
        int c = 0;
        for (int i = 0; i <= D; ++i) c += !frozen[i];
        return c;
    };
    auto record = [&] {
        if (store || res.times.empty()) {
            res.times.push_back(t);
            res.points.push_back(y);
        } else {
            res.times.back() = t;
            res.points.back() = y;
        }
        if (check) check(t, y);
    };
    auto finish = [&] {
        for (int i = 0; i <= D; ++i) {
            if (!frozen[i]) {
                frozen[i] = 1;
                res.stop_times[i] = t;
                y[e_offset + i] = 0.0;
            }
        }
        res.t_star = t;
        record();
    };

    record();
    if (active_count() == 0) {
        res.t_star = 0.0;
        return res;
    }

    constexpr double event_window = 1e-10;
    while (t < 1.0 - 1e-15) {
        const double hstep = std::min(h, 1.0 - t);
        Vec y1 = rk4_step(f, t, y, hstep, frozen);

        // Earliest event inside (t, t + hstep], if any.
        double tau_floor = inf;
        if (active_mass(y1) < extinction_floor) {
            double lo = 0.0, hi = hstep;
            while (hi - lo > event_window) {
                const double mid = 0.5 * (lo + hi);
                (active_mass(rk4_step(f, t, y, mid, frozen)) < extinction_floor ? hi : lo) = mid;
            }
            tau_floor = hi;
        }
        double tau_deg = inf;
        int deg = -1;
        for (int i = 0; i <= D; ++i) {
            if (frozen[i] || y1[e_offset + i] > 0.0) continue;
            double lo = 0.0, hi = hstep;
            while (hi - lo > event_window) {
                const double mid = 0.5 * (lo + hi);
                (rk4_step(f, t, y, mid, frozen)[e_offset + i] <= 0.0 ? hi : lo) = mid;
            }
            if (hi < tau_deg) {
                tau_deg = hi;
                deg = i;
            }
        }

        if (tau_floor == inf && deg < 0) {
            t += hstep;
            y = std::move(y1);
            record();
            continue;
        }
        if (tau_floor <= tau_deg) {
            y = rk4_step(f, t, y, tau_floor, frozen);
            t += tau_floor;
            finish();
            return res;
        }
        y = rk4_step(f, t, y, tau_deg, frozen);
        t += tau_deg;
        y[e_offset + deg] = 0.0;
        frozen[deg] = 1;
        res.stop_times[deg] = t;
        record();
        if (active_count() == 0 || active_mass(y) < extinction_floor) {
            finish();
            return res;
        }
    }
    t = 1.0;
    res.hit_horizon = true;
    finish();
    return res;
}

}  // namespace

MacroState Trajectory::at(double t) const {
    if (times.empty()) throw std::logic_error("Trajectory::at: empty trajectory");
    if (t <= times.front()) return states.front();
    if (t >= times.back()) return states.back();
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    const std::size_t hi = static_cast<std::size_t>(it - times.begin());
    const std::size_t lo = hi - 1;
    const double span = times[hi] - times[lo];
    const double w = span > 0.0 ? (t - times[lo]) / span : 0.0;
    MacroState x;
    x.s = (1.0 - w) * states[lo].s + w * states[hi].s;
    x.u = (1.0 - w) * states[lo].u + w * states[hi].u;
    x.e = (1.0 - w) * states[lo].e + w * states[hi].e;
    return x;
}

Trajectory fluid_limit(const DegreeDistribution& dist, double step) {
    if (!(step > 0.0) || step > 0.01)
        throw std::invalid_argument("fluid_limit: step must lie in (0, 0.01]");
    const int D = dist.max_degree;

    // Written in ratio form so the field stays honest when a trial step
    // probes slightly past an extinction crossing (see eval_hamiltonian_field).
    Rhs rhs = [D](double, const Vec& y, const Frozen& frozen) {
        Vec dy = Vec::Zero(y.size());
        double sum_e = 0.0;
        for (int i = 0; i <= D; ++i)
            if (!frozen[i]) sum_e += y[2 + i];
        if (std::abs(sum_e) < 1e-290) return dy;
        const double u = y[1];
        double mean_k = 0.0;
        for (int i = 1; i <= D; ++i)
            if (!frozen[i]) mean_k += i * y[2 + i] / sum_e;
        dy[0] = 1.0;
        dy[1] = -2.0 * mean_k;
        for (int i = 0; i <= D; ++i) {
            if (frozen[i]) continue;
            double v = -y[2 + i] / sum_e;
            if (i >= 1 && mean_k != 0.0) v -= (i * y[2 + i] / u) * mean_k;
            dy[2 + i] = v;
        }
        return dy;
    };

    Vec y0(2 + D + 1);
    y0[0] = 0.0;
    y0[1] = dist.mean_degree;
    y0.segment(2, D + 1) = dist.probs;
    FlowResult fr = integrate_with_events(rhs, std::move(y0), D, 2, step, /*store=*/true, {});

    Trajectory traj;
    traj.times = std::move(fr.times);
    traj.stop_times = std::move(fr.stop_times);
    traj.t_star = fr.t_star;
    traj.hit_horizon = fr.hit_horizon;
    traj.states.reserve(fr.points.size());
    for (const Vec& y : fr.points)
        traj.states.push_back(MacroState{y[0], y[1], y.segment(2, D + 1)});
    return traj;
}

HamiltonSolution hamilton_path(const DegreeDistribution& dist, const Covector& alpha0,
                               double step) {
    if (!(step > 0.0) || step > 0.01)
        throw std::invalid_argument("hamilton_path: step must lie in (0, 0.01]");
    const int D = dist.max_degree;
    if (alpha0.max_degree() != D)
        throw std::invalid_argument("hamilton_path: alpha0 size does not match distribution");
    const int na = D + 3;  // covector block size

    Rhs rhs = [D, na](double, const Vec& y, const Frozen& frozen) {
        MacroState x;
        x.s = y[0];
        x.u = y[1];
        x.e = y.segment(2, D + 1);
        for (int i = 0; i <= D; ++i)
            if (frozen[i]) x.e[i] = 0.0;
        Covector a;
        a.s = y[na + 0];
        a.u = y[na + 1];
        a.e = y.segment(na + 2, D + 1);

        const HamiltonianEval ev = eval_hamiltonian_field(x, a);
        Vec dy = Vec::Zero(y.size());
        dy[0] = ev.grad_alpha.s;
        dy[1] = ev.grad_alpha.u;
        dy[na + 0] = -ev.grad_x.s;
        dy[na + 1] = -ev.grad_x.u;
        double action_rate = a.s * ev.grad_alpha.s + a.u * ev.grad_alpha.u - ev.value;
        for (int i = 0; i <= D; ++i) {
            if (frozen[i]) continue;
            dy[2 + i] = ev.grad_alpha.e[i];
            dy[na + 2 + i] = -ev.grad_x.e[i];
            action_rate += a.e[i] * ev.grad_alpha.e[i];
        }
        dy[2 * na] = action_rate;
        return dy;
    };

    Vec y0 = Vec::Zero(2 * na + 1);
    y0[1] = dist.mean_degree;
    y0.segment(2, D + 1) = dist.probs;
    y0[na + 0] = alpha0.s;
    y0[na + 1] = alpha0.u;
    y0.segment(na + 2, D + 1) = alpha0.e;

    const double lambda = dist.mean_degree;
    auto check = [D, lambda](double t, const Vec& y) {
        MacroState x{y[0], y[1], y.segment(2, D + 1)};
        if (!validate_in_E(x, lambda, 1e-6))
            throw numerical_error("hamilton_path: flow left the state space E at t = " +
                                  std::to_string(t));
    };
    FlowResult fr = integrate_with_events(rhs, std::move(y0), D, 2, step, /*store=*/true, check);

    HamiltonSolution sol;
    sol.alpha0 = alpha0;
    sol.trajectory.times = std::move(fr.times);
    sol.trajectory.stop_times = std::move(fr.stop_times);
    sol.trajectory.t_star = fr.t_star;
    sol.trajectory.hit_horizon = fr.hit_horizon;
    sol.t_alpha0 = fr.t_star;
    for (const Vec& y : fr.points) {
        sol.trajectory.states.push_back(MacroState{y[0], y[1], y.segment(2, D + 1)});
        sol.adjoint.push_back(Covector{y[na + 0], y[na + 1], y.segment(na + 2, D + 1)});
    }
    sol.action = fr.points.back()[2 * na];
    return sol;
}

namespace {

struct Reduced {
    double x, y, act;
};

Reduced reduced_rhs(int d, double t, const Reduced& z) {
    const double ey = std::exp(z.y);
    double denom = ey * (2.0 * t - 1.0 + z.x) - z.x;
    // On E the denominator is <= -x < 0; trial steps probing past the
    // extinction crossing may cross its pole, so floor the magnitude
    // (sign-preserving) and let the event bisection resolve the crossing.
    // Genuine singularities (supercritical tilts) are caught by the driver.
    if (std::abs(denom) < 1e-12) denom = denom < 0.0 ? -1e-12 : 1e-12;
    const double dx = -1.0 + d * z.x / denom;
    const double dy = d * (1.0 - ey) / denom;
    // Running cost along the flow: <alpha, dx> - H in reduced coordinates.
    const double base = std::max(1.0 + std::expm1(-z.y) * z.x / (1.0 - 2.0 * t), 1e-300);
    const double dact = z.y * (dx + 1.0) - d * std::log(base);
    return {dx, dy, dact};
}

Reduced reduced_rk4(int d, double t, const Reduced& z, double h) {
    const Reduced k1 = reduced_rhs(d, t, z);
    auto adv = [&](const Reduced& k, double f) {
        return Reduced{z.x + f * h * k.x, z.y + f * h * k.y, z.act + f * h * k.act};
    };
    const Reduced k2 = reduced_rhs(d, t + 0.5 * h, adv(k1, 0.5));
    const Reduced k3 = reduced_rhs(d, t + 0.5 * h, adv(k2, 0.5));
    const Reduced k4 = reduced_rhs(d, t + h, adv(k3, 1.0));
    return Reduced{z.x + (h / 6.0) * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
                   z.y + (h / 6.0) * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
                   z.act + (h / 6.0) * (k1.act + 2.0 * k2.act + 2.0 * k3.act + k4.act)};
}

struct ReducedRun {
    std::vector<double> times;
    std::vector<Reduced> points;
    double t_end = 0.0;
    bool hit_horizon = false;
};

ReducedRun integrate_regular(int d, double alpha0, double step, bool store) {
    if (d < 2) throw std::invalid_argument("hamilton_path_regular: d must be >= 2");
    if (!(step > 0.0) || step > 0.01)
        throw std::invalid_argument("hamilton_path_regular: step must lie in (0, 0.01]");
    ReducedRun run;
    double t = 0.0;
    Reduced z{1.0, alpha0, 0.0};
    auto record = [&] {
        if (store || run.times.empty()) {
            run.times.push_back(t);
            run.points.push_back(z);
        } else {
            run.times.back() = t;
            run.points.back() = z;
        }
    };
    record();
    // For large positive alpha0 the adjoint rate at t = 0 is d(e^{y} - 1):
    // the flow has an initial layer of width ~ e^{-alpha0}. Resolve it with
    // geometrically growing sub-steps; for alpha0 <= 1 this reduces to the
    // plain fixed step.
    const double layer_step =
        alpha0 > 1.0 ? std::min(step, std::exp(-alpha0) / (8.0 * d)) : step;
    constexpr double event_window = 1e-10;
    // Past y ~ 40 the flow is in the boundary blow-up regime (the gap to the
    // constraint u = d e shrinks like e^{-y}, below double resolution): the
    // tilted flow does not reach extinction for this alpha0.
    constexpr double adjoint_cap = 40.0;
    while (t < 1.0 - 1e-15) {
        const double h = std::min({step, 1.0 - t, std::max(layer_step, t / 8.0)});
        Reduced z1 = reduced_rk4(d, t, z, h);
        const bool left_E = z1.x > 0.0 && z1.x - (1.0 - 2.0 * (t + h)) > 1e-9;
        if (!std::isfinite(z1.x) || !std::isfinite(z1.y) || z1.y > adjoint_cap || left_E)
            throw numerical_error(
                "hamilton_path_regular: tilted flow hit the boundary u = d e at t = " +
                std::to_string(t) + " (alpha0 = " + std::to_string(alpha0) +
                " exceeds the critical tilt; no classical extinction time exists)");
        if (z1.x > 0.0) {
            t += h;
            z = z1;
            record();
            continue;
        }
        double lo = 0.0, hi = h;
        while (hi - lo > event_window) {
            const double mid = 0.5 * (lo + hi);
            (reduced_rk4(d, t, z, mid).x <= 0.0 ? hi : lo) = mid;
        }
        z = reduced_rk4(d, t, z, hi);
        t += hi;
        z.x = 0.0;
        record();
        run.t_end = t;
        return run;
    }
    run.t_end = 1.0;
    run.hit_horizon = true;
    record();
    return run;
}

}  // namespace

HamiltonSolution hamilton_path_regular(int d, double alpha0, double step) {
    ReducedRun run = integrate_regular(d, alpha0, step, /*store=*/true);
    HamiltonSolution sol;
    sol.alpha0 = Covector::zero(d);
    sol.alpha0.e[d] = alpha0;
    sol.t_alpha0 = run.t_end;
    sol.action = run.points.back().act;
    sol.trajectory.t_star = run.t_end;
    sol.trajectory.hit_horizon = run.hit_horizon;
    sol.trajectory.stop_times.assign(d + 1, 0.0);
    sol.trajectory.stop_times[d] = run.t_end;
    for (std::size_t i = 0; i < run.times.size(); ++i) {
        const double t = run.times[i];
        MacroState x;
        x.s = t;
        x.u = d * (1.0 - 2.0 * t);
        x.e = Vec::Zero(d + 1);
        x.e[d] = run.points[i].x;
        sol.trajectory.times.push_back(t);
        sol.trajectory.states.push_back(std::move(x));
        Covector a = Covector::zero(d);
        a.e[d] = run.points[i].y;
        sol.adjoint.push_back(std::move(a));
    }
    return sol;
}

double hamilton_time_regular(int d, double alpha0, double step) {
    return integrate_regular(d, alpha0, step, /*store=*/false).t_end;
}

double fluid_e_regular(int d, double t) {
    if (d < 2) throw std::invalid_argument("fluid_e_regular: d must be >= 2");
    if (t >= jamming_constant(d)) return 0.0;
    const double w = 1.0 - 2.0 * t;
    if (d == 2) return w * (0.5 * std::log(w) + 1.0);
    return (2.0 * t - 1.0 + (d - 1) * std::pow(w, 0.5 * d)) / (d - 2);
}

double jamming_constant(int d) {
    if (d < 2) throw std::invalid_argument("jamming_constant: d must be >= 2");
    if (d == 2) return 0.5 * (1.0 - std::exp(-2.0));
    return 0.5 * (1.0 - std::pow(1.0 / (d - 1), 2.0 / (d - 2)));
}

}  // namespace jam
