#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jam {

using Vec = Eigen::VectorXd;

/// Domain error: an evaluation left the mathematical domain (e.g. the log
/// argument of the Hamiltonian became non-positive, or a state left E).
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A requested quantity does not exist (unreachable target, empty feasible set).
struct infeasible_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numerical procedure failed (no convergence, flow singularity).
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Vertex-degree law (p_0..p_D): the model input. Immutable after
/// construction; construction validates normalization and the degree cap.
struct DegreeDistribution {
    Vec probs;                 // p_0..p_D
    int max_degree = 0;        // D
    double mean_degree = 0.0;  // lambda = sum_j j p_j

    static constexpr int default_degree_cap = 64;
    static constexpr double normalization_tol = 1e-12;

    explicit DegreeDistribution(Vec p, int degree_cap = default_degree_cap);

    /// Point mass at degree d.
    static DegreeDistribution regular(int d, int degree_cap = default_degree_cap);
};

/// A concrete degree sequence for N vertices. Sequences whose half-edge
/// total is odd cannot be perfectly matched and are rejected outright.
struct DegreeSequence {
    std::vector<int> degrees;
    int max_degree = 0;  // D = max entry

    explicit DegreeSequence(std::vector<int> degs,
                            int degree_cap = DegreeDistribution::default_degree_cap);

    long long size() const { return static_cast<long long>(degrees.size()); }
    long long total_half_edges() const;

    /// Empirical frequencies, normalized.
    DegreeDistribution empirical() const;
};

/// All N vertices of degree d. Requires 2 <= d and an even half-edge total.
DegreeSequence make_regular(int d, long long n,
                            int degree_cap = DegreeDistribution::default_degree_cap);

/// Deterministic N-vertex realization of a distribution (largest-remainder
/// apportionment of counts). Throws if the resulting half-edge total is odd.
DegreeSequence realize_sequence(const DegreeDistribution& dist, long long n);

/// Point x = (s, u, e_0..e_D) of the compact state space
/// E = { s in [0,1], e_j in [0,1], sum_j j e_j <= u <= lambda }.
struct MacroState {
    double s = 0.0;
    double u = 0.0;
    Vec e;

    int max_degree() const { return static_cast<int>(e.size()) - 1; }
    double empty_mass() const { return e.sum(); }          // sum_j e_j
    double empty_half_edges() const;                       // sum_j j e_j
};

namespace detail {
template <class Tag>
struct SUE {
    double s = 0.0;
    double u = 0.0;
    Vec e;

    static SUE zero(int max_degree) { return {0.0, 0.0, Vec::Zero(max_degree + 1)}; }
    int max_degree() const { return static_cast<int>(e.size()) - 1; }
    double norm_inf() const {
        double m = std::max(std::abs(s), std::abs(u));
        if (e.size() > 0) m = std::max(m, e.cwiseAbs().maxCoeff());
        return m;
    }
};
}  // namespace detail

/// Adjoint/covector alpha = (alpha_s, alpha_u, alpha_0..alpha_D).
using Covector = detail::SUE<struct CovectorTag>;
/// Velocity beta = (beta_s, beta_u, beta_{e_0}..beta_{e_D}).
using Velocity = detail::SUE<struct VelocityTag>;

inline double dot(const Covector& a, const Velocity& b) {
    return a.s * b.s + a.u * b.u + a.e.dot(b.e);
}

/// x(0) = (0, lambda, p_0..p_D).
MacroState initial_macrostate(const DegreeDistribution& dist);

/// Membership in E up to `tol` (default 1e-9): finite coordinates,
/// s in [0,1], e_j in [0,1], sum_j j e_j <= u <= lambda.
bool validate_in_E(const MacroState& x, double lambda, double tol = 1e-9);

}  // namespace jam
