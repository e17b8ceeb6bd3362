#include "jam/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace jam {

DegreeDistribution::DegreeDistribution(Vec p, int degree_cap) : probs(std::move(p)) {
    if (probs.size() < 1) throw std::invalid_argument("DegreeDistribution: empty probability vector");
    max_degree = static_cast<int>(probs.size()) - 1;
    if (max_degree > degree_cap)
        throw std::invalid_argument("DegreeDistribution: max degree " + std::to_string(max_degree) +
                                    " exceeds cap " + std::to_string(degree_cap));
    double sum = 0.0;
    for (int j = 0; j <= max_degree; ++j) {
        if (!std::isfinite(probs[j]) || probs[j] < 0.0)
            throw std::invalid_argument("DegreeDistribution: probabilities must be finite and >= 0");
        sum += probs[j];
    }
    if (std::abs(sum - 1.0) > normalization_tol)
        throw std::invalid_argument("DegreeDistribution: probabilities sum to " + std::to_string(sum));
    mean_degree = 0.0;
    for (int j = 0; j <= max_degree; ++j) mean_degree += j * probs[j];
}

DegreeDistribution DegreeDistribution::regular(int d, int degree_cap) {
    if (d < 0) throw std::invalid_argument("DegreeDistribution::regular: d must be >= 0");
    Vec p = Vec::Zero(d + 1);
    p[d] = 1.0;
    return DegreeDistribution(std::move(p), degree_cap);
}

DegreeSequence::DegreeSequence(std::vector<int> degs, int degree_cap) : degrees(std::move(degs)) {
    if (degrees.empty()) throw std::invalid_argument("DegreeSequence: need at least one vertex");
    long long total = 0;
    for (int d : degrees) {
        if (d < 0 || d > degree_cap)
            throw std::invalid_argument("DegreeSequence: degree out of [0, cap] range");
        max_degree = std::max(max_degree, d);
        total += d;
    }
    if (total % 2 != 0)
        throw std::invalid_argument("DegreeSequence: odd half-edge total (" + std::to_string(total) +
                                    ") cannot be perfectly matched");
}

long long DegreeSequence::total_half_edges() const {
    return std::accumulate(degrees.begin(), degrees.end(), 0ll);
}

DegreeDistribution DegreeSequence::empirical() const {
    Vec p = Vec::Zero(max_degree + 1);
    for (int d : degrees) p[d] += 1.0;
    p /= static_cast<double>(degrees.size());
    return DegreeDistribution(std::move(p));
}

DegreeSequence make_regular(int d, long long n, int degree_cap) {
    if (d < 2) throw std::invalid_argument("make_regular: d must be >= 2");
    if (d > degree_cap) throw std::invalid_argument("make_regular: d exceeds degree cap");
    if (n < 1) throw std::invalid_argument("make_regular: n must be >= 1");
    return DegreeSequence(std::vector<int>(static_cast<std::size_t>(n), d), degree_cap);
}

DegreeSequence realize_sequence(const DegreeDistribution& dist, long long n) {
    if (n < 1) throw std::invalid_argument("realize_sequence: n must be >= 1");
    const int D = dist.max_degree;
    std::vector<long long> counts(D + 1, 0);
    std::vector<std::pair<double, int>> remainders;
    long long assigned = 0;
    for (int j = 0; j <= D; ++j) {
        double exact = dist.probs[j] * static_cast<double>(n);
        counts[j] = static_cast<long long>(std::floor(exact));
        assigned += counts[j];
        remainders.emplace_back(exact - std::floor(exact), j);
    }
    std::sort(remainders.begin(), remainders.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; assigned < n; ++i, ++assigned) counts[remainders[i % remainders.size()].second]++;

    std::vector<int> degs;
    degs.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j <= D; ++j)
        for (long long c = 0; c < counts[j]; ++c) degs.push_back(j);
    return DegreeSequence(std::move(degs));
}

double MacroState::empty_half_edges() const {
    double t = 0.0;
    for (int j = 1; j < e.size(); ++j) t += j * e[j];
    return t;
}

MacroState initial_macrostate(const DegreeDistribution& dist) {
    return MacroState{0.0, dist.mean_degree, dist.probs};
}

bool validate_in_E(const MacroState& x, double lambda, double tol) {
    if (!std::isfinite(x.s) || !std::isfinite(x.u)) return false;
    if (x.s < -tol || x.s > 1.0 + tol) return false;
    for (int j = 0; j < x.e.size(); ++j) {
        if (!std::isfinite(x.e[j])) return false;
        if (x.e[j] < -tol || x.e[j] > 1.0 + tol) return false;
    }
    if (x.empty_half_edges() > x.u + tol) return false;
    if (x.u > lambda + tol) return false;
    return true;
}

}  // namespace jam
