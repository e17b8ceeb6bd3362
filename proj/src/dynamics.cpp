#include "jam/dynamics.hpp"

#include <cmath>
#include <numeric>

namespace jam {

ChainState ChainState::initial(const DegreeSequence& seq) {
    ChainState st;
    st.n_vertices = seq.size();
    st.empty_by_degree.assign(seq.max_degree + 1, 0);
    for (int d : seq.degrees) st.empty_by_degree[d]++;
    st.unpaired = seq.total_half_edges();
    return st;
}

long long ChainState::empty_count() const {
    return std::accumulate(empty_by_degree.begin(), empty_by_degree.end(), 0ll);
}

long long ChainState::empty_half_edges() const {
    long long t = 0;
    for (std::size_t j = 1; j < empty_by_degree.size(); ++j)
        t += static_cast<long long>(j) * empty_by_degree[j];
    return t;
}

MacroState ChainState::rescaled() const {
    const double n = static_cast<double>(n_vertices);
    MacroState x;
    x.s = static_cast<double>(in_set) / n;
    x.u = static_cast<double>(unpaired) / n;
    x.e = Vec(empty_by_degree.size());
    for (std::size_t j = 0; j < empty_by_degree.size(); ++j)
        x.e[static_cast<Eigen::Index>(j)] = static_cast<double>(empty_by_degree[j]) / n;
    return x;
}

RunResult run_to_absorption(const DegreeSequence& seq, Rng rng, long long thin) {
    if (thin < 0) throw std::invalid_argument("run_to_absorption: thin must be >= 0");
    RunResult result;
    result.seed = rng.key();
    result.n_vertices = seq.size();
    ChainState st = ChainState::initial(seq);
    const double n = static_cast<double>(seq.size());

    auto record = [&](const ChainState& s) {
        result.times.push_back(static_cast<double>(s.step) / n);
        result.path.push_back(s.rescaled());
    };
    record(st);
    while (st.empty_count() > 0) {
        auto [next, outcome] = step_exact(st, rng);
        st = std::move(next);
        if (thin > 0 && st.step % thin == 0 && st.empty_count() > 0) record(st);
    }
    record(st);
    result.t_star_steps = st.step;
    result.independent_set_fraction = static_cast<double>(st.step) / n;
    return result;
}

Velocity sample_increment(const MacroState& x, Rng& rng) {
    const int D = x.max_degree();
    const double sum_e = x.empty_mass();
    if (sum_e <= 0.0)
        throw std::logic_error("sample_increment: no empty mass");
    Velocity z = Velocity::zero(D);
    z.s = 1.0;

    // Degree of the explored vertex.
    double u01 = rng.uniform01() * sum_e;
    int k = D;
    for (int j = 0; j <= D; ++j) {
        if (u01 < x.e[j]) {
            k = j;
            break;
        }
        u01 -= x.e[j];
    }
    if (k == 0) {
        z.e[0] = -1.0;
        return z;
    }

    const double jeh = x.empty_half_edges();
    if (!(x.u > 0.0) || jeh > x.u)
        throw std::logic_error("sample_increment: requires sum_j j e_j <= u and u > 0");
    z.u = -2.0 * k;
    z.e[k] = -1.0;

    // Pairings landing on blocked vertices.
    const double p_blocked = 1.0 - jeh / x.u;
    int into_empties = 0;
    for (int i = 0; i < k; ++i)
        if (!rng.bernoulli(p_blocked)) ++into_empties;

    // Degrees of the empties hit (multinomial over q_i = i e_i / sum_j j e_j).
    for (int i = 0; i < into_empties; ++i) {
        double v = rng.uniform01() * jeh;
        int hit = D;
        for (int j = 1; j <= D; ++j) {
            const double wj = j * x.e[j];
            if (v < wj) {
                hit = j;
                break;
            }
            v -= wj;
        }
        z.e[hit] -= 1.0;
    }
    return z;
}

}  // namespace jam
