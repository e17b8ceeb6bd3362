#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "jam/model.hpp"
#include "jam/rng.hpp"

namespace jam {

/// Exact microscopic state of the exploration chain. The half-edge urn is
/// fully described by aggregate counts: every empty vertex of degree j still
/// holds all j of its half-edges (a vertex with any paired half-edge is no
/// longer empty), and pairings into blocked vertices depend only on the
/// blocked half-edge total, never on which blocked vertex owns them.
struct ChainState {
    long long step = 0;
    long long in_set = 0;    // S_n: vertices placed in the independent set
    long long unpaired = 0;  // U_n: unpaired half-edges (empty + blocked owners)
    std::vector<long long> empty_by_degree;  // E_n(j), size D+1
    long long n_vertices = 0;

    static ChainState initial(const DegreeSequence& seq);

    int degree_bound() const { return static_cast<int>(empty_by_degree.size()) - 1; }
    long long empty_count() const;
    long long empty_half_edges() const;  // sum_j j E_n(j)
    long long blocked_unpaired() const { return unpaired - empty_half_edges(); }
    long long blocked_count() const { return n_vertices - in_set - empty_count(); }

    /// Rescaled point X_n / N.
    MacroState rescaled() const;
};

/// Realized transition of a single step.
struct StepOutcome {
    int chosen_degree = 0;                      // k
    int non_loop_pairings = 0;                  // H: pairings of v not forming loops
    int blocked_pairings = 0;                   // B: pairings into blocked vertices
    std::vector<int> pairings_by_degree;        // W_j: pairings into empties of degree j
    std::vector<int> newly_blocked_by_degree;   // W~_j: distinct empties of degree j hit
};

// A choice source is a callable `std::size_t f(std::span<const long long> w)`
// returning index i with probability w[i]/sum(w). Production draws from an
// Rng; the kernel enumerator instead forks on every outcome, which gives the
// exact transition law of either step function with rational weights.

namespace detail {

template <class ChoiceFn>
std::pair<ChainState, StepOutcome> step_exact_impl(const ChainState& st, ChoiceFn&& choose) {
    if (st.empty_count() == 0)
        throw std::logic_error("step_exact: no empty vertices left");
    const int D = st.degree_bound();
    ChainState next = st;
    next.step++;
    StepOutcome out;
    out.pairings_by_degree.assign(D + 1, 0);
    out.newly_blocked_by_degree.assign(D + 1, 0);

    // Select the explored vertex v uniformly among empties (class weights).
    const int k = static_cast<int>(choose(std::span<const long long>(st.empty_by_degree)));
    out.chosen_degree = k;
    next.in_set++;
    next.empty_by_degree[k]--;
    if (k == 0) return {next, out};

    // Pair v's half-edges one at a time, uniformly over all unpaired
    // half-edges. Weight layout per draw:
    //   [0]       v's own remaining half-edges (loop),
    //   [1]       blocked-vertex half-edges,
    //   [2+j]     untouched empty vertices of degree j (j = 0..D),
    //   [2+D+1+i] i-th empty vertex already hit during this step.
    long long own = k;
    long long blocked_pool = st.blocked_unpaired();
    std::vector<long long> fresh = next.empty_by_degree;  // v already removed
    std::vector<std::pair<int, long long>> wounded;       // (degree, remaining slots)
    std::vector<long long> w;
    int non_loops = 0;
    while (own > 0) {
        w.assign(2 + (D + 1) + wounded.size(), 0);
        w[0] = own - 1;
        w[1] = blocked_pool;
        for (int j = 1; j <= D; ++j) w[2 + j] = static_cast<long long>(j) * fresh[j];
        for (std::size_t i = 0; i < wounded.size(); ++i) w[2 + D + 1 + i] = wounded[i].second;
        const std::size_t c = choose(std::span<const long long>(w));
        if (c == 0) {  // loop: consumes two of v's half-edges
            own -= 2;
            continue;
        }
        own -= 1;
        non_loops += 1;
        if (c == 1) {
            blocked_pool -= 1;
            out.blocked_pairings += 1;
        } else if (c < static_cast<std::size_t>(2 + D + 1)) {
            const int j = static_cast<int>(c) - 2;
            fresh[j]--;
            wounded.emplace_back(j, j - 1);
            out.pairings_by_degree[j] += 1;
            out.newly_blocked_by_degree[j] += 1;
        } else {
            auto& hit = wounded[c - (2 + D + 1)];
            hit.second -= 1;
            out.pairings_by_degree[hit.first] += 1;
        }
    }
    out.non_loop_pairings = non_loops;
    next.unpaired = st.unpaired - k - non_loops;
    for (int j = 1; j <= D; ++j) next.empty_by_degree[j] -= out.newly_blocked_by_degree[j];
    return {next, out};
}

template <class ChoiceFn>
std::pair<ChainState, StepOutcome> step_cascade_impl(const ChainState& st, ChoiceFn&& choose) {
    if (st.empty_count() == 0)
        throw std::logic_error("step_cascade: no empty vertices left");
    const int D = st.degree_bound();
    ChainState next = st;
    next.step++;
    StepOutcome out;
    out.pairings_by_degree.assign(D + 1, 0);
    out.newly_blocked_by_degree.assign(D + 1, 0);

    const int k = static_cast<int>(choose(std::span<const long long>(st.empty_by_degree)));
    out.chosen_degree = k;
    next.in_set++;
    next.empty_by_degree[k]--;
    if (k == 0) return {next, out};

    // 1. Number of non-loop pairings: sequentially match v's half-edges
    //    against own-vs-foreign; a loop consumes two of v's half-edges.
    long long own = k;
    long long foreign = st.unpaired - k;
    int non_loops = 0;
    {
        long long w2[2];
        while (own > 0) {
            w2[0] = own - 1;
            w2[1] = foreign;
            if (choose(std::span<const long long>(w2, 2)) == 0) {
                own -= 2;
            } else {
                own -= 1;
                foreign -= 1;
                non_loops += 1;
            }
        }
    }
    out.non_loop_pairings = non_loops;

    // 2. Blocked vs empty split of the foreign partners (hypergeometric).
    long long blocked_left = st.blocked_unpaired();
    long long empty_left = st.empty_half_edges() - k;
    {
        long long w2[2];
        for (int i = 0; i < non_loops; ++i) {
            w2[0] = blocked_left;
            w2[1] = empty_left;
            if (choose(std::span<const long long>(w2, 2)) == 0) {
                blocked_left -= 1;
                out.blocked_pairings += 1;
            } else {
                empty_left -= 1;
            }
        }
    }

    // 3. Degrees of the empty vertices receiving pairings (multivariate
    //    hypergeometric over half-edge classes, v's own class reduced by one
    //    vertex).
    std::vector<long long> pool(D + 1, 0);
    for (int j = 1; j <= D; ++j)
        pool[j] = static_cast<long long>(j) * (st.empty_by_degree[j] - (j == k ? 1 : 0));
    const int into_empties = non_loops - out.blocked_pairings;
    for (int i = 0; i < into_empties; ++i) {
        const int j = static_cast<int>(choose(std::span<const long long>(pool)));
        pool[j] -= 1;
        out.pairings_by_degree[j] += 1;
    }

    // 4. Distinct vertices hit per class: distribute the W_j pairings over
    //    the class's vertices (j slots each) uniformly without replacement.
    for (int j = 1; j <= D; ++j) {
        const int wj = out.pairings_by_degree[j];
        if (wj == 0) continue;
        const long long verts = st.empty_by_degree[j] - (j == k ? 1 : 0);
        std::vector<long long> slots;  // remaining slots of already-hit vertices
        std::vector<long long> wv;
        for (int t = 0; t < wj; ++t) {
            wv.assign(1 + slots.size(), 0);
            wv[0] = (verts - static_cast<long long>(slots.size())) * j;
            for (std::size_t i = 0; i < slots.size(); ++i) wv[1 + i] = slots[i];
            const std::size_t c = choose(std::span<const long long>(wv));
            if (c == 0) {
                slots.push_back(j - 1);
                out.newly_blocked_by_degree[j] += 1;
            } else {
                slots[c - 1] -= 1;
            }
        }
    }

    next.unpaired = st.unpaired - k - non_loops;
    for (int j = 1; j <= D; ++j) next.empty_by_degree[j] -= out.newly_blocked_by_degree[j];
    return {next, out};
}

struct RngChoice {
    Rng* rng;
    std::size_t operator()(std::span<const long long> w) { return choose_weighted(*rng, w); }
};

}  // namespace detail

/// One step by literal half-edge pairing through the urn.
template <class ChoiceFn>
std::pair<ChainState, StepOutcome> step_exact(const ChainState& st, ChoiceFn&& choose) {
    return detail::step_exact_impl(st, std::forward<ChoiceFn>(choose));
}
inline std::pair<ChainState, StepOutcome> step_exact(const ChainState& st, Rng& rng) {
    return detail::step_exact_impl(st, detail::RngChoice{&rng});
}

/// One step through the distributional cascade: degree of v, non-loop count,
/// blocked/empty hypergeometric split, multivariate-hypergeometric class
/// assignment, then distinct-vertex resolution. Same transition law as
/// step_exact.
template <class ChoiceFn>
std::pair<ChainState, StepOutcome> step_cascade(const ChainState& st, ChoiceFn&& choose) {
    return detail::step_cascade_impl(st, std::forward<ChoiceFn>(choose));
}
inline std::pair<ChainState, StepOutcome> step_cascade(const ChainState& st, Rng& rng) {
    return detail::step_cascade_impl(st, detail::RngChoice{&rng});
}

/// Full exploration of one random multigraph.
struct RunResult {
    std::vector<double> times;     // n / N at recorded snapshots
    std::vector<MacroState> path;  // rescaled snapshots X_{[Nt]} / N
    long long t_star_steps = 0;    // T_N*: first step with no empty vertices
    double independent_set_fraction = 0.0;  // T_N* / N
    std::uint64_t seed = 0;
    long long n_vertices = 0;
};

/// Runs step_exact until no empty vertices remain. `thin` >= 1 records every
/// thin-th snapshot (plus first and last); `thin` == 0 records endpoints only.
/// Leftover blocked half-edges stay unpaired: completing the matching would
/// change neither the path nor T_N*.
RunResult run_to_absorption(const DegreeSequence& seq, Rng rng, long long thin = 1);

/// Samples the limiting one-step increment Z^x at macroscopic state x.
Velocity sample_increment(const MacroState& x, Rng& rng);

/// Depth-first enumeration of every outcome of a randomized computation
/// expressed against the choice-source interface. `fn` receives a choice
/// source; `visit(result, probability)` is called once per leaf with the
/// exact probability as a (num, den) pair of long doubles kept in exact
/// integer arithmetic by the caller via the weight products.
///
/// The probability is reported as the ordered list of (chosen weight, total
/// weight) factors so callers can fold it into any exact rational type.
struct ChoiceTrace {
    std::vector<std::pair<long long, long long>> factors;  // (w_chosen, w_total)
};

template <class Fn, class Visit>
void enumerate_choices(Fn&& fn, Visit&& visit) {
    std::vector<std::size_t> path;   // branch indices taken at each fork
    for (;;) {
        std::vector<std::vector<long long>> forks;  // weights seen at each fork
        ChoiceTrace trace;
        std::size_t pos = 0;
        auto scripted = [&](std::span<const long long> w) -> std::size_t {
            std::size_t pick;
            if (pos < path.size()) {
                pick = path[pos];
            } else {
                pick = 0;
                while (pick < w.size() && w[pick] <= 0) ++pick;
                if (pick == w.size()) throw std::logic_error("enumerate_choices: all weights zero");
                path.push_back(pick);
            }
            forks.emplace_back(w.begin(), w.end());
            long long total = 0;
            for (long long x : w) total += x;
            trace.factors.emplace_back(w[pick], total);
            ++pos;
            return pick;
        };
        auto result = fn(scripted);
        visit(result, trace);
        // Advance the odometer to the next leaf.
        while (!path.empty()) {
            const std::size_t i = path.size() - 1;
            std::size_t nxt = path[i] + 1;
            const auto& w = forks[i];
            while (nxt < w.size() && w[nxt] <= 0) ++nxt;
            if (nxt < w.size()) {
                path[i] = nxt;
                break;
            }
            path.pop_back();
            forks.pop_back();
        }
        if (path.empty()) return;
    }
}

}  // namespace jam
