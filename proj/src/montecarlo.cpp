#include "jam/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace jam {

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("JAM_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(long long n, int threads, const std::function<void(long long)>& fn) {
    threads = std::min<long long>(resolve_threads(threads), std::max(1ll, n));
    if (threads <= 1) {
        for (long long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const long long i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

int Histogram::bin_of(double v) const {
    const int n = static_cast<int>(mass.size());
    if (v <= lo) return 0;
    if (v >= hi) return n - 1;
    return std::min(n - 1, static_cast<int>((v - lo) / (hi - lo) * n));
}

namespace {

TailEstimate wilson(double threshold, Side side, long long hits, long long n) {
    TailEstimate est;
    est.threshold = threshold;
    est.side = side;
    est.hits = hits;
    est.replicas = n;
    est.p_hat = static_cast<double>(hits) / static_cast<double>(n);
    const double z = 1.959963984540054;  // 95% two-sided
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (est.p_hat + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(est.p_hat * (1.0 - est.p_hat) / n + z2 / (4.0 * n * n)) / denom;
    est.ci_low = std::max(0.0, center - half);
    est.ci_high = std::min(1.0, center + half);
    est.zero_hits = hits == 0;
    est.low_hits = hits < 10;
    if (est.zero_hits) est.ci_low = 0.0;
    return est;
}

bool tail_hit(double fraction, double threshold, Side side) {
    return side == Side::upper ? fraction >= threshold : fraction <= threshold;
}

}  // namespace

EnsembleResult ensemble(const DegreeSequence& seq, long long replicas, std::uint64_t seed,
                        const std::vector<double>& thresholds, Side side, int threads) {
    if (replicas < 1) throw std::invalid_argument("ensemble: replicas must be >= 1");
    EnsembleResult res;
    res.n_vertices = seq.size();
    res.replicas = replicas;
    res.master_seed = seed;

    std::vector<double> fractions(static_cast<std::size_t>(replicas));
    const Rng master(seed);
    parallel_for(replicas, threads, [&](long long r) {
        Rng stream = master.split(static_cast<std::uint64_t>(r));
        fractions[static_cast<std::size_t>(r)] =
            run_to_absorption(seq, stream, /*thin=*/0).independent_set_fraction;
    });

    double mean = 0.0;
    for (double f : fractions) mean += f;
    mean /= static_cast<double>(replicas);
    double var = 0.0;
    for (double f : fractions) var += (f - mean) * (f - mean);
    if (replicas > 1) var /= static_cast<double>(replicas - 1);
    res.mean_fraction = mean;
    res.variance_fraction = var;

    res.histogram.lo = 0.0;
    res.histogram.hi = 1.0;
    res.histogram.mass.assign(100, 0.0);
    for (double f : fractions) res.histogram.mass[res.histogram.bin_of(f)] += 1.0;
    for (double& m : res.histogram.mass) m /= static_cast<double>(replicas);

    for (double thr : thresholds) {
        long long hits = 0;
        for (double f : fractions) hits += tail_hit(f, thr, side);
        res.tails.push_back(wilson(thr, side, hits, replicas));
    }
    return res;
}

TailEstimate tail_probability(const DegreeSequence& seq, double threshold, Side side,
                              long long replicas, std::uint64_t seed, int threads) {
    if (replicas < 1) throw std::invalid_argument("tail_probability: replicas must be >= 1");
    std::vector<unsigned char> hit(static_cast<std::size_t>(replicas), 0);
    const Rng master(seed);
    parallel_for(replicas, threads, [&](long long r) {
        Rng stream = master.split(static_cast<std::uint64_t>(r));
        const double f = run_to_absorption(seq, stream, /*thin=*/0).independent_set_fraction;
        hit[static_cast<std::size_t>(r)] = tail_hit(f, threshold, side);
    });
    long long hits = 0;
    for (unsigned char h : hit) hits += h;
    return wilson(threshold, side, hits, replicas);
}

namespace {

// Labelled-vertex enumeration state for the exact tiny-instance oracle.
struct OracleVertex {
    int degree = 0;
    int unpaired = 0;
    int status = 0;  // 0 empty, 1 blocked, 2 in the independent set
};

using OracleState = std::vector<OracleVertex>;
using StepLaw = std::map<long long, Rational>;

std::string canonical_key(const OracleState& st) {
    std::vector<int> packed;
    packed.reserve(st.size());
    for (const auto& v : st) packed.push_back(v.status * 10000 + v.degree * 100 + v.unpaired);
    std::sort(packed.begin(), packed.end());
    std::string key;
    for (int p : packed) {
        key.append(std::to_string(p));
        key.push_back(',');
    }
    return key;
}

// Enumerates the pairing of the remaining half-edges of vertex v, weighting
// each literal half-edge target by its owner's available count; `sink`
// receives every end-of-step state with its conditional probability.
void enumerate_pairings(OracleState st, std::size_t v, const Rational& prob,
                        const std::function<void(OracleState, Rational)>& sink) {
    if (st[v].unpaired == 0) {
        sink(std::move(st), prob);
        return;
    }
    long long total = 0;
    for (std::size_t w = 0; w < st.size(); ++w)
        total += st[w].unpaired - (w == v ? 1 : 0);
    for (std::size_t w = 0; w < st.size(); ++w) {
        const long long avail = st[w].unpaired - (w == v ? 1 : 0);
        if (avail <= 0) continue;
        OracleState nst = st;
        if (w == v) {
            nst[v].unpaired -= 2;  // loop
        } else {
            nst[v].unpaired -= 1;
            nst[w].unpaired -= 1;
            if (nst[w].status == 0) nst[w].status = 1;
        }
        enumerate_pairings(std::move(nst), v, prob * Rational(avail, total), sink);
    }
}

// Law of the number of further steps to absorption, memoized on the
// canonical (vertex multiset) form of the state.
const StepLaw& steps_to_absorption(const OracleState& st,
                                   std::map<std::string, StepLaw>& memo) {
    const std::string key = canonical_key(st);
    auto found = memo.find(key);
    if (found != memo.end()) return found->second;

    StepLaw law;
    std::vector<std::size_t> empties;
    for (std::size_t v = 0; v < st.size(); ++v)
        if (st[v].status == 0) empties.push_back(v);
    if (empties.empty()) {
        law[0] = 1;
        return memo.emplace(key, std::move(law)).first->second;
    }
    const Rational pick(1, static_cast<long long>(empties.size()));
    for (std::size_t v : empties) {
        OracleState chosen = st;
        chosen[v].status = 2;
        enumerate_pairings(std::move(chosen), v, pick,
                           [&](OracleState end_state, Rational p) {
                               // Half-edges of v paired to itself or to blocked
                               // vertices changed no statuses; the sub-law of the
                               // remaining steps shifts by this one step.
                               end_state[v].unpaired = 0;
                               const StepLaw& sub = steps_to_absorption(end_state, memo);
                               for (const auto& [steps, q] : sub) law[steps + 1] += p * q;
                           });
    }
    return memo.emplace(key, std::move(law)).first->second;
}

}  // namespace

std::map<std::vector<long long>, Rational> enumerate_step_kernel(const ChainState& st,
                                                                 StepKind kind) {
    std::map<std::vector<long long>, Rational> kernel;
    auto run = [&](auto&& choice) {
        return kind == StepKind::exact ? step_exact(st, choice).first
                                       : step_cascade(st, choice).first;
    };
    enumerate_choices(run, [&](const ChainState& next, const ChoiceTrace& trace) {
        Rational p = 1;
        for (const auto& [num, den] : trace.factors) p *= Rational(num, den);
        std::vector<long long> key{next.in_set, next.unpaired};
        key.insert(key.end(), next.empty_by_degree.begin(), next.empty_by_degree.end());
        kernel[key] += p;
    });
    return kernel;
}

std::map<long long, Rational> exact_distribution_tiny(const DegreeSequence& seq,
                                                      long long max_half_edges) {
    if (seq.total_half_edges() > max_half_edges)
        throw std::invalid_argument("exact_distribution_tiny: half-edge total exceeds bound");
    OracleState st;
    for (int d : seq.degrees) st.push_back(OracleVertex{d, d, 0});
    std::map<std::string, StepLaw> memo;
    return steps_to_absorption(st, memo);
}

}  // namespace jam
