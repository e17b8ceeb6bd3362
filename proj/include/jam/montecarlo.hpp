#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <vector>

#include "jam/deviations.hpp"
#include "jam/dynamics.hpp"
#include "jam/model.hpp"

namespace jam {

using Rational = boost::multiprecision::cpp_rational;

/// Wilson score interval around an empirical proportion.
struct TailEstimate {
    double threshold = 0.0;
    Side side = Side::upper;
    long long hits = 0;
    long long replicas = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    bool zero_hits = false;
    bool low_hits = false;  // fewer than 10 hits: estimate is advisory only
};

struct Histogram {
    double lo = 0.0, hi = 1.0;
    std::vector<double> mass;  // normalized; sums to 1

    int bin_of(double v) const;
};

/// Summary of independent replicas of the exploration on one degree sequence.
struct EnsembleResult {
    long long n_vertices = 0;
    long long replicas = 0;
    double mean_fraction = 0.0;
    double variance_fraction = 0.0;
    Histogram histogram;
    std::vector<TailEstimate> tails;
    std::uint64_t master_seed = 0;
};

/// Runs `replicas` independent explorations; replica r draws from the child
/// stream split(r) of the master seed, so results are identical for any
/// thread count. Aggregation is by replica index (order-independent sums).
EnsembleResult ensemble(const DegreeSequence& seq, long long replicas, std::uint64_t seed,
                        const std::vector<double>& thresholds = {}, Side side = Side::upper,
                        int threads = 0);

TailEstimate tail_probability(const DegreeSequence& seq, double threshold, Side side,
                              long long replicas, std::uint64_t seed, int threads = 0);

/// Exact law of T_N* for tiny instances by exhaustive enumeration of every
/// uniform choice (vertex selection and each half-edge pairing) over labelled
/// vertices, with exact rational weights. Independent of the step samplers.
/// Requires a half-edge total of at most `max_half_edges`.
std::map<long long, Rational> exact_distribution_tiny(const DegreeSequence& seq,
                                                      long long max_half_edges = 12);

/// Exact one-step transition law over aggregate states (in_set, unpaired,
/// E_0..E_D), by exhaustive enumeration of every internal choice of the
/// given step sampler with exact rational weights.
enum class StepKind { exact, cascade };
std::map<std::vector<long long>, Rational> enumerate_step_kernel(const ChainState& st,
                                                                 StepKind kind);

/// Worker count: `threads` if positive, else the JAM_THREADS environment
/// variable, else hardware concurrency.
int resolve_threads(int threads);

/// Runs fn(i) for i in [0, n) across workers; fn must write only to
/// disjoint, preallocated slots.
void parallel_for(long long n, int threads, const std::function<void(long long)>& fn);

}  // namespace jam
