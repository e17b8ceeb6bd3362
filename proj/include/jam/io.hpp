#pragma once

#include <map>
#include <string>
#include <vector>

#include "jam/deviations.hpp"
#include "jam/dynamics.hpp"
#include "jam/model.hpp"
#include "jam/montecarlo.hpp"
#include "jam/odeflow.hpp"

namespace jam {

inline constexpr const char* version_string = "0.1.0";

/// FNV-1a hash of a string; used to stamp artifacts with a config fingerprint.
std::uint64_t fnv1a(const std::string& text);

/// Shortest round-trippable decimal representation of a double.
std::string format_double(double v);

/// Provenance comment placed as the first line of every CSV artifact:
/// "# jam <version> <what> config=<hash> seed=<seed>".
std::string provenance_line(const std::string& what, std::uint64_t config_hash,
                            std::uint64_t seed);

/// CSV with columns t,s,u,e_0..e_D (shared by empirical runs and integrated
/// trajectories so they can be overlaid directly).
void write_path_csv(const std::string& path, const std::vector<double>& times,
                    const std::vector<MacroState>& states, const std::string& provenance);

void write_run_json(const std::string& path, const RunResult& run,
                    const std::string& provenance);

/// CSV with columns alpha0,T_alpha0,F (plus a note column for failed points).
void write_rate_curve_csv(const std::string& path, const RateCurve& curve,
                          const std::string& provenance);

void write_ensemble_json(const std::string& path, const EnsembleResult& res,
                         const std::string& provenance);

/// Histogram CSV: bin_low,bin_high,mass.
void write_histogram_csv(const std::string& path, const Histogram& hist,
                         const std::string& provenance);

/// Gnuplot script that plots columns of a CSV artifact.
void write_gnuplot_script(const std::string& path, const std::string& csv_path,
                          const std::vector<std::pair<int, std::string>>& columns,
                          const std::string& title);

/// Degree-law file: one "j = p_j" line per degree; '#' starts a comment.
DegreeDistribution read_distribution_file(const std::string& path);

/// Flat key-value config mirroring the CLI flags. Values are stored as
/// strings; doubles are written round-trippably.
struct RunConfig {
    std::map<std::string, std::string> values;

    void set(const std::string& key, const std::string& v) { values[key] = v; }
    void set(const std::string& key, double v) { values[key] = format_double(v); }
    void set(const std::string& key, long long v) { values[key] = std::to_string(v); }

    std::string to_text() const;
    static RunConfig from_text(const std::string& text);
    std::uint64_t hash() const { return fnv1a(to_text()); }
};

}  // namespace jam
