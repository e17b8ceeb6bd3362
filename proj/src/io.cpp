#include "jam/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace jam {

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // Prefer the shortest representation that still round-trips.
    for (int prec = 1; prec < 17; ++prec) {
        char shorter[40];
        std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
        if (std::strtod(shorter, nullptr) == v) return shorter;
    }
    return buf;
}

std::string provenance_line(const std::string& what, std::uint64_t config_hash,
                            std::uint64_t seed) {
    std::ostringstream os;
    os << "# jam " << version_string << " " << what << " config=" << std::hex << config_hash
       << std::dec << " seed=" << seed;
    return os.str();
}

namespace {
std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}
}  // namespace

void write_path_csv(const std::string& path, const std::vector<double>& times,
                    const std::vector<MacroState>& states, const std::string& provenance) {
    if (times.size() != states.size())
        throw std::invalid_argument("write_path_csv: times and states differ in length");
    auto out = open_out(path);
    out << provenance << "\n";
    const int D = states.empty() ? 0 : states.front().max_degree();
    out << "t,s,u";
    for (int j = 0; j <= D; ++j) out << ",e_" << j;
    out << "\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        out << format_double(times[i]) << "," << format_double(states[i].s) << ","
            << format_double(states[i].u);
        for (int j = 0; j <= D; ++j) out << "," << format_double(states[i].e[j]);
        out << "\n";
    }
}

void write_run_json(const std::string& path, const RunResult& run,
                    const std::string& provenance) {
    nlohmann::json j;
    j["provenance"] = provenance;
    j["n_vertices"] = run.n_vertices;
    j["t_star_steps"] = run.t_star_steps;
    j["independent_set_fraction"] = run.independent_set_fraction;
    j["seed"] = run.seed;
    nlohmann::json path_json = nlohmann::json::array();
    for (std::size_t i = 0; i < run.times.size(); ++i) {
        nlohmann::json row;
        row["t"] = run.times[i];
        row["s"] = run.path[i].s;
        row["u"] = run.path[i].u;
        row["e"] = std::vector<double>(run.path[i].e.begin(), run.path[i].e.end());
        path_json.push_back(std::move(row));
    }
    j["path"] = std::move(path_json);
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

void write_rate_curve_csv(const std::string& path, const RateCurve& curve,
                          const std::string& provenance) {
    auto out = open_out(path);
    out << provenance << "\n";
    out << "alpha0,T_alpha0,F,note\n";
    for (std::size_t i = 0; i < curve.alpha0_grid.size(); ++i) {
        out << format_double(curve.alpha0_grid[i]) << "," << format_double(curve.t_values[i])
            << "," << format_double(curve.f_values[i]) << "," << curve.notes[i] << "\n";
    }
}

void write_ensemble_json(const std::string& path, const EnsembleResult& res,
                         const std::string& provenance) {
    nlohmann::json j;
    j["provenance"] = provenance;
    j["n_vertices"] = res.n_vertices;
    j["replicas"] = res.replicas;
    j["mean_fraction"] = res.mean_fraction;
    j["variance_fraction"] = res.variance_fraction;
    j["master_seed"] = res.master_seed;
    j["seed_streams"] = "split(master_seed, replica_index)";
    nlohmann::json tails = nlohmann::json::array();
    for (const TailEstimate& t : res.tails) {
        nlohmann::json row;
        row["threshold"] = t.threshold;
        row["side"] = t.side == Side::upper ? "upper" : "lower";
        row["hits"] = t.hits;
        row["replicas"] = t.replicas;
        row["p_hat"] = t.p_hat;
        row["ci_low"] = t.ci_low;
        row["ci_high"] = t.ci_high;
        row["zero_hits"] = t.zero_hits;
        row["low_hits"] = t.low_hits;
        tails.push_back(std::move(row));
    }
    j["tail_estimates"] = std::move(tails);
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

void write_histogram_csv(const std::string& path, const Histogram& hist,
                         const std::string& provenance) {
    auto out = open_out(path);
    out << provenance << "\n";
    out << "bin_low,bin_high,mass\n";
    const int n = static_cast<int>(hist.mass.size());
    for (int i = 0; i < n; ++i) {
        const double lo = hist.lo + (hist.hi - hist.lo) * i / n;
        const double hi = hist.lo + (hist.hi - hist.lo) * (i + 1) / n;
        out << format_double(lo) << "," << format_double(hi) << ","
            << format_double(hist.mass[i]) << "\n";
    }
}

void write_gnuplot_script(const std::string& path, const std::string& csv_path,
                          const std::vector<std::pair<int, std::string>>& columns,
                          const std::string& title) {
    auto out = open_out(path);
    out << "set datafile separator ','\n";
    out << "set key autotitle columnhead\n";
    out << "set title '" << title << "'\n";
    out << "plot ";
    bool first = true;
    for (const auto& [col, label] : columns) {
        if (!first) out << ", ";
        out << "'" << csv_path << "' using 1:" << col << " with lines title '" << label << "'";
        first = false;
    }
    out << "\n";
}

DegreeDistribution read_distribution_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open distribution file: " + path);
    std::map<int, double> entries;
    int max_deg = 0;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const int j = std::stoi(line.substr(0, eq));
        const double p = std::stod(line.substr(eq + 1));
        if (j < 0) throw std::invalid_argument("distribution file: negative degree");
        entries[j] = p;
        max_deg = std::max(max_deg, j);
    }
    if (entries.empty()) throw std::invalid_argument("distribution file: no 'j = p_j' lines");
    Vec probs = Vec::Zero(max_deg + 1);
    for (const auto& [j, p] : entries) probs[j] = p;
    return DegreeDistribution(std::move(probs));
}

std::string RunConfig::to_text() const {
    std::ostringstream os;
    for (const auto& [k, v] : values) os << k << " = " << v << "\n";
    return os.str();
}

RunConfig RunConfig::from_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        cfg.values[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return cfg;
}

}  // namespace jam
