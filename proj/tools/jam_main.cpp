// Command-line front end: simulation, fluid and tilted flows, cost and rate
// evaluations, Monte Carlo ensembles, and a built-in cross-check suite.

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "jam/deviations.hpp"
#include "jam/dynamics.hpp"
#include "jam/hamiltonian.hpp"
#include "jam/io.hpp"
#include "jam/legendre.hpp"
#include "jam/model.hpp"
#include "jam/montecarlo.hpp"
#include "jam/odeflow.hpp"

namespace {

using nlohmann::json;

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

struct ModelOpts {
    int regular = 0;
    std::string probs;
    std::string dist_file;

    void attach(CLI::App* cmd) {
        auto* a = cmd->add_option("--regular", regular, "all vertices have this degree d");
        auto* b = cmd->add_option("--probs", probs, "comma list p0,p1,...,pD");
        auto* c = cmd->add_option("--dist-file", dist_file, "file of 'j = p_j' lines");
        a->excludes(b)->excludes(c);
        b->excludes(c);
    }
    jam::DegreeDistribution distribution() const {
        if (regular > 0) return jam::DegreeDistribution::regular(regular);
        if (!probs.empty()) {
            const std::vector<double> p = parse_list(probs);
            return jam::DegreeDistribution(
                Eigen::Map<const jam::Vec>(p.data(), static_cast<Eigen::Index>(p.size())));
        }
        if (!dist_file.empty()) return jam::read_distribution_file(dist_file);
        throw CLI::ValidationError("model", "one of --regular/--probs/--dist-file is required");
    }
    jam::DegreeSequence sequence(long long n) const {
        if (regular > 0) return jam::make_regular(regular, n);
        return jam::realize_sequence(distribution(), n);
    }
    std::string describe() const {
        if (regular > 0) return "regular=" + std::to_string(regular);
        if (!probs.empty()) return "probs=" + probs;
        return "dist-file=" + dist_file;
    }
};

jam::Covector covector_from_list(const std::vector<double>& v) {
    if (v.size() < 3) throw std::invalid_argument("covector list needs alpha_s,alpha_u,alpha_0..");
    jam::Covector a = jam::Covector::zero(static_cast<int>(v.size()) - 3);
    a.s = v[0];
    a.u = v[1];
    for (std::size_t i = 2; i < v.size(); ++i) a.e[static_cast<Eigen::Index>(i) - 2] = v[i];
    return a;
}

jam::MacroState state_from_list(const std::vector<double>& v) {
    if (v.size() < 3) throw std::invalid_argument("state list needs s,u,e_0..");
    jam::MacroState x;
    x.s = v[0];
    x.u = v[1];
    x.e = jam::Vec(static_cast<Eigen::Index>(v.size()) - 2);
    for (std::size_t i = 2; i < v.size(); ++i) x.e[static_cast<Eigen::Index>(i) - 2] = v[i];
    return x;
}

int run_validate(std::uint64_t seed);

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"greedy independent-set exploration on configuration-model graphs: "
                 "simulation, fluid limits, and large-deviations analytics"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a key=value file");

    // ---- simulate ----------------------------------------------------------
    auto* sim = app.add_subcommand("simulate", "run the exploration chain once");
    ModelOpts sim_model;
    sim_model.attach(sim);
    long long sim_n = 1000;
    std::uint64_t sim_seed = 1;
    long long sim_thin = 1;
    std::string sim_out, sim_json;
    bool sim_gnuplot = false;
    sim->add_option("--n", sim_n, "number of vertices")->required();
    sim->add_option("--seed", sim_seed, "rng seed");
    sim->add_option("--thin", sim_thin, "record every k-th step (0: endpoints only)");
    sim->add_option("--out", sim_out, "path CSV output");
    sim->add_option("--json", sim_json, "JSON output");
    sim->add_flag("--gnuplot", sim_gnuplot, "also emit a gnuplot script next to the CSV");

    // ---- fluid -------------------------------------------------------------
    auto* flu = app.add_subcommand("fluid", "integrate the fluid-limit ODE");
    ModelOpts flu_model;
    flu_model.attach(flu);
    double flu_step = jam::default_ode_step;
    std::string flu_out;
    bool flu_gnuplot = false;
    flu->add_option("--step", flu_step, "integrator step");
    flu->add_option("--out", flu_out, "trajectory CSV output");
    flu->add_flag("--gnuplot", flu_gnuplot, "also emit a gnuplot script");

    // ---- hamilton ----------------------------------------------------------
    auto* ham = app.add_subcommand("hamilton", "integrate the tilted (optimal-path) flow");
    ModelOpts ham_model;
    ham_model.attach(ham);
    std::string ham_alpha0 = "0";
    double ham_step = jam::default_ode_step;
    std::string ham_out;
    ham->add_option("--alpha0", ham_alpha0,
                    "scalar (d-regular reduced flow) or comma list alpha_s,alpha_u,alpha_0..");
    ham->add_option("--step", ham_step, "integrator step");
    ham->add_option("--out", ham_out, "trajectory CSV output");

    // ---- rate-curve --------------------------------------------------------
    auto* rc = app.add_subcommand("rate-curve", "F(alpha0) and T_alpha0 over a grid");
    int rc_d = 3;
    std::string rc_range = "-1,1";
    int rc_points = 41;
    double rc_step = jam::default_ode_step;
    std::string rc_out;
    bool rc_gnuplot = false;
    rc->add_option("--regular", rc_d, "degree d")->required();
    rc->add_option("--range", rc_range, "alpha0 range a,b");
    rc->add_option("--points", rc_points, "grid size");
    rc->add_option("--step", rc_step, "integrator step");
    rc->add_option("--out", rc_out, "CSV output");
    rc->add_flag("--gnuplot", rc_gnuplot, "also emit a gnuplot script");

    // ---- deviation ---------------------------------------------------------
    auto* dev = app.add_subcommand("deviation", "large-deviation rate for the stopping time");
    int dev_d = 3;
    double dev_eps = 0.05;
    std::string dev_side = "upper";
    double dev_step = jam::default_ode_step;
    double dev_bound = 20.0;
    dev->add_option("--regular", dev_d, "degree d")->required();
    dev->add_option("--eps", dev_eps, "deviation size")->required();
    dev->add_option("--side", dev_side, "upper|lower")
        ->check(CLI::IsMember({"upper", "lower"}));
    dev->add_option("--step", dev_step, "integrator step");
    dev->add_option("--bound", dev_bound, "alpha0 search bound");

    // ---- montecarlo --------------------------------------------------------
    auto* mc = app.add_subcommand("montecarlo", "replica ensemble of the exploration");
    ModelOpts mc_model;
    mc_model.attach(mc);
    long long mc_n = 1000;
    long long mc_replicas = 100;
    std::uint64_t mc_seed = 1;
    std::vector<double> mc_thresholds;
    std::string mc_side = "upper";
    int mc_threads = 0;
    std::string mc_out, mc_hist;
    mc->add_option("--n", mc_n, "number of vertices")->required();
    mc->add_option("--replicas", mc_replicas, "replica count");
    mc->add_option("--seed", mc_seed, "master seed");
    mc->add_option("--threshold", mc_thresholds, "tail threshold(s) for T_N*/N");
    mc->add_option("--side", mc_side, "upper|lower")->check(CLI::IsMember({"upper", "lower"}));
    mc->add_option("--threads", mc_threads, "worker threads (0: auto)");
    mc->add_option("--out", mc_out, "JSON summary output");
    mc->add_option("--hist", mc_hist, "histogram CSV output");

    // ---- cost --------------------------------------------------------------
    auto* cost = app.add_subcommand("cost", "evaluate the cost function L(x, beta)");
    int cost_d = 0;
    std::string cost_x, cost_beta;
    cost->add_option("--regular", cost_d, "use the d-regular closed form (x,beta are 3-d)");
    cost->add_option("--x", cost_x, "state: s,u,e_0,..")->required();
    cost->add_option("--beta", cost_beta, "velocity: b_s,b_u,b_0,..")->required();

    // ---- hamiltonian -------------------------------------------------------
    auto* hev = app.add_subcommand("hamiltonian", "evaluate H, H_alpha, H_x at (x, alpha)");
    std::string hev_x, hev_alpha, hev_eval;
    hev->add_option("--x", hev_x, "state: s,u,e_0,..");
    hev->add_option("--alpha", hev_alpha, "covector: a_s,a_u,a_0,..");
    hev->add_option("--eval", hev_eval, "combined 'x;alpha' form");

    // ---- validate ----------------------------------------------------------
    auto* val = app.add_subcommand("validate", "run the built-in cross-check suite");
    std::uint64_t val_seed = 12345;
    val->add_option("--seed", val_seed, "seed for the randomized checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(sim)) {
            jam::RunConfig cfg;
            cfg.set("subcommand", std::string("simulate"));
            cfg.set("model", sim_model.describe());
            cfg.set("n", sim_n);
            cfg.set("seed", static_cast<long long>(sim_seed));
            cfg.set("thin", sim_thin);
            const auto seq = sim_model.sequence(sim_n);
            const auto run = jam::run_to_absorption(seq, jam::Rng(sim_seed), sim_thin);
            const auto prov = jam::provenance_line("simulate", cfg.hash(), sim_seed);
            if (!sim_out.empty()) {
                jam::write_path_csv(sim_out, run.times, run.path, prov);
                if (sim_gnuplot)
                    jam::write_gnuplot_script(sim_out + ".gp", sim_out,
                                              {{2, "s"}, {3, "u"}}, "exploration path");
            }
            if (!sim_json.empty()) jam::write_run_json(sim_json, run, prov);
            json out;
            out["t_star_steps"] = run.t_star_steps;
            out["independent_set_fraction"] = run.independent_set_fraction;
            out["n_vertices"] = run.n_vertices;
            std::cout << out.dump(2) << "\n";
        } else if (app.got_subcommand(flu)) {
            jam::RunConfig cfg;
            cfg.set("subcommand", std::string("fluid"));
            cfg.set("model", flu_model.describe());
            cfg.set("step", flu_step);
            const auto dist = flu_model.distribution();
            const auto traj = jam::fluid_limit(dist, flu_step);
            if (!flu_out.empty()) {
                const auto prov = jam::provenance_line("fluid", cfg.hash(), 0);
                jam::write_path_csv(flu_out, traj.times, traj.states, prov);
                if (flu_gnuplot)
                    jam::write_gnuplot_script(flu_out + ".gp", flu_out, {{2, "s"}, {3, "u"}},
                                              "fluid limit");
            }
            json out;
            out["t_star"] = traj.t_star;
            json stops = json::array();
            for (double t : traj.stop_times) stops.push_back(t);
            out["stop_times"] = stops;
            std::cout << out.dump(2) << "\n";
        } else if (app.got_subcommand(ham)) {
            jam::RunConfig cfg;
            cfg.set("subcommand", std::string("hamilton"));
            cfg.set("model", ham_model.describe());
            cfg.set("alpha0", ham_alpha0);
            cfg.set("step", ham_step);
            const std::vector<double> a0 = parse_list(ham_alpha0);
            jam::HamiltonSolution sol;
            if (a0.size() == 1 && ham_model.regular > 0) {
                sol = jam::hamilton_path_regular(ham_model.regular, a0[0], ham_step);
            } else {
                sol = jam::hamilton_path(ham_model.distribution(), covector_from_list(a0),
                                         ham_step);
            }
            if (!ham_out.empty()) {
                const auto prov = jam::provenance_line("hamilton", cfg.hash(), 0);
                jam::write_path_csv(ham_out, sol.trajectory.times, sol.trajectory.states, prov);
            }
            json out;
            out["action"] = sol.action;
            out["t_alpha0"] = sol.t_alpha0;
            out["hit_horizon"] = sol.trajectory.hit_horizon;
            std::cout << out.dump(2) << "\n";
        } else if (app.got_subcommand(rc)) {
            jam::RunConfig cfg;
            cfg.set("subcommand", std::string("rate-curve"));
            cfg.set("regular", static_cast<long long>(rc_d));
            cfg.set("range", rc_range);
            cfg.set("points", static_cast<long long>(rc_points));
            cfg.set("step", rc_step);
            const auto range = parse_list(rc_range);
            if (range.size() != 2) throw std::invalid_argument("--range needs two values a,b");
            const auto curve = jam::rate_curve_regular(rc_d, range[0], range[1], rc_points, rc_step);
            if (!rc_out.empty()) {
                const auto prov = jam::provenance_line("rate-curve", cfg.hash(), 0);
                jam::write_rate_curve_csv(rc_out, curve, prov);
                if (rc_gnuplot)
                    jam::write_gnuplot_script(rc_out + ".gp", rc_out, {{3, "F(alpha0)"}},
                                              "rate curve d=" + std::to_string(rc_d));
            }
            json out;
            out["points"] = rc_points;
            out["f_at_ends"] = {curve.f_values.front(), curve.f_values.back()};
            std::cout << out.dump(2) << "\n";
        } else if (app.got_subcommand(dev)) {
            jam::Alpha0SearchOptions opt;
            opt.step = dev_step;
            opt.bound = dev_bound;
            const jam::Side side = dev_side == "upper" ? jam::Side::upper : jam::Side::lower;
            const double t_star = jam::jamming_constant(dev_d);
            const double target = side == jam::Side::upper ? t_star + dev_eps : t_star - dev_eps;
            const double rate = jam::deviation_rate(dev_d, dev_eps, side, opt);
            const double a0 = jam::alpha0_for_time(dev_d, target, opt);
            json out;
            out["d"] = dev_d;
            out["epsilon"] = dev_eps;
            out["side"] = dev_side;
            out["t_star"] = t_star;
            out["t_target"] = target;
            out["alpha0"] = a0;
            out["rate"] = rate;
            std::cout << out.dump(2) << "\n";
        } else if (app.got_subcommand(mc)) {
            jam::RunConfig cfg;
            cfg.set("subcommand", std::string("montecarlo"));
            cfg.set("model", mc_model.describe());
            cfg.set("n", mc_n);
            cfg.set("replicas", mc_replicas);
            cfg.set("seed", static_cast<long long>(mc_seed));
            const auto seq = mc_model.sequence(mc_n);
            const jam::Side side = mc_side == "upper" ? jam::Side::upper : jam::Side::lower;
            const auto res =
                jam::ensemble(seq, mc_replicas, mc_seed, mc_thresholds, side, mc_threads);
            const auto prov = jam::provenance_line("montecarlo", cfg.hash(), mc_seed);
            if (!mc_out.empty()) jam::write_ensemble_json(mc_out, res, prov);
            if (!mc_hist.empty()) jam::write_histogram_csv(mc_hist, res.histogram, prov);
            json out;
            out["mean_fraction"] = res.mean_fraction;
            out["variance_fraction"] = res.variance_fraction;
            out["replicas"] = res.replicas;
            for (const auto& t : res.tails) {
                json row;
                row["threshold"] = t.threshold;
                row["p_hat"] = t.p_hat;
                row["ci"] = {t.ci_low, t.ci_high};
                out["tails"].push_back(row);
            }
            std::cout << out.dump(2) << "\n";
        } else if (app.got_subcommand(cost)) {
            const auto xv = parse_list(cost_x);
            const auto bv = parse_list(cost_beta);
            jam::CostEval ev;
            if (cost_d >= 2) {
                if (xv.size() != 3 || bv.size() != 3)
                    throw std::invalid_argument("--regular cost needs 3-d --x and --beta");
                ev = jam::cost_regular(cost_d, Eigen::Vector3d(xv[0], xv[1], xv[2]),
                                       Eigen::Vector3d(bv[0], bv[1], bv[2]));
            } else {
                jam::MacroState x = state_from_list(xv);
                if (bv.size() != xv.size())
                    throw std::invalid_argument("--x and --beta must have equal length");
                jam::Velocity beta;
                beta.s = bv[0];
                beta.u = bv[1];
                beta.e = jam::Vec(static_cast<Eigen::Index>(bv.size()) - 2);
                for (std::size_t i = 2; i < bv.size(); ++i)
                    beta.e[static_cast<Eigen::Index>(i) - 2] = bv[i];
                ev = jam::cost_general(x, beta);
            }
            json out;
            out["value"] = std::isfinite(ev.value) ? json(ev.value) : json("inf");
            out["status"] = ev.status == jam::CostStatus::finite            ? "finite"
                            : ev.status == jam::CostStatus::infinite_escaping ? "infinite-escaping"
                                                                              : "boundary";
            if (ev.maximizer) {
                json m;
                m["alpha_s"] = ev.maximizer->s;
                m["alpha_u"] = ev.maximizer->u;
                m["alpha_e"] = std::vector<double>(ev.maximizer->e.begin(), ev.maximizer->e.end());
                out["maximizer"] = m;
            }
            std::cout << out.dump(2) << "\n";
        } else if (app.got_subcommand(hev)) {
            std::vector<double> xv, av;
            if (!hev_eval.empty()) {
                const auto semi = hev_eval.find(';');
                if (semi == std::string::npos)
                    throw std::invalid_argument("--eval expects 'x_list;alpha_list'");
                xv = parse_list(hev_eval.substr(0, semi));
                av = parse_list(hev_eval.substr(semi + 1));
            } else {
                xv = parse_list(hev_x);
                av = parse_list(hev_alpha);
            }
            const jam::MacroState x = state_from_list(xv);
            const jam::Covector a = covector_from_list(av);
            const auto ev = jam::eval_hamiltonian(x, a);
            json out;
            out["H"] = ev.value;
            out["grad_alpha"] = {{"s", ev.grad_alpha.s},
                                 {"u", ev.grad_alpha.u},
                                 {"e", std::vector<double>(ev.grad_alpha.e.begin(),
                                                           ev.grad_alpha.e.end())}};
            out["grad_x"] = {{"s", ev.grad_x.s},
                             {"u", ev.grad_x.u},
                             {"e", std::vector<double>(ev.grad_x.e.begin(), ev.grad_x.e.end())}};
            std::cout << out.dump(2) << "\n";
        } else if (app.got_subcommand(val)) {
            return run_validate(val_seed);
        }
    } catch (const jam::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 4;
    } catch (const jam::infeasible_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 4;
    } catch (const jam::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

namespace {

// ---- validate: built-in cross-check suite ----------------------------------

jam::MacroState random_interior_state(jam::Rng& rng, int max_degree) {
    jam::MacroState x;
    x.e = jam::Vec(max_degree + 1);
    for (int j = 0; j <= max_degree; ++j)
        x.e[j] = 0.05 + 0.8 * rng.uniform01() / (max_degree + 1);
    x.s = 0.3 * rng.uniform01();
    x.u = x.empty_half_edges() * (1.15 + 0.8 * rng.uniform01());
    if (x.u <= 0.0) x.u = 1.0;
    return x;
}

jam::Covector random_covector(jam::Rng& rng, int max_degree, double scale) {
    jam::Covector a = jam::Covector::zero(max_degree);
    a.s = scale * (2.0 * rng.uniform01() - 1.0);
    a.u = scale * (2.0 * rng.uniform01() - 1.0);
    for (int j = 0; j <= max_degree; ++j) a.e[j] = scale * (2.0 * rng.uniform01() - 1.0);
    return a;
}

bool check_line(const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "PASS  " : "FAIL  ") << name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
    return pass;
}

int run_validate(std::uint64_t seed) {
    jam::Rng rng(seed);
    bool all = true;

    {  // gradients against central finite differences
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const int D = 2 + static_cast<int>(rng.below(4));
            const auto x = random_interior_state(rng, D);
            const auto a = random_covector(rng, D, 1.0);
            const auto ga = jam::grad_alpha(x, a);
            const double h = 1e-6;
            jam::Covector ap = a, am = a;
            ap.u += h;
            am.u -= h;
            const double fd = (jam::hamiltonian(x, ap) - jam::hamiltonian(x, am)) / (2 * h);
            worst = std::max(worst, std::abs(fd - ga.u) / std::max(1.0, std::abs(fd)));
        }
        all &= check_line("gradient vs finite differences", worst < 1e-6,
                          "max rel err " + jam::format_double(worst));
    }
    {  // Legendre duality at constructed pairs
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const int D = 2 + static_cast<int>(rng.below(3));
            const auto x = random_interior_state(rng, D);
            const auto a = random_covector(rng, D, 0.8);
            const auto beta = jam::grad_alpha(x, a);
            const auto cost = jam::cost_general(x, beta);
            const double fenchel = cost.value + jam::hamiltonian(x, a) - jam::dot(a, beta);
            worst = std::max(worst, std::abs(fenchel));
        }
        all &= check_line("Legendre duality", worst < 1e-6, "max defect " + jam::format_double(worst));
    }
    {  // d-regular closed forms against the general code
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const int d = 2 + static_cast<int>(rng.below(5));
            jam::MacroState x;
            x.e = jam::Vec::Zero(d + 1);
            x.e[d] = 0.1 + 0.8 * rng.uniform01();
            x.s = rng.uniform01() * 0.4;
            x.u = d * x.e[d] * (1.05 + rng.uniform01());
            auto a = jam::Covector::zero(d);
            a.s = 2.0 * rng.uniform01() - 1.0;
            a.u = 2.0 * rng.uniform01() - 1.0;
            a.e[d] = 2.0 * rng.uniform01() - 1.0;
            const double general = jam::hamiltonian(x, a);
            const double special =
                jam::hamiltonian_regular(d, x.s, x.u, x.e[d], a.s, a.u, a.e[d]);
            worst = std::max(worst, std::abs(general - special));
        }
        all &= check_line("regular Hamiltonian specialization", worst < 1e-12,
                          "max abs err " + jam::format_double(worst));
    }
    {  // fluid-limit closed forms
        double worst = 0.0;
        for (int d : {2, 3}) {
            const auto traj = jam::fluid_limit(jam::DegreeDistribution::regular(d));
            worst = std::max(worst, std::abs(traj.t_star - jam::jamming_constant(d)));
            for (double t : {0.1, 0.2, 0.3}) {
                const auto x = traj.at(t);
                worst = std::max(worst, std::abs(x.e[d] - jam::fluid_e_regular(d, t)));
            }
        }
        all &= check_line("fluid-limit closed forms (d=2,3)", worst < 1e-6,
                          "max abs err " + jam::format_double(worst));
    }
    {  // one-step kernel equivalence by exact enumeration
        bool ok = true;
        for (const auto& degs :
             {std::vector<int>{2, 2, 2}, std::vector<int>{3, 3, 3, 3}, std::vector<int>{0, 1, 1, 2}}) {
            const jam::DegreeSequence seq(degs);
            const auto st = jam::ChainState::initial(seq);
            ok &= jam::enumerate_step_kernel(st, jam::StepKind::exact) ==
                  jam::enumerate_step_kernel(st, jam::StepKind::cascade);
        }
        all &= check_line("exact vs cascade one-step kernels (enumeration)", ok);
    }
    {  // full-run law against the labelled-vertex oracle
        const jam::DegreeSequence seq(std::vector<int>{2, 2, 2});
        const auto law = jam::exact_distribution_tiny(seq);
        const long long reps = 200000;
        std::vector<long long> counts(4, 0);
        for (long long r = 0; r < reps; ++r) {
            jam::Rng stream = rng.split(1000 + static_cast<std::uint64_t>(r));
            counts[static_cast<std::size_t>(
                jam::run_to_absorption(seq, stream, 0).t_star_steps)]++;
        }
        double tv = 0.0;
        for (long long k = 0; k < 4; ++k) {
            const double exact =
                law.count(k) ? static_cast<double>(law.at(k)) : 0.0;
            tv += 0.5 * std::abs(exact - static_cast<double>(counts[k]) / reps);
        }
        all &= check_line("simulator vs exact tiny-instance law", tv < 0.02,
                          "TV " + jam::format_double(tv));
    }

    std::cout << (all ? "validate: all checks passed" : "validate: FAILURES above") << "\n";
    return all ? 0 : 3;
}

}  // namespace
