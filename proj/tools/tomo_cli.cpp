// Command-line front end: one verb per library surface.
//   probabilities  Born-rule outcome probabilities for a state and frame
//   estimate       maximum-likelihood reconstruction from counts
//   simulate       synthetic detector clicks
//   adaptive       strategy trials (static / premeasure / selflearn)
//   pair           two-qubit tomography and frame calibration
//   circuit        the measurement network: gate dump or a simulated run
//   figure         reproducible figure-data experiments
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "tetra/errors.hpp"
#include "tetra/harness.hpp"
#include "tetra/metrics.hpp"
#include "tetra/network.hpp"

using namespace tetra;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "json";
};

PauliVector parse_state(const std::string& text) {
    PauliVector s;
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf", &s.x(), &s.y(), &s.z()) != 3)
        throw ConfigError("state must be sx,sy,sz, got: " + text);
    require_physical(s);
    return s;
}

TetraFrame parse_frame(const std::string& rotation_json) {
    if (rotation_json.empty()) return TetraFrame();
    return TetraFrame::from_rotation(rotation_from_json(Json::parse(rotation_json)));
}

void write_output(const GlobalOpts& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text << '\n';
    } else {
        std::ofstream f(g.out);
        if (!f) throw ConfigError("cannot open output file: " + g.out);
        f << text << '\n';
    }
}

std::vector<std::uint64_t> parse_counts_list(const std::string& text, std::size_t want) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
    if (out.size() != want) {
        std::ostringstream os;
        os << "expected " << want << " comma-separated counts, got " << out.size();
        throw ConfigError(os.str());
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Four-outcome qubit tomography toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // allow global flags after the subcommand name

    GlobalOpts g;
    app.add_option("--seed", g.seed, "RNG seed (mt19937_64)");
    app.add_option("--out", g.out, "output file (stdout when omitted)");
    app.add_option("--format", g.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // --- probabilities
    auto* prob = app.add_subcommand("probabilities", "Born-rule outcome probabilities");
    std::string prob_state = "0,0,0", prob_rot;
    bool prob_six = false;
    prob->add_option("--state", prob_state, "Pauli vector sx,sy,sz");
    prob->add_option("--rotation", prob_rot, "frame rotation, row-major 9-tuple JSON");
    prob->add_flag("--six", prob_six, "use the six-outcome scheme");

    // --- estimate
    auto* est = app.add_subcommand("estimate", "maximum-likelihood reconstruction");
    std::string est_counts, est_six_counts, est_rot, est_mode = "auto";
    est->add_option("--counts", est_counts, "four counts n1,n2,n3,n4");
    est->add_option("--six-counts", est_six_counts, "six counts x+,x-,y+,y-,z+,z-");
    est->add_option("--rotation", est_rot, "frame rotation, row-major 9-tuple JSON");
    est->add_option("--mode", est_mode, "auto or force-boundary")
        ->check(CLI::IsMember({"auto", "force-boundary"}));

    // --- simulate
    auto* sim = app.add_subcommand("simulate", "synthetic detector clicks");
    std::string sim_state = "0,0,0", sim_rot;
    std::uint64_t sim_n = 1000;
    bool sim_six = false;
    double sim_misalign = 0.0;
    sim->add_option("--state", sim_state, "Pauli vector sx,sy,sz");
    sim->add_option("--rotation", sim_rot, "frame rotation, row-major 9-tuple JSON");
    sim->add_option("-N,--clicks", sim_n, "number of qubits to detect");
    sim->add_flag("--six", sim_six, "use the six-outcome scheme");
    sim->add_option("--misalign-deg", sim_misalign, "misalign the frame before sampling");

    // --- adaptive
    auto* ad = app.add_subcommand("adaptive", "measurement-strategy trials");
    std::string ad_strategy = "static", ad_alignment = "parallel", ad_state;
    std::uint64_t ad_n = 1000, ad_trials = 100;
    double ad_angle = 0.0;
    ad->add_option("--strategy", ad_strategy, "static, premeasure or selflearn");
    ad->add_option("--alignment", ad_alignment, "parallel, antiparallel or random");
    ad->add_option("-N,--clicks", ad_n, "qubits per trial");
    ad->add_option("--trials", ad_trials, "number of trials");
    ad->add_option("--state", ad_state, "fixed Pauli vector (random pure when omitted)");
    ad->add_option("--misalign-deg", ad_angle, "static frame misalignment");

    // --- pair
    auto* pr = app.add_subcommand("pair", "two-qubit tomography and calibration");
    std::string pr_source = "singlet", pr_state1, pr_state2, pr_rot_b;
    std::uint64_t pr_pairs = 0;
    pr->add_option("--source", pr_source, "singlet or product");
    pr->add_option("--state1", pr_state1, "first qubit Pauli vector (product source)");
    pr->add_option("--state2", pr_state2, "second qubit Pauli vector (product source)");
    pr->add_option("--rotation-b", pr_rot_b, "frame B rotation, row-major 9-tuple JSON");
    pr->add_option("--pairs", pr_pairs, "sample this many pairs instead of exact q");

    // --- circuit
    auto* circ = app.add_subcommand("circuit", "measurement network");
    std::string circ_state;
    circ->add_option("--state", circ_state, "run the network on this Pauli vector");

    // --- figure
    auto* fig = app.add_subcommand("figure", "figure-data experiments");
    std::string fig_id = "fig6", fig_config, fig_outdir = "figures";
    std::optional<std::uint64_t> fig_trials;
    fig->add_option("--id", fig_id, "fig5, fig6, fig7, fig9, fig10 or custom");
    fig->add_option("--config", fig_config, "JSON config file (overrides defaults)");
    fig->add_option("--out-dir", fig_outdir, "directory for CSV and summary files");
    fig->add_option("--trials", fig_trials, "override trial count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (*prob) {
            const PauliVector s = parse_state(prob_state);
            Json out;
            if (prob_six) {
                SixFrame f = prob_rot.empty()
                                 ? SixFrame()
                                 : SixFrame::from_rotation(
                                       rotation_from_json(Json::parse(prob_rot)));
                out["p"] = six_state_probabilities(s, f);
            } else {
                out["p"] = probabilities_to_json(outcome_probabilities(s, parse_frame(prob_rot)));
            }
            write_output(g, out.dump(2));
        } else if (*est) {
            Json out;
            if (!est_six_counts.empty()) {
                const auto v = parse_counts_list(est_six_counts, 6);
                SixCounts c;
                for (int i = 0; i < 6; ++i) { c.n[i] = v[i]; c.total += v[i]; }
                SixFrame f = est_rot.empty()
                                 ? SixFrame()
                                 : SixFrame::from_rotation(
                                       rotation_from_json(Json::parse(est_rot)));
                out = estimate_to_json(ml_estimate_six(c, f));
            } else if (!est_counts.empty()) {
                const auto v = parse_counts_list(est_counts, 4);
                ClickCounts c;
                for (int i = 0; i < 4; ++i) { c.n[i] = v[i]; c.total += v[i]; }
                const MlMode mode = est_mode == "auto" ? MlMode::Auto : MlMode::ForceBoundary;
                out = estimate_to_json(ml_estimate_four(c, parse_frame(est_rot), mode));
            } else {
                throw ConfigError("estimate needs --counts or --six-counts");
            }
            write_output(g, out.dump(2));
        } else if (*sim) {
            const PauliVector s = parse_state(sim_state);
            Rng rng(g.seed);
            Json out;
            if (sim_six) {
                SixFrame f = sim_rot.empty()
                                 ? SixFrame()
                                 : SixFrame::from_rotation(
                                       rotation_from_json(Json::parse(sim_rot)));
                out = counts_to_json(sample_six(s, f, sim_n, rng));
            } else {
                TetraFrame f = parse_frame(sim_rot);
                if (sim_misalign > 0.0) f = misalign(f, sim_misalign * M_PI / 180.0, rng);
                out = counts_to_json(sample_clicks(s, f, sim_n, rng));
            }
            write_output(g, out.dump(2));
        } else if (*ad) {
            ExperimentConfig cfg = default_config("custom");
            cfg.seed = g.seed;
            cfg.trials = ad_trials;
            cfg.strategy.kind = strategy_from_string(ad_strategy);
            cfg.strategy.alignment = alignment_from_string(ad_alignment);
            cfg.strategy.n_clicks = ad_n;
            cfg.strategy.misalignment_deg = ad_angle;
            if (ad_state.empty()) {
                cfg.state.kind = ExperimentConfig::StateSpec::Kind::RandomPure;
            } else {
                cfg.state.kind = ExperimentConfig::StateSpec::Kind::Fixed;
                cfg.state.s = parse_state(ad_state);
            }
            cfg.out_dir.clear();  // write through --out instead
            const ExperimentReport rep = run_experiment(cfg);
            write_output(g, g.format == "csv" ? rep.csv : rep.summary.dump(2));
        } else if (*pr) {
            TwoQubitState rho = TwoQubitState::singlet();
            if (pr_source == "product") {
                if (pr_state1.empty() || pr_state2.empty())
                    throw ConfigError("product source needs --state1 and --state2");
                rho = TwoQubitState::product(parse_state(pr_state1), parse_state(pr_state2));
            } else if (pr_source != "singlet") {
                throw ConfigError("source must be singlet or product, got: " + pr_source);
            }
            const TetraFrame frame_a;
            const TetraFrame frame_b = pr_rot_b.empty()
                                           ? TetraFrame()
                                           : TetraFrame::from_rotation(
                                                 rotation_from_json(Json::parse(pr_rot_b)));
            JointProbabilities q = joint_probabilities(rho, frame_a, frame_b);
            Json out;
            out["q_exact"] = joint_to_json(q);
            if (pr_pairs > 0) {
                Rng rng(g.seed);
                const Mat4 counts = sample_pair_clicks(rho, frame_a, frame_b, pr_pairs, rng);
                JointProbabilities qhat;
                qhat.q = counts / static_cast<double>(pr_pairs);
                out["q_sampled"] = joint_to_json(qhat);
                q = qhat;
            }
            out["rho_reconstructed"] = two_qubit_to_json(reconstruct_two_qubit(q, frame_a, frame_b));
            if (pr_source == "singlet") {
                const OrientationResult orient = orientation_dyadic(q, frame_a, frame_b);
                out["orientation"] = rotation_to_json(orient.O);
                out["orientation_orthogonality_error"] = orient.orthogonality_error;
                out["orientation_warning"] = orient.orthogonal_warning;
            }
            write_output(g, out.dump(2));
        } else if (*circ) {
            Json out;
            out["gates"] = circuit_to_json(build_network());
            const auto [alpha, beta] = preparation_angles();
            out["alpha"] = alpha;
            out["beta"] = beta;
            if (!circ_state.empty()) {
                const NetworkResult res = run_network(parse_state(circ_state));
                out["outcome_probabilities"] = res.probabilities;  // order 00,01,10,11
                Json post = Json::array();
                for (int m = 0; m < 4; ++m)
                    post.push_back(res.post_defined[m] ? state_to_json(res.post[m])
                                                       : Json(nullptr));
                out["post_states"] = post;
            }
            write_output(g, out.dump(2));
        } else if (*fig) {
            ExperimentConfig cfg;
            if (!fig_config.empty()) {
                std::ifstream f(fig_config);
                if (!f) throw ConfigError("cannot read config file: " + fig_config);
                Json j;
                try {
                    f >> j;
                } catch (const Json::exception& e) {
                    throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
                }
                if (!j.contains("id")) j["id"] = fig_id;
                cfg = config_from_json(j);
            } else {
                cfg = default_config(fig_id);
            }
            cfg.out_dir = fig_outdir;
            if (fig->count("--seed") || app.count("--seed")) cfg.seed = g.seed;
            if (fig_trials) cfg.trials = *fig_trials;
            const ExperimentReport rep = run_experiment(cfg);
            std::cout << "wrote " << rep.csv_path << " and " << rep.summary_path << '\n';
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
