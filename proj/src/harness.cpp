#include "tetra/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "tetra/errors.hpp"
#include "tetra/metrics.hpp"
#include "tetra/parallel.hpp"

namespace tetra {

namespace {

const std::vector<std::string> kKnownIds = {"fig5", "fig6", "fig7",
                                            "fig9", "fig10", "custom"};

std::string csv_row(const std::vector<std::string>& cells) {
    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) row += ',';
        row += cells[i];
    }
    row += '\n';
    return row;
}

std::string num(double v) { return format_number(v); }
std::string num(std::uint64_t v) { return std::to_string(v); }

PauliVector draw_state(const ExperimentConfig::StateSpec& spec, Rng& rng) {
    switch (spec.kind) {
        case ExperimentConfig::StateSpec::Kind::Fixed: return spec.s;
        case ExperimentConfig::StateSpec::Kind::RandomPure:
            return random_state(StateKind::Pure, rng);
        case ExperimentConfig::StateSpec::Kind::RandomBall:
            return random_state(StateKind::Ball, rng);
    }
    return spec.s;
}

double mean_of(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return v.empty() ? 0.0 : acc / static_cast<double>(v.size());
}

double stddev_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

// ---------------------------------------------------------------------------
// fig5: likelihood clouds shrinking with N
// ---------------------------------------------------------------------------

void run_fig5(const ExperimentConfig& cfg, std::string& csv, Json& summary) {
    csv += csv_row({"N", "sample", "sx", "sy", "sz"});
    const TetraFrame frame;
    Json per_n = Json::array();
    std::uint64_t stream = 0;
    for (std::uint64_t n : cfg.n_grid) {
        Rng rng(cfg.seed + stream++);
        const ClickCounts counts = sample_clicks(cfg.state.s, frame, n, rng);
        Rng cloud_rng(cfg.seed + 1000000 + stream);
        const auto cloud = emit_likelihood_cloud(counts, frame, cfg.cloud_samples, cloud_rng);
        Vec3 mean = Vec3::Zero();
        for (const auto& p : cloud) mean += p;
        mean /= static_cast<double>(cloud.size());
        double cov_trace = 0.0;
        for (const auto& p : cloud) cov_trace += (p - mean).squaredNorm();
        cov_trace /= static_cast<double>(cloud.size());
        for (std::size_t i = 0; i < cloud.size(); ++i)
            csv += csv_row({num(n), num(static_cast<std::uint64_t>(i)),
                            num(cloud[i].x()), num(cloud[i].y()), num(cloud[i].z())});
        const Estimate ml = ml_estimate_four(counts, frame);
        Json entry;
        entry["N"] = n;
        entry["counts"] = counts_to_json(counts);
        entry["ml_estimate"] = estimate_to_json(ml);
        entry["cloud_mean"] = state_to_json(mean);
        entry["cloud_cov_trace"] = cov_trace;
        per_n.push_back(entry);
    }
    summary["clouds"] = per_n;
}

// ---------------------------------------------------------------------------
// fig6: static ML error vs N for s = 0 and s = -a_4
// ---------------------------------------------------------------------------

void run_fig6(const ExperimentConfig& cfg, std::string& csv, Json& summary) {
    csv += csv_row({"state", "N", "trial", "seed", "dist", "sq_dist", "fidelity"});
    const TetraFrame frame;
    const std::array<std::pair<std::string, PauliVector>, 2> cases = {
        std::make_pair(std::string("mixed"), PauliVector(PauliVector::Zero())),
        std::make_pair(std::string("antialigned"), PauliVector(-frame.vec(3)))};

    Json cases_json = Json::array();
    std::uint64_t stream = 0;
    for (const auto& [label, s] : cases) {
        Json rows = Json::array();
        for (std::uint64_t n : cfg.n_grid) {
            std::vector<double> dists(cfg.trials);
            std::vector<TrialResult> results(cfg.trials);
            const std::uint64_t base = cfg.seed + 1000000 * stream++;
            parallel_for(cfg.trials, [&](std::size_t t) {
                Rng rng(base + t);
                results[t] = run_static(s, frame, n, rng);
                dists[t] = std::sqrt(results[t].sq_dist);
            });
            for (std::uint64_t t = 0; t < cfg.trials; ++t)
                csv += csv_row({label, num(n), num(t), num(base + t), num(dists[t]),
                                num(results[t].sq_dist), num(results[t].fidelity)});
            const PredictionSet pred = predictions(s, frame, n);
            Json row;
            row["N"] = n;
            row["mean_dist"] = mean_of(dists);
            row["std_dist"] = stddev_of(dists);
            row["prediction_rms"] =
                std::sqrt(label == "mixed" ? pred.msd_generic.value
                                           : pred.msd_antialigned.value);
            row["prediction_applicable"] = label == "mixed"
                                               ? pred.msd_generic.valid
                                               : pred.msd_antialigned.valid;
            rows.push_back(row);
        }
        Json entry;
        entry["state"] = label;
        entry["points"] = rows;
        cases_json.push_back(entry);
    }
    summary["cases"] = cases_json;
}

// ---------------------------------------------------------------------------
// fig7: misalignment sensitivity of the aligned/anti-aligned strategies
// ---------------------------------------------------------------------------

void run_fig7(const ExperimentConfig& cfg, std::string& csv, Json& summary) {
    csv += csv_row({"alignment", "angle_deg", "mean_sq_dist", "mean_infidelity"});
    Json data = Json::array();
    std::uint64_t stream = 0;
    for (Alignment al : {Alignment::Parallel, Alignment::Antiparallel}) {
        const auto points = misalignment_sweep(al, cfg.angles_deg, cfg.strategy.n_clicks,
                                               cfg.trials, cfg.seed + 10000000 * stream++);
        for (const auto& pt : points) {
            csv += csv_row({to_string(al), num(pt.angle_deg), num(pt.mean_sq_dist),
                            num(pt.mean_infidelity)});
            Json row;
            row["alignment"] = to_string(al);
            row["angle_deg"] = pt.angle_deg;
            row["mean_sq_dist"] = pt.mean_sq_dist;
            row["mean_infidelity"] = pt.mean_infidelity;
            data.push_back(row);
        }
    }
    const double n = static_cast<double>(cfg.strategy.n_clicks);
    summary["points"] = data;
    summary["prediction_parallel"] = 1.0 / n;
    summary["prediction_antiparallel_exact"] = 0.5 / n;
    summary["prediction_kappa0_limit"] = 4.0 / (3.0 * n);
}

// ---------------------------------------------------------------------------
// fig9: self-learning parallel strategy vs the joint-measurement bound
// ---------------------------------------------------------------------------

void run_fig9(const ExperimentConfig& cfg, std::string& csv, Json& summary) {
    csv += csv_row({"N", "trial", "seed", "sq_dist", "fidelity"});
    Json rows = Json::array();
    std::uint64_t stream = 0;
    for (std::uint64_t n : cfg.n_grid) {
        std::vector<double> fid(cfg.trials), sq(cfg.trials);
        const std::uint64_t base = cfg.seed + 1000000 * stream++;
        parallel_for(cfg.trials, [&](std::size_t t) {
            Rng rng(base + t);
            const PauliVector s = random_state(StateKind::Pure, rng);
            const TrialResult tr =
                run_selflearning(s, n, Alignment::Parallel, rng, MlMode::ForceBoundary);
            fid[t] = tr.fidelity;
            sq[t] = tr.sq_dist;
        });
        for (std::uint64_t t = 0; t < cfg.trials; ++t)
            csv += csv_row({num(n), num(t), num(base + t), num(sq[t]), num(fid[t])});
        Json row;
        row["N"] = n;
        row["mean_fidelity"] = mean_of(fid);
        row["mean_error"] = 1.0 - mean_of(fid);
        row["quantum_limit_fidelity"] = (static_cast<double>(n) + 1.0) /
                                        (static_cast<double>(n) + 2.0);
        rows.push_back(row);
    }
    summary["points"] = rows;
}

// ---------------------------------------------------------------------------
// fig10: parallel vs random re-orientation, relative error difference
// ---------------------------------------------------------------------------

void run_fig10(const ExperimentConfig& cfg, std::string& csv, Json& summary) {
    csv += csv_row({"N", "trial", "seed", "err_parallel", "err_random"});
    Json rows = Json::array();
    std::vector<double> log_n, delta_f;
    std::uint64_t stream = 0;
    for (std::uint64_t n : cfg.n_grid) {
        std::vector<double> ep(cfg.trials), er(cfg.trials);
        const std::uint64_t base = cfg.seed + 1000000 * stream++;
        parallel_for(cfg.trials, [&](std::size_t t) {
            // paired design: both strategies estimate the same input state
            Rng state_rng(base + 3 * t);
            const PauliVector s = random_state(StateKind::Pure, state_rng);
            Rng rng_par(base + 3 * t + 1);
            Rng rng_rnd(base + 3 * t + 2);
            ep[t] = 1.0 - run_selflearning(s, n, Alignment::Parallel, rng_par).fidelity;
            er[t] = 1.0 - run_selflearning(s, n, Alignment::Random, rng_rnd).fidelity;
        });
        for (std::uint64_t t = 0; t < cfg.trials; ++t)
            csv += csv_row({num(n), num(t), num(base + 3 * t), num(ep[t]), num(er[t])});
        const double mp = mean_of(ep), mr = mean_of(er);
        const double df = 100.0 * (mr - mp) / mr;  // percent, as in the reference plot
        Json row;
        row["N"] = n;
        row["mean_err_parallel"] = mp;
        row["mean_err_random"] = mr;
        row["delta_f_percent"] = df;
        rows.push_back(row);
        log_n.push_back(std::log10(static_cast<double>(n)));
        delta_f.push_back(df);
    }
    // least-squares slope of delta_f against log10 N
    const double mx = mean_of(log_n), my = mean_of(delta_f);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
        sxx += (log_n[i] - mx) * (log_n[i] - mx);
        sxy += (log_n[i] - mx) * (delta_f[i] - my);
    }
    summary["points"] = rows;
    summary["delta_f_slope_per_decade"] = sxx > 0.0 ? sxy / sxx : 0.0;
}

// ---------------------------------------------------------------------------
// custom: one strategy, one state spec
// ---------------------------------------------------------------------------

void run_custom(const ExperimentConfig& cfg, std::string& csv, Json& summary) {
    csv += csv_row({"trial", "seed", "N", "strategy", "alignment", "angle_deg",
                    "sq_dist", "fidelity"});
    std::vector<TrialResult> results(cfg.trials);
    std::vector<PauliVector> states(cfg.trials);
    const double angle_rad = cfg.strategy.misalignment_deg * M_PI / 180.0;
    parallel_for(cfg.trials, [&](std::size_t t) {
        Rng rng(cfg.seed + t);
        const PauliVector s = draw_state(cfg.state, rng);
        states[t] = s;
        switch (cfg.strategy.kind) {
            case StrategyKind::Static: {
                TetraFrame frame;
                if (angle_rad > 0.0) frame = misalign(frame, angle_rad, rng);
                results[t] = run_static(s, frame, cfg.strategy.n_clicks, rng);
                break;
            }
            case StrategyKind::Premeasure:
                results[t] = run_premeasure(s, cfg.strategy.n_clicks, rng);
                break;
            case StrategyKind::SelfLearn:
                results[t] = run_selflearning(s, cfg.strategy.n_clicks,
                                              cfg.strategy.alignment, rng);
                break;
        }
    });
    std::vector<double> sq(cfg.trials), fid(cfg.trials);
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        sq[t] = results[t].sq_dist;
        fid[t] = results[t].fidelity;
        csv += csv_row({num(t), num(cfg.seed + t), num(cfg.strategy.n_clicks),
                        to_string(cfg.strategy.kind), to_string(cfg.strategy.alignment),
                        num(cfg.strategy.misalignment_deg), num(sq[t]), num(fid[t])});
    }
    summary["mean_sq_dist"] = mean_of(sq);
    summary["std_sq_dist"] = stddev_of(sq);
    summary["mean_fidelity"] = mean_of(fid);
    summary["std_fidelity"] = stddev_of(fid);
    if (cfg.state.kind == ExperimentConfig::StateSpec::Kind::Fixed) {
        summary["predictions"] =
            predictions_to_json(predictions(cfg.state.s, TetraFrame(),
                                            cfg.strategy.n_clicks));
    }
}

} // namespace

void ExperimentConfig::validate() const {
    if (std::find(kKnownIds.begin(), kKnownIds.end(), id) == kKnownIds.end())
        throw ConfigError("unknown experiment id: " + id);
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (id == "custom") strategy.validate();
    if ((id == "fig5" || id == "fig6" || id == "fig9" || id == "fig10") && n_grid.empty())
        throw ConfigError("experiment " + id + " needs a non-empty n_grid");
    if (id == "fig7" && angles_deg.empty())
        throw ConfigError("experiment fig7 needs a non-empty angles_deg");
}

ExperimentConfig default_config(const std::string& id) {
    ExperimentConfig cfg;
    cfg.id = id;
    cfg.seed = 1;
    if (id == "fig5") {
        cfg.state.kind = ExperimentConfig::StateSpec::Kind::Fixed;
        cfg.state.s = 0.84 * TetraFrame::reference()[0];  // toward a cube corner
        cfg.n_grid = {100, 200, 400, 800};
        cfg.cloud_samples = 2000;
        cfg.trials = 1;
    } else if (id == "fig6") {
        cfg.trials = 40;
        cfg.n_grid = {250, 500, 1000, 1500, 2000, 3000, 4500, 6000};
    } else if (id == "fig7") {
        cfg.trials = 2000;
        cfg.strategy.kind = StrategyKind::Static;
        cfg.strategy.n_clicks = 10000;
        cfg.angles_deg = {0.0, 0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0};
    } else if (id == "fig9") {
        cfg.trials = 1500;
        cfg.strategy.kind = StrategyKind::SelfLearn;
        cfg.strategy.alignment = Alignment::Parallel;
        cfg.n_grid = {4, 8, 16, 32, 64, 128, 256};
    } else if (id == "fig10") {
        cfg.trials = 1500;
        cfg.strategy.kind = StrategyKind::SelfLearn;
        cfg.n_grid = {8, 16, 32, 64, 128, 256};
    } else if (id == "custom") {
        // caller fills everything
    } else {
        throw ConfigError("unknown experiment id: " + id);
    }
    return cfg;
}

ExperimentConfig config_from_json(const Json& j) {
    ExperimentConfig cfg = default_config(j.value("id", std::string("custom")));
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("trials")) cfg.trials = j["trials"].get<std::uint64_t>();
    if (j.contains("n_grid")) cfg.n_grid = j["n_grid"].get<std::vector<std::uint64_t>>();
    if (j.contains("angles_deg")) cfg.angles_deg = j["angles_deg"].get<std::vector<double>>();
    if (j.contains("cloud_samples")) cfg.cloud_samples = j["cloud_samples"].get<std::uint64_t>();
    if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
    if (j.contains("format")) {
        const std::string f = j["format"].get<std::string>();
        if (f == "csv") cfg.format = ExperimentConfig::Format::Csv;
        else if (f == "json") cfg.format = ExperimentConfig::Format::Json;
        else throw ConfigError("format must be csv or json, got: " + f);
    }
    if (j.contains("state")) {
        const auto& st = j["state"];
        const std::string kind = st.value("kind", std::string("fixed"));
        if (kind == "fixed") {
            cfg.state.kind = ExperimentConfig::StateSpec::Kind::Fixed;
            cfg.state.s = state_from_json(st.at("s"));
            require_physical(cfg.state.s);
        } else if (kind == "random-pure") {
            cfg.state.kind = ExperimentConfig::StateSpec::Kind::RandomPure;
        } else if (kind == "random-ball") {
            cfg.state.kind = ExperimentConfig::StateSpec::Kind::RandomBall;
        } else {
            throw ConfigError("state.kind must be fixed, random-pure or random-ball");
        }
    }
    if (j.contains("strategy")) {
        const auto& st = j["strategy"];
        if (st.contains("kind")) cfg.strategy.kind = strategy_from_string(st["kind"]);
        if (st.contains("alignment"))
            cfg.strategy.alignment = alignment_from_string(st["alignment"]);
        if (st.contains("N")) cfg.strategy.n_clicks = st["N"].get<std::uint64_t>();
        if (st.contains("misalignment_deg"))
            cfg.strategy.misalignment_deg = st["misalignment_deg"].get<double>();
    }
    cfg.validate();
    return cfg;
}

Json config_to_json(const ExperimentConfig& c) {
    Json j;
    j["id"] = c.id;
    j["seed"] = c.seed;
    j["trials"] = c.trials;
    j["n_grid"] = c.n_grid;
    j["angles_deg"] = c.angles_deg;
    j["cloud_samples"] = c.cloud_samples;
    Json st;
    switch (c.state.kind) {
        case ExperimentConfig::StateSpec::Kind::Fixed:
            st["kind"] = "fixed";
            st["s"] = state_to_json(c.state.s);
            break;
        case ExperimentConfig::StateSpec::Kind::RandomPure: st["kind"] = "random-pure"; break;
        case ExperimentConfig::StateSpec::Kind::RandomBall: st["kind"] = "random-ball"; break;
    }
    j["state"] = st;
    Json strat;
    strat["kind"] = to_string(c.strategy.kind);
    strat["alignment"] = to_string(c.strategy.alignment);
    strat["N"] = c.strategy.n_clicks;
    strat["misalignment_deg"] = c.strategy.misalignment_deg;
    j["strategy"] = strat;
    j["rng"] = Rng::algorithm();
    return j;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    config.validate();
    ExperimentReport report;
    report.summary["config"] = config_to_json(config);

    if (config.id == "fig5") run_fig5(config, report.csv, report.summary);
    else if (config.id == "fig6") run_fig6(config, report.csv, report.summary);
    else if (config.id == "fig7") run_fig7(config, report.csv, report.summary);
    else if (config.id == "fig9") run_fig9(config, report.csv, report.summary);
    else if (config.id == "fig10") run_fig10(config, report.csv, report.summary);
    else run_custom(config, report.csv, report.summary);

    if (!config.out_dir.empty()) {
        std::filesystem::create_directories(config.out_dir);
        report.csv_path = config.out_dir + "/" + config.id + ".csv";
        report.summary_path = config.out_dir + "/" + config.id + "_summary.json";
        std::ofstream(report.csv_path) << report.csv;
        std::ofstream(report.summary_path) << report.summary.dump(2) << '\n';
    }
    return report;
}

std::vector<PauliVector> emit_likelihood_cloud(const ClickCounts& counts,
                                               const TetraFrame& frame,
                                               std::size_t n_samples, Rng& rng) {
    double loglik_max = 0.0;
    if (counts.total > 0) loglik_max = ml_estimate_four(counts, frame).loglik;

    auto loglik_at = [&](const PauliVector& s) {
        const Probabilities4 p = outcome_probabilities(s, frame);
        double ll = 0.0;
        for (int j = 0; j < 4; ++j) {
            if (counts.n[j] == 0) continue;
            if (p[j] <= 0.0) return -std::numeric_limits<double>::infinity();
            ll += static_cast<double>(counts.n[j]) * std::log(p[j]);
        }
        return ll;
    };

    std::vector<PauliVector> cloud;
    cloud.reserve(n_samples);
    std::uint64_t proposals = 0;
    const std::uint64_t cap = 1000000000ull;
    while (cloud.size() < n_samples) {
        if (++proposals > cap) throw Error("likelihood-cloud rejection sampling stalled");
        const PauliVector s = rng.ball_point();
        const double log_u = std::log(std::max(rng.uniform(), 1e-300));
        if (log_u <= loglik_at(s) - loglik_max) cloud.push_back(s);
    }
    return cloud;
}

} // namespace tetra
