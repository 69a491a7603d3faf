#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tetra/adaptive.hpp"
#include "tetra/clicks.hpp"
#include "tetra/io.hpp"

namespace tetra {

/// Reproducible experiment description. Known ids come with defaults that
/// match the published simulation setups; "custom" takes everything from the
/// config file.
struct ExperimentConfig {
    std::string id = "custom";  // fig5 | fig6 | fig7 | fig9 | fig10 | custom

    struct StateSpec {
        enum class Kind { Fixed, RandomPure, RandomBall };
        Kind kind = Kind::RandomPure;
        PauliVector s = PauliVector::Zero();  // Fixed only
    };
    StateSpec state;

    StrategyConfig strategy;
    std::uint64_t trials = 1;
    std::uint64_t seed = 1;
    std::vector<std::uint64_t> n_grid;   // ensemble sizes to sweep
    std::vector<double> angles_deg;      // misalignment sweeps
    std::uint64_t cloud_samples = 2000;  // fig5 likelihood clouds

    std::string out_dir = ".";
    enum class Format { Csv, Json };
    Format format = Format::Csv;

    void validate() const;
};

ExperimentConfig default_config(const std::string& id);
ExperimentConfig config_from_json(const Json& j);
Json config_to_json(const ExperimentConfig& c);

/// Output of one experiment: the per-trial table, a summary with empirical
/// means next to the applicable closed-form predictions, and the files they
/// were written to (empty paths when writing is disabled).
struct ExperimentReport {
    std::string csv_path;
    std::string summary_path;
    std::string csv;        // per-trial rows, one header line
    Json summary;
};

ExperimentReport run_experiment(const ExperimentConfig& config);

/// Draws `n_samples` Pauli vectors from the likelihood density of the given
/// counts restricted to the Bloch ball, by rejection from the uniform ball
/// against the maximum-likelihood value.
std::vector<PauliVector> emit_likelihood_cloud(const ClickCounts& counts,
                                               const TetraFrame& frame,
                                               std::size_t n_samples, Rng& rng);

} // namespace tetra
