#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "relsim/intensity.hpp"
#include "relsim/recurrence.hpp"
#include "relsim/sampler.hpp"

namespace relsim {

enum class ExperimentKind {
    simulate,
    validate_sampler,
    drift_check,
    hitting_moments,
    theorem_check,
    dynkin_check,
    stationary,
    regeneration,
};

const char* to_string(ExperimentKind k);

inline nlohmann::json state_to_json(const State& z) {
    return {{"i", z.i}, {"x", z.x}, {"j", z.j}, {"y", z.y}};
}
State state_from_json(const nlohmann::json& j);

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::simulate;
    FamilyDescriptor lambda, mu;
    double gamma = 1.0, Gamma = 1.0;
    bool unchecked = false;  // fault-injection escape hatch
    double time_cap = 1e6;

    State z0;
    double horizon = 10.0;
    double burn_in = 0.0;
    int bins = 1000;
    double K = 0.0, K1 = 0.0;
    double m = 1.0, m0 = 1.0, k = 0.0, k1 = 0.0;
    double delta = 0.2, epsilon = 0.0;
    double p = 1.0;        // moment power for hitting-moments
    double h_power = 1.0;  // Lyapunov power for dynkin-check
    double t = 1.0;        // horizon for dynkin-check
    int part = 1;
    int cycles = 5;
    std::vector<double> deltas;  // validate-sampler grid
    long reps = 10'000;
    long grid_points = 10'000;  // drift-check grid size
    std::uint64_t seed = 1;
    SampleMethod method = SampleMethod::thinning;
    std::string output_dir = "out";

    nlohmann::json resolved;  // config with defaults applied, for provenance

    IntensityModel make_model() const;
};

// Parse + validate; throws std::runtime_error with the offending field or
// constraint name.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const nlohmann::json& j);

// Validate cross-parameter hypotheses without running anything.
void validate_config(const ExperimentConfig& cfg);

// Dispatch, write reports under cfg.output_dir.
// Exit status: 0 consistent/pass, 2 violated, 3 inconclusive.
int run_experiment(const ExperimentConfig& cfg);

}  // namespace relsim
