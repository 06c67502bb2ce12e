#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "relsim/config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Exact simulator and numerical verifier for the two-element "
                 "repairable-system Markov process"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 0;
    long reps = 0;
    std::string out_dir;
    bool have_seed = false, have_reps = false;

    auto* run = app.add_subcommand("run", "Run the experiment in the config file");
    run->add_option("config", config_path, "Path to JSON config")->required();
    run->add_option("--seed", seed, "Override the master seed")
        ->each([&](const std::string&) { have_seed = true; });
    run->add_option("--reps", reps, "Override the replication count")
        ->each([&](const std::string&) { have_reps = true; });
    run->add_option("--out", out_dir, "Override the output directory");

    auto* validate =
        app.add_subcommand("validate", "Check config constraints without running");
    validate->add_option("config", config_path, "Path to JSON config")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors always exit with 1
    }

    try {
        relsim::ExperimentConfig cfg = relsim::load_config(config_path);
        if (have_seed) {
            cfg.seed = seed;
            cfg.resolved["seed"] = seed;
        }
        if (have_reps) {
            cfg.reps = reps;
            cfg.resolved["reps"] = reps;
        }
        if (!out_dir.empty()) {
            cfg.output_dir = out_dir;
            cfg.resolved["output_dir"] = out_dir;
        }
        relsim::validate_config(cfg);
        if (validate->parsed()) {
            std::cout << "config ok: experiment=" << to_string(cfg.experiment)
                      << " seed=" << cfg.seed << "\n";
            return 0;
        }
        const int status = relsim::run_experiment(cfg);
        std::cout << "experiment " << to_string(cfg.experiment)
                  << " finished with status " << status << "\n";
        return status;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
