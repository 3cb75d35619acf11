#include "discrim/experiments.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"distinguishability-norm experiments"};
    app.require_subcommand(1);

    auto* list_cmd = app.add_subcommand("list", "enumerate available experiments");

    discrim::ExperimentConfig cfg;
    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "run a named experiment");
    run_cmd->add_option("experiment", cfg.name, "experiment name (see `discrim list`)")
        ->required();
    run_cmd->add_option("--d", cfg.d_values, "dimension list, e.g. --d 2,3,4")
        ->delimiter(',');
    run_cmd->add_option("--trials", cfg.trials, "trials per dimension");
    run_cmd->add_option("--seed", cfg.seed, "base RNG seed");
    run_cmd->add_option("--out", cfg.output_path, "output file path");
    run_cmd->add_option("--format", cfg.format, "csv or jsonl");
    run_cmd->add_option("--epsilon", cfg.epsilon, "net approximation parameter");
    run_cmd->add_option("--samples", cfg.n_samples, "Monte-Carlo sample count");
    run_cmd->add_option("--solver.tolerance", cfg.solver.tolerance, "solver residual tolerance");
    run_cmd->add_option("--solver.max-iterations", cfg.solver.max_iterations,
                        "solver iteration cap");
    run_cmd->add_option("--solver.restarts", cfg.solver.restarts, "seesaw restarts");
    run_cmd->add_option("--solver.penalty", cfg.solver.penalty, "splitting penalty");
    run_cmd->add_option("--config", config_path, "JSON config file (CLI flags override)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (list_cmd->parsed()) {
        for (const auto& name : discrim::experiment_names()) std::cout << name << '\n';
        return 0;
    }

    try {
        if (!config_path.empty()) {
            discrim::ExperimentConfig file_cfg =
                discrim::ExperimentConfig::from_json_file(config_path);
            // CLI flags win over file values.
            if (run_cmd->count("experiment") == 0) cfg.name = file_cfg.name;
            if (run_cmd->count("--d") == 0) cfg.d_values = file_cfg.d_values;
            if (run_cmd->count("--trials") == 0) cfg.trials = file_cfg.trials;
            if (run_cmd->count("--seed") == 0) cfg.seed = file_cfg.seed;
            if (run_cmd->count("--out") == 0) cfg.output_path = file_cfg.output_path;
            if (run_cmd->count("--format") == 0) cfg.format = file_cfg.format;
            if (run_cmd->count("--epsilon") == 0) cfg.epsilon = file_cfg.epsilon;
            if (run_cmd->count("--samples") == 0) cfg.n_samples = file_cfg.n_samples;
            if (run_cmd->count("--solver.tolerance") == 0)
                cfg.solver.tolerance = file_cfg.solver.tolerance;
            if (run_cmd->count("--solver.max-iterations") == 0)
                cfg.solver.max_iterations = file_cfg.solver.max_iterations;
            if (run_cmd->count("--solver.restarts") == 0)
                cfg.solver.restarts = file_cfg.solver.restarts;
            if (run_cmd->count("--solver.penalty") == 0)
                cfg.solver.penalty = file_cfg.solver.penalty;
        }
        if (cfg.d_values.empty()) cfg.d_values = {2, 3, 4};
        if (cfg.output_path.empty()) cfg.output_path = "results." + cfg.format;

        discrim::ExperimentResult result = discrim::run_experiment(cfg);
        discrim::emit(result.records, cfg.format, cfg.output_path);

        std::cout << cfg.name << ": " << result.records.size() << " records -> "
                  << cfg.output_path << '\n';
        for (const auto& [metric, fit] : result.fits)
            std::printf("  slope(%s) = %.4f  (r^2 = %.4f)\n", metric.c_str(), fit.slope,
                        fit.r_squared);
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
