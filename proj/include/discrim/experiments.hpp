#ifndef DISCRIM_EXPERIMENTS_HPP
#define DISCRIM_EXPERIMENTS_HPP

#include "discrim/config.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace discrim {

/// Named, seeded experiment run descriptor.
struct ExperimentConfig {
    std::string name;
    std::vector<int> d_values;
    int trials = 20;
    std::uint64_t seed = 0;
    SolverConfig solver;
    double epsilon = 0.5;  // net-approx parameter
    int n_samples = 20000; // Monte-Carlo widths
    std::string output_path;
    std::string format = "csv"; // csv | jsonl

    static ExperimentConfig from_json_file(const std::string& path);
};

struct ExperimentRecord {
    std::string experiment;
    int d = 0;
    int trial = 0;
    std::uint64_t stream_id = 0;
    std::string metric;
    double value = 0.0;
    std::optional<double> standard_error;
};

/// Least-squares fit of log(median value) against log(d).
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

SlopeFit fit_loglog(const std::vector<std::pair<int, double>>& d_vs_value);

struct ExperimentResult {
    std::vector<ExperimentRecord> records;
    std::map<std::string, SlopeFit> fits; // per metric, when slopes are defined
};

const std::vector<std::string>& experiment_names();

/// Dispatch on cfg.name. Throws std::invalid_argument on bad configs.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

ExperimentResult run_typical_states(const ExperimentConfig& cfg);
ExperimentResult run_werner(const ExperimentConfig& cfg);
ExperimentResult run_data_hiding(const ExperimentConfig& cfg);
ExperimentResult run_lo_vs_locc(const ExperimentConfig& cfg);
ExperimentResult run_net_approx(const ExperimentConfig& cfg);
ExperimentResult run_mean_width_suite(const ExperimentConfig& cfg);
ExperimentResult run_spectra(const ExperimentConfig& cfg);
ExperimentResult run_majorization(const ExperimentConfig& cfg);
ExperimentResult run_concentration(const ExperimentConfig& cfg);

/// Write records as CSV (header + rows) or JSONL. Output is byte-identical
/// across reruns of the same config.
void emit(const std::vector<ExperimentRecord>& records, const std::string& format,
          const std::string& path);

double median(std::vector<double> values);

} // namespace discrim

#endif
