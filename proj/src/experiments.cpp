#include "discrim/experiments.hpp"

#include "discrim/constructions.hpp"
#include "discrim/geometry.hpp"
#include "discrim/norms.hpp"
#include "discrim/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace discrim {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void validate_common(const ExperimentConfig& cfg, int d_cap) {
    require(cfg.trials >= 1, cfg.name + ": trials >= 1 required");
    require(!cfg.d_values.empty(), cfg.name + ": d_values must be non-empty");
    for (int d : cfg.d_values)
        require(d >= 2 && d <= d_cap,
                cfg.name + ": d out of range [2, " + std::to_string(d_cap) + "]");
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

ExperimentRecord rec(const ExperimentConfig& cfg, int d, int trial, const std::string& metric,
                     double value, std::optional<double> se = std::nullopt) {
    return {cfg.name, d, trial, static_cast<std::uint64_t>(std::max(trial, 0)),
            metric, value, se};
}

/// Per-(d, trial) stream: stream_id is the trial index, d decorrelates runs
/// at different dimensions.
RngStream trial_stream(const ExperimentConfig& cfg, int d, int trial) {
    return RngStream(cfg.seed, static_cast<std::uint64_t>(trial))
        .substream(static_cast<std::uint64_t>(d));
}

std::vector<double> metric_values(const std::vector<ExperimentRecord>& records, int d,
                                  const std::string& metric) {
    std::vector<double> out;
    for (const auto& r : records)
        if (r.d == d && r.metric == metric && r.trial >= 0) out.push_back(r.value);
    return out;
}

void add_median_fit(ExperimentResult& result, const ExperimentConfig& cfg,
                    const std::string& metric) {
    std::vector<std::pair<int, double>> pts;
    for (int d : cfg.d_values) {
        auto vals = metric_values(result.records, d, metric);
        if (!vals.empty()) pts.emplace_back(d, median(std::move(vals)));
    }
    if (pts.size() >= 2) result.fits[metric] = fit_loglog(pts);
}

} // namespace

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median: empty input");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

SlopeFit fit_loglog(const std::vector<std::pair<int, double>>& d_vs_value) {
    if (d_vs_value.size() < 2)
        throw std::invalid_argument("fit_loglog: need at least two points");
    std::vector<double> xs, ys;
    for (const auto& [d, v] : d_vs_value) {
        if (v <= 0.0) throw std::invalid_argument("fit_loglog: values must be positive");
        xs.push_back(std::log(static_cast<double>(d)));
        ys.push_back(std::log(v));
    }
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {
        "typical-states", "werner",        "data-hiding", "lo-vs-locc", "mean-width-suite",
        "net-approx",     "concentration", "spectra",     "majorization"};
    return names;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("config: cannot open " + path);
    nlohmann::json j;
    is >> j;
    ExperimentConfig cfg;
    cfg.name = j.value("name", cfg.name);
    if (j.contains("d_values")) cfg.d_values = j["d_values"].get<std::vector<int>>();
    cfg.trials = j.value("trials", cfg.trials);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.epsilon = j.value("epsilon", cfg.epsilon);
    cfg.n_samples = j.value("n_samples", cfg.n_samples);
    cfg.output_path = j.value("output_path", cfg.output_path);
    cfg.format = j.value("format", cfg.format);
    if (j.contains("solver")) {
        const auto& s = j["solver"];
        cfg.solver.tolerance = s.value("tolerance", cfg.solver.tolerance);
        cfg.solver.max_iterations = s.value("max_iterations", cfg.solver.max_iterations);
        cfg.solver.restarts = s.value("restarts", cfg.solver.restarts);
        cfg.solver.penalty = s.value("penalty", cfg.solver.penalty);
    }
    return cfg;
}

ExperimentResult run_typical_states(const ExperimentConfig& cfg) {
    validate_common(cfg, 6);
    ExperimentResult result;
    for (int d : cfg.d_values) {
        for (int trial = 0; trial < cfg.trials; ++trial) {
            RngStream rng = trial_stream(cfg, d, trial);
            DensityOperator rho = uniform_state(d * d, rng);
            DensityOperator sigma = uniform_state(d * d, rng);
            HermitianOperator delta(rho.op.matrix() - sigma.op.matrix(), BipartiteShape{d, d});
            const double all = all_norm(delta);
            SolverReport ppt = ppt_norm(delta, cfg.solver);
            RngStream seesaw_rng = rng.substream(7);
            auto [locc, povm] = locc_one_way_lower(delta, cfg.solver, &seesaw_rng);
            result.records.push_back(rec(cfg, d, trial, "all_norm", all));
            result.records.push_back(rec(cfg, d, trial, "ppt_lower", ppt.lower));
            result.records.push_back(rec(cfg, d, trial, "ppt_upper", ppt.upper));
            result.records.push_back(rec(cfg, d, trial, "locc1_lower", locc));
            result.records.push_back(rec(cfg, d, trial, "ppt_lower_over_all", ppt.lower / all));
            result.records.push_back(
                rec(cfg, d, trial, "ppt_converged",
                    ppt.status == SolverStatus::Converged ? 1.0 : 0.0));
        }
    }
    add_median_fit(result, cfg, "all_norm");
    add_median_fit(result, cfg, "locc1_lower");
    add_median_fit(result, cfg, "ppt_lower");
    return result;
}

ExperimentResult run_werner(const ExperimentConfig& cfg) {
    validate_common(cfg, 6);
    ExperimentResult result;
    for (int d : cfg.d_values) {
        StatePair pair = werner_pair(d);
        HermitianOperator delta = pair.difference();
        SolverReport ppt = ppt_norm(delta, cfg.solver);
        result.records.push_back(rec(cfg, d, 0, "all_norm", all_norm(delta)));
        result.records.push_back(rec(cfg, d, 0, "ppt_lower", ppt.lower));
        result.records.push_back(rec(cfg, d, 0, "ppt_upper", ppt.upper));
        result.records.push_back(rec(cfg, d, 0, "ppt_reference", 4.0 / (d + 1)));
    }
    return result;
}

ExperimentResult run_data_hiding(const ExperimentConfig& cfg) {
    validate_common(cfg, 6);
    for (int d : cfg.d_values) require(d % 2 == 0, "data-hiding: d must be even");
    ExperimentResult result;
    for (int d : cfg.d_values) {
        for (int trial = 0; trial < cfg.trials; ++trial) {
            RngStream rng = trial_stream(cfg, d, trial);
            StatePair pair = data_hiding_pair(d, rng);
            HermitianOperator delta = pair.difference();
            SolverReport ppt = ppt_norm(delta, cfg.solver);
            RngStream seesaw_rng = rng.substream(7);
            auto [locc, povm] = locc_one_way_lower(delta, cfg.solver, &seesaw_rng);
            result.records.push_back(rec(cfg, d, trial, "all_norm", all_norm(delta)));
            result.records.push_back(rec(cfg, d, trial, "ppt_lower", ppt.lower));
            result.records.push_back(rec(cfg, d, trial, "ppt_upper", ppt.upper));
            result.records.push_back(rec(cfg, d, trial, "locc1_lower", locc));
        }
    }
    add_median_fit(result, cfg, "locc1_lower");
    return result;
}

ExperimentResult run_lo_vs_locc(const ExperimentConfig& cfg) {
    validate_common(cfg, 16);
    for (int d : cfg.d_values) require(d % 2 == 0, "lo-vs-locc: d must be even");
    ExperimentResult result;
    for (int d : cfg.d_values) {
        for (int trial = 0; trial < cfg.trials; ++trial) {
            RngStream rng = trial_stream(cfg, d, trial);
            FlaggedBlockOperator delta = lo_vs_locc_delta(d, rng);
            const double locc = locc_one_way_exact_flagged(delta);
            LoAscentConfig ascent;
            ascent.restarts = cfg.solver.restarts * 10;
            RngStream ascent_rng = rng.substream(7);
            const double lo = lo_norm_block_upper(delta, ascent, &ascent_rng);
            result.records.push_back(rec(cfg, d, trial, "locc1_exact", locc));
            result.records.push_back(rec(cfg, d, trial, "lo_upper_estimate", lo));
            result.records.push_back(rec(cfg, d, trial, "lo_over_locc", lo / locc));
            result.records.push_back(
                rec(cfg, d, trial, "lo_over_d32", lo / std::pow(d, 1.5)));
        }
    }
    add_median_fit(result, cfg, "lo_over_locc");
    return result;
}

ExperimentResult run_net_approx(const ExperimentConfig& cfg) {
    validate_common(cfg, 3);
    ExperimentResult result;
    for (int d : cfg.d_values) {
        RngStream rng(cfg.seed, 0);
        PovmFamily family = net_povm_family(d, cfg.epsilon, rng);
        result.records.push_back(
            rec(cfg, d, -1, "family_size", static_cast<double>(family.members.size())));
        int violations = 0;
        double min_ratio = 2.0;
        RngStream targets = rng.substream(99);
        const int n_targets = std::max(cfg.trials, 200);
        for (int t = 0; t < n_targets; ++t) {
            HermitianOperator delta = gue_standard(d, targets);
            const double all = all_norm(delta);
            double best = 0.0;
            for (const auto& m : family.members) best = std::max(best, povm_norm(delta, m));
            const double ratio = best / all;
            min_ratio = std::min(min_ratio, ratio);
            if (ratio < (1.0 - cfg.epsilon) - 1e-9) ++violations;
        }
        result.records.push_back(rec(cfg, d, -1, "violations", violations));
        result.records.push_back(rec(cfg, d, -1, "min_ratio", min_ratio));
    }
    return result;
}

ExperimentResult run_mean_width_suite(const ExperimentConfig& cfg) {
    validate_common(cfg, 16);
    ExperimentResult result;
    for (int d : cfg.d_values) {
        RngStream rng(cfg.seed, 0);
        RngStream povm_rng = rng.substream(1);
        Povm m = random_rank1_povm(d, d, povm_rng);
        HermitianSupportOracle km{
            d, [&m](const HermitianOperator& u) { return povm_norm(u, m); }};
        RngStream width_rng = rng.substream(2);
        WidthEstimate w = mean_width_mc(to_real_oracle(km), cfg.n_samples, width_rng);
        const double reference = d * geometry_constants(d * d).alpha_n;
        result.records.push_back(rec(cfg, d, -1, "km_width", w.mean, w.standard_error));
        result.records.push_back(rec(cfg, d, -1, "km_width_reference", reference));

        RngStream s1_rng = rng.substream(3);
        WidthEstimate w1 = mean_width_mc(
            to_real_oracle(schatten_ball_oracle(d, SchattenBall::S1)), cfg.n_samples, s1_rng);
        RngStream si_rng = rng.substream(4);
        WidthEstimate wi = mean_width_mc(
            to_real_oracle(schatten_ball_oracle(d, SchattenBall::Sinf)), cfg.n_samples, si_rng);
        result.records.push_back(rec(cfg, d, -1, "s1_width", w1.mean, w1.standard_error));
        result.records.push_back(
            rec(cfg, d, -1, "s1_width_reference", schatten_width_reference(d, SchattenBall::S1)));
        result.records.push_back(rec(cfg, d, -1, "sinf_width", wi.mean, wi.standard_error));
        result.records.push_back(rec(cfg, d, -1, "sinf_width_reference",
                                     schatten_width_reference(d, SchattenBall::Sinf)));
    }
    return result;
}

ExperimentResult run_spectra(const ExperimentConfig& cfg) {
    validate_common(cfg, 16);
    ExperimentResult result;
    for (int d : cfg.d_values) {
        for (int trial = 0; trial < cfg.trials; ++trial) {
            RngStream rng = trial_stream(cfg, d, trial);
            HermitianOperator delta = traceless_sphere_direction(d, rng);
            DensityOperator rho = uniform_state(d, rng);
            DensityOperator sigma = uniform_state(d, rng);
            HermitianOperator diff(rho.op.matrix() - sigma.op.matrix());
            result.records.push_back(rec(cfg, d, trial, "delta_trace_norm", trace_norm(delta)));
            result.records.push_back(rec(cfg, d, trial, "delta_op_norm", operator_norm(delta)));
            result.records.push_back(rec(cfg, d, trial, "diff_trace_norm", trace_norm(diff)));
            result.records.push_back(rec(cfg, d, trial, "diff_op_norm", operator_norm(diff)));
        }
    }
    add_median_fit(result, cfg, "delta_trace_norm");
    add_median_fit(result, cfg, "diff_op_norm");
    return result;
}

ExperimentResult run_majorization(const ExperimentConfig& cfg) {
    validate_common(cfg, 64);
    ExperimentResult result;
    for (int n : cfg.d_values) {
        long violations = 0;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            RngStream rng = trial_stream(cfg, n, trial);
            Eigen::VectorXd x(n), y(n);
            for (int i = 0; i < n; ++i) x(i) = rng.normal();
            for (int i = 0; i < n; ++i) y(i) = rng.normal();
            x.array() -= x.mean();
            y.array() -= y.mean();
            for (int k = 1; k <= n; ++k)
                if (!majorization_factor_check(x, y, k)) ++violations;
        }
        result.records.push_back(rec(cfg, n, -1, "violations", static_cast<double>(violations)));
    }
    return result;
}

ExperimentResult run_concentration(const ExperimentConfig& cfg) {
    validate_common(cfg, 6);
    require(cfg.trials >= 100, "concentration: trials >= 100 required");
    ExperimentResult result;
    std::vector<std::pair<int, double>> stds;
    for (int d : cfg.d_values) {
        std::vector<double> all_values, ppt_values;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            RngStream rng = trial_stream(cfg, d, trial);
            DensityOperator rho = uniform_state(d * d, rng);
            DensityOperator sigma = uniform_state(d * d, rng);
            HermitianOperator delta(rho.op.matrix() - sigma.op.matrix(), BipartiteShape{d, d});
            const double all = all_norm(delta);
            SolverReport ppt = ppt_norm(delta, cfg.solver);
            all_values.push_back(all);
            ppt_values.push_back(ppt.lower);
            result.records.push_back(rec(cfg, d, trial, "all_norm", all));
            result.records.push_back(rec(cfg, d, trial, "ppt_lower", ppt.lower));
        }
        auto stddev = [](const std::vector<double>& v) {
            const double m = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
            double s = 0.0;
            for (double x : v) s += (x - m) * (x - m);
            return std::sqrt(s / (v.size() - 1));
        };
        const double all_std = stddev(all_values);
        result.records.push_back(rec(cfg, d, -1, "all_norm_std", all_std));
        result.records.push_back(rec(cfg, d, -1, "ppt_lower_std", stddev(ppt_values)));
        result.records.push_back(
            rec(cfg, d, -1, "all_norm_mean",
                std::accumulate(all_values.begin(), all_values.end(), 0.0) / all_values.size()));
        stds.emplace_back(d, all_std);
    }
    if (stds.size() >= 2) {
        std::sort(stds.begin(), stds.end());
        ExperimentRecord ratio{cfg.name, 0, -1, 0, "all_std_ratio_max_over_min_d",
                               stds.back().second / stds.front().second, std::nullopt};
        result.records.push_back(std::move(ratio));
    }
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.name == "typical-states") return run_typical_states(cfg);
    if (cfg.name == "werner") return run_werner(cfg);
    if (cfg.name == "data-hiding") return run_data_hiding(cfg);
    if (cfg.name == "lo-vs-locc") return run_lo_vs_locc(cfg);
    if (cfg.name == "net-approx") return run_net_approx(cfg);
    if (cfg.name == "mean-width-suite") return run_mean_width_suite(cfg);
    if (cfg.name == "spectra") return run_spectra(cfg);
    if (cfg.name == "majorization") return run_majorization(cfg);
    if (cfg.name == "concentration") return run_concentration(cfg);
    throw std::invalid_argument("unknown experiment: " + cfg.name);
}

void emit(const std::vector<ExperimentRecord>& records, const std::string& format,
          const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("emit: cannot open " + path);
    if (format == "csv") {
        os << "experiment,d,trial,stream_id,metric,value,standard_error\n";
        for (const auto& r : records) {
            os << r.experiment << ',' << r.d << ',' << r.trial << ',' << r.stream_id << ','
               << r.metric << ',' << fmt(r.value) << ','
               << (r.standard_error ? fmt(*r.standard_error) : "") << '\n';
        }
    } else if (format == "jsonl") {
        for (const auto& r : records) {
            nlohmann::json j{{"experiment", r.experiment}, {"d", r.d},
                             {"trial", r.trial},           {"stream_id", r.stream_id},
                             {"metric", r.metric},         {"value", r.value}};
            if (r.standard_error) j["standard_error"] = *r.standard_error;
            os << j.dump() << '\n';
        }
    } else {
        throw std::invalid_argument("emit: unknown format " + format);
    }
    if (!os) throw std::runtime_error("emit: write failed for " + path);
}

} // namespace discrim
