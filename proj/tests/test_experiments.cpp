#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "discrim/experiments.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace discrim;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("median") {
    CHECK(median({3.0, 1.0, 2.0}) == doctest::Approx(2.0));
    CHECK(median({4.0, 1.0, 2.0, 3.0}) == doctest::Approx(2.5));
    CHECK_THROWS_AS(median({}), std::invalid_argument);
}

TEST_CASE("fit_loglog recovers exact power laws") {
    std::vector<std::pair<int, double>> pts;
    for (int d : {2, 4, 8, 16}) pts.emplace_back(d, 3.0 / std::sqrt(static_cast<double>(d)));
    auto fit = fit_loglog(pts);
    CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(fit_loglog({{2, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(fit_loglog({{2, 1.0}, {4, -1.0}}), std::invalid_argument);
}

TEST_CASE("experiment names are dispatchable") {
    CHECK(experiment_names().size() == 9);
    ExperimentConfig bad;
    bad.name = "nonexistent";
    bad.d_values = {2};
    CHECK_THROWS_AS(run_experiment(bad), std::invalid_argument);
}

TEST_CASE("config validation") {
    ExperimentConfig cfg;
    cfg.name = "werner";
    cfg.d_values = {};
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
    cfg.d_values = {9};
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
    cfg.d_values = {2};
    cfg.trials = 0;
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
    ExperimentConfig conc;
    conc.name = "concentration";
    conc.d_values = {3};
    conc.trials = 10;
    CHECK_THROWS_AS(run_experiment(conc), std::invalid_argument);
    ExperimentConfig odd;
    odd.name = "lo-vs-locc";
    odd.d_values = {5};
    CHECK_THROWS_AS(run_experiment(odd), std::invalid_argument);
}

TEST_CASE("werner experiment brackets the reference") {
    ExperimentConfig cfg;
    cfg.name = "werner";
    cfg.d_values = {2, 3};
    cfg.trials = 1;
    auto result = run_experiment(cfg);
    for (int d : cfg.d_values) {
        double lower = 0.0, upper = 0.0, reference = 0.0;
        for (const auto& r : result.records) {
            if (r.d != d) continue;
            if (r.metric == "ppt_lower") lower = r.value;
            if (r.metric == "ppt_upper") upper = r.value;
            if (r.metric == "ppt_reference") reference = r.value;
        }
        CHECK(reference == doctest::Approx(4.0 / (d + 1)));
        CHECK(std::abs(lower - reference) <= 1e-2 * reference);
        CHECK(upper >= reference - 1e-7);
        CHECK(lower <= reference + 1e-7);
    }
}

TEST_CASE("records carry the trial index as stream id") {
    ExperimentConfig cfg;
    cfg.name = "spectra";
    cfg.d_values = {3, 4};
    cfg.trials = 3;
    auto result = run_experiment(cfg);
    for (const auto& r : result.records)
        if (r.trial >= 0) CHECK(r.stream_id == static_cast<std::uint64_t>(r.trial));
}

TEST_CASE("typical-states hierarchy audit per trial") {
    ExperimentConfig cfg;
    cfg.name = "typical-states";
    cfg.d_values = {2, 3};
    cfg.trials = 3;
    auto result = run_experiment(cfg);
    for (int d : cfg.d_values)
        for (int trial = 0; trial < cfg.trials; ++trial) {
            double all = 0.0, ppt_upper = 0.0, locc = 0.0;
            for (const auto& r : result.records) {
                if (r.d != d || r.trial != trial) continue;
                if (r.metric == "all_norm") all = r.value;
                if (r.metric == "ppt_upper") ppt_upper = r.value;
                if (r.metric == "locc1_lower") locc = r.value;
            }
            CHECK(locc <= ppt_upper + 1e-6);
            CHECK(ppt_upper <= all + 2e-6);
        }
    CHECK(result.fits.count("all_norm") == 1);
    CHECK(result.fits.count("locc1_lower") == 1);
}

TEST_CASE("experiments are deterministic given the config") {
    ExperimentConfig cfg;
    cfg.name = "spectra";
    cfg.d_values = {4, 8};
    cfg.trials = 5;
    cfg.seed = 12345;
    auto r1 = run_experiment(cfg);
    auto r2 = run_experiment(cfg);
    REQUIRE(r1.records.size() == r2.records.size());
    for (std::size_t i = 0; i < r1.records.size(); ++i) {
        CHECK(r1.records[i].metric == r2.records[i].metric);
        CHECK(r1.records[i].value == r2.records[i].value);
    }
}

TEST_CASE("emit writes stable CSV") {
    TempFile f1("test_emit_a.csv"), f2("test_emit_b.csv");
    ExperimentConfig cfg;
    cfg.name = "majorization";
    cfg.d_values = {12};
    cfg.trials = 50;
    auto result = run_experiment(cfg);
    emit(result.records, "csv", f1.path);
    emit(result.records, "csv", f2.path);
    const std::string a = slurp(f1.path);
    CHECK(a == slurp(f2.path));
    CHECK(a.rfind("experiment,d,trial,stream_id,metric,value,standard_error\n", 0) == 0);

    TempFile f3("test_emit_empty.csv");
    emit({}, "csv", f3.path);
    CHECK(slurp(f3.path) == "experiment,d,trial,stream_id,metric,value,standard_error\n");

    CHECK_THROWS_AS(emit({}, "xml", f3.path), std::invalid_argument);
    CHECK_THROWS_AS(emit({}, "csv", "/nonexistent-dir/x.csv"), std::runtime_error);
}

TEST_CASE("jsonl output round-trips") {
    TempFile f("test_emit.jsonl");
    ExperimentConfig cfg;
    cfg.name = "spectra";
    cfg.d_values = {4};
    cfg.trials = 2;
    auto result = run_experiment(cfg);
    emit(result.records, "jsonl", f.path);
    std::ifstream is(f.path);
    std::string line;
    std::size_t i = 0;
    while (std::getline(is, line)) {
        auto j = nlohmann::json::parse(line);
        REQUIRE(i < result.records.size());
        CHECK(j["experiment"].get<std::string>() == result.records[i].experiment);
        CHECK(j["d"].get<int>() == result.records[i].d);
        CHECK(j["trial"].get<int>() == result.records[i].trial);
        CHECK(j["metric"].get<std::string>() == result.records[i].metric);
        CHECK(j["value"].get<double>() == result.records[i].value);
        ++i;
    }
    CHECK(i == result.records.size());
}

TEST_CASE("config loads from JSON") {
    TempFile f("test_config.json");
    {
        std::ofstream os(f.path);
        os << R"({"name":"werner","d_values":[2,3],"trials":7,"seed":11,)"
           << R"("format":"jsonl","solver":{"tolerance":1e-6,"restarts":2}})";
    }
    auto cfg = ExperimentConfig::from_json_file(f.path);
    CHECK(cfg.name == "werner");
    CHECK(cfg.d_values == std::vector<int>{2, 3});
    CHECK(cfg.trials == 7);
    CHECK(cfg.seed == 11);
    CHECK(cfg.format == "jsonl");
    CHECK(cfg.solver.tolerance == doctest::Approx(1e-6));
    CHECK(cfg.solver.restarts == 2);
    CHECK(cfg.solver.penalty == doctest::Approx(1.0)); // default preserved
    CHECK_THROWS_AS(ExperimentConfig::from_json_file("no_such_config.json"),
                    std::runtime_error);
}

TEST_CASE("majorization experiment reports zero violations") {
    ExperimentConfig cfg;
    cfg.name = "majorization";
    cfg.d_values = {12};
    cfg.trials = 200;
    auto result = run_experiment(cfg);
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0].metric == "violations");
    CHECK(result.records[0].value == 0.0);
}

TEST_CASE("net-approx experiment at d = 2") {
    ExperimentConfig cfg;
    cfg.name = "net-approx";
    cfg.d_values = {2};
    cfg.trials = 50;
    cfg.epsilon = 0.5;
    auto result = run_experiment(cfg);
    double family_size = 0.0, violations = -1.0, min_ratio = 0.0;
    for (const auto& r : result.records) {
        if (r.metric == "family_size") family_size = r.value;
        if (r.metric == "violations") violations = r.value;
        if (r.metric == "min_ratio") min_ratio = r.value;
    }
    CHECK(family_size <= 1296.0);
    CHECK(violations == 0.0);
    CHECK(min_ratio >= 0.5);
}
