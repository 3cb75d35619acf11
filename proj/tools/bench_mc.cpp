// Benchmark: serial vs OpenMP paths of the Monte-Carlo estimators.
// Both paths draw from per-sample substreams, so results must agree exactly.
#include "discrim/geometry.hpp"
#include "discrim/norms.hpp"
#include "discrim/random.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    const int d = argc > 1 ? std::atoi(argv[1]) : 8;
    const int samples = argc > 2 ? std::atoi(argv[2]) : 50000;
    if (d < 2 || samples < 1) {
        std::fprintf(stderr, "usage: bench_mc [d >= 2] [samples >= 1]\n");
        return 2;
    }

    discrim::RngStream rng(12345);
    discrim::HermitianOperator op = discrim::gue_standard(d, rng);
    discrim::SupportOracle ball =
        discrim::to_real_oracle(discrim::schatten_ball_oracle(d, discrim::SchattenBall::Sinf));

    struct Case {
        const char* name;
        double serial;
        double parallel;
        double t_serial;
        double t_parallel;
    };
    Case cases[2];

    {
        discrim::RngStream rs = rng.substream(1);
        discrim::RngStream rp = rng.substream(1);
        auto t0 = std::chrono::steady_clock::now();
        auto s = discrim::uniform_norm_estimate(op, samples, rs, false);
        const double ts = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        auto p = discrim::uniform_norm_estimate(op, samples, rp, true);
        cases[0] = {"uniform_norm_estimate", s.mean, p.mean, ts, seconds_since(t0)};
    }
    {
        discrim::RngStream rs = rng.substream(2);
        discrim::RngStream rp = rng.substream(2);
        auto t0 = std::chrono::steady_clock::now();
        auto s = discrim::mean_width_mc(ball, samples, rs, false);
        const double ts = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        auto p = discrim::mean_width_mc(ball, samples, rp, true);
        cases[1] = {"mean_width_mc", s.mean, p.mean, ts, seconds_since(t0)};
    }

    std::printf("%-24s %14s %14s %10s %10s %8s\n", "kernel", "serial", "parallel", "t_ser[s]",
                "t_par[s]", "speedup");
    bool mismatch = false;
    for (const auto& c : cases) {
        std::printf("%-24s %14.9f %14.9f %10.3f %10.3f %8.2f\n", c.name, c.serial, c.parallel,
                    c.t_serial, c.t_parallel, c.t_serial / c.t_parallel);
        if (c.serial != c.parallel) mismatch = true;
    }
    if (mismatch) {
        std::fprintf(stderr, "serial/parallel mismatch\n");
        return 1;
    }
    std::printf("serial and parallel paths agree bit-for-bit\n");
    return 0;
}
