#include "discrim/geometry.hpp"

#include "discrim/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace discrim {

HermitianOperator hermitian_from_coords(const Eigen::VectorXd& coords, int d) {
    if (coords.size() != static_cast<long>(d) * d)
        throw std::invalid_argument("hermitian_from_coords: coordinate count must be d^2");
    Matrix m = Matrix::Zero(d, d);
    int idx = 0;
    const double s = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < d; ++j) m(j, j) = coords(idx++);
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            m(j, k) += s * coords(idx);
            m(k, j) += s * coords(idx);
            ++idx;
        }
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            m(j, k) += Complex(0.0, s) * coords(idx);
            m(k, j) += Complex(0.0, -s) * coords(idx);
            ++idx;
        }
    return HermitianOperator(std::move(m));
}

Eigen::VectorXd coords_from_hermitian(const HermitianOperator& h) {
    const int d = h.dim();
    Eigen::VectorXd coords(static_cast<long>(d) * d);
    int idx = 0;
    const double s = std::sqrt(2.0);
    for (int j = 0; j < d; ++j) coords(idx++) = h.matrix()(j, j).real();
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) coords(idx++) = s * h.matrix()(j, k).real();
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) coords(idx++) = s * h.matrix()(j, k).imag();
    return coords;
}

SupportOracle to_real_oracle(const HermitianSupportOracle& oracle) {
    const int d = oracle.matrix_dim;
    return SupportOracle{d * d, [d, eval = oracle.evaluate](const Eigen::VectorXd& u) {
                             return eval(hermitian_from_coords(u, d));
                         }};
}

double gamma_exact(int n) {
    if (n < 1) throw std::invalid_argument("gamma_exact: n >= 1 required");
    return std::sqrt(2.0) * std::exp(std::lgamma((n + 1) / 2.0) - std::lgamma(n / 2.0));
}

GeometryConstants geometry_constants(int n) {
    const double g = gamma_exact(n);
    return {n, g, std::sqrt(2.0 / M_PI) / g};
}

namespace {

WidthEstimate summarize(const std::vector<double>& vals, double divisor) {
    const int n = static_cast<int>(vals.size());
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var /= std::max(1, n - 1);
    return {mean / divisor, std::sqrt(var / n) / divisor, n};
}

} // namespace

WidthEstimate mean_width_mc(const SupportOracle& oracle, int n_samples, RngStream& rng,
                            bool parallel) {
    if (n_samples < 100)
        throw std::invalid_argument("mean_width_mc: n_samples >= 100 required");
    const int n = oracle.ambient_dim;
    std::vector<double> vals(static_cast<std::size_t>(n_samples));
    const RngStream base = rng;
#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < n_samples; ++i) {
        RngStream sub = base.substream(static_cast<std::uint64_t>(i));
        Eigen::VectorXd g(n);
        for (int k = 0; k < n; ++k) g(k) = sub.normal();
        vals[static_cast<std::size_t>(i)] = oracle.evaluate(g);
    }
    return summarize(vals, gamma_exact(n));
}

double schatten_width_reference(int d, SchattenBall which) {
    if (d < 2) throw std::invalid_argument("schatten_width_reference: d >= 2 required");
    const double g = gamma_exact(d * d);
    if (which == SchattenBall::Sinf)
        return std::pow(static_cast<double>(d), 1.5) * (8.0 / (3.0 * M_PI)) / g;
    // E||G||_inf = (2 + o(1)) sqrt(d); the spectral edge converges only like
    // d^{-1/6}, so include the Tracy-Widom correction. For the larger of the
    // two (asymptotically independent) edge fluctuations,
    // E max(X, X') ~= mu + sigma/sqrt(pi) with TW2 mean mu = -1.771087 and
    // std sigma = 0.901773.
    const double tw_max_of_two = -1.771087 + 0.901773 / std::sqrt(M_PI);
    const double edge =
        2.0 * std::sqrt(static_cast<double>(d)) + tw_max_of_two * std::pow(d, -1.0 / 6.0);
    return edge / g;
}

HermitianSupportOracle schatten_ball_oracle(int d, SchattenBall which) {
    if (which == SchattenBall::Sinf)
        return {d, [](const HermitianOperator& u) { return trace_norm(u); }};
    return {d, [](const HermitianOperator& u) { return operator_norm(u); }};
}

VolumeEstimate volume_radius_mc(const std::function<bool(const Eigen::VectorXd&)>& member,
                                double bounding_radius, int n, long n_samples,
                                RngStream& rng, bool parallel) {
    if (n < 1 || n > 8)
        throw std::invalid_argument("volume_radius_mc: real dimension must be in [1, 8]");
    if (n_samples < 100)
        throw std::invalid_argument("volume_radius_mc: n_samples >= 100 required");
    const RngStream base = rng;
    std::vector<unsigned char> hit(static_cast<std::size_t>(n_samples));
#pragma omp parallel for schedule(static) if (parallel)
    for (long i = 0; i < n_samples; ++i) {
        RngStream sub = base.substream(static_cast<std::uint64_t>(i));
        Eigen::VectorXd g(n);
        for (int k = 0; k < n; ++k) g(k) = sub.normal();
        g.normalize();
        const double r = bounding_radius * std::pow(sub.uniform01(), 1.0 / n);
        hit[static_cast<std::size_t>(i)] = member(r * g) ? 1 : 0;
    }
    long hits = 0;
    for (unsigned char h : hit) hits += h;
    if (hits == 0)
        throw std::runtime_error(
            "volume_radius_mc: no hits; shrink the bounding radius or add samples");
    const double p = static_cast<double>(hits) / static_cast<double>(n_samples);
    const double se_p = std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples));
    const double ball_volume =
        std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0 + 1.0) * std::pow(bounding_radius, n);
    VolumeEstimate est;
    est.hits = hits;
    est.n_samples = n_samples;
    est.volume = p * ball_volume;
    est.volume_standard_error = se_p * ball_volume;
    est.vrad = bounding_radius * std::pow(p, 1.0 / n);
    est.vrad_standard_error = bounding_radius * std::pow(p, 1.0 / n - 1.0) / n * se_p;
    return est;
}

bool projective_tensor_membership(const Eigen::VectorXd& point, int n,
                                  const std::function<double(const Eigen::VectorXd&)>& gauge_K) {
    if (n < 1 || point.size() % n != 0)
        throw std::invalid_argument("projective_tensor_membership: point must split into n blocks");
    const long m = point.size() / n;
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += gauge_K(point.segment(i * m, m));
    return total <= 1.0;
}

double ordered_topk_norm(const Eigen::VectorXd& x, int k) {
    if (k < 1 || k > x.size())
        throw std::invalid_argument("ordered_topk_norm: k out of range");
    std::vector<double> mags(static_cast<std::size_t>(x.size()));
    for (long i = 0; i < x.size(); ++i) mags[static_cast<std::size_t>(i)] = std::abs(x(i));
    std::partial_sort(mags.begin(), mags.begin() + k, mags.end(), std::greater<>());
    double s = 0.0;
    for (int i = 0; i < k; ++i) s += mags[static_cast<std::size_t>(i)];
    return s;
}

bool majorization_factor_check(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int k) {
    if (x.size() != y.size())
        throw std::invalid_argument("majorization_factor_check: size mismatch");
    if (std::abs(x.sum()) > 1e-10 || std::abs(y.sum()) > 1e-10)
        throw std::invalid_argument("majorization_factor_check: inputs must be traceless");
    const double y1 = y.cwiseAbs().sum();
    if (y1 == 0.0)
        throw std::invalid_argument("majorization_factor_check: y must be nonzero");
    const double n = static_cast<double>(x.size());
    const double factor = 2.0 * n * x.cwiseAbs().maxCoeff() / y1;
    return ordered_topk_norm(x, k) <= factor * ordered_topk_norm(y, k) + 1e-12;
}

WidthEstimate width_projection_traceless(const HermitianSupportOracle& oracle, int n_samples,
                                         RngStream& rng, bool parallel) {
    if (n_samples < 100)
        throw std::invalid_argument("width_projection_traceless: n_samples >= 100 required");
    const int d = oracle.matrix_dim;
    std::vector<double> vals(static_cast<std::size_t>(n_samples));
    const RngStream base = rng;
#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < n_samples; ++i) {
        RngStream sub = base.substream(static_cast<std::uint64_t>(i));
        HermitianOperator g = gue_standard(d, sub);
        Matrix m = g.matrix();
        m -= (m.trace() / static_cast<double>(d)) * Matrix::Identity(d, d);
        vals[static_cast<std::size_t>(i)] = oracle.evaluate(HermitianOperator(std::move(m)));
    }
    return summarize(vals, gamma_exact(d * d - 1));
}

} // namespace discrim
