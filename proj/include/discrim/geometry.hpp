#ifndef DISCRIM_GEOMETRY_HPP
#define DISCRIM_GEOMETRY_HPP

#include "discrim/hermitian.hpp"
#include "discrim/rng.hpp"

#include <functional>

namespace discrim {

/// Convex body presented through its support function on a real ambient
/// space: evaluate(u) = h_K(u) = max_{x in K} <x, u>.
struct SupportOracle {
    int ambient_dim = 0;
    std::function<double(const Eigen::VectorXd&)> evaluate;
};

/// Same, over the real space of Hermitian d x d operators with the HS inner
/// product (real dimension d^2).
struct HermitianSupportOracle {
    int matrix_dim = 0;
    std::function<double(const HermitianOperator&)> evaluate;
};

/// Orthonormal-basis isometry between R^{d^2} and Hermitian d x d operators.
HermitianOperator hermitian_from_coords(const Eigen::VectorXd& coords, int d);
Eigen::VectorXd coords_from_hermitian(const HermitianOperator& h);

/// View a Hermitian-ambient oracle as a real-ambient one through the isometry.
SupportOracle to_real_oracle(const HermitianSupportOracle& oracle);

struct GeometryConstants {
    int n = 0;
    double gamma_n = 0.0; // E ||G||_2 for standard Gaussian G in R^n
    double alpha_n = 0.0; // mean width of a unit segment conv{+-u}
};

/// gamma_n = sqrt(2) Gamma((n+1)/2) / Gamma(n/2), via log-gamma.
double gamma_exact(int n);
GeometryConstants geometry_constants(int n);

struct WidthEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
    int n_samples = 0;
};

/// Spherical mean width via Gaussian sampling: average of evaluate(G) over
/// standard Gaussian directions, divided by gamma_n.
WidthEstimate mean_width_mc(const SupportOracle& oracle, int n_samples, RngStream& rng,
                            bool parallel = true);

enum class SchattenBall { S1, Sinf };

/// Asymptotic spherical-mean-width reference for the Schatten unit balls on
/// Hermitian d x d operators: w(S_inf) ~ d^{3/2} (8/3pi) / gamma_{d^2},
/// w(S_1) ~ 2 sqrt(d) / gamma_{d^2}.
double schatten_width_reference(int d, SchattenBall which);

/// Support oracles of the Schatten balls: h_{S_inf} = trace norm,
/// h_{S_1} = operator norm.
HermitianSupportOracle schatten_ball_oracle(int d, SchattenBall which);

struct VolumeEstimate {
    double vrad = 0.0;
    double vrad_standard_error = 0.0;
    double volume = 0.0;
    double volume_standard_error = 0.0;
    long hits = 0;
    long n_samples = 0;
};

/// Hit-or-miss volume radius over the radius-R Euclidean ball in R^n.
VolumeEstimate volume_radius_mc(const std::function<bool(const Eigen::VectorXd&)>& member,
                                double bounding_radius, int n, long n_samples,
                                RngStream& rng, bool parallel = true);

/// Membership in B_1^n (x)^ K for a point of R^{n*m} split into n blocks of
/// dimension m: member iff sum of K-gauges of the blocks is <= 1.
bool projective_tensor_membership(const Eigen::VectorXd& point, int n,
                                  const std::function<double(const Eigen::VectorXd&)>& gauge_K);

/// Sum of the k largest absolute coordinates (permutation-invariant norm).
double ordered_topk_norm(const Eigen::VectorXd& x, int k);

/// Checks |||x||| <= 2n (||x||_inf / ||y||_1) |||y||| for the top-k norm on
/// traceless vectors.
bool majorization_factor_check(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int k);

/// Mean width of the projection of K onto the traceless hyperplane,
/// estimated with traceless Gaussian directions and gamma_{n^2 - 1}.
WidthEstimate width_projection_traceless(const HermitianSupportOracle& oracle, int n_samples,
                                         RngStream& rng, bool parallel = true);

} // namespace discrim

#endif
