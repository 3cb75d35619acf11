#ifndef DISCRIM_NORMS_HPP
#define DISCRIM_NORMS_HPP

#include "discrim/config.hpp"
#include "discrim/hermitian.hpp"
#include "discrim/random.hpp"
#include "discrim/rng.hpp"

#include <string>
#include <vector>

namespace discrim {

/// Finite measurement: PSD effects summing to the identity.
class Povm {
public:
    explicit Povm(std::vector<HermitianOperator> effects);

    const std::vector<HermitianOperator>& effects() const { return effects_; }
    int dim() const { return effects_.front().dim(); }
    std::size_t size() const { return effects_.size(); }

private:
    std::vector<HermitianOperator> effects_;
};

/// Effect of a 2-outcome measurement: 0 <= m <= Id.
struct TwoOutcomeEffect {
    HermitianOperator m;

    explicit TwoOutcomeEffect(HermitianOperator effect);
    Povm to_povm() const;
};

enum class SolverStatus { Converged, IterationLimit };

/// Two-sided certificate pair from an optimization run. `lower` is the value
/// of a re-verified feasible primal point, `upper` the value of a re-verified
/// dual/decomposition bound. Internal solver values are never reported.
struct SolverReport {
    double lower = 0.0;
    double upper = 0.0;
    int iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    SolverStatus status = SolverStatus::Converged;

    std::string to_json() const;
};

/// Block-diagonal operator sum_i |i><i| (x) blocks[i], all blocks d x d with
/// d = number of blocks.
class FlaggedBlockOperator {
public:
    explicit FlaggedBlockOperator(std::vector<HermitianOperator> blocks);

    const std::vector<HermitianOperator>& blocks() const { return blocks_; }
    int block_dim() const { return blocks_.front().dim(); }

    /// Expanded d^2 x d^2 bipartite operator.
    HermitianOperator expand() const;

private:
    std::vector<HermitianOperator> blocks_;
};

/// ||delta||_M = sum_i |tr(M_i delta)|.
double povm_norm(const HermitianOperator& delta, const Povm& m);

/// ||delta||_ALL = trace norm.
double all_norm(const HermitianOperator& delta);

/// Error probability of maximum-likelihood discrimination of rho vs sigma
/// (equal priors) after measuring m.
double helstrom_error_probability(const DensityOperator& rho, const DensityOperator& sigma,
                                  const Povm& m);

/// PPT norm max{ <delta, A> : -Id <= A <= Id, -Id <= A^Gamma <= Id } via
/// consensus operator splitting. lower comes from an alternating-projection
/// feasible point, upper from the decomposition bound
/// ||delta - Y||_1 + ||Y^Gamma||_1, both re-verified.
SolverReport ppt_norm(const HermitianOperator& delta, const SolverConfig& cfg = {});

/// max sum_i <A_i, X_i> over POVMs (A_i). Dual certificate Y >= X_i for all
/// i gives the upper bound trace(Y).
std::pair<Povm, SolverReport> multi_hypothesis_povm_sdp(
    const std::vector<HermitianOperator>& targets, const SolverConfig& cfg = {});

/// Value of the one-way protocol for a fixed Alice POVM:
/// sum_i || tr_A[(A_i (x) Id) delta] ||_1 (Bob plays Helstrom per outcome).
double one_way_value(const HermitianOperator& delta, const Povm& alice);

/// Seesaw lower bound on ||delta||_LOCC-> over cfg.restarts initializations.
/// The reported value is re-evaluated from the returned feasible POVM.
std::pair<double, Povm> locc_one_way_lower(const HermitianOperator& delta,
                                           const SolverConfig& cfg = {},
                                           RngStream* rng = nullptr);

/// Exact one-way value sum_i ||Delta_i||_1 of a flagged block operator.
double locc_one_way_exact_flagged(const FlaggedBlockOperator& blocks);

struct LoAscentConfig {
    int restarts = 50;
    int iterations = 2000;
    double step0 = 0.1;
    double rel_improvement_stop = 1e-8;
};

/// Heuristic estimate d * sup_x sum_i |<x|Delta_i|x>| by projected
/// subgradient ascent on the unit sphere. The ascent value lower-bounds the
/// sup; the returned d * best is a heuristic estimate of the certified
/// upper bound, not itself certified.
double lo_norm_block_upper(const FlaggedBlockOperator& blocks,
                           const LoAscentConfig& cfg = {}, RngStream* rng = nullptr);

struct LoNetBounds {
    double lower = 0.0; // d * max over net points (<= d * sup)
    double upper = 0.0; // d/(1-8 delta) * max over net points (>= d * sup)
    double delta = 0.0; // net resolution actually used
    std::size_t net_size = 0;
};

/// Certified bracket of d * sup_x sum_i |<x|Delta_i|x>| from a deterministic
/// grid net on the unit sphere of C^d. Requires block dim <= 3. delta must
/// satisfy delta < 1/8; delta = 1/16 reproduces the factor-2 bound.
LoNetBounds lo_norm_block_exact_small(const FlaggedBlockOperator& blocks,
                                      double net_resolution = 1.0 / 16.0);

struct UniformNormEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
    int n_samples = 0;
};

/// Monte-Carlo mean of |<x|delta|x>| over uniform unit vectors.
UniformNormEstimate uniform_norm_estimate(const HermitianOperator& delta, int n_samples,
                                          RngStream& rng, bool parallel = true);

/// Coarse-graining of a POVM to the 2-outcome (M, Id - M), M = sum over the
/// index subset.
TwoOutcomeEffect two_outcome_reduction(const Povm& m, const std::vector<int>& subset);

} // namespace discrim

#endif
