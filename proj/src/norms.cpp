#include "discrim/norms.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace discrim {

namespace {

double min_eigenvalue(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

Matrix psd_project(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    RealVector clipped = solver.eigenvalues().cwiseMax(0.0);
    return solver.eigenvectors() * clipped.asDiagonal() * solver.eigenvectors().adjoint();
}

Matrix clip_spectrum(const Matrix& m, double lo, double hi) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    RealVector clipped = solver.eigenvalues().cwiseMax(lo).cwiseMin(hi);
    return solver.eigenvectors() * clipped.asDiagonal() * solver.eigenvectors().adjoint();
}

double trace_norm_m(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
}

double operator_norm_m(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

Matrix gamma_map(const Matrix& m, int dA, int dB) {
    Matrix out(m.rows(), m.cols());
    for (int a = 0; a < dA; ++a)
        for (int c = 0; c < dA; ++c)
            out.block(c * dB, a * dB, dB, dB) = m.block(a * dB, c * dB, dB, dB);
    return out;
}

/// Sign operator of a Hermitian matrix, zero eigenvalues assigned +1.
Matrix sign_operator(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    RealVector s(solver.eigenvalues().size());
    for (int i = 0; i < s.size(); ++i) s(i) = solver.eigenvalues()(i) < 0.0 ? -1.0 : 1.0;
    return solver.eigenvectors() * s.asDiagonal() * solver.eigenvectors().adjoint();
}

} // namespace

Povm::Povm(std::vector<HermitianOperator> effects) : effects_(std::move(effects)) {
    if (effects_.empty())
        throw std::invalid_argument("Povm: at least one effect required");
    const int d = effects_.front().dim();
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& e : effects_) {
        if (e.dim() != d)
            throw std::invalid_argument("Povm: effects must share one dimension");
        if (min_eigenvalue(e.matrix()) < -tol().povm_completeness)
            throw std::invalid_argument("Povm: effect is not PSD within tolerance");
        sum += e.matrix();
    }
    if (operator_norm_m(sum - Matrix::Identity(d, d)) > tol().povm_completeness)
        throw std::invalid_argument("Povm: effects do not sum to the identity");
}

TwoOutcomeEffect::TwoOutcomeEffect(HermitianOperator effect) : m(std::move(effect)) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix(), Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol().povm_completeness ||
        solver.eigenvalues().maxCoeff() > 1.0 + tol().povm_completeness)
        throw std::invalid_argument("TwoOutcomeEffect: spectrum outside [0, 1]");
}

Povm TwoOutcomeEffect::to_povm() const {
    const int d = m.dim();
    Matrix complement = Matrix::Identity(d, d) - m.matrix();
    // Tiny eigenvalue slack from validation is absorbed here.
    return Povm({HermitianOperator(clip_spectrum(m.matrix(), 0.0, 1.0)),
                 HermitianOperator(clip_spectrum(complement, 0.0, 1.0))});
}

std::string SolverReport::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"lower\":" << lower << ",\"upper\":" << upper
       << ",\"iterations\":" << iterations
       << ",\"primal_residual\":" << primal_residual
       << ",\"dual_residual\":" << dual_residual << ",\"status\":\""
       << (status == SolverStatus::Converged ? "converged" : "iteration-limit") << "\"}";
    return os.str();
}

FlaggedBlockOperator::FlaggedBlockOperator(std::vector<HermitianOperator> blocks)
    : blocks_(std::move(blocks)) {
    if (blocks_.empty())
        throw std::invalid_argument("FlaggedBlockOperator: at least one block required");
    const int d = blocks_.front().dim();
    for (const auto& b : blocks_)
        if (b.dim() != d)
            throw std::invalid_argument("FlaggedBlockOperator: blocks must share one dimension");
}

HermitianOperator FlaggedBlockOperator::expand() const {
    const int d = block_dim();
    const int n = static_cast<int>(blocks_.size());
    Matrix out = Matrix::Zero(n * d, n * d);
    for (int i = 0; i < n; ++i) out.block(i * d, i * d, d, d) = blocks_[i].matrix();
    return HermitianOperator(std::move(out), BipartiteShape{n, d});
}

double povm_norm(const HermitianOperator& delta, const Povm& m) {
    if (delta.dim() != m.dim())
        throw std::invalid_argument("povm_norm: dimension mismatch");
    double value = 0.0;
    for (const auto& e : m.effects()) value += std::abs(hs_inner(e, delta));
    return value;
}

double all_norm(const HermitianOperator& delta) {
    return trace_norm(delta);
}

double helstrom_error_probability(const DensityOperator& rho, const DensityOperator& sigma,
                                  const Povm& m) {
    HermitianOperator half(0.5 * (rho.op.matrix() - sigma.op.matrix()));
    return 0.5 * (1.0 - povm_norm(half, m));
}

SolverReport ppt_norm(const HermitianOperator& delta, const SolverConfig& cfg) {
    if (!delta.bipartite_shape())
        throw std::invalid_argument("ppt_norm: bipartite shape required");
    const auto [dA, dB] = *delta.bipartite_shape();
    const int dim = delta.dim();
    const Matrix& D = delta.matrix();
    const double rho = cfg.penalty;
    const double scale = std::max(1.0, hs_norm(delta));

    Matrix X = Matrix::Zero(dim, dim);
    Matrix Z = Matrix::Zero(dim, dim);
    Matrix U = Matrix::Zero(dim, dim);

    SolverReport report;
    report.upper = trace_norm(delta); // always valid: K subset of [-Id, Id]
    double pr = 0.0, dr = 0.0;
    int it = 0;

    auto decomposition_bound = [&](const Matrix& y) {
        Matrix p = D - y;
        return trace_norm_m(0.5 * (p + p.adjoint())) +
               trace_norm_m(gamma_map(0.5 * (y + y.adjoint()), dA, dB));
    };

    for (it = 1; it <= cfg.max_iterations; ++it) {
        X = clip_spectrum(Z - U + D / rho, -1.0, 1.0);
        Matrix znew = gamma_map(clip_spectrum(gamma_map(X + U, dA, dB), -1.0, 1.0), dA, dB);
        U += X - znew;
        pr = (X - znew).norm();
        dr = rho * (znew - Z).norm();
        Z = std::move(znew);
        if (it % 25 == 0 || it == cfg.max_iterations) {
            report.upper = std::min(report.upper, decomposition_bound(rho * U));
            report.upper = std::min(report.upper, decomposition_bound(-rho * U));
        }
        if (std::max(pr, dr) <= cfg.tolerance * scale) break;
    }
    report.iterations = std::min(it, cfg.max_iterations);
    report.primal_residual = pr;
    report.dual_residual = dr;
    report.status = std::max(pr, dr) <= cfg.tolerance * scale ? SolverStatus::Converged
                                                              : SolverStatus::IterationLimit;
    report.upper = std::min(report.upper, decomposition_bound(rho * U));
    report.upper = std::min(report.upper, decomposition_bound(-rho * U));

    // Feasibility restoration for the lower certificate: alternating
    // projections between the two order intervals, then a contraction so
    // both memberships hold strictly.
    Matrix A = Z;
    for (int round = 0; round < cfg.feasibility_rounds; ++round) {
        const double v1 = operator_norm_m(A) - 1.0;
        const double v2 = operator_norm_m(gamma_map(A, dA, dB)) - 1.0;
        if (v1 <= 1e-9 && v2 <= 1e-9) break;
        A = clip_spectrum(A, -1.0, 1.0);
        A = gamma_map(clip_spectrum(gamma_map(A, dA, dB), -1.0, 1.0), dA, dB);
    }
    const double viol = std::max({1.0, operator_norm_m(A), operator_norm_m(gamma_map(A, dA, dB))});
    A /= viol;
    report.lower = (D * A).trace().real();
    return report;
}

std::pair<Povm, SolverReport> multi_hypothesis_povm_sdp(
    const std::vector<HermitianOperator>& targets, const SolverConfig& cfg) {
    if (targets.empty())
        throw std::invalid_argument("multi_hypothesis_povm_sdp: no targets");
    const int d = targets.front().dim();
    const int n = static_cast<int>(targets.size());
    for (const auto& t : targets)
        if (t.dim() != d)
            throw std::invalid_argument("multi_hypothesis_povm_sdp: dimension mismatch");

    const double rho = cfg.penalty;
    double scale = 1.0;
    for (const auto& t : targets) scale = std::max(scale, hs_norm(t));

    const Matrix id = Matrix::Identity(d, d);
    std::vector<Matrix> A(n, id / n), Z(n, id / n), U(n, Matrix::Zero(d, d));

    double pr = 0.0, dr = 0.0;
    int it = 0;
    for (it = 1; it <= cfg.max_iterations; ++it) {
        for (int i = 0; i < n; ++i)
            A[i] = psd_project(Z[i] - U[i] + targets[i].matrix() / rho);
        Matrix excess = -id;
        for (int i = 0; i < n; ++i) excess += A[i] + U[i];
        pr = 0.0;
        dr = 0.0;
        for (int i = 0; i < n; ++i) {
            Matrix znew = A[i] + U[i] - excess / n;
            dr += rho * rho * (znew - Z[i]).squaredNorm();
            Z[i] = std::move(znew);
            U[i] += A[i] - Z[i];
            pr += (A[i] - Z[i]).squaredNorm();
        }
        pr = std::sqrt(pr);
        dr = std::sqrt(dr);
        if (std::max(pr, dr) <= cfg.tolerance * scale) break;
    }

    // Feasible POVM: symmetric renormalization of the PSD iterates.
    Matrix S = Matrix::Zero(d, d);
    for (int i = 0; i < n; ++i) S += A[i];
    S = 0.5 * (S + S.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> ssolver(S);
    RealVector sv = ssolver.eigenvalues().cwiseMax(1e-12);
    Matrix s_inv_half = ssolver.eigenvectors() *
                        sv.cwiseSqrt().cwiseInverse().asDiagonal() *
                        ssolver.eigenvectors().adjoint();
    std::vector<HermitianOperator> effects;
    effects.reserve(n);
    for (int i = 0; i < n; ++i) {
        Matrix e = s_inv_half * A[i] * s_inv_half;
        effects.emplace_back(HermitianOperator(psd_project(0.5 * (e + e.adjoint()))));
    }
    // Absorb the PSD-projection drift into the last effect so completeness is
    // exact, then re-validate through the Povm constructor.
    Matrix rest = Matrix::Identity(d, d);
    for (int i = 0; i + 1 < n; ++i) rest -= effects[i].matrix();
    if (n > 1) effects[n - 1] = HermitianOperator(psd_project(0.5 * (rest + rest.adjoint())));
    Povm povm(effects);

    SolverReport report;
    report.iterations = std::min(it, cfg.max_iterations);
    report.primal_residual = pr;
    report.dual_residual = dr;
    report.status = std::max(pr, dr) <= cfg.tolerance * scale ? SolverStatus::Converged
                                                              : SolverStatus::IterationLimit;
    for (int i = 0; i < n; ++i)
        report.lower += hs_inner(povm.effects()[i], targets[i]);

    // Dual certificate: at convergence all scaled duals agree with Y / rho.
    Matrix Y = Matrix::Zero(d, d);
    for (int i = 0; i < n; ++i) Y += rho * U[i];
    Y = 0.5 / n * (Y + Y.adjoint()).eval();
    double shift = -1e308;
    for (int i = 0; i < n; ++i) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(targets[i].matrix() - Y, Eigen::EigenvaluesOnly);
        shift = std::max(shift, es.eigenvalues().maxCoeff());
    }
    Y += std::max(shift, 0.0) * id;
    if (shift < 0.0) Y += shift * id; // tighten when Y already dominates
    report.upper = Y.trace().real();
    return {std::move(povm), report};
}

double one_way_value(const HermitianOperator& delta, const Povm& alice) {
    const auto shape = delta.bipartite_shape();
    if (!shape)
        throw std::invalid_argument("one_way_value: bipartite shape required");
    if (alice.dim() != shape->dA)
        throw std::invalid_argument("one_way_value: Alice POVM dimension mismatch");
    double value = 0.0;
    const HermitianOperator idB = HermitianOperator::Identity(shape->dB);
    for (const auto& a : alice.effects()) {
        HermitianOperator lifted = tensor(a, idB);
        Matrix prod = lifted.matrix() * delta.matrix();
        HermitianOperator cond(0.5 * (prod + prod.adjoint()),
                               BipartiteShape{shape->dA, shape->dB});
        value += trace_norm(partial_trace(cond, Subsystem::First));
    }
    return value;
}

std::pair<double, Povm> locc_one_way_lower(const HermitianOperator& delta,
                                           const SolverConfig& cfg, RngStream* rng) {
    const auto shape = delta.bipartite_shape();
    if (!shape)
        throw std::invalid_argument("locc_one_way_lower: bipartite shape required");
    const int dA = shape->dA, dB = shape->dB;
    RngStream fallback(0);
    RngStream& base = rng ? *rng : fallback;

    auto basis_povm = [&](const Matrix& basis) {
        std::vector<HermitianOperator> effects;
        effects.reserve(dA);
        for (int i = 0; i < dA; ++i)
            effects.emplace_back(
                HermitianOperator(basis.col(i) * basis.col(i).adjoint()));
        return Povm(std::move(effects));
    };

    double best_value = -1.0;
    std::optional<Povm> best_povm;

    const int restarts = std::max(1, cfg.restarts);
    for (int r = 0; r < restarts; ++r) {
        Povm alice = [&]() {
            if (r == 0) {
                HermitianOperator marginal = partial_trace(delta, Subsystem::Second);
                auto [spec, vecs] = eig_hermitian(marginal);
                return basis_povm(vecs);
            }
            RngStream sub = base.substream(static_cast<std::uint64_t>(r));
            return basis_povm(haar_unitary(dA, sub));
        }();

        double value = one_way_value(delta, alice);
        if (value > best_value) {
            best_value = value;
            best_povm = alice;
        }

        const int max_rounds = 30;
        for (int round = 0; round < max_rounds; ++round) {
            // Bob's Helstrom response per outcome.
            std::vector<Matrix> bob;
            bob.reserve(alice.size());
            const HermitianOperator idB = HermitianOperator::Identity(dB);
            for (const auto& a : alice.effects()) {
                Matrix prod = tensor(a, idB).matrix() * delta.matrix();
                HermitianOperator cond(0.5 * (prod + prod.adjoint()),
                                       BipartiteShape{dA, dB});
                bob.push_back(sign_operator(
                    partial_trace(cond, Subsystem::First).matrix()));
            }
            // Alice's best POVM for fixed Bob responses.
            std::vector<HermitianOperator> targets;
            targets.reserve(bob.size());
            for (const auto& b : bob) {
                HermitianOperator lifted =
                    tensor(HermitianOperator::Identity(dA), HermitianOperator(b));
                Matrix prod = delta.matrix() * lifted.matrix();
                HermitianOperator weighted(0.5 * (prod + prod.adjoint()),
                                           BipartiteShape{dA, dB});
                targets.push_back(partial_trace(weighted, Subsystem::Second));
            }
            auto [next, rep] = multi_hypothesis_povm_sdp(targets, cfg);
            const double next_value = one_way_value(delta, next);
            if (next_value > best_value) {
                best_value = next_value;
                best_povm = next;
            }
            if (next_value <= value + cfg.tolerance) break;
            value = next_value;
            alice = std::move(next);
        }
    }
    return {best_value, *best_povm};
}

double locc_one_way_exact_flagged(const FlaggedBlockOperator& blocks) {
    double value = 0.0;
    for (const auto& b : blocks.blocks()) value += trace_norm(b);
    return value;
}

namespace {

double block_profile(const std::vector<HermitianOperator>& blocks, const Vector& x) {
    double f = 0.0;
    for (const auto& b : blocks) f += std::abs((x.adjoint() * b.matrix() * x)(0, 0).real());
    return f;
}

} // namespace

double lo_norm_block_upper(const FlaggedBlockOperator& blocks, const LoAscentConfig& cfg,
                           RngStream* rng) {
    const int d = blocks.block_dim();
    RngStream fallback(0);
    RngStream& base = rng ? *rng : fallback;
    double best = 0.0;
    for (int r = 0; r < cfg.restarts; ++r) {
        RngStream sub = base.substream(static_cast<std::uint64_t>(r));
        Vector x = uniform_unit_vector(d, sub);
        double f = block_profile(blocks.blocks(), x);
        best = std::max(best, f);
        for (int t = 1; t <= cfg.iterations; ++t) {
            Vector g = Vector::Zero(d);
            for (const auto& b : blocks.blocks()) {
                const double v = (x.adjoint() * b.matrix() * x)(0, 0).real();
                g += (v < 0.0 ? -1.0 : 1.0) * (b.matrix() * x);
            }
            const double gn = g.norm();
            if (gn < 1e-15) break;
            Vector next = x + (cfg.step0 / std::sqrt(static_cast<double>(t))) * (g / gn);
            next.normalize();
            const double fn = block_profile(blocks.blocks(), next);
            if (fn > best) best = fn;
            if (std::abs(fn - f) <= cfg.rel_improvement_stop * std::max(1.0, std::abs(f))) {
                f = fn;
                x = std::move(next);
                break;
            }
            f = fn;
            x = std::move(next);
        }
    }
    return static_cast<double>(blocks.blocks().size()) * best;
}

LoNetBounds lo_norm_block_exact_small(const FlaggedBlockOperator& blocks,
                                      double net_resolution) {
    const int d = blocks.block_dim();
    if (d > 3)
        throw std::invalid_argument("lo_norm_block_exact_small: block dim must be <= 3");
    if (net_resolution <= 0.0 || net_resolution >= 0.125)
        throw std::invalid_argument("lo_norm_block_exact_small: resolution must be in (0, 1/8)");
    const int n = 2 * d;
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    // Grid spacing chosen so any sphere point is within net_resolution of a
    // normalized grid point: nearest cell corner is at distance <= s*sqrt(n)/2
    // and normalization at most doubles it.
    const double s = net_resolution / sqrt_n;
    const long per_axis = 2 * static_cast<long>(std::ceil(1.0 / s)) + 1;
    double total = 1.0;
    for (int k = 0; k < n; ++k) total *= static_cast<double>(per_axis);
    if (total > 2e9)
        throw std::invalid_argument(
            "lo_norm_block_exact_small: net too large; coarsen net_resolution");

    const double shell = s * sqrt_n / 2.0 + 1e-12;
    const long half = (per_axis - 1) / 2;
    const double step = 1.0 / static_cast<double>(half);

    double best = 0.0;
    std::size_t net_size = 0;
    std::vector<long> idx(n, -half);
    Eigen::VectorXd p(n);
    const long count = static_cast<long>(total);
    for (long flat = 0; flat < count; ++flat) {
        long rem = flat;
        double norm2 = 0.0;
        for (int k = 0; k < n; ++k) {
            const long j = rem % per_axis - half;
            rem /= per_axis;
            const double c = static_cast<double>(j) * step;
            p(k) = c;
            norm2 += c * c;
        }
        const double nn = std::sqrt(norm2);
        if (std::abs(nn - 1.0) > shell || nn < 0.25) continue;
        ++net_size;
        Vector x(d);
        for (int k = 0; k < d; ++k) x(k) = Complex(p(2 * k), p(2 * k + 1)) / nn;
        best = std::max(best, block_profile(blocks.blocks(), x));
    }

    LoNetBounds bounds;
    bounds.delta = net_resolution;
    bounds.net_size = net_size;
    const double dcount = static_cast<double>(blocks.blocks().size());
    bounds.lower = dcount * best;
    bounds.upper = dcount * best / (1.0 - 8.0 * net_resolution);
    return bounds;
}

UniformNormEstimate uniform_norm_estimate(const HermitianOperator& delta, int n_samples,
                                          RngStream& rng, bool parallel) {
    if (n_samples < 100)
        throw std::invalid_argument("uniform_norm_estimate: n_samples >= 100 required");
    const int d = delta.dim();
    std::vector<double> vals(static_cast<std::size_t>(n_samples));
    const RngStream base = rng;
#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < n_samples; ++i) {
        RngStream sub = base.substream(static_cast<std::uint64_t>(i));
        Vector x = uniform_unit_vector(d, sub);
        vals[static_cast<std::size_t>(i)] =
            std::abs((x.adjoint() * delta.matrix() * x)(0, 0).real());
    }
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= n_samples;
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var /= std::max(1, n_samples - 1);
    return {mean, std::sqrt(var / n_samples), n_samples};
}

TwoOutcomeEffect two_outcome_reduction(const Povm& m, const std::vector<int>& subset) {
    const int d = m.dim();
    Matrix sum = Matrix::Zero(d, d);
    for (int idx : subset) {
        if (idx < 0 || idx >= static_cast<int>(m.size()))
            throw std::invalid_argument("two_outcome_reduction: index out of range");
        sum += m.effects()[static_cast<std::size_t>(idx)].matrix();
    }
    return TwoOutcomeEffect(HermitianOperator(std::move(sum)));
}

} // namespace discrim
