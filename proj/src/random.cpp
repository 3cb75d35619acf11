#include "discrim/random.hpp"

#include "discrim/config.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <stdexcept>

namespace discrim {

DensityOperator::DensityOperator(HermitianOperator o) : op(std::move(o)) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix(), Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol().psd)
        throw std::invalid_argument("DensityOperator: not PSD within tolerance");
    if (std::abs(op.matrix().trace().real() - 1.0) > tol().psd)
        throw std::invalid_argument("DensityOperator: trace != 1 within tolerance");
}

Matrix ginibre(int d, RngStream& rng) {
    if (d < 1) throw std::invalid_argument("ginibre: d >= 1 required");
    Matrix g(d, d);
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            g(i, j) = Complex(s * rng.normal(), s * rng.normal());
    return g;
}

HermitianOperator gue_standard(int d, RngStream& rng) {
    if (d < 1) throw std::invalid_argument("gue_standard: d >= 1 required");
    Matrix g(d, d);
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i) {
        g(i, i) = Complex(rng.normal(), 0.0);
        for (int j = i + 1; j < d; ++j) {
            g(i, j) = Complex(s * rng.normal(), s * rng.normal());
            g(j, i) = std::conj(g(i, j));
        }
    }
    return HermitianOperator(std::move(g));
}

DensityOperator uniform_state(int n, RngStream& rng) {
    Matrix g = ginibre(n, rng);
    Matrix w = g * g.adjoint();
    w /= w.trace().real();
    return DensityOperator(HermitianOperator(std::move(w)));
}

Matrix haar_unitary(int d, RngStream& rng) {
    Matrix g = ginibre(d, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Raw QR is not Haar; rephase so the R diagonal is positive real.
    for (int j = 0; j < d; ++j) {
        const Complex rjj = r(j, j);
        const double a = std::abs(rjj);
        q.col(j) *= (a > 0.0) ? rjj / a : Complex(1.0, 0.0);
    }
    return q;
}

HermitianOperator random_subspace_projector(int d, int k, RngStream& rng) {
    if (k < 1 || k > d)
        throw std::invalid_argument("random_subspace_projector: k out of range");
    Matrix u = haar_unitary(d, rng);
    Matrix p = u.leftCols(k) * u.leftCols(k).adjoint();
    return HermitianOperator(std::move(p));
}

HermitianOperator traceless_sphere_direction(int d, RngStream& rng) {
    HermitianOperator g = gue_standard(d, rng);
    Matrix m = g.matrix();
    m -= (m.trace() / static_cast<double>(d)) * Matrix::Identity(d, d);
    m /= m.norm();
    return HermitianOperator(std::move(m));
}

Vector uniform_unit_vector(int d, RngStream& rng) {
    if (d < 1) throw std::invalid_argument("uniform_unit_vector: d >= 1 required");
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = Complex(rng.normal(), rng.normal());
    v.normalize();
    return v;
}

} // namespace discrim
