#include "discrim/hermitian.hpp"

#include "discrim/config.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace discrim {

HermitianOperator::HermitianOperator(Matrix entries, std::optional<BipartiteShape> shape)
    : mat_(std::move(entries)), shape_(shape) {
    if (mat_.rows() != mat_.cols() || mat_.rows() < 1)
        throw std::invalid_argument("HermitianOperator: matrix must be square and non-empty");
    const double scale = std::max(1.0, mat_.cwiseAbs().maxCoeff());
    const double dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (dev > 2.0 * tol().hermiticity * scale)
        throw std::invalid_argument("HermitianOperator: input is not Hermitian within tolerance");
    mat_ = 0.5 * (mat_ + mat_.adjoint()).eval();
    if (shape_) {
        if (shape_->dA < 1 || shape_->dB < 1 ||
            static_cast<long>(shape_->dA) * shape_->dB != mat_.rows())
            throw std::invalid_argument("HermitianOperator: bipartite shape does not match dim");
    }
}

HermitianOperator HermitianOperator::Zero(int dim) {
    return HermitianOperator(Matrix::Zero(dim, dim));
}

HermitianOperator HermitianOperator::Identity(int dim) {
    return HermitianOperator(Matrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::with_shape(int dA, int dB) const {
    return HermitianOperator(mat_, BipartiteShape{dA, dB});
}

double HermitianOperator::entry_scale() const {
    return mat_.cwiseAbs().maxCoeff();
}

std::pair<Spectrum, Matrix> eig_hermitian(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
    // Eigen sorts ascending; flip to non-increasing with stable index order.
    const int d = h.dim();
    Spectrum spec;
    spec.values = solver.eigenvalues().reverse();
    Matrix vecs(d, d);
    for (int j = 0; j < d; ++j) vecs.col(j) = solver.eigenvectors().col(d - 1 - j);
    return {std::move(spec), std::move(vecs)};
}

double trace_norm(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
}

double operator_norm(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double hs_norm(const HermitianOperator& h) {
    return h.matrix().norm();
}

double hs_inner(const HermitianOperator& a, const HermitianOperator& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("hs_inner: dimension mismatch");
    return (a.matrix().adjoint() * b.matrix()).trace().real();
}

static BipartiteShape require_shape(const HermitianOperator& h, const char* op) {
    if (!h.bipartite_shape())
        throw std::invalid_argument(std::string(op) + ": bipartite shape required");
    return *h.bipartite_shape();
}

HermitianOperator partial_transpose(const HermitianOperator& h) {
    const auto [dA, dB] = require_shape(h, "partial_transpose");
    Matrix out(h.dim(), h.dim());
    const Matrix& m = h.matrix();
    for (int a = 0; a < dA; ++a)
        for (int c = 0; c < dA; ++c)
            out.block(c * dB, a * dB, dB, dB) = m.block(a * dB, c * dB, dB, dB);
    return HermitianOperator(std::move(out), BipartiteShape{dA, dB});
}

HermitianOperator partial_trace(const HermitianOperator& h, Subsystem traced_out) {
    const auto [dA, dB] = require_shape(h, "partial_trace");
    const Matrix& m = h.matrix();
    if (traced_out == Subsystem::First) {
        Matrix out = Matrix::Zero(dB, dB);
        for (int a = 0; a < dA; ++a) out += m.block(a * dB, a * dB, dB, dB);
        return HermitianOperator(std::move(out));
    }
    Matrix out = Matrix::Zero(dA, dA);
    for (int a = 0; a < dA; ++a)
        for (int c = 0; c < dA; ++c)
            out(a, c) = m.block(a * dB, c * dB, dB, dB).trace();
    return HermitianOperator(std::move(out));
}

HermitianOperator project_order_interval(const HermitianOperator& h, double lo, double hi) {
    if (lo > hi)
        throw std::invalid_argument("project_order_interval: lo > hi");
    auto [spec, vecs] = eig_hermitian(h);
    RealVector clipped = spec.values.cwiseMax(lo).cwiseMin(hi);
    Matrix out = vecs * clipped.asDiagonal() * vecs.adjoint();
    return HermitianOperator(std::move(out), h.bipartite_shape());
}

JordanDecomposition jordan_decompose(const HermitianOperator& h) {
    auto [spec, vecs] = eig_hermitian(h);
    RealVector pos = spec.values.cwiseMax(0.0);
    RealVector neg = (-spec.values).cwiseMax(0.0);
    Matrix p = vecs * pos.asDiagonal() * vecs.adjoint();
    Matrix n = vecs * neg.asDiagonal() * vecs.adjoint();
    return {HermitianOperator(std::move(p), h.bipartite_shape()),
            HermitianOperator(std::move(n), h.bipartite_shape())};
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
    const int da = a.dim(), db = b.dim();
    Matrix out(da * db, da * db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
            out.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
    return HermitianOperator(std::move(out), BipartiteShape{da, db});
}

void write_matrix_text(std::ostream& os, const HermitianOperator& h) {
    const int d = h.dim();
    const auto& shape = h.bipartite_shape();
    os << d << ' ' << (shape ? shape->dA : 0) << ' ' << (shape ? shape->dB : 0) << '\n';
    os.precision(17);
    for (int r = 0; r < d; ++r)
        for (int c = r; c < d; ++c) {
            const Complex z = h.matrix()(r, c);
            os << r << ' ' << c << ' ' << z.real() << ' ' << z.imag() << '\n';
        }
}

HermitianOperator read_matrix_text(std::istream& is) {
    int d = 0, dA = 0, dB = 0;
    if (!(is >> d >> dA >> dB) || d < 1)
        throw std::runtime_error("read_matrix_text: bad header");
    Matrix m = Matrix::Zero(d, d);
    const long entries = static_cast<long>(d) * (d + 1) / 2;
    for (long k = 0; k < entries; ++k) {
        int r, c;
        double re, im;
        if (!(is >> r >> c >> re >> im))
            throw std::runtime_error("read_matrix_text: truncated entry list");
        if (r < 0 || c < r || c >= d)
            throw std::runtime_error("read_matrix_text: entry outside upper triangle");
        m(r, c) = Complex(re, im);
        m(c, r) = std::conj(m(r, c));
    }
    std::optional<BipartiteShape> shape;
    if (dA > 0 && dB > 0) shape = BipartiteShape{dA, dB};
    return HermitianOperator(std::move(m), shape);
}

void save_matrix_text(const std::string& path, const HermitianOperator& h) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("save_matrix_text: cannot open " + path);
    write_matrix_text(os, h);
}

HermitianOperator load_matrix_text(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_matrix_text: cannot open " + path);
    return read_matrix_text(is);
}

} // namespace discrim
