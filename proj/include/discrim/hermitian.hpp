#ifndef DISCRIM_HERMITIAN_HPP
#define DISCRIM_HERMITIAN_HPP

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace discrim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct BipartiteShape {
    int dA = 0;
    int dB = 0;
};

/// Dense complex Hermitian operator, optionally carrying a bipartite
/// factorization dim = dA * dB with row-major index a*dB + b for |a>|b>.
/// Construction symmetrizes the input as (H + H^dag)/2 and rejects inputs
/// whose anti-Hermitian part exceeds the hermiticity tolerance.
class HermitianOperator {
public:
    explicit HermitianOperator(Matrix entries,
                               std::optional<BipartiteShape> shape = std::nullopt);

    static HermitianOperator Zero(int dim);
    static HermitianOperator Identity(int dim);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Matrix& matrix() const { return mat_; }
    const std::optional<BipartiteShape>& bipartite_shape() const { return shape_; }

    HermitianOperator with_shape(int dA, int dB) const;

    double entry_scale() const; // largest entry magnitude, >= 0

private:
    Matrix mat_;
    std::optional<BipartiteShape> shape_;
};

/// Eigenvalues sorted non-increasing.
struct Spectrum {
    RealVector values;
};

/// H = positive_part - negative_part, both PSD, mutually orthogonal.
struct JordanDecomposition {
    HermitianOperator positive_part;
    HermitianOperator negative_part;
};

/// Spectral decomposition. V * diag(spectrum) * V^dag reconstructs H.
/// Eigenvalues sorted non-increasing; columns of V follow the same order.
std::pair<Spectrum, Matrix> eig_hermitian(const HermitianOperator& h);

double trace_norm(const HermitianOperator& h);
double operator_norm(const HermitianOperator& h);
double hs_norm(const HermitianOperator& h);
double hs_inner(const HermitianOperator& a, const HermitianOperator& b);

/// Partial transpose on the FIRST tensor factor: (M (x) N)^Gamma = M^T (x) N.
HermitianOperator partial_transpose(const HermitianOperator& h);

enum class Subsystem { First, Second };

/// Trace out the given factor; result lives on the other one.
HermitianOperator partial_trace(const HermitianOperator& h, Subsystem traced_out);

/// Hilbert-Schmidt projection onto the order interval [lo*Id, hi*Id]:
/// eigenvalues clipped to [lo, hi], eigenvectors kept.
HermitianOperator project_order_interval(const HermitianOperator& h, double lo, double hi);

JordanDecomposition jordan_decompose(const HermitianOperator& h);

/// Kronecker product, shaped (dimA, dimB)-bipartite.
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);

/// Text fixture format: header "dim dA dB" (dA = dB = 0 when unshaped),
/// then one line "row col re im" per upper-triangle entry (row <= col).
void write_matrix_text(std::ostream& os, const HermitianOperator& h);
HermitianOperator read_matrix_text(std::istream& is);
void save_matrix_text(const std::string& path, const HermitianOperator& h);
HermitianOperator load_matrix_text(const std::string& path);

} // namespace discrim

#endif
