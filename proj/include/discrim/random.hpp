#ifndef DISCRIM_RANDOM_HPP
#define DISCRIM_RANDOM_HPP

#include "discrim/hermitian.hpp"
#include "discrim/rng.hpp"

namespace discrim {

/// Density operator: PSD, unit trace (both within the psd tolerance).
struct DensityOperator {
    HermitianOperator op;

    explicit DensityOperator(HermitianOperator o);
};

/// d x d matrix with iid complex Gaussian entries, Re and Im variance 1/2
/// each (so E|entry|^2 = 1).
Matrix ginibre(int d, RngStream& rng);

/// Standard Gaussian on the real space of Hermitian d x d operators with the
/// HS inner product: real N(0,1) diagonal, complex off-diagonal with Re/Im
/// variance 1/2. For any fixed unit-HS direction U, <G,U> ~ N(0,1).
HermitianOperator gue_standard(int d, RngStream& rng);

/// Hilbert-Schmidt-uniform random state: G G^dag / tr(G G^dag), Ginibre G.
DensityOperator uniform_state(int n, RngStream& rng);

/// Haar-distributed unitary: QR of a Ginibre matrix with the R diagonal
/// rephased positive real.
Matrix haar_unitary(int d, RngStream& rng);

/// U P0 U^dag for a fixed diagonal rank-k projector P0 and Haar U.
HermitianOperator random_subspace_projector(int d, int k, RngStream& rng);

/// Uniform direction on the unit HS sphere inside the traceless hyperplane.
HermitianOperator traceless_sphere_direction(int d, RngStream& rng);

/// Normalized complex Gaussian vector (uniform on the unit sphere of C^d).
Vector uniform_unit_vector(int d, RngStream& rng);

} // namespace discrim

#endif
