#ifndef DISCRIM_CONSTRUCTIONS_HPP
#define DISCRIM_CONSTRUCTIONS_HPP

#include "discrim/norms.hpp"
#include "discrim/random.hpp"

#include <vector>

namespace discrim {

enum class PairProvenance { Werner, DataHiding, LoVsLocc, UniformRandom };

struct StatePair {
    DensityOperator rho;
    DensityOperator sigma;
    PairProvenance provenance;

    /// rho - sigma, carrying the bipartite shape of the pair.
    HermitianOperator difference() const;
};

/// Finite set of POVMs with the approximation parameter that produced it.
struct PovmFamily {
    std::vector<Povm> members;
    double epsilon = 0.0;
};

/// Symmetric state (Id+SWAP)-projector normalized and antisymmetric state
/// (Id-SWAP)-projector normalized, on C^d (x) C^d.
StatePair werner_pair(int d);

/// Orthogonal rank-(d^2/2) projector states U P U^dag / (d^2/2) and its
/// complement, Haar U on C^d (x) C^d. Requires d even.
StatePair data_hiding_pair(int d, RngStream& rng);

/// Blocks Delta_i = U_i (2 P_E - Id) U_i^dag with independent Haar U_i and E
/// the span of the first d/2 basis vectors. Requires d even.
FlaggedBlockOperator lo_vs_locc_delta(int d, RngStream& rng);

/// Positive/negative parts of the expanded block operator, renormalized to
/// states. Every block must have nonzero positive and negative parts.
StatePair flagged_to_state_pair(const FlaggedBlockOperator& delta);

/// Finite set of 2-outcome POVMs ((Id+A_i)/2, (Id-A_i)/2) whose directions
/// A_i form an epsilon-net of [-Id, Id] in the operator-norm gauge.
/// d = 2 uses a certified deterministic coordinate grid; d = 3 draws random
/// directions until coverage validation passes.
PovmFamily net_povm_family(int d, double epsilon, RngStream& rng);

/// Spectral split of each effect into rank-1 pieces (zero eigenvalues
/// pruned); never decreases any distinguishability norm.
Povm rank1_refinement(const Povm& m);

/// Uniform mixture of n_bases Haar-random orthonormal-basis measurements.
Povm random_rank1_povm(int d, int n_bases, RngStream& rng);

} // namespace discrim

#endif
