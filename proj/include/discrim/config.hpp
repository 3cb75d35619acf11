#ifndef DISCRIM_CONFIG_HPP
#define DISCRIM_CONFIG_HPP

#include <string>

namespace discrim {

/// Central numerical tolerances. All defaults are pinned here so that the
/// acceptance suite can reference a single source of truth.
struct Tolerances {
    double hermiticity = 1e-12;   // relative, against largest entry magnitude
    double eig_reconstruction = 1e-9;
    double psd = 1e-9;            // min eigenvalue slack for PSD checks
    double povm_completeness = 1e-9;
    double jordan_orthogonality = 1e-9;
    double certificate_gap = 1e-6;
};

inline const Tolerances& tol() {
    static const Tolerances t{};
    return t;
}

/// Flat solver configuration shared by the splitting solver and the seesaw.
struct SolverConfig {
    double tolerance = 1e-7;      // residual stop, relative to problem scale
    int max_iterations = 20000;
    int restarts = 5;
    double penalty = 1.0;         // ADMM penalty parameter
    int feasibility_rounds = 500; // alternating-projection cap
};

} // namespace discrim

#endif
