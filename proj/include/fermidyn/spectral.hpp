#ifndef FERMIDYN_SPECTRAL_HPP
#define FERMIDYN_SPECTRAL_HPP

#include "fermidyn/core.hpp"
#include "fermidyn/fermion.hpp"

namespace fermidyn {

// Eigensystem of a Hermitian matrix: U H U^dag = diag(eigenvalues), with the
// rows of U holding the eigenvector coordinates and eigenvalues ascending.
// Degenerate eigenvalues make U non-unique; downstream results (propagators,
// densities) never depend on the choice.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix unitary;
};

struct JacobiOptions {
  // Convergence: off-diagonal Frobenius norm <= tolerance_scale * ||H||_F.
  double tolerance_scale = 1e-13;
  int max_sweeps = 60;
};

// Cyclic complex Jacobi rotations. Deterministic: fixed sweep order, ties in
// the eigenvalue sort broken by first-occurrence column order. Throws
// NotHermitianError for non-Hermitian input and ConvergenceError (carrying
// the residual off-diagonal norm) if max_sweeps is exhausted.
SpectralDecomposition eigendecompose(const ComplexMatrix& h,
                                     const JacobiOptions& options = {});

// e^{iHt}, reconstructed as U^dag diag(e^{i eps_k t}) U. Unitary to 1e-10 and
// satisfies the group law P(t1) P(t2) = P(t1+t2).
struct Propagator {
  double time = 0.0;
  ComplexMatrix matrix;
};

Propagator propagator(const SpectralDecomposition& spec, double t);

// b_j(t) = a_j U^dag e^{-i H_d t} U. Not a CAR family for t > 0, but
// b_j^dag(t) b_j(t) equals the Heisenberg-evolved number operator, which
// turns densities into plain vector norms.
struct EvolvedAnnihilator {
  int mode = 0;
  double time = 0.0;
  ComplexMatrix matrix;
};

EvolvedAnnihilator evolved_annihilator(const ModeOperatorSet& ops,
                                       const SpectralDecomposition& spec, int mode,
                                       double t);

}  // namespace fermidyn

#endif  // FERMIDYN_SPECTRAL_HPP
