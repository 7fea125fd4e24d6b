#ifndef FERMIDYN_FERMION_HPP
#define FERMIDYN_FERMION_HPP

#include <vector>

#include "fermidyn/core.hpp"

namespace fermidyn {

// A register of N fermionic modes represented on C^(2^N).
struct FermionicSystem {
  explicit FermionicSystem(int n_modes);

  int n_modes;
  Index dimension;  // 2^n_modes

  static constexpr int kMaxModes = 12;
};

// Matrix representations of the lowering, raising and number operators of
// every mode, built from the Jordan-Wigner tensor pattern
//   a_j = 1_{2^(N-j)} (x) sigma_+ (x) sigma_z^(x(j-1)).
// The sigma_z string sits on the lower-numbered modes.
struct ModeOperatorSet {
  std::vector<ComplexMatrix> lowering;  // a_1 .. a_N
  std::vector<ComplexMatrix> raising;   // adjoints
  std::vector<ComplexMatrix> number;    // N_j = a_j^dag a_j, diagonal 0/1

  int n_modes() const { return static_cast<int>(lowering.size()); }
  Index dimension() const { return lowering.empty() ? 0 : lowering.front().rows(); }
};

ModeOperatorSet build_operators(const FermionicSystem& system);

// Occupation of mode j in the given state; agrees with <phi, N_j phi>.
int number_eigenvalue(int mode, const FockState& state);

// Largest entrywise deviation from the canonical anticommutation relations.
struct CarReport {
  double max_violation = 0.0;  // max of the three families below
  double max_mixed = 0.0;      // ||{a_j, a_k^dag} - delta_jk I||_max over all pairs
  double max_pair = 0.0;       // ||{a_j, a_k}||_max over all pairs
  double max_square = 0.0;     // ||a_j^2||_max over all modes
};

CarReport verify_car(const ModeOperatorSet& ops);

}  // namespace fermidyn

#endif  // FERMIDYN_FERMION_HPP
