#ifndef FERMIDYN_TEST_HELPERS_HPP
#define FERMIDYN_TEST_HELPERS_HPP

#include <cstdint>
#include <random>

#include "fermidyn/core.hpp"

namespace fermidyn::testing {

// Uniform in [0, 1) straight from the generator bits: identical streams on
// every platform, unlike std::uniform_real_distribution.
inline double uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_symmetric(std::mt19937_64& rng) { return 2.0 * uniform(rng) - 1.0; }

inline ComplexScalar uniform_complex(std::mt19937_64& rng) {
  const double re = uniform_symmetric(rng);
  return {re, uniform_symmetric(rng)};
}

// Entries U(-1,1) (real and imaginary parts), then symmetrized.
inline ComplexMatrix random_hermitian(Index n, std::mt19937_64& rng) {
  ComplexMatrix m(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      m(i, j) = uniform_complex(rng);
    }
  }
  return 0.5 * (m + ComplexMatrix(m.adjoint()));
}

inline ComplexMatrix random_complex(Index rows, Index cols, std::mt19937_64& rng) {
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      m(i, j) = uniform_complex(rng);
    }
  }
  return m;
}

// The printed 4x4 lowering operators of the two-mode system: a_1 has ones at
// (0,1) and (2,3); a_2 has 1 at (0,2) and -1 at (1,3).
inline ComplexMatrix printed_a1_two_modes() {
  ComplexMatrix a = ComplexMatrix::Zero(4, 4);
  a(0, 1) = 1.0;
  a(2, 3) = 1.0;
  return a;
}

inline ComplexMatrix printed_a2_two_modes() {
  ComplexMatrix a = ComplexMatrix::Zero(4, 4);
  a(0, 2) = 1.0;
  a(1, 3) = -1.0;
  return a;
}

// lambda*(a_2 a_1^dag + a_1 a_2^dag): -lambda at (1,2) and (2,1).
inline ComplexMatrix printed_h_two_mode_exchange(double lambda) {
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  h(1, 2) = -lambda;
  h(2, 1) = -lambda;
  return h;
}

// lambda*(a_1^dag N_2 + N_2 a_1): lambda at (2,3) and (3,2).
inline ComplexMatrix printed_h_gated_exchange(double lambda) {
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  h(2, 3) = lambda;
  h(3, 2) = lambda;
  return h;
}

// The printed 8x8 three-mode hopping Hamiltonian (an overall -lambda times a
// 0/±1 pattern).
inline ComplexMatrix printed_h_three_mode_exchange(double lambda) {
  ComplexMatrix h = ComplexMatrix::Zero(8, 8);
  auto set = [&h, lambda](Index i, Index j, double sign) {
    h(i, j) = -lambda * sign;
    h(j, i) = -lambda * sign;
  };
  set(1, 2, 1.0);
  set(1, 4, 1.0);
  set(2, 4, 1.0);
  set(3, 5, 1.0);
  set(3, 6, -1.0);
  set(5, 6, 1.0);
  return h;
}

// lambda*(a_1^dag a_2^dag a_3 + a_3^dag a_2 a_1): lambda at (3,4) and (4,3).
inline ComplexMatrix printed_h_pair_exchange(double lambda) {
  ComplexMatrix h = ComplexMatrix::Zero(8, 8);
  h(3, 4) = lambda;
  h(4, 3) = lambda;
  return h;
}

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return max_abs(a - b);
}

}  // namespace fermidyn::testing

#endif  // FERMIDYN_TEST_HELPERS_HPP
