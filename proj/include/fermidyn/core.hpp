#ifndef FERMIDYN_CORE_HPP
#define FERMIDYN_CORE_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "fermidyn/errors.hpp"

namespace fermidyn {

using ComplexScalar = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Occupation pattern of N fermionic modes. Mode j owns bit j-1 of the
// canonical basis index, so the all-empty state is index 0 and raising
// mode 1 of it gives index 1.
class FockState {
 public:
  // occupations[k] is the occupation of mode k+1 (mode 1 first, as in
  // configuration files). Entries must be 0 or 1.
  FockState(int n_modes, std::vector<int> occupations);

  static FockState from_index(int n_modes, Index index);

  int n_modes() const { return n_modes_; }
  int occupation(int mode) const;  // 1-based mode
  const std::vector<int>& occupations() const { return occupations_; }

  bool operator==(const FockState& other) const = default;

 private:
  int n_modes_;
  std::vector<int> occupations_;
};

// 0-based canonical basis index of a Fock state: sum_k 2^k i_k.
Index fock_index(const FockState& state);

// Unit vector e_index in C^dim. Throws ShapeError if index is out of range.
ComplexVector basis_vector(Index index, Index dim);

// Canonical basis vector carrying the given occupation pattern.
ComplexVector state_vector(const FockState& state);

double vector_norm_sq(const ComplexVector& v);

// Shape-checked matrix product.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& a);

// Kronecker product; dimensions multiply.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Largest entrywise modulus (0 for empty matrices).
double max_abs(const ComplexMatrix& m);

bool is_finite(const ComplexMatrix& m);

// No NaN/Inf is ever admitted into a stored matrix; call sites that create
// matrices from external input gate them through this.
void require_finite(const ComplexMatrix& m, const std::string& what);

}  // namespace fermidyn

#endif  // FERMIDYN_CORE_HPP
