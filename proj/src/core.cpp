#include "fermidyn/core.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace fermidyn {

FockState::FockState(int n_modes, std::vector<int> occupations)
    : n_modes_(n_modes), occupations_(std::move(occupations)) {
  if (n_modes_ < 1) {
    throw std::invalid_argument("FockState: need at least one mode");
  }
  if (static_cast<int>(occupations_.size()) != n_modes_) {
    throw std::invalid_argument("FockState: expected " + std::to_string(n_modes_) +
                                " occupations, got " + std::to_string(occupations_.size()));
  }
  for (int v : occupations_) {
    if (v != 0 && v != 1) {
      throw std::invalid_argument("FockState: occupations must be 0 or 1");
    }
  }
}

FockState FockState::from_index(int n_modes, Index index) {
  if (n_modes < 1 || index < 0 || index >= (Index{1} << n_modes)) {
    throw std::invalid_argument("FockState::from_index: index out of range");
  }
  std::vector<int> occ(static_cast<std::size_t>(n_modes));
  for (int k = 0; k < n_modes; ++k) {
    occ[static_cast<std::size_t>(k)] = static_cast<int>((index >> k) & 1);
  }
  return FockState(n_modes, std::move(occ));
}

int FockState::occupation(int mode) const {
  if (mode < 1 || mode > n_modes_) {
    throw std::invalid_argument("FockState: mode " + std::to_string(mode) + " out of range");
  }
  return occupations_[static_cast<std::size_t>(mode - 1)];
}

Index fock_index(const FockState& state) {
  Index index = 0;
  for (int k = 0; k < state.n_modes(); ++k) {
    index |= Index{state.occupations()[static_cast<std::size_t>(k)]} << k;
  }
  return index;
}

ComplexVector basis_vector(Index index, Index dim) {
  if (index < 0 || index >= dim) {
    throw ShapeError("basis_vector: index " + std::to_string(index) +
                     " out of range for dimension " + std::to_string(dim));
  }
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = ComplexScalar(1.0, 0.0);
  return v;
}

ComplexVector state_vector(const FockState& state) {
  return basis_vector(fock_index(state), Index{1} << state.n_modes());
}

double vector_norm_sq(const ComplexVector& v) { return v.squaredNorm(); }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: inner dimensions disagree (" + std::to_string(a.cols()) +
                     " vs " + std::to_string(b.rows()) + ")");
  }
  return a * b;
}

ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

double max_abs(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool is_finite(const ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const ComplexScalar& z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

void require_finite(const ComplexMatrix& m, const std::string& what) {
  if (!is_finite(m)) {
    throw std::invalid_argument(what + ": non-finite entries");
  }
}

}  // namespace fermidyn
