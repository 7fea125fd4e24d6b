#include "fermidyn/fermion.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fermidyn {

namespace {

ComplexMatrix sigma_plus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

ComplexMatrix sigma_z() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

}  // namespace

FermionicSystem::FermionicSystem(int n) : n_modes(n), dimension(0) {
  if (n < 1 || n > kMaxModes) {
    throw std::invalid_argument("FermionicSystem: mode count " + std::to_string(n) +
                                " outside supported range [1, " +
                                std::to_string(kMaxModes) + "]");
  }
  dimension = Index{1} << n;
}

ModeOperatorSet build_operators(const FermionicSystem& system) {
  const int n = system.n_modes;
  const ComplexMatrix sp = sigma_plus();
  const ComplexMatrix sz = sigma_z();

  ModeOperatorSet ops;
  ops.lowering.reserve(static_cast<std::size_t>(n));
  ops.raising.reserve(static_cast<std::size_t>(n));
  ops.number.reserve(static_cast<std::size_t>(n));

  for (int j = 1; j <= n; ++j) {
    ComplexMatrix a = ComplexMatrix::Identity(Index{1} << (n - j), Index{1} << (n - j));
    a = kron(a, sp);
    for (int k = 1; k < j; ++k) {
      a = kron(a, sz);
    }
    ops.raising.push_back(a.adjoint());
    // a^dag a, evaluated per column: columns of a carry at most one +-1
    // entry, so the product is exactly the diagonal of column norms.
    ComplexMatrix number = ComplexMatrix::Zero(a.rows(), a.cols());
    for (Index m = 0; m < a.cols(); ++m) {
      number(m, m) = a.col(m).squaredNorm();
    }
    ops.number.push_back(std::move(number));
    ops.lowering.push_back(std::move(a));
  }
  return ops;
}

int number_eigenvalue(int mode, const FockState& state) {
  return state.occupation(mode);
}

CarReport verify_car(const ModeOperatorSet& ops) {
  const int n = ops.n_modes();
  const Index dim = ops.dimension();

  // The canonical construction is real-valued; anticommutators of real
  // matrices can be checked in real arithmetic at a quarter of the flops.
  bool all_real = true;
  for (const ComplexMatrix& a : ops.lowering) {
    if (a.size() != 0 && a.imag().cwiseAbs().maxCoeff() != 0.0) {
      all_real = false;
      break;
    }
  }

  CarReport report;
  auto track = [](double& slot, double value) { slot = std::max(slot, value); };

  if (all_real) {
    std::vector<RealMatrix> low(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) low[static_cast<std::size_t>(j)] = ops.lowering[static_cast<std::size_t>(j)].real();
    const RealMatrix id = RealMatrix::Identity(dim, dim);
    for (int j = 0; j < n; ++j) {
      const RealMatrix& aj = low[static_cast<std::size_t>(j)];
      track(report.max_square, (aj * aj).cwiseAbs().maxCoeff());
      // {a_j, a_k^dag} and {a_j, a_k} are symmetric under j<->k up to an
      // adjoint, so pairs with j <= k cover everything.
      for (int k = j; k < n; ++k) {
        const RealMatrix& ak = low[static_cast<std::size_t>(k)];
        RealMatrix mixed = aj * ak.transpose() + ak.transpose() * aj;
        if (j == k) mixed -= id;
        track(report.max_mixed, mixed.cwiseAbs().maxCoeff());
        track(report.max_pair, (aj * ak + ak * aj).cwiseAbs().maxCoeff());
      }
    }
  } else {
    const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
    for (int j = 0; j < n; ++j) {
      const ComplexMatrix& aj = ops.lowering[static_cast<std::size_t>(j)];
      track(report.max_square, max_abs(aj * aj));
      for (int k = j; k < n; ++k) {
        const ComplexMatrix& ak = ops.lowering[static_cast<std::size_t>(k)];
        ComplexMatrix mixed = aj * ak.adjoint() + ak.adjoint() * aj;
        if (j == k) mixed -= id;
        track(report.max_mixed, max_abs(mixed));
        track(report.max_pair, max_abs(aj * ak + ak * aj));
      }
    }
  }

  report.max_violation = std::max({report.max_mixed, report.max_pair, report.max_square});
  return report;
}

}  // namespace fermidyn
