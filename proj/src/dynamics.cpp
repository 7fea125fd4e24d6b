#include "fermidyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fermidyn {

namespace {

// e^{-iHt} phi, evaluated through the decomposition: U^dag e^{-i H_d t} U phi.
ComplexVector evolve_state(const SpectralDecomposition& spec, Index state_index, double t) {
  ComplexVector w = spec.unitary.col(state_index);  // U e_k
  for (Index m = 0; m < w.size(); ++m) {
    w(m) *= std::exp(ComplexScalar(0.0, -spec.eigenvalues(m) * t));
  }
  return spec.unitary.adjoint() * w;
}

double clamp_density(double value, const std::string& context) {
  if (value >= 0.0 && value <= 1.0) return value;
  if (value >= -kDensitySlack && value < 0.0) return 0.0;
  if (value > 1.0 && value <= 1.0 + kDensitySlack) return 1.0;
  throw std::runtime_error(context + ": density " + std::to_string(value) +
                           " outside [0,1] beyond tolerance; this signals a solver bug");
}

void check_state(const FermionicSystem& system, const FockState& state) {
  if (state.n_modes() != system.n_modes) {
    throw std::invalid_argument("initial state has " + std::to_string(state.n_modes()) +
                                " modes, system has " + std::to_string(system.n_modes));
  }
}

// [H, D] for diagonal D costs O(dim^2): entries H(i,k) (d(k) - d(i)).
ComplexMatrix commutator_with_diagonal(const ComplexMatrix& h, const RealVector& d) {
  ComplexMatrix c(h.rows(), h.cols());
  for (Index k = 0; k < h.cols(); ++k) {
    for (Index i = 0; i < h.rows(); ++i) {
      c(i, k) = h(i, k) * (d(k) - d(i));
    }
  }
  return c;
}

}  // namespace

PreparedSystem prepare(const FermionicSystem& system, const OperatorExpression& hamiltonian) {
  PreparedSystem prepared{system, build_operators(system), {}, {}};
  prepared.hamiltonian = assemble(hamiltonian, prepared.ops);
  const HermiticityReport herm = check_hermitian(prepared.hamiltonian);
  if (!herm.is_hermitian) {
    throw NotHermitianError("hamiltonian is not Hermitian (max |H - H^dag| = " +
                                std::to_string(herm.max_deviation) + ")",
                            herm.max_deviation);
  }
  prepared.decomposition = eigendecompose(prepared.hamiltonian);
  return prepared;
}

double density(const PreparedSystem& prepared, const FockState& initial, int mode, double t) {
  check_state(prepared.system, initial);
  if (mode < 1 || mode > prepared.system.n_modes) {
    throw std::invalid_argument("density: mode " + std::to_string(mode) + " out of range");
  }
  const ComplexVector z = evolve_state(prepared.decomposition, fock_index(initial), t);
  return (prepared.ops.lowering[static_cast<std::size_t>(mode - 1)] * z).squaredNorm();
}

TrajectoryTable simulate(const SimulationPlan& plan) {
  const PreparedSystem prepared = prepare(plan.system, plan.hamiltonian);
  TrajectoryTable table = simulate(prepared, plan.initial, plan.time_grid);
  table.metadata.parameters = plan.hamiltonian.parameters;
  return table;
}

TrajectoryTable simulate(const PreparedSystem& prepared, const FockState& initial,
                         const std::vector<double>& time_grid) {
  check_state(prepared.system, initial);
  if (time_grid.empty()) {
    throw std::invalid_argument("simulate: empty time grid");
  }
  if (time_grid.front() != 0.0) {
    throw std::invalid_argument("simulate: time grid must start at 0");
  }
  for (std::size_t k = 1; k < time_grid.size(); ++k) {
    if (!(time_grid[k] > time_grid[k - 1])) {
      throw std::invalid_argument("simulate: time grid must be strictly increasing");
    }
  }

  const int n_modes = prepared.system.n_modes;
  const Index state_index = fock_index(initial);

  TrajectoryTable table;
  table.times = time_grid;
  table.densities.assign(static_cast<std::size_t>(n_modes),
                         std::vector<double>(time_grid.size(), 0.0));
  table.metadata.initial_occupations = initial.occupations();

  for (std::size_t k = 0; k < time_grid.size(); ++k) {
    const ComplexVector z = evolve_state(prepared.decomposition, state_index, time_grid[k]);
    for (int j = 0; j < n_modes; ++j) {
      const double value = (prepared.ops.lowering[static_cast<std::size_t>(j)] * z).squaredNorm();
      table.densities[static_cast<std::size_t>(j)][k] =
          clamp_density(value, "simulate(mode " + std::to_string(j + 1) + ", t = " +
                                   std::to_string(time_grid[k]) + ")");
    }
  }
  return table;
}

std::vector<ConservedCombination> find_conserved_combinations(const ComplexMatrix& h,
                                                              const ModeOperatorSet& ops) {
  const int n_modes = ops.n_modes();
  const Index dim = ops.dimension();
  if (h.rows() != dim || h.cols() != dim) {
    throw ShapeError("find_conserved_combinations: dimension mismatch");
  }

  std::vector<RealVector> diagonals(static_cast<std::size_t>(n_modes));
  std::vector<ComplexMatrix> commutators(static_cast<std::size_t>(n_modes));
  for (int j = 0; j < n_modes; ++j) {
    diagonals[static_cast<std::size_t>(j)] =
        ops.number[static_cast<std::size_t>(j)].diagonal().real();
    commutators[static_cast<std::size_t>(j)] =
        commutator_with_diagonal(h, diagonals[static_cast<std::size_t>(j)]);
  }

  // Gram matrix of the commutators; tr(A^dag B) as an entrywise sum keeps
  // this O(dim^2) per pair.
  ComplexMatrix gram = ComplexMatrix::Zero(n_modes, n_modes);
  for (int j = 0; j < n_modes; ++j) {
    for (int k = j; k < n_modes; ++k) {
      const double value = commutators[static_cast<std::size_t>(j)]
                               .conjugate()
                               .cwiseProduct(commutators[static_cast<std::size_t>(k)])
                               .sum()
                               .real();
      gram(j, k) = value;
      gram(k, j) = value;
    }
  }

  const SpectralDecomposition spec = eigendecompose(gram);
  const double threshold = 1e-18 * gram.norm();

  std::vector<ConservedCombination> combos;
  for (Index r = 0; r < spec.eigenvalues.size(); ++r) {
    if (!(spec.eigenvalues(r) <= threshold)) continue;
    RealVector c = spec.unitary.row(r).real().transpose();
    c.normalize();
    for (Index m = 0; m < c.size(); ++m) {
      if (std::abs(c(m)) > 1e-12) {
        if (c(m) < 0.0) c = -c;
        break;
      }
    }

    RealVector combined = RealVector::Zero(dim);
    for (int j = 0; j < n_modes; ++j) {
      combined += c(j) * diagonals[static_cast<std::size_t>(j)];
    }
    const double residual = max_abs(commutator_with_diagonal(h, combined));
    if (residual <= 1e-10) {
      combos.push_back(ConservedCombination{std::move(c), residual});
    }
  }
  return combos;
}

double verify_conservation(const TrajectoryTable& table, const ConservedCombination& combo) {
  if (combo.coefficients.size() != table.n_modes()) {
    throw std::invalid_argument("verify_conservation: coefficient length does not match table");
  }
  double initial = 0.0;
  for (int j = 0; j < table.n_modes(); ++j) {
    initial += combo.coefficients(j) * table.densities[static_cast<std::size_t>(j)].front();
  }
  double drift = 0.0;
  for (std::size_t k = 0; k < table.times.size(); ++k) {
    double value = 0.0;
    for (int j = 0; j < table.n_modes(); ++j) {
      value += combo.coefficients(j) * table.densities[static_cast<std::size_t>(j)][k];
    }
    drift = std::max(drift, std::abs(value - initial));
  }
  return drift;
}

}  // namespace fermidyn
