#ifndef FERMIDYN_DYNAMICS_HPP
#define FERMIDYN_DYNAMICS_HPP

#include <map>
#include <string>
#include <vector>

#include "fermidyn/core.hpp"
#include "fermidyn/fermion.hpp"
#include "fermidyn/hamiltonian.hpp"
#include "fermidyn/spectral.hpp"

namespace fermidyn {

struct SimulationPlan {
  FermionicSystem system;
  OperatorExpression hamiltonian;
  FockState initial;
  std::vector<double> time_grid;  // strictly increasing, first point 0
};

// Operators, Hamiltonian matrix and spectral decomposition assembled once
// and reused for every evaluation time.
struct PreparedSystem {
  FermionicSystem system;
  ModeOperatorSet ops;
  ComplexMatrix hamiltonian;
  SpectralDecomposition decomposition;
};

// Assembles H, refuses non-Hermitian input (NotHermitianError) and
// diagonalizes. The expensive part of every simulation happens here.
PreparedSystem prepare(const FermionicSystem& system, const OperatorExpression& hamiltonian);

// n_j(t) = ||b_j(t) phi_in||^2, evaluated as a vector norm. Unclamped.
double density(const PreparedSystem& prepared, const FockState& initial, int mode, double t);

struct TrajectoryMetadata {
  std::map<std::string, double> parameters;
  std::vector<int> initial_occupations;  // mode 1 first
};

struct TrajectoryTable {
  std::vector<double> times;
  std::vector<std::vector<double>> densities;  // densities[mode-1][sample]
  TrajectoryMetadata metadata;

  int n_modes() const { return static_cast<int>(densities.size()); }
};

// Densities for every mode over the grid. Values inside [-1e-10, 0) or
// (1, 1+1e-10] clamp to the boundary; larger excursions throw (they signal
// a solver bug, not round-off).
TrajectoryTable simulate(const SimulationPlan& plan);
TrajectoryTable simulate(const PreparedSystem& prepared, const FockState& initial,
                         const std::vector<double>& time_grid);

inline constexpr double kDensitySlack = 1e-10;

// A unit vector c with [H, sum_j c_j N_j] = 0 (up to the reported residual).
struct ConservedCombination {
  RealVector coefficients;  // unit norm, first nonzero entry positive
  double residual = 0.0;    // ||[H, sum_j c_j N_j]||_max
};

// Orthonormal basis of the null space of c -> sum_j c_j [H, N_j], found by
// diagonalizing the N x N Gram matrix G_jk = Re tr([H,N_j]^dag [H,N_k]).
// Empty when no combination is conserved.
std::vector<ConservedCombination> find_conserved_combinations(const ComplexMatrix& h,
                                                              const ModeOperatorSet& ops);

// max_t |sum_j c_j n_j(t) - sum_j c_j n_j(0)| over the table.
double verify_conservation(const TrajectoryTable& table, const ConservedCombination& combo);

}  // namespace fermidyn

#endif  // FERMIDYN_DYNAMICS_HPP
