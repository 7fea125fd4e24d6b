#ifndef FERMIDYN_ORACLE_HPP
#define FERMIDYN_ORACLE_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fermidyn/dynamics.hpp"

namespace fermidyn {

// Fixed-step RK4 trajectory of an observable under dX/dt = i[H, X].
// Deliberately a different computation path from the spectral engine: the
// observable matrix itself is integrated, never diagonalized.
struct OdeRun {
  double step = 0.0;
  double horizon = 0.0;
  std::vector<double> times;
  std::vector<ComplexMatrix> trajectory;   // X(t_k) at the sampled steps
  double max_hermiticity_drift = 0.0;      // max ||X - X^dag||_max seen
};

// Integrates to ceil(horizon/step) steps of size `step`, recording every
// `sample_stride`-th state (plus the final one). Aborts with
// ConvergenceError once the Hermiticity drift of X exceeds 1e-6 (the step
// was too large). The usable step heuristic is h <= 0.01 / ||H||_max.
OdeRun integrate_heisenberg(const ComplexMatrix& h, const ComplexMatrix& x0, double horizon,
                            double step, Index sample_stride = 1);

// <e_k, X(t_sample) e_k> for the recorded trajectory.
double ode_density(const OdeRun& run, std::size_t sample, Index state_index);

// A family of models whose densities are known in closed form.
struct ClosedFormFamily {
  std::string id;
  int n_modes;                           // 0 = any mode count
  std::vector<std::string> parameters;   // required binding names
  std::function<std::string(int)> hamiltonian_text;
  // Density of `mode` at time t for the given parameter bindings and start;
  // nullopt when the family has no closed form for that start.
  std::function<std::optional<double>(const std::map<std::string, double>&,
                                      const std::vector<int>&, int, double)>
      density;
};

const std::vector<ClosedFormFamily>& closed_form_families();

// Throws std::invalid_argument for an unknown id.
const ClosedFormFamily& closed_form_family(const std::string& id);

// A family bound to parameter values and a start state.
struct ClosedFormCase {
  const ClosedFormFamily* family = nullptr;
  std::map<std::string, double> parameters;
  std::vector<int> initial;
};

// Validates the id, the bindings and that the family covers the start.
ClosedFormCase make_closed_form_case(const std::string& id,
                                     const std::map<std::string, double>& parameters,
                                     const std::vector<int>& initial);

double closed_form_density(const ClosedFormCase& c, int mode, double t);

// Structural lookup: assembles each candidate family with the plan's
// bindings and compares Hamiltonian matrices entrywise (also against the
// sign-flipped convention, whose densities coincide for every family here).
std::optional<ClosedFormCase> match_closed_form(const SimulationPlan& plan);

struct CrosscheckReport {
  double ode_step = 0.0;
  double spectral_vs_ode = 0.0;
  std::optional<std::string> closed_form_id;
  std::optional<double> spectral_vs_closed;
  std::optional<double> ode_vs_closed;
};

// Runs the spectral engine, the RK4 oracle and (when the plan matches a
// catalog family) the closed form over the plan's grid, and reports the
// maximum pairwise density discrepancies. Discrepancies are reported, never
// thrown. Requires a uniform grid.
CrosscheckReport crosscheck(const SimulationPlan& plan);

}  // namespace fermidyn

#endif  // FERMIDYN_ORACLE_HPP
