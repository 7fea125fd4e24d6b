#include "fermidyn/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace fermidyn {

namespace {

constexpr double kOdeDriftLimit = 1e-6;

void heisenberg_rhs(const ComplexMatrix& h, const ComplexMatrix& x, ComplexMatrix& work,
                    ComplexMatrix& out) {
  out.noalias() = h * x;
  work.noalias() = x * h;
  out -= work;
  out *= ComplexScalar(0.0, 1.0);
}

}  // namespace

OdeRun integrate_heisenberg(const ComplexMatrix& h, const ComplexMatrix& x0, double horizon,
                            double step, Index sample_stride) {
  if (h.rows() != h.cols() || h.rows() != x0.rows() || x0.rows() != x0.cols()) {
    throw ShapeError("integrate_heisenberg: H and X0 must be square and equal-sized");
  }
  if (!(step > 0.0) || !(horizon >= 0.0)) {
    throw std::invalid_argument("integrate_heisenberg: need step > 0 and horizon >= 0");
  }
  if (sample_stride < 1) sample_stride = 1;

  const Index n = h.rows();
  const Index n_steps = static_cast<Index>(std::ceil(horizon / step - 1e-9));

  OdeRun run;
  run.step = step;
  run.horizon = static_cast<double>(n_steps) * step;
  run.times.reserve(static_cast<std::size_t>(n_steps / sample_stride + 2));
  run.trajectory.reserve(run.times.capacity());

  ComplexMatrix x = x0;
  ComplexMatrix k1(n, n), k2(n, n), k3(n, n), k4(n, n), stage(n, n), work(n, n);

  auto record = [&](Index k) {
    run.times.push_back(static_cast<double>(k) * step);
    run.trajectory.push_back(x);
  };
  record(0);

  for (Index k = 0; k < n_steps; ++k) {
    heisenberg_rhs(h, x, work, k1);
    stage = x + (step / 2.0) * k1;
    heisenberg_rhs(h, stage, work, k2);
    stage = x + (step / 2.0) * k2;
    heisenberg_rhs(h, stage, work, k3);
    stage = x + step * k3;
    heisenberg_rhs(h, stage, work, k4);
    x += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double drift = max_abs(x - x.adjoint());
    if (!(drift <= kOdeDriftLimit)) {
      throw ConvergenceError("integrate_heisenberg: Hermiticity drift " + std::to_string(drift) +
                                 " after step " + std::to_string(k + 1) +
                                 "; the step size is too large",
                             drift);
    }
    run.max_hermiticity_drift = std::max(run.max_hermiticity_drift, drift);

    if ((k + 1) % sample_stride == 0 || k + 1 == n_steps) {
      record(k + 1);
    }
  }
  return run;
}

double ode_density(const OdeRun& run, std::size_t sample, Index state_index) {
  return run.trajectory.at(sample)(state_index, state_index).real();
}

namespace {

double density_eq_two_mode(const std::map<std::string, double>& params,
                           const std::vector<int>& initial, int mode, double t) {
  const double lt = params.at("lambda") * t;
  const double c2 = std::cos(lt) * std::cos(lt);
  const double s2 = std::sin(lt) * std::sin(lt);
  const double n1 = initial[0], n2 = initial[1];
  return mode == 1 ? n1 * c2 + n2 * s2 : n2 * c2 + n1 * s2;
}

double density_eq_three_mode(const std::map<std::string, double>& params,
                             const std::vector<int>& initial, int mode, double t) {
  const double lt = params.at("lambda") * t;
  const double c1 = std::cos(lt), s1 = std::sin(lt);
  const double c2 = std::cos(2.0 * lt), s2 = std::sin(2.0 * lt);
  // One-particle evolution coefficients; all diagonal entries coincide, as
  // do all off-diagonal ones.
  const ComplexScalar e_diag((2.0 * c1 + c2) / 3.0, (-2.0 * s1 + s2) / 3.0);
  const ComplexScalar e_off((-c1 + c2) / 3.0, (s1 + s2) / 3.0);
  double value = 0.0;
  for (int k = 1; k <= 3; ++k) {
    value += initial[static_cast<std::size_t>(k - 1)] *
             std::norm(k == mode ? e_diag : e_off);
  }
  return value;
}

std::optional<double> density_gated(const std::map<std::string, double>& params,
                                    const std::vector<int>& initial, int mode, double t) {
  const double lt = params.at("lambda") * t;
  const int n1 = initial[0], n2 = initial[1];
  if (n2 == 0) {
    // Nothing gates the exchange; both densities freeze.
    return mode == 1 ? double(n1) : 0.0;
  }
  if (mode == 2) return 1.0;
  return n1 == 0 ? std::sin(lt) * std::sin(lt) : std::cos(lt) * std::cos(lt);
}

std::optional<double> density_pair_exchange(const std::map<std::string, double>& params,
                                            const std::vector<int>& initial, int mode,
                                            double t) {
  const double lt = params.at("lambda") * t;
  const int n1 = initial[0], n2 = initial[1], n3 = initial[2];
  const double s2 = std::sin(lt) * std::sin(lt);
  const double c2 = std::cos(lt) * std::cos(lt);
  if (n1 == 0 && n2 == 0 && n3 == 0) return 0.0;
  if (n1 == 1 && n2 == 0 && n3 == 0) return mode == 1 ? 1.0 : 0.0;
  if (n1 == 0 && n2 == 1 && n3 == 0) return mode == 2 ? 1.0 : 0.0;
  if (n1 == 0 && n2 == 0 && n3 == 1) return mode == 3 ? c2 : s2;
  if (n1 == 1 && n2 == 1 && n3 == 0) return mode == 3 ? s2 : c2;
  return std::nullopt;
}

std::optional<double> density_pair_exchange_field(const std::map<std::string, double>& params,
                                                  const std::vector<int>& initial, int mode,
                                                  double t) {
  if (!(initial[0] == 0 && initial[1] == 0 && initial[2] == 1)) return std::nullopt;
  const double omega = params.at("omega");
  const double lambda = params.at("lambda");
  // Two-level block between the start state and the doubly-occupied partner.
  const double rabi_sq = omega * omega + 4.0 * lambda * lambda;
  const double amplitude = 2.0 * lambda * lambda / rabi_sq;
  const double transferred = amplitude * (1.0 - std::cos(std::sqrt(rabi_sq) * t));
  return mode == 3 ? 1.0 - transferred : transferred;
}

std::string stationary_field_text(int n_modes) {
  std::string text = "omega*(";
  for (int j = 1; j <= n_modes; ++j) {
    if (j > 1) text += " + ";
    text += "n(" + std::to_string(j) + ")";
  }
  return text + ")";
}

std::vector<ClosedFormFamily> build_families() {
  std::vector<ClosedFormFamily> families;

  families.push_back(ClosedFormFamily{
      "two-mode-exchange", 2, {"lambda"},
      [](int) { return std::string("lambda*(c(2)*c'(1) + h.c.)"); },
      [](const auto& p, const auto& n0, int j, double t) {
        return std::optional<double>(density_eq_two_mode(p, n0, j, t));
      }});

  families.push_back(ClosedFormFamily{
      "three-mode-exchange", 3, {"lambda"},
      [](int) {
        return std::string("lambda*(c(2)*c'(1) + c(3)*c'(1) + c(3)*c'(2) + h.c.)");
      },
      [](const auto& p, const auto& n0, int j, double t) {
        return std::optional<double>(density_eq_three_mode(p, n0, j, t));
      }});

  families.push_back(ClosedFormFamily{
      "gated-exchange", 2, {"lambda"},
      [](int) { return std::string("lambda*(c'(1)*n(2) + n(2)*c(1))"); },
      [](const auto& p, const auto& n0, int j, double t) { return density_gated(p, n0, j, t); }});

  families.push_back(ClosedFormFamily{
      "pair-exchange", 3, {"lambda"},
      [](int) { return std::string("lambda*(c'(1)*c'(2)*c(3) + c'(3)*c(2)*c(1))"); },
      [](const auto& p, const auto& n0, int j, double t) {
        return density_pair_exchange(p, n0, j, t);
      }});

  families.push_back(ClosedFormFamily{
      "pair-exchange-uniform-field", 3, {"omega", "lambda"},
      [](int) {
        return std::string(
            "omega*(n(1) + n(2) + n(3)) + lambda*(c'(1)*c'(2)*c(3) + c'(3)*c(2)*c(1))");
      },
      [](const auto& p, const auto& n0, int j, double t) {
        return density_pair_exchange_field(p, n0, j, t);
      }});

  families.push_back(ClosedFormFamily{
      "stationary-field", 0, {"omega"}, stationary_field_text,
      [](const auto&, const auto& n0, int j, double) {
        return std::optional<double>(double(n0[static_cast<std::size_t>(j - 1)]));
      }});

  return families;
}

}  // namespace

const std::vector<ClosedFormFamily>& closed_form_families() {
  static const std::vector<ClosedFormFamily> families = build_families();
  return families;
}

const ClosedFormFamily& closed_form_family(const std::string& id) {
  for (const ClosedFormFamily& family : closed_form_families()) {
    if (family.id == id) return family;
  }
  throw std::invalid_argument("unknown closed-form case id '" + id + "'");
}

ClosedFormCase make_closed_form_case(const std::string& id,
                                     const std::map<std::string, double>& parameters,
                                     const std::vector<int>& initial) {
  const ClosedFormFamily& family = closed_form_family(id);
  if (family.n_modes != 0 && static_cast<int>(initial.size()) != family.n_modes) {
    throw std::invalid_argument("closed-form case '" + id + "' expects " +
                                std::to_string(family.n_modes) + " modes");
  }
  for (const std::string& name : family.parameters) {
    if (!parameters.count(name)) {
      throw std::invalid_argument("closed-form case '" + id + "' needs parameter '" + name + "'");
    }
  }
  if (!family.density(parameters, initial, 1, 0.0).has_value()) {
    throw std::invalid_argument("closed-form case '" + id +
                                "' has no solution for the given start state");
  }
  return ClosedFormCase{&family, parameters, initial};
}

double closed_form_density(const ClosedFormCase& c, int mode, double t) {
  if (c.family == nullptr) {
    throw std::invalid_argument("closed_form_density: empty case");
  }
  if (mode < 1 || mode > static_cast<int>(c.initial.size())) {
    throw std::invalid_argument("closed_form_density: mode out of range");
  }
  const std::optional<double> value = c.family->density(c.parameters, c.initial, mode, t);
  if (!value) {
    throw std::invalid_argument("closed-form case '" + c.family->id +
                                "' has no solution for the given start state");
  }
  return *value;
}

std::optional<ClosedFormCase> match_closed_form(const SimulationPlan& plan) {
  const ModeOperatorSet ops = build_operators(plan.system);
  const ComplexMatrix h_plan = assemble(plan.hamiltonian, ops);
  const double tol = 1e-12 * std::max(1.0, max_abs(h_plan));

  for (const ClosedFormFamily& family : closed_form_families()) {
    if (family.n_modes != 0 && family.n_modes != plan.system.n_modes) continue;
    bool have_params = true;
    std::map<std::string, double> bindings;
    for (const std::string& name : family.parameters) {
      auto it = plan.hamiltonian.parameters.find(name);
      if (it == plan.hamiltonian.parameters.end()) {
        have_params = false;
        break;
      }
      bindings.emplace(*it);
    }
    if (!have_params) continue;

    OperatorExpression reference = parse(family.hamiltonian_text(plan.system.n_modes));
    reference.parameters = bindings;
    const ComplexMatrix h_family = assemble(reference, ops);
    // Densities of every catalog family are even in the coupling, so the
    // sign-flipped operator-ordering convention matches too.
    if (max_abs(h_plan - h_family) > tol && max_abs(h_plan + h_family) > tol) continue;

    if (!family.density(bindings, plan.initial.occupations(), 1, 0.0).has_value()) continue;
    return ClosedFormCase{&family, std::move(bindings), plan.initial.occupations()};
  }
  return std::nullopt;
}

CrosscheckReport crosscheck(const SimulationPlan& plan) {
  const std::vector<double>& grid = plan.time_grid;
  if (grid.size() < 2) {
    throw std::invalid_argument("crosscheck: need at least two grid points");
  }
  const double dt = grid[1] - grid[0];
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (std::abs((grid[k] - grid[k - 1]) - dt) > 1e-9 * dt) {
      throw std::invalid_argument("crosscheck: time grid must be uniform");
    }
  }

  const PreparedSystem prepared = prepare(plan.system, plan.hamiltonian);
  TrajectoryTable table = simulate(prepared, plan.initial, grid);

  const double h_target = std::min(1e-3, 0.01 / std::max(1e-12, max_abs(prepared.hamiltonian)));
  const Index stride = std::max(Index{1}, static_cast<Index>(std::ceil(dt / h_target - 1e-9)));
  const double step = dt / static_cast<double>(stride);
  const double horizon = grid.back();
  const Index state_index = fock_index(plan.initial);

  CrosscheckReport report;
  report.ode_step = step;

  const std::optional<ClosedFormCase> closed = match_closed_form(plan);
  if (closed) {
    report.closed_form_id = closed->family->id;
    report.spectral_vs_closed = 0.0;
    report.ode_vs_closed = 0.0;
  }

  for (int j = 1; j <= plan.system.n_modes; ++j) {
    const OdeRun run = integrate_heisenberg(
        prepared.hamiltonian, prepared.ops.number[static_cast<std::size_t>(j - 1)], horizon,
        step, stride);
    if (run.trajectory.size() < grid.size()) {
      throw std::logic_error("crosscheck: ODE sampling misaligned with the grid");
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double spectral = table.densities[static_cast<std::size_t>(j - 1)][k];
      const double ode = ode_density(run, k, state_index);
      report.spectral_vs_ode = std::max(report.spectral_vs_ode, std::abs(spectral - ode));
      if (closed) {
        const double exact = closed_form_density(*closed, j, grid[k]);
        *report.spectral_vs_closed =
            std::max(*report.spectral_vs_closed, std::abs(spectral - exact));
        *report.ode_vs_closed = std::max(*report.ode_vs_closed, std::abs(ode - exact));
      }
    }
  }
  return report;
}

}  // namespace fermidyn
