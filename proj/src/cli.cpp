#include "fermidyn/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <ostream>

#include "fermidyn/dynamics.hpp"
#include "fermidyn/oracle.hpp"
#include "fermidyn/output.hpp"

namespace fermidyn {

namespace {

std::string default_csv_path(const RunConfig& config) {
  std::filesystem::path p(config.config_path);
  p.replace_extension(".csv");
  return p.string();
}

std::string format_coefficient(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

void print_conserved(std::ostream& out, const std::vector<ConservedCombination>& combos) {
  if (combos.empty()) {
    out << "conserved combinations: none\n";
    return;
  }
  out << "conserved combinations (" << combos.size() << "):\n";
  for (const ConservedCombination& combo : combos) {
    out << "  c = (";
    for (Index j = 0; j < combo.coefficients.size(); ++j) {
      if (j > 0) out << ", ";
      out << format_coefficient(combo.coefficients(j));
    }
    out << "), residual " << format_coefficient(combo.residual) << "\n";
  }
}

int run_impl(const RunConfig& config, std::ostream& out, std::ostream& err) {
  SimulationPlan plan{FermionicSystem(config.modes), parse(config.hamiltonian),
                      FockState(config.modes, config.initial), config.time_grid()};
  plan.hamiltonian.parameters = config.parameters;

  // Surface missing bindings and out-of-range modes as config problems
  // before any heavy work starts.
  for (const std::string& name : plan.hamiltonian.unbound_parameters()) {
    err << "error: hamiltonian references unbound parameter '" << name
        << "' (add 'param." << name << " = ...')\n";
    return exit_code::config;
  }
  if (plan.hamiltonian.max_mode() > config.modes) {
    err << "error: hamiltonian references mode " << plan.hamiltonian.max_mode()
        << " but the system has " << config.modes << " modes\n";
    return exit_code::config;
  }

  const PreparedSystem prepared = prepare(plan.system, plan.hamiltonian);
  print_conserved(out, find_conserved_combinations(prepared.hamiltonian, prepared.ops));
  if (config.list_conserved_only) {
    return exit_code::ok;
  }

  TrajectoryTable table = simulate(prepared, plan.initial, plan.time_grid);
  table.metadata.parameters = config.parameters;

  const std::string csv_path = config.csv_path.value_or(default_csv_path(config));
  write_csv(csv_path, table);
  out << "wrote " << csv_path << "\n";
  if (config.svg_path) {
    write_svg(*config.svg_path, table,
              std::filesystem::path(config.config_path).stem().string());
    out << "wrote " << *config.svg_path << "\n";
  }

  if (config.verify) {
    const CrosscheckReport report = crosscheck(plan);
    out << "verification: spectral vs ODE oracle (h = " << format_coefficient(report.ode_step)
        << "): max discrepancy " << format_coefficient(report.spectral_vs_ode) << "\n";
    bool failed = report.spectral_vs_ode > kVerifyOdeThreshold;
    if (report.closed_form_id) {
      out << "verification: closed form '" << *report.closed_form_id
          << "': spectral " << format_coefficient(*report.spectral_vs_closed) << ", ODE "
          << format_coefficient(*report.ode_vs_closed) << "\n";
      failed = failed || *report.spectral_vs_closed > kVerifyClosedFormThreshold;
    }
    if (failed) {
      err << "error: verification thresholds exceeded\n";
      return exit_code::verification;
    }
    out << "verification: ok\n";
  }
  return exit_code::ok;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return run_impl(config, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::config;
  } catch (const ParseError& e) {
    err << "error: hamiltonian: " << e.what() << "\n";
    return exit_code::parse;
  } catch (const NotHermitianError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::not_hermitian;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::convergence;
  } catch (const VerificationError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::verification;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::failure;
  }
}

}  // namespace fermidyn
