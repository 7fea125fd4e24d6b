#ifndef FERMIDYN_CONFIG_HPP
#define FERMIDYN_CONFIG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fermidyn {

// A run description, read from a flat key-value file. Recognized keys:
//   modes        number of fermionic modes (1..12)
//   hamiltonian  operator expression (see the DSL grammar)
//   param.<name> real value bound to the named parameter
//   initial      comma-separated 0/1 occupations, mode 1 first
//   t_end        end of the simulated interval (start is always 0)
//   samples      number of uniformly spaced samples (>= 2)
//   verify       optional true/false, cross-validate against the ODE oracle
// '#' starts a comment, blank lines and [section] headers are ignored.
struct RunConfig {
  int modes = 0;
  std::string hamiltonian;
  std::map<std::string, double> parameters;
  std::vector<int> initial;
  double t_start = 0.0;
  double t_end = 0.0;
  int samples = 0;
  bool verify = false;

  // Output targets; the CLI fills these from flags. An unset csv_path
  // defaults to the config file name with a .csv extension.
  std::optional<std::string> csv_path;
  std::optional<std::string> svg_path;
  bool list_conserved_only = false;

  std::string config_path;

  std::vector<double> time_grid() const;  // uniform, samples points, starts at 0
};

// Throws ConfigError with "<path>:<line>: ..." context on malformed or
// invalid input.
RunConfig load_config(const std::string& path);

}  // namespace fermidyn

#endif  // FERMIDYN_CONFIG_HPP
