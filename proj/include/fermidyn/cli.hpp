#ifndef FERMIDYN_CLI_HPP
#define FERMIDYN_CLI_HPP

#include <iosfwd>
#include <string>

#include "fermidyn/config.hpp"

namespace fermidyn {

// Stable exit-code taxonomy of the CLI.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;        // unexpected internal error
inline constexpr int config = 2;         // config file or flag problems
inline constexpr int parse = 3;          // Hamiltonian expression problems
inline constexpr int not_hermitian = 4;  // H != H^dag
inline constexpr int convergence = 5;    // eigensolver or ODE failure
inline constexpr int verification = 6;   // cross-validation exceeded thresholds
}  // namespace exit_code

// Cross-validation thresholds applied by `run` when verification is on.
inline constexpr double kVerifyOdeThreshold = 1e-6;
inline constexpr double kVerifyClosedFormThreshold = 1e-9;

// Executes a configured run: simulates, writes the CSV (and SVG when
// requested), prints the conserved-combination report, and cross-validates
// when asked. All errors are mapped to the exit codes above; nothing
// escapes as an exception.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace fermidyn

#endif  // FERMIDYN_CLI_HPP
