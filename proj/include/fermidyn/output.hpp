#ifndef FERMIDYN_OUTPUT_HPP
#define FERMIDYN_OUTPUT_HPP

#include <string>

#include "fermidyn/dynamics.hpp"

namespace fermidyn {

// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

// UTF-8, LF line endings, header exactly "t,n1,...,nN". Written atomically
// (temp file + rename).
void write_csv(const std::string& path, const TrajectoryTable& table);

// Re-reads a trajectory CSV; values reproduce the written doubles bit for
// bit. Metadata is not stored in the file.
TrajectoryTable read_csv(const std::string& path);

// Static line chart of every n_j(t). A convenience view, never load-bearing.
void write_svg(const std::string& path, const TrajectoryTable& table,
               const std::string& title);

}  // namespace fermidyn

#endif  // FERMIDYN_OUTPUT_HPP
