#include "fermidyn/output.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fermidyn/errors.hpp"

namespace fermidyn {

namespace {

void atomic_write(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    }
    out << content;
    if (!out) {
      throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
  }
  std::filesystem::rename(tmp, target);
}

double parse_double_token(const std::string& token, const std::string& context) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw std::runtime_error(context + ": malformed number '" + token + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buffer{};
  auto res = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), res.ptr);
}

void write_csv(const std::string& path, const TrajectoryTable& table) {
  std::string content;
  content.reserve(table.times.size() * (table.densities.size() + 1) * 20 + 64);
  content += "t";
  for (int j = 1; j <= table.n_modes(); ++j) {
    content += ",n" + std::to_string(j);
  }
  content += "\n";
  for (std::size_t k = 0; k < table.times.size(); ++k) {
    content += format_double(table.times[k]);
    for (int j = 0; j < table.n_modes(); ++j) {
      content += ",";
      content += format_double(table.densities[static_cast<std::size_t>(j)][k]);
    }
    content += "\n";
  }
  atomic_write(path, content);
}

TrajectoryTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error(path + ": empty file");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  int n_modes = 0;
  {
    std::stringstream header(line);
    std::string column;
    if (!std::getline(header, column, ',') || column != "t") {
      throw std::runtime_error(path + ": header must start with 't'");
    }
    while (std::getline(header, column, ',')) {
      ++n_modes;
      if (column != "n" + std::to_string(n_modes)) {
        throw std::runtime_error(path + ": unexpected header column '" + column + "'");
      }
    }
  }
  TrajectoryTable table;
  table.densities.assign(static_cast<std::size_t>(n_modes), {});
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++row;
    std::stringstream cells(line);
    std::string cell;
    const std::string context = path + " row " + std::to_string(row);
    if (!std::getline(cells, cell, ',')) {
      throw std::runtime_error(context + ": missing time value");
    }
    table.times.push_back(parse_double_token(cell, context));
    for (int j = 0; j < n_modes; ++j) {
      if (!std::getline(cells, cell, ',')) {
        throw std::runtime_error(context + ": expected " + std::to_string(n_modes + 1) +
                                 " columns");
      }
      table.densities[static_cast<std::size_t>(j)].push_back(parse_double_token(cell, context));
    }
  }
  return table;
}

namespace {

const char* mode_color(int mode) {
  static constexpr std::array<const char*, 10> palette{
      "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
      "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};
  return palette[static_cast<std::size_t>(mode - 1) % palette.size()];
}

std::string svg_number(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

}  // namespace

void write_svg(const std::string& path, const TrajectoryTable& table,
               const std::string& title) {
  constexpr double width = 800.0, height = 480.0;
  constexpr double left = 60.0, right = 770.0, top = 40.0, bottom = 430.0;
  const double t_max = table.times.empty() ? 1.0 : table.times.back();
  const double x_scale = (right - left) / (t_max > 0.0 ? t_max : 1.0);
  const double y_scale = bottom - top;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + svg_number(width) +
         "\" height=\"" + svg_number(height) + "\" viewBox=\"0 0 " + svg_number(width) + " " +
         svg_number(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + svg_number((left + right) / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         title + "</text>\n";

  // Axes and horizontal grid lines at 0, 0.25, ..., 1.
  for (int k = 0; k <= 4; ++k) {
    const double frac = static_cast<double>(k) / 4.0;
    const double y = bottom - frac * y_scale;
    svg += "<line x1=\"" + svg_number(left) + "\" y1=\"" + svg_number(y) + "\" x2=\"" +
           svg_number(right) + "\" y2=\"" + svg_number(y) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + svg_number(left - 8) + "\" y=\"" + svg_number(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           svg_number(frac) + "</text>\n";
  }
  for (int k = 0; k <= 5; ++k) {
    const double t = t_max * static_cast<double>(k) / 5.0;
    const double x = left + t * x_scale;
    svg += "<text x=\"" + svg_number(x) + "\" y=\"" + svg_number(bottom + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           svg_number(t) + "</text>\n";
  }
  svg += "<line x1=\"" + svg_number(left) + "\" y1=\"" + svg_number(top) + "\" x2=\"" +
         svg_number(left) + "\" y2=\"" + svg_number(bottom) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + svg_number(left) + "\" y1=\"" + svg_number(bottom) + "\" x2=\"" +
         svg_number(right) + "\" y2=\"" + svg_number(bottom) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  for (int j = 1; j <= table.n_modes(); ++j) {
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += mode_color(j);
    svg += "\" stroke-width=\"1.5\" points=\"";
    const std::vector<double>& density = table.densities[static_cast<std::size_t>(j - 1)];
    for (std::size_t k = 0; k < table.times.size(); ++k) {
      if (k > 0) svg += " ";
      svg += svg_number(left + table.times[k] * x_scale) + "," +
             svg_number(bottom - density[k] * y_scale);
    }
    svg += "\"/>\n";
    // legend entry
    const double ly = top + 16.0 * static_cast<double>(j - 1);
    svg += "<line x1=\"" + svg_number(right - 70) + "\" y1=\"" + svg_number(ly) + "\" x2=\"" +
           svg_number(right - 50) + "\" y2=\"" + svg_number(ly) + "\" stroke=\"";
    svg += mode_color(j);
    svg += "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + svg_number(right - 44) + "\" y=\"" + svg_number(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">n" + std::to_string(j) +
           "</text>\n";
  }
  svg += "</svg>\n";
  atomic_write(path, svg);
}

}  // namespace fermidyn
