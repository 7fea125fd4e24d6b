#include "fermidyn/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "fermidyn/errors.hpp"
#include "fermidyn/fermion.hpp"

namespace fermidyn {

namespace {

std::string trim(const std::string& s) {
  std::size_t first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  std::size_t last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

class ConfigReader {
 public:
  explicit ConfigReader(std::string path) : path_(std::move(path)) {}

  RunConfig read() {
    std::ifstream in(path_);
    if (!in) {
      throw ConfigError(path_ + ": cannot open file");
    }
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      parse_line(trim(line), line_no);
    }
    return finish();
  }

 private:
  std::string path_;
  std::map<std::string, std::pair<std::string, int>> values_;  // key -> (value, line)
  std::map<std::string, std::pair<double, int>> params_;

  [[noreturn]] void fail(int line, const std::string& message) const {
    throw ConfigError(path_ + ":" + std::to_string(line) + ": " + message);
  }

  void parse_line(const std::string& line, int line_no) {
    if (line.empty() || line[0] == '#') return;
    if (line.front() == '[' && line.back() == ']') return;  // section header
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      fail(line_no, "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    if (value.empty()) fail(line_no, "empty value for key '" + key + "'");

    if (key.rfind("param.", 0) == 0) {
      const std::string name = key.substr(6);
      if (!valid_identifier(name)) fail(line_no, "invalid parameter name '" + name + "'");
      if (name == "i" || name == "c" || name == "n") {
        fail(line_no, "parameter name '" + name + "' is reserved by the expression grammar");
      }
      if (params_.count(name)) fail(line_no, "duplicate parameter '" + name + "'");
      params_.emplace(name, std::pair{parse_real(value, line_no, key), line_no});
      return;
    }
    static const std::set<std::string> known{"modes",   "hamiltonian", "initial",
                                             "t_end",   "samples",     "verify"};
    if (!known.count(key)) fail(line_no, "unknown key '" + key + "'");
    if (values_.count(key)) fail(line_no, "duplicate key '" + key + "'");
    values_.emplace(key, std::pair{value, line_no});
  }

  double parse_real(const std::string& text, int line, const std::string& key) const {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last) {
      fail(line, "key '" + key + "' expects a real number, got '" + text + "'");
    }
    if (!std::isfinite(value)) {
      fail(line, "key '" + key + "' must be finite");
    }
    return value;
  }

  long parse_integer(const std::string& text, int line, const std::string& key) const {
    long value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last) {
      fail(line, "key '" + key + "' expects an integer, got '" + text + "'");
    }
    return value;
  }

  std::pair<std::string, int> require(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
      throw ConfigError(path_ + ": missing required key '" + key + "'");
    }
    return it->second;
  }

  RunConfig finish() {
    RunConfig config;
    config.config_path = path_;

    {
      auto [text, line] = require("modes");
      const long modes = parse_integer(text, line, "modes");
      if (modes < 1 || modes > FermionicSystem::kMaxModes) {
        fail(line, "modes must be in [1, " + std::to_string(FermionicSystem::kMaxModes) + "]");
      }
      config.modes = static_cast<int>(modes);
    }
    config.hamiltonian = require("hamiltonian").first;
    {
      auto [text, line] = require("initial");
      std::size_t pos = 0;
      while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string item = trim(text.substr(pos, comma - pos));
        if (item != "0" && item != "1") {
          fail(line, "occupations must be 0 or 1, got '" + item + "'");
        }
        config.initial.push_back(item == "1" ? 1 : 0);
        pos = comma + 1;
        if (comma == text.size()) break;
      }
      if (static_cast<int>(config.initial.size()) != config.modes) {
        fail(line, "initial lists " + std::to_string(config.initial.size()) +
                       " occupations for " + std::to_string(config.modes) + " modes");
      }
    }
    {
      auto [text, line] = require("t_end");
      config.t_end = parse_real(text, line, "t_end");
      if (!(config.t_end > 0.0)) fail(line, "t_end must be positive");
    }
    {
      auto [text, line] = require("samples");
      const long samples = parse_integer(text, line, "samples");
      if (samples < 2) fail(line, "samples must be at least 2");
      if (samples > 10'000'000) fail(line, "samples is unreasonably large");
      config.samples = static_cast<int>(samples);
    }
    if (auto it = values_.find("verify"); it != values_.end()) {
      const auto& [text, line] = it->second;
      if (text == "true" || text == "1") {
        config.verify = true;
      } else if (text == "false" || text == "0") {
        config.verify = false;
      } else {
        fail(line, "verify expects true/false, got '" + text + "'");
      }
    }
    for (const auto& [name, entry] : params_) {
      config.parameters.emplace(name, entry.first);
    }
    return config;
  }
};

}  // namespace

std::vector<double> RunConfig::time_grid() const {
  std::vector<double> grid(static_cast<std::size_t>(samples));
  const double dt = t_end / static_cast<double>(samples - 1);
  for (int k = 0; k < samples; ++k) {
    grid[static_cast<std::size_t>(k)] = static_cast<double>(k) * dt;
  }
  grid.back() = t_end;
  return grid;
}

RunConfig load_config(const std::string& path) { return ConfigReader(path).read(); }

}  // namespace fermidyn
