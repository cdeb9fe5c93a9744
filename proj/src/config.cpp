#include "twintunnel/config.hpp"

#include <fstream>
#include <stdexcept>

namespace twintunnel {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  size_t pos = 0;
  const double v = std::stod(value, &pos);
  if (pos != value.size())
    throw std::invalid_argument("config: bad number for " + key + ": " + value);
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  size_t pos = 0;
  const int v = std::stoi(value, &pos);
  if (pos != value.size())
    throw std::invalid_argument("config: bad integer for " + key + ": " + value);
  return v;
}

}  // namespace

std::map<std::string, std::string> load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) + " is not key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("config: empty key on line " + std::to_string(lineno));
    kv[key] = value;
  }
  return kv;
}

void apply_config(const std::map<std::string, std::string>& kv, SweepConfig& sweep,
                  oracle::GridSpec& grid, Tolerances& tol) {
  for (const auto& [key, value] : kv) {
    if (key == "q_min") sweep.q_min = parse_double(key, value);
    else if (key == "q_max") sweep.q_max = parse_double(key, value);
    else if (key == "steps") sweep.steps = parse_int(key, value);
    else if (key == "p") sweep.p = parse_double(key, value);
    else if (key == "pbar") sweep.pbar = parse_double(key, value);
    else if (key == "qbar") sweep.qbar = parse_double(key, value);
    else if (key == "bigP") sweep.big_p = parse_double(key, value);
    else if (key == "d") sweep.d = parse_double(key, value);
    else if (key == "a") sweep.a = parse_double(key, value);
    else if (key == "threads") sweep.threads = parse_int(key, value);
    else if (key == "fermion_epsilon") sweep.fermion_epsilon = parse_double(key, value);
    else if (key == "statistics") sweep.statistics = statistics_from_string(value);
    else if (key == "form") sweep.form = form_from_string(value);
    else if (key == "grid_span") grid.span = parse_double(key, value);
    else if (key == "grid_points") grid.points = parse_int(key, value);
    else if (key == "energy_step") grid.energy_step = parse_double(key, value);
    else if (key == "tol_algebraic") tol.algebraic = parse_double(key, value);
    else if (key == "tol_derivative") tol.derivative_rel = parse_double(key, value);
    else if (key == "tol_transmission") tol.transmission_abs = parse_double(key, value);
    else if (key == "tol_grid") tol.grid_rel = parse_double(key, value);
    else throw std::invalid_argument("config: unknown key " + key);
  }
}

}  // namespace twintunnel
