// Copyright 2026 The tclgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tclgen/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tclgen/models.hpp"

namespace tclgen {

std::string ConfigDiagnostic::to_string() const {
  std::ostringstream os;
  if (line > 0) os << "line " << line << ", column " << column << ": ";
  if (!field.empty()) os << field << ": ";
  os << message;
  return os.str();
}

namespace {

std::string join_diagnostics(const std::vector<ConfigDiagnostic>& diags) {
  std::string out = "invalid config";
  for (const auto& d : diags) out += "\n  " + d.to_string();
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct Entry {
  std::string value;
  int line;
  int column;
};

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"model", {"preset", "dim", "H_S", "X", "alpha", "rho0"}},
      {"bath", {"modes", "beta"}},
      {"run",
       {"t_max", "points", "order", "stepper", "step", "abs_tol", "rel_tol", "quadrature", "quad_nodes", "quad_tol",
        "generator_intervals", "generator_times", "alpha_scan", "fock_levels", "threads"}},
      {"outputs", {"dir", "kernels", "generator", "trajectory", "diagnostic", "report"}},
  };
  return keys;
}

class Parser {
 public:
  explicit Parser(std::string_view text) { scan(text); }

  ScenarioConfig build(std::string_view text);

 private:
  void scan(std::string_view text);
  void error(const Entry* e, std::string field, std::string message) {
    diags_.push_back({e ? e->line : 0, e ? e->column : 0, std::move(field), std::move(message)});
  }
  const Entry* find(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }

  template <class T, class Check>
  void number(const std::string& key, T& out, Check check, const char* requirement);
  std::optional<Matrix> matrix(const std::string& key, std::optional<int> dim);
  std::optional<std::vector<double>> list(const std::string& key);
  void flag(const std::string& key, bool& out);

  std::map<std::string, Entry> entries_;
  std::vector<ConfigDiagnostic> diags_;
};

void Parser::scan(std::string_view text) {
  std::string section;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view raw = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const int indent = static_cast<int>(raw.find_first_not_of(" \t\r")) + 1;

    if (line.front() == '[') {
      if (line.back() != ']') {
        diags_.push_back({line_no, indent, "", "syntax error: section header missing ']'"});
        continue;
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!schema().count(section)) {
        diags_.push_back({line_no, indent + 1, section, "unknown section (expected model, bath, run, outputs)"});
        section = "?";
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      diags_.push_back({line_no, indent, "", "syntax error: expected 'key = value'"});
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) {
      diags_.push_back({line_no, indent, "", "syntax error: empty key"});
      continue;
    }
    if (section.empty()) {
      diags_.push_back({line_no, indent, key, "syntax error: key outside of any section"});
      continue;
    }
    if (section == "?") continue;
    const std::string field = section + "." + key;
    if (!schema().at(section).count(key)) {
      diags_.push_back({line_no, indent, field, "unknown key"});
      continue;
    }
    const std::string_view value = trim(line.substr(eq + 1));
    const int value_col =
        indent + static_cast<int>(eq) + 1 + static_cast<int>(line.substr(eq + 1).find_first_not_of(" \t"));
    if (entries_.count(field)) {
      diags_.push_back({line_no, indent, field, "duplicate key (first set on line " +
                                                    std::to_string(entries_.at(field).line) + ")"});
      continue;
    }
    entries_.emplace(field, Entry{std::string(value), line_no, value_col});
  }
}

template <class T, class Check>
void Parser::number(const std::string& key, T& out, Check check, const char* requirement) {
  const Entry* e = find(key);
  if (!e) return;
  const auto v = parse_double(e->value);
  if (!v || !std::isfinite(*v)) {
    error(e, key, "expected a number, got '" + e->value + "'");
    return;
  }
  if constexpr (std::is_integral_v<T>) {
    if (*v != std::floor(*v) || std::abs(*v) > 1e9) {
      error(e, key, "expected an integer, got '" + e->value + "'");
      return;
    }
  }
  if (!check(*v)) {
    error(e, key, std::string("must be ") + requirement + ", got " + e->value);
    return;
  }
  out = static_cast<T>(*v);
}

std::optional<Matrix> Parser::matrix(const std::string& key, std::optional<int> dim) {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  const auto parts = split(e->value, ',');
  std::vector<Complex> values;
  for (const auto& p : parts) {
    const auto c = parse_complex(p);
    if (!c) {
      error(e, key, "bad matrix entry '" + std::string(p) + "'");
      return std::nullopt;
    }
    values.push_back(*c);
  }
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(values.size()))));
  if (n * n != static_cast<int>(values.size())) {
    error(e, key, "expected a square matrix, got " + std::to_string(values.size()) + " entries");
    return std::nullopt;
  }
  if (dim && *dim != n) {
    error(e, key, "expected " + std::to_string(*dim * *dim) + " entries for dim = " + std::to_string(*dim));
    return std::nullopt;
  }
  Matrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = values[static_cast<std::size_t>(r * n + c)];
  return m;
}

std::optional<std::vector<double>> Parser::list(const std::string& key) {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  std::vector<double> out;
  for (const auto& p : split(e->value, ',')) {
    const auto v = parse_double(p);
    if (!v || !std::isfinite(*v)) {
      error(e, key, "bad list entry '" + std::string(p) + "'");
      return std::nullopt;
    }
    out.push_back(*v);
  }
  return out;
}

void Parser::flag(const std::string& key, bool& out) {
  const Entry* e = find(key);
  if (!e) return;
  if (e->value == "true" || e->value == "yes" || e->value == "1")
    out = true;
  else if (e->value == "false" || e->value == "no" || e->value == "0")
    out = false;
  else
    error(e, key, "expected true or false, got '" + e->value + "'");
}

ScenarioConfig Parser::build(std::string_view text) {
  ScenarioConfig cfg;
  cfg.source_hash = hex64(fnv1a64(text));

  bool have_model = false;
  bool have_bath = false;
  if (const Entry* e = find("model.preset")) {
    if (const auto preset = find_preset(e->value)) {
      cfg.preset = preset->name;
      cfg.hamiltonian = preset->model.hamiltonian();
      cfg.coupling = preset->model.coupling();
      cfg.alpha = preset->model.alpha();
      cfg.rho0 = preset->rho0;
      cfg.modes = preset->bath.modes();
      cfg.beta = preset->bath.beta();
      have_model = have_bath = true;
    } else {
      std::string names;
      for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
      error(e, "model.preset", "unknown preset '" + e->value + "'; available: " + names);
    }
  }

  std::optional<int> dim;
  if (find("model.dim")) {
    int d = 0;
    number("model.dim", d, [](double v) { return v >= 2; }, ">= 2");
    if (d >= 2) dim = d;
  }
  const auto h = matrix("model.H_S", dim);
  const auto x = matrix("model.X", dim);
  if (h) cfg.hamiltonian = *h;
  if (x) cfg.coupling = *x;
  if (!have_model) {
    if (!find("model.H_S")) error(nullptr, "model.H_S", "required when no preset is given");
    if (!find("model.X")) error(nullptr, "model.X", "required when no preset is given");
    if (!find("model.alpha")) error(nullptr, "model.alpha", "required when no preset is given");
  }
  number("model.alpha", cfg.alpha, [](double v) { return v >= 0.0; }, ">= 0");
  if (const auto r = matrix("model.rho0", dim)) cfg.rho0 = *r;

  if (const Entry* e = find("bath.modes")) {
    std::vector<Mode> modes;
    bool ok = true;
    for (const auto& triple : split(e->value, ';')) {
      if (triple.empty()) continue;
      const auto parts = split(triple, ',');
      std::optional<double> k, w, m;
      if (parts.size() == 3) {
        k = parse_double(parts[0]);
        w = parse_double(parts[1]);
        m = parse_double(parts[2]);
      }
      if (!k || !w || !m) {
        error(e, "bath.modes", "expected 'kappa, omega, mass' per mode, got '" + std::string(triple) + "'");
        ok = false;
        break;
      }
      if (!(*w > 0.0) || !(*m > 0.0) || !std::isfinite(*k) || !std::isfinite(*w) || !std::isfinite(*m)) {
        error(e, "bath.modes", "mode '" + std::string(triple) + "' needs finite values with omega > 0 and mass > 0");
        ok = false;
        continue;
      }
      modes.push_back({*k, *w, *m});
    }
    if (ok && modes.empty()) error(e, "bath.modes", "at least one mode is required");
    if (ok && !modes.empty()) cfg.modes = std::move(modes);
  } else if (!have_bath) {
    error(nullptr, "bath.modes", "required when no preset is given");
  }
  if (const Entry* e = find("bath.beta")) {
    if (e->value == "inf" || e->value == "infinity") {
      cfg.beta = InverseTemperature::infinite();
    } else {
      const auto v = parse_double(e->value);
      if (!v || !std::isfinite(*v) || !(*v > 0.0))
        error(e, "bath.beta", "must be a number > 0 or 'inf', got " + e->value);
      else
        cfg.beta = InverseTemperature::finite(*v);
    }
  } else if (!have_bath) {
    error(nullptr, "bath.beta", "required when no preset is given");
  }

  number("run.t_max", cfg.t_max, [](double v) { return v > 0.0; }, "> 0");
  number("run.points", cfg.points, [](double v) { return v >= 2; }, ">= 2");
  number("run.order", cfg.order, [](double v) { return v == 2 || v == 4; }, "2 or 4");
  if (const Entry* e = find("run.stepper")) {
    if (const auto s = parse_stepper(e->value))
      cfg.propagation.stepper = *s;
    else
      error(e, "run.stepper", "expected rk4-fixed or rk45-adaptive, got '" + e->value + "'");
  }
  number("run.step", cfg.propagation.step, [](double v) { return v > 0.0; }, "> 0");
  number("run.abs_tol", cfg.propagation.abs_tol, [](double v) { return v > 0.0; }, "> 0");
  number("run.rel_tol", cfg.propagation.rel_tol, [](double v) { return v >= 0.0; }, ">= 0");
  if (const Entry* e = find("run.quadrature")) {
    if (const auto s = parse_quadrature_scheme(e->value))
      cfg.quad.scheme = *s;
    else
      error(e, "run.quadrature", "expected simpson-uniform or gauss-legendre-nested, got '" + e->value + "'");
  }
  number("run.quad_nodes", cfg.quad.nodes_per_unit_time, [](double v) { return v >= 4; }, ">= 4");
  number("run.quad_tol", cfg.quad.tolerance, [](double v) { return v > 0.0; }, "> 0");
  number("run.generator_intervals", cfg.generator_intervals, [](double v) { return v >= 1; }, ">= 1");
  if (const auto times = list("run.generator_times")) {
    const Entry* e = find("run.generator_times");
    bool ok = true;
    for (double t : *times)
      if (t < 0.0 || t > cfg.t_max) {
        error(e, "run.generator_times", "every time must lie in [0, t_max]");
        ok = false;
        break;
      }
    if (ok) cfg.generator_times = *times;
  }
  if (const auto scan = list("run.alpha_scan")) {
    bool ok = true;
    for (double a : *scan)
      if (a < 0.0) {
        error(find("run.alpha_scan"), "run.alpha_scan", "coupling values must be >= 0");
        ok = false;
        break;
      }
    if (ok) cfg.alpha_scan = *scan;
  }
  if (find("run.fock_levels")) {
    int n = 0;
    number("run.fock_levels", n, [](double v) { return v >= 2; }, ">= 2");
    if (n >= 2) cfg.fock_levels = n;
  }
  number("run.threads", cfg.threads, [](double v) { return v >= 0; }, ">= 0");

  if (const Entry* e = find("outputs.dir")) {
    if (e->value.empty())
      error(e, "outputs.dir", "must not be empty");
    else {
      cfg.outputs.dir = e->value;
      cfg.outputs.dir_set = true;
    }
  }
  flag("outputs.kernels", cfg.outputs.kernels);
  flag("outputs.generator", cfg.outputs.generator);
  flag("outputs.trajectory", cfg.outputs.trajectory);
  flag("outputs.diagnostic", cfg.outputs.diagnostic);
  flag("outputs.report", cfg.outputs.report);

  // Cross-field checks, only meaningful once the pieces parsed.
  if (diags_.empty()) {
    try {
      const SystemModel model = cfg.model();
      if (cfg.rho0.size() == 0) cfg.rho0 = uniform_superposition(model.dim());
      if (cfg.rho0.rows() != model.dim())
        error(find("model.rho0"), "model.rho0", "dimension differs from H_S");
      else
        validate_density_matrix(cfg.rho0);
    } catch (const ArgumentError& ex) {
      const bool rho_problem = std::string(ex.what()).find("density") != std::string::npos;
      error(find(rho_problem ? "model.rho0" : "model.H_S"), rho_problem ? "model.rho0" : "model", ex.what());
    }
    try {
      (void)cfg.bath();
    } catch (const ArgumentError& ex) {
      error(find("bath.modes"), "bath", ex.what());
    }
  }
  if (!diags_.empty()) throw ConfigError(std::move(diags_));
  return cfg;
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigDiagnostic> diagnostics)
    : ArgumentError(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

SystemModel ScenarioConfig::model() const { return SystemModel(hamiltonian, coupling, alpha); }

BathSpec ScenarioConfig::bath() const { return BathSpec(modes, beta); }

ScenarioConfig parse_config(std::string_view text) {
  Parser parser(text);
  return parser.build(text);
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[value & 0xF];
    value >>= 4;
  }
  return out;
}

std::optional<Complex> parse_complex(std::string_view text) {
  std::string s;
  for (const char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.empty()) return std::nullopt;
  if (s.back() != 'i' && s.back() != 'j') {
    const auto re = parse_double(s);
    if (!re) return std::nullopt;
    return Complex(*re, 0.0);
  }
  s.pop_back();
  // Split at the last sign that is not part of an exponent.
  std::size_t split_at = 0;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  const std::string real_part = s.substr(0, split_at);
  std::string imag_part = s.substr(split_at);
  if (imag_part.empty() || imag_part == "+") imag_part = "1";
  if (imag_part == "-") imag_part = "-1";
  const auto im = parse_double(imag_part);
  if (!im) return std::nullopt;
  double re = 0.0;
  if (!real_part.empty()) {
    const auto r = parse_double(real_part);
    if (!r) return std::nullopt;
    re = *r;
  }
  return Complex(re, *im);
}

}  // namespace tclgen
