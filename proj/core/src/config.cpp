#include "friedrichs/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "friedrichs/errors.hpp"

namespace friedrichs {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& s, int line, const std::string& key) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ConfigError(line, "value of '" + key + "' is not a number: '" + s + "'");
  }
}

int parse_int(const std::string& s, int line, const std::string& key) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ConfigError(line, "value of '" + key + "' is not an integer: '" + s + "'");
  }
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

void parse_phi_table(RunConfig& cfg, int line) {
  std::ifstream in(cfg.phi_table_path);
  if (!in) throw ConfigError(line, "cannot open phi table '" + cfg.phi_table_path + "'");
  std::string raw;
  int tline = 0;
  while (std::getline(in, raw)) {
    ++tline;
    std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    auto tok = split_ws(s);
    if (tok.size() == 2 && tok[0] == "const") {
      cfg.phi_table_c0 = parse_double(tok[1], tline, "const");
      continue;
    }
    if (tok.size() != 5 || (tok[0] != "cos" && tok[0] != "sin"))
      throw ConfigError(tline, "phi table lines are 'cos|sin s1 s2 s3 coeff' or 'const c'");
    FormFactor::Term t;
    t.is_sin = tok[0] == "sin";
    t.site = {parse_int(tok[1], tline, "site"), parse_int(tok[2], tline, "site"),
              parse_int(tok[3], tline, "site")};
    t.coeff = parse_double(tok[4], tline, "coeff");
    cfg.phi_table_terms.push_back(t);
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  cfg.dispersion_preset.clear();  // distinguish "unset" until validation
  bool saw_sites = false;
  bool saw_preset = false;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(line, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section != "model" && section != "grid" && section != "scan" &&
          section != "threshold" && section != "output")
        throw ConfigError(line, "unknown section [" + section + "]");
      continue;
    }
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected 'key = value'");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError(line, "empty key");
    if (section.empty()) throw ConfigError(line, "key '" + key + "' appears before any section");

    if (section == "model") {
      if (key == "dispersion") {
        if (val != "cubic-nn")
          throw ConfigError(line, "unknown dispersion preset '" + val + "' (have: cubic-nn)");
        cfg.dispersion_preset = val;
        saw_preset = true;
      } else if (key == "constant") {
        cfg.dispersion_constant = parse_double(val, line, key);
      } else if (key == "site") {
        // site = s1 s2 s3, coeff = value
        std::size_t comma = val.find(',');
        if (comma == std::string::npos)
          throw ConfigError(line, "site lines are 'site = s1 s2 s3, coeff = value'");
        auto ints = split_ws(trim(val.substr(0, comma)));
        if (ints.size() != 3)
          throw ConfigError(line, "site needs three integer components");
        std::string rest = trim(val.substr(comma + 1));
        std::size_t eq2 = rest.find('=');
        if (eq2 == std::string::npos || trim(rest.substr(0, eq2)) != "coeff")
          throw ConfigError(line, "site lines are 'site = s1 s2 s3, coeff = value'");
        Site site{parse_int(ints[0], line, key), parse_int(ints[1], line, key),
                  parse_int(ints[2], line, key)};
        cfg.sites.emplace_back(site, parse_double(trim(rest.substr(eq2 + 1)), line, "coeff"));
        saw_sites = true;
      } else if (key == "phi") {
        auto tok = split_ws(val);
        if (tok.empty()) throw ConfigError(line, "phi needs a preset");
        if (tok[0] == "const" && tok.size() == 2) {
          cfg.phi_kind = "const";
          cfg.phi_const = parse_double(tok[1], line, key);
        } else if (tok[0] == "sin" && tok.size() == 2) {
          cfg.phi_kind = "sin";
          cfg.phi_sin_component = parse_int(tok[1], line, key);
          if (cfg.phi_sin_component < 1 || cfg.phi_sin_component > 3)
            throw ConfigError(line, "phi sin component must be 1, 2 or 3");
        } else if (tok[0] == "table" && tok.size() == 2) {
          cfg.phi_kind = "table";
          cfg.phi_table_path = tok[1];
          parse_phi_table(cfg, line);
        } else {
          throw ConfigError(line, "phi presets: 'const c', 'sin k', 'table FILE'");
        }
      } else if (key == "mu") {
        std::string v = val;
        v.erase(std::remove_if(v.begin(), v.end(), [](char c) { return std::isspace(c); }),
                v.end());
        if (v == "mu0") {
          cfg.mu_is_mu0 = true;
          cfg.mu_value = 1.0;
        } else if (v.rfind("mu0*", 0) == 0) {
          cfg.mu_is_mu0 = true;
          cfg.mu_value = parse_double(v.substr(4), line, key);
        } else {
          cfg.mu_is_mu0 = false;
          cfg.mu_value = parse_double(v, line, key);
        }
      } else {
        throw ConfigError(line, "unknown key '" + key + "' in [model]");
      }
    } else if (section == "grid") {
      if (key == "n")
        cfg.grid_n = parse_int(val, line, key);
      else if (key == "levels")
        cfg.grid_levels = parse_int(val, line, key);
      else
        throw ConfigError(line, "unknown key '" + key + "' in [grid]");
    } else if (section == "scan") {
      if (key == "p_per_axis")
        cfg.scan_p_per_axis = parse_int(val, line, key);
      else if (key == "mu_ladder") {
        cfg.mu_ladder.clear();
        for (const auto& t : split_ws(val)) cfg.mu_ladder.push_back(parse_double(t, line, key));
        if (cfg.mu_ladder.empty()) throw ConfigError(line, "mu_ladder needs at least one entry");
      } else
        throw ConfigError(line, "unknown key '" + key + "' in [scan]");
    } else if (section == "threshold") {
      if (key == "delta")
        cfg.delta = parse_double(val, line, key);
      else if (key == "assumption_p_n")
        cfg.assumption_p_n = parse_int(val, line, key);
      else
        throw ConfigError(line, "unknown key '" + key + "' in [threshold]");
    } else {  // output
      if (key == "dir")
        cfg.out_dir = val;
      else if (key == "prefix")
        cfg.prefix = val;
      else
        throw ConfigError(line, "unknown key '" + key + "' in [output]");
    }
  }

  // Semantic validation.
  if (saw_preset && saw_sites)
    throw ConfigError(0, "'dispersion' preset and 'site' lines are mutually exclusive");
  if (!saw_preset && !saw_sites) cfg.dispersion_preset = "cubic-nn";
  if (cfg.grid_n < 8) throw ConfigError(0, "grid.n must be >= 8");
  if (cfg.grid_levels < 1) throw ConfigError(0, "grid.levels must be >= 1");
  if (!cfg.mu_is_mu0 && !(cfg.mu_value > 0.0)) throw ConfigError(0, "model.mu must be positive");
  if (cfg.mu_is_mu0 && !(cfg.mu_value > 0.0))
    throw ConfigError(0, "model.mu scale on mu0 must be positive");
  if (cfg.scan_p_per_axis < 1 || cfg.scan_p_per_axis % 2 == 0)
    throw ConfigError(0, "scan.p_per_axis must be odd so the grid contains p = 0");
  for (double x : cfg.mu_ladder)
    if (!(x > 0.0)) throw ConfigError(0, "scan.mu_ladder entries must be positive");
  for (std::size_t i = 0; i + 1 < cfg.mu_ladder.size(); ++i)
    if (!(cfg.mu_ladder[i] < cfg.mu_ladder[i + 1]))
      throw ConfigError(0, "scan.mu_ladder must be strictly increasing");
  if (!(cfg.delta > 0.0) || cfg.delta > kPi)
    throw ConfigError(0, "threshold.delta must lie in (0, pi]");
  if (cfg.assumption_p_n < 3) throw ConfigError(0, "threshold.assumption_p_n must be >= 3");
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ModelSpec RunConfig::to_model_spec() const {
  ModelSpec spec;
  if (!dispersion_preset.empty()) {
    if (dispersion_preset != "cubic-nn")
      throw ConfigError(0, "unknown dispersion preset '" + dispersion_preset + "'");
    spec.dispersion = Dispersion::cubic_nn();
  } else {
    spec.dispersion.set_constant(dispersion_constant);
    for (const auto& [site, coeff] : sites) spec.dispersion.set_coefficient(site, coeff);
  }
  if (phi_kind == "const")
    spec.phi = FormFactor::constant(phi_const);
  else if (phi_kind == "sin")
    spec.phi = FormFactor::sin_component(phi_sin_component);
  else
    spec.phi = FormFactor::from_terms(phi_table_c0, phi_table_terms);
  spec.mu = mu_is_mu0 ? 1.0 : mu_value;  // resolved later when mu_is_mu0
  return spec;
}

std::string dump_config(const RunConfig& cfg) {
  std::ostringstream os;
  os.precision(17);
  os << "[model]\n";
  if (!cfg.dispersion_preset.empty()) {
    os << "dispersion = " << cfg.dispersion_preset << "\n";
  } else {
    os << "constant = " << cfg.dispersion_constant << "\n";
    for (const auto& [site, coeff] : cfg.sites)
      os << "site = " << site[0] << " " << site[1] << " " << site[2] << ", coeff = " << coeff
         << "\n";
  }
  if (cfg.phi_kind == "const")
    os << "phi = const " << cfg.phi_const << "\n";
  else if (cfg.phi_kind == "sin")
    os << "phi = sin " << cfg.phi_sin_component << "\n";
  else
    os << "phi = table " << cfg.phi_table_path << "\n";
  if (cfg.mu_is_mu0 && cfg.mu_value == 1.0)
    os << "mu = mu0\n";
  else if (cfg.mu_is_mu0)
    os << "mu = mu0*" << cfg.mu_value << "\n";
  else
    os << "mu = " << cfg.mu_value << "\n";
  os << "[grid]\n";
  os << "n = " << cfg.grid_n << "\n";
  os << "levels = " << cfg.grid_levels << "\n";
  os << "[scan]\n";
  os << "p_per_axis = " << cfg.scan_p_per_axis << "\n";
  os << "mu_ladder =";
  for (double x : cfg.mu_ladder) os << " " << x;
  os << "\n";
  os << "[threshold]\n";
  os << "delta = " << cfg.delta << "\n";
  os << "assumption_p_n = " << cfg.assumption_p_n << "\n";
  os << "[output]\n";
  os << "dir = " << cfg.out_dir << "\n";
  os << "prefix = " << cfg.prefix << "\n";
  return os.str();
}

}  // namespace friedrichs
