#include "dd/run_config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace dd {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

std::string format_list(const std::vector<double>& v) {
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
    if (i) out += ",";
    out += buf;
  }
  return out;
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("key '" + key + "' expects true/false, got '" + v + "'");
}

}  // namespace

void RunConfig::validate() const {
  if (order < 2 || order > 4) throw ConfigError("order must be 2, 3 or 4");
  if (n_atoms < 1) throw ConfigError("n_atoms must be >= 1");
  if (samples < 1) throw ConfigError("samples must be >= 1");
  if (d_list_um.empty() || w_list.empty())
    throw ConfigError("d_list and w_list must be nonempty");
  for (double d : d_list_um)
    if (d <= 0) throw ConfigError("spacings must be positive");
  for (double w : w_list)
    if (w < 0 || w >= 0.5) throw ConfigError("disorders must lie in [0, 0.5)");
  if (t_min <= 0 || t_max <= t_min || t_points < 2)
    throw ConfigError("time grid requires 0 < t_min < t_max, t_points >= 2");
  if (cut < 0 || cut >= n_atoms)
    throw ConfigError("cut must satisfy 0 <= cut < n_atoms");
  constants.validate();
}

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        " is not 'key = value': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "order") cfg.order = std::stoi(value);
      else if (key == "n_atoms") cfg.n_atoms = std::stoi(value);
      else if (key == "d_list_um") cfg.d_list_um = parse_list(value);
      else if (key == "w_list") cfg.w_list = parse_list(value);
      else if (key == "samples") cfg.samples = std::stoi(value);
      else if (key == "base_seed") cfg.base_seed = std::stoull(value);
      else if (key == "t_min") cfg.t_min = std::stod(value);
      else if (key == "t_max") cfg.t_max = std::stod(value);
      else if (key == "t_points") cfg.t_points = std::stoi(value);
      else if (key == "mu") cfg.constants.mu = std::stod(value);
      else if (key == "nu") cfg.constants.nu = std::stod(value);
      else if (key == "gamma_c") cfg.constants.gamma_c = std::stod(value);
      else if (key == "delta") cfg.constants.delta = std::stod(value);
      else if (key == "alpha") cfg.constants.alpha = std::stod(value);
      else if (key == "hop_ps") cfg.constants.hop_ps = parse_bool(value, key);
      else if (key == "hop_psp") cfg.constants.hop_psp = parse_bool(value, key);
      else if (key == "hop_ssp") cfg.constants.hop_ssp = parse_bool(value, key);
      else if (key == "initial_pattern") cfg.initial_pattern = value;
      else if (key == "cut") cfg.cut = std::stoi(value);
      else if (key == "out_dir") cfg.out_dir = value;
      else if (key == "memory_budget_gb")
        cfg.memory_budget_bytes =
            static_cast<uint64_t>(std::stod(value) * (uint64_t{1} << 30));
      else if (key == "workers") cfg.workers = std::stoi(value);
      else if (key == "emit_series") cfg.emit_series = parse_bool(value, key);
      else if (key == "emit_spectra") cfg.emit_spectra = parse_bool(value, key);
      else
        throw ConfigError("unknown config key '" + key + "' on line " +
                          std::to_string(line_no));
    } catch (const std::invalid_argument&) {
      throw ConfigError("bad value for key '" + key + "': '" + value + "'");
    } catch (const std::out_of_range&) {
      throw ConfigError("value out of range for key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in);
}

void write_config(const RunConfig& cfg, std::ostream& out) {
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  out << "order = " << cfg.order << '\n'
      << "n_atoms = " << cfg.n_atoms << '\n'
      << "d_list_um = " << format_list(cfg.d_list_um) << '\n'
      << "w_list = " << format_list(cfg.w_list) << '\n'
      << "samples = " << cfg.samples << '\n'
      << "base_seed = " << cfg.base_seed << '\n'
      << "t_min = " << num(cfg.t_min) << '\n'
      << "t_max = " << num(cfg.t_max) << '\n'
      << "t_points = " << cfg.t_points << '\n'
      << "mu = " << num(cfg.constants.mu) << '\n'
      << "nu = " << num(cfg.constants.nu) << '\n'
      << "gamma_c = " << num(cfg.constants.gamma_c) << '\n'
      << "delta = " << num(cfg.constants.delta) << '\n'
      << "alpha = " << num(cfg.constants.alpha) << '\n'
      << "hop_ps = " << (cfg.constants.hop_ps ? "true" : "false") << '\n'
      << "hop_psp = " << (cfg.constants.hop_psp ? "true" : "false") << '\n'
      << "hop_ssp = " << (cfg.constants.hop_ssp ? "true" : "false") << '\n'
      << "initial_pattern = " << cfg.initial_pattern << '\n'
      << "cut = " << cfg.cut << '\n'
      << "out_dir = " << cfg.out_dir << '\n'
      << "memory_budget_gb = "
      << num(static_cast<double>(cfg.memory_budget_bytes) /
             static_cast<double>(uint64_t{1} << 30))
      << '\n'
      << "workers = " << cfg.workers << '\n'
      << "emit_series = " << (cfg.emit_series ? "true" : "false") << '\n'
      << "emit_spectra = " << (cfg.emit_spectra ? "true" : "false") << '\n';
}

std::string config_digest(const RunConfig& cfg) {
  std::ostringstream ss;
  write_config(cfg, ss);
  // FNV-1a over the canonical serialization.
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : ss.str()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace dd
