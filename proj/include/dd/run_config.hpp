#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dd/couplings.hpp"

namespace dd {

// Flat, human-editable key-value run description. Unknown keys are hard
// errors so typos in physics parameters cannot pass silently.
struct RunConfig {
  int order = 3;
  int n_atoms = 9;
  std::vector<double> d_list_um = {7, 8, 9, 10, 11, 12, 13};
  std::vector<double> w_list = {0.05, 0.15, 0.25, 0.35, 0.45};
  int samples = 100;
  uint64_t base_seed = 20260826;
  double t_min = 1e-2;
  double t_max = 1e2;
  int t_points = 400;
  CouplingConstants constants;
  std::string initial_pattern;  // empty = all-p
  int cut = 0;                  // 0 = default ceil(n/2)
  std::string out_dir = "out";
  uint64_t memory_budget_bytes = uint64_t{16} << 30;
  int workers = 0;  // 0 = hardware concurrency
  bool emit_series = true;
  bool emit_spectra = false;

  void validate() const;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);
void write_config(const RunConfig& cfg, std::ostream& out);

// Short hash of the serialized config, for provenance records.
std::string config_digest(const RunConfig& cfg);

}  // namespace dd
