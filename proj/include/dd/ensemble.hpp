#pragma once

#include <string>
#include <vector>

#include "dd/analysis.hpp"
#include "dd/quench.hpp"
#include "dd/run_config.hpp"

namespace dd {

struct CellResult {
  double d_um = 0;
  double w = 0;
  int samples_ok = 0;
  int samples_failed = 0;
  std::vector<std::string> failures;

  // Pointwise ensemble averages with standard errors.
  std::vector<double> times_natural;
  std::vector<double> times_us;
  std::vector<double> fidelity_mean, fidelity_se;
  std::vector<double> s_fraction_mean, s_fraction_se;
  std::vector<double> s_over_saturation_mean;
  std::vector<double> ee_raw_mean, ee_raw_se;
  std::vector<double> ee_normalized_mean;

  double mean_r = 0;
  double mean_r_se = 0;
  double t_heisenberg_natural = 0;  // sample mean
  double saturation = 0;
  double time_unit_au = 0;

  DecayFit fit;             // on the ensemble-averaged fidelity
  EeGrowthFit ee_growth;    // on the ensemble-averaged EE
  std::vector<double> per_sample_gamma;  // diagnostics; NaN where no fit
};

struct GridResult {
  RunConfig config;
  std::string digest;
  std::vector<CellResult> cells;
};

// One (d, w) grid cell: geometry -> Hamiltonian -> spectrum -> series ->
// metrics per sample, then pointwise averaging and fits on the averages.
// Deterministic for fixed (config, base_seed) regardless of worker count.
CellResult run_cell(const RunConfig& config, double d_um, double w);

// All d x w cells. Parallelizes across samples within a cell.
GridResult run_grid(const RunConfig& config);

// Persistence: one directory per cell plus a top-level summary.csv.
std::string cell_dir_name(int order, double d_um, double w);
void write_cell(const RunConfig& config, const CellResult& cell,
                const std::string& dir);
void write_grid(const GridResult& grid);

// Series CSV shared by evolve and ensemble outputs.
void write_series_csv(const ObservableSeries& series, std::ostream& out);

}  // namespace dd
