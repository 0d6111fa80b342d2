#include "dd/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "dd/hamiltonian.hpp"

namespace dd {

namespace {

using nlohmann::json;

struct SampleMetrics {
  bool ok = false;
  std::string error;
  ObservableSeries series;
  double mean_r = 0;
};

int effective_workers(int configured) {
  if (configured > 0) return configured;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Pointwise mean and standard error across samples.
void average(const std::vector<SampleMetrics>& samples,
             std::vector<double> ObservableSeries::* field,
             std::vector<double>& mean, std::vector<double>& se) {
  std::size_t nt = 0;
  int n = 0;
  for (const auto& s : samples)
    if (s.ok) {
      nt = (s.series.*field).size();
      ++n;
    }
  mean.assign(nt, 0.0);
  se.assign(nt, 0.0);
  if (n == 0) return;
  for (const auto& s : samples) {
    if (!s.ok) continue;
    const auto& v = s.series.*field;
    for (std::size_t t = 0; t < nt; ++t) mean[t] += v[t];
  }
  for (std::size_t t = 0; t < nt; ++t) mean[t] /= n;
  if (n > 1) {
    // Deviations are measured against the first sample, not the mean, so
    // bit-identical samples (e.g. w = 0) give an exactly zero spread.
    const std::vector<double>* first = nullptr;
    for (const auto& s : samples)
      if (s.ok) {
        first = &(s.series.*field);
        break;
      }
    std::vector<double> sum_d(nt, 0.0);
    for (const auto& s : samples) {
      if (!s.ok) continue;
      const auto& v = s.series.*field;
      for (std::size_t t = 0; t < nt; ++t) {
        const double d = v[t] - (*first)[t];
        se[t] += d * d;
        sum_d[t] += d;
      }
    }
    for (std::size_t t = 0; t < nt; ++t) {
      const double var =
          std::max(se[t] - sum_d[t] * sum_d[t] / n, 0.0) / (n - 1);
      se[t] = std::sqrt(var) / std::sqrt(static_cast<double>(n));
    }
  }
}

json constants_json(const CouplingConstants& c) {
  return json{{"mu", c.mu},
              {"nu", c.nu},
              {"gamma_c", c.gamma_c},
              {"delta", c.delta},
              {"alpha", c.alpha},
              {"hop_ps", c.hop_ps},
              {"hop_psp", c.hop_psp},
              {"hop_ssp", c.hop_ssp}};
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

CellResult run_cell(const RunConfig& config, double d_um, double w) {
  config.validate();

  const SectorBasis basis = enumerate_sector(config.n_atoms, config.order);
  const ChainGeometry ordered = ordered_positions(config.n_atoms, d_um);
  const double time_unit =
      natural_time_unit_au(config.order, d_um, config.constants);

  QuenchSpec quench;
  quench.initial_pattern = config.initial_pattern;
  quench.cut_position = config.cut;
  quench.time_grid = log_time_grid(config.t_min, config.t_max,
                                   config.t_points, /*include_zero=*/true);

  std::vector<SampleMetrics> samples(config.samples);
  std::atomic<int> next{0};

  auto worker = [&] {
    for (int s = next.fetch_add(1); s < config.samples;
         s = next.fetch_add(1)) {
      SampleMetrics& m = samples[s];
      try {
        const ChainGeometry geometry = apply_disorder(
            ordered, w, sample_seed(config.base_seed, static_cast<uint64_t>(s)));
        const SectorHamiltonian h = assemble(basis, geometry, config.constants,
                                             config.memory_budget_bytes);
        EigenSystem es = diagonalize(h);
        m.series = observable_series(basis, es, quench, time_unit);
        m.mean_r = level_spacing_ratio(es.eigenvalues).mean_r;
        m.ok = true;
      } catch (const std::exception& e) {
        m.error = e.what();
      }
    }
  };

  const int n_workers =
      std::min(effective_workers(config.workers), config.samples);
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  CellResult cell;
  cell.d_um = d_um;
  cell.w = w;
  cell.time_unit_au = time_unit;
  cell.times_natural = quench.time_grid;

  for (int s = 0; s < config.samples; ++s) {
    if (samples[s].ok) {
      ++cell.samples_ok;
    } else {
      ++cell.samples_failed;
      cell.failures.push_back("sample " + std::to_string(s) + ": " +
                              samples[s].error);
    }
  }
  if (cell.samples_failed * 100 > config.samples) {
    std::string detail = cell.failures.empty() ? "" : cell.failures.front();
    throw SolverError("cell d = " + std::to_string(d_um) + " um, w = " +
                      std::to_string(w) + ": " +
                      std::to_string(cell.samples_failed) + "/" +
                      std::to_string(config.samples) +
                      " samples failed (> 1%); first: " + detail);
  }

  average(samples, &ObservableSeries::fidelity, cell.fidelity_mean,
          cell.fidelity_se);
  average(samples, &ObservableSeries::s_fraction, cell.s_fraction_mean,
          cell.s_fraction_se);
  average(samples, &ObservableSeries::ee_raw, cell.ee_raw_mean, cell.ee_raw_se);

  double r_first = 0, th_sum = 0;
  for (const auto& s : samples)
    if (s.ok) {
      r_first = s.mean_r;
      break;
    }
  double r_sum = 0, rd_sum = 0, rd_sq = 0;
  for (const auto& s : samples) {
    if (!s.ok) continue;
    r_sum += s.mean_r;
    rd_sum += s.mean_r - r_first;
    rd_sq += (s.mean_r - r_first) * (s.mean_r - r_first);
    th_sum += s.series.t_heisenberg_natural;
    cell.saturation = s.series.saturation;
    cell.times_us = s.series.times_us;
  }
  const int n = cell.samples_ok;
  cell.mean_r = r_sum / n;
  if (n > 1)
    cell.mean_r_se =
        std::sqrt(std::max(rd_sq - rd_sum * rd_sum / n, 0.0) / (n - 1)) /
        std::sqrt(static_cast<double>(n));
  cell.t_heisenberg_natural = th_sum / n;

  cell.s_over_saturation_mean.reserve(cell.s_fraction_mean.size());
  for (double v : cell.s_fraction_mean)
    cell.s_over_saturation_mean.push_back(v / cell.saturation);
  // normalization constant ln(D_A) recovered from any sample's series pair
  double ee_norm = 1.0;
  for (const auto& s : samples)
    if (s.ok) {
      for (std::size_t t = 0; t < s.series.ee_raw.size(); ++t)
        if (s.series.ee_raw[t] > 0) {
          ee_norm = s.series.ee_raw[t] / s.series.ee_normalized[t];
          break;
        }
      break;
    }
  cell.ee_normalized_mean.reserve(cell.ee_raw_mean.size());
  for (double v : cell.ee_raw_mean)
    cell.ee_normalized_mean.push_back(v / ee_norm);

  try {
    cell.fit = analyze_fidelity_decay(cell.times_natural, cell.fidelity_mean,
                                      cell.t_heisenberg_natural);
  } catch (const DomainError&) {
    // Window collapsed (t_H too close to the collapse time); keep gamma = 0
    // and classify from the exponent alone.
    cell.fit.classification = classify(0.0, false);
  }
  try {
    cell.ee_growth = fit_ee_growth(cell.times_natural, cell.ee_raw_mean);
  } catch (const DomainError&) {
    cell.ee_growth.label = "logarithmic-or-slower";
  }

  // Per-sample gamma diagnostics over the shared window.
  for (const auto& s : samples) {
    if (!s.ok) {
      cell.per_sample_gamma.push_back(std::nan(""));
      continue;
    }
    try {
      const DecayFit f = analyze_fidelity_decay(
          cell.times_natural, s.series.fidelity, s.series.t_heisenberg_natural);
      cell.per_sample_gamma.push_back(f.rapid_collapse ? std::nan("")
                                                       : f.gamma);
    } catch (const std::exception&) {
      cell.per_sample_gamma.push_back(std::nan(""));
    }
  }
  return cell;
}

GridResult run_grid(const RunConfig& config) {
  config.validate();
  GridResult grid;
  grid.config = config;
  grid.digest = config_digest(config);
  for (double d : config.d_list_um)
    for (double w : config.w_list) grid.cells.push_back(run_cell(config, d, w));
  return grid;
}

std::string cell_dir_name(int order, double d_um, double w) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "order%d_d%g_w%g", order, d_um, w);
  return buf;
}

void write_series_csv(const ObservableSeries& series, std::ostream& out) {
  out << "t_natural,t_us,fidelity,s_fraction,s_over_saturation,ee_raw,"
         "ee_normalized\n";
  for (std::size_t t = 0; t < series.times_natural.size(); ++t) {
    out << g17(series.times_natural[t]) << ',' << g17(series.times_us[t])
        << ',' << g17(series.fidelity[t]) << ',' << g17(series.s_fraction[t])
        << ',' << g17(series.s_over_saturation[t]) << ','
        << g17(series.ee_raw[t]) << ',' << g17(series.ee_normalized[t])
        << '\n';
  }
}

void write_cell(const RunConfig& config, const CellResult& cell,
                const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);

  {
    std::ofstream out(dir + "/series.csv");
    out << "t_natural,t_us,fidelity,fidelity_se,s_fraction,s_fraction_se,"
           "s_over_saturation,ee_raw,ee_raw_se,ee_normalized\n";
    for (std::size_t t = 0; t < cell.times_natural.size(); ++t) {
      out << g17(cell.times_natural[t]) << ',' << g17(cell.times_us[t]) << ','
          << g17(cell.fidelity_mean[t]) << ',' << g17(cell.fidelity_se[t])
          << ',' << g17(cell.s_fraction_mean[t]) << ','
          << g17(cell.s_fraction_se[t]) << ','
          << g17(cell.s_over_saturation_mean[t]) << ','
          << g17(cell.ee_raw_mean[t]) << ',' << g17(cell.ee_raw_se[t]) << ','
          << g17(cell.ee_normalized_mean[t]) << '\n';
    }
  }

  json fit = {
      {"order", config.order},
      {"d_um", cell.d_um},
      {"w", cell.w},
      {"gamma", cell.fit.gamma},
      {"residual", cell.fit.residual},
      {"window", {cell.fit.t_start, cell.fit.t_end}},
      {"collapse_time", cell.fit.collapse_time},
      {"rapid_collapse", cell.fit.rapid_collapse},
      {"classification", phase_name(cell.fit.classification)},
      {"mean_r", cell.mean_r},
      {"mean_r_se", cell.mean_r_se},
      {"ee_growth_label", cell.ee_growth.label},
      {"samples_ok", cell.samples_ok},
      {"samples_failed", cell.samples_failed},
      {"t_heisenberg_natural", cell.t_heisenberg_natural},
      {"saturation", cell.saturation},
      {"time_unit_au", cell.time_unit_au},
      {"constants", constants_json(config.constants)},
      {"base_seed", config.base_seed},
      {"config_digest", config_digest(config)},
  };
  std::ofstream(dir + "/fit.json") << fit.dump(2) << '\n';
}

void write_grid(const GridResult& grid) {
  namespace fs = std::filesystem;
  fs::create_directories(grid.config.out_dir);

  std::ofstream summary(grid.config.out_dir + "/summary.csv");
  summary << "order,d_um,w,gamma,residual,classification,rapid_collapse,"
             "mean_r,mean_r_se,ee_growth_label,collapse_time,"
             "t_heisenberg_natural,samples_ok,samples_failed\n";
  for (const auto& cell : grid.cells) {
    const std::string dir =
        grid.config.out_dir + "/" +
        cell_dir_name(grid.config.order, cell.d_um, cell.w);
    if (grid.config.emit_series) write_cell(grid.config, cell, dir);
    summary << grid.config.order << ',' << g17(cell.d_um) << ',' << g17(cell.w)
            << ',' << g17(cell.fit.gamma) << ',' << g17(cell.fit.residual)
            << ',' << phase_name(cell.fit.classification) << ','
            << (cell.fit.rapid_collapse ? 1 : 0) << ',' << g17(cell.mean_r)
            << ',' << g17(cell.mean_r_se) << ',' << cell.ee_growth.label << ','
            << g17(cell.fit.collapse_time) << ','
            << g17(cell.t_heisenberg_natural) << ',' << cell.samples_ok << ','
            << cell.samples_failed << '\n';
  }

  json provenance = {
      {"config_digest", grid.digest},
      {"base_seed", grid.config.base_seed},
      {"samples", grid.config.samples},
      {"constants", constants_json(grid.config.constants)},
      {"timestamp", static_cast<uint64_t>(std::time(nullptr))},
  };
  std::ofstream(grid.config.out_dir + "/provenance.json")
      << provenance.dump(2) << '\n';
}

}  // namespace dd
