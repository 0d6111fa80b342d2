// Command-line front end: sector enumeration, Hamiltonian assembly, spectra,
// quench evolution, disorder-ensemble sweeps, fits and SVG plots.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dd/analysis.hpp"
#include "dd/ensemble.hpp"
#include "dd/errors.hpp"
#include "dd/hamiltonian.hpp"
#include "dd/quench.hpp"
#include "dd/run_config.hpp"
#include "dd/spectral.hpp"
#include "dd/svg_plot.hpp"

namespace {

using dd::RunConfig;
using nlohmann::json;

// Exit codes, one per error class, so scripts can branch on the failure mode.
enum ExitCode {
  kOk = 0,
  kFailure = 1,
  kConfig = 2,
  kDomain = 3,
  kMembership = 4,
  kResource = 5,
  kSolver = 6,
};

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  if (const auto dir = std::filesystem::path(path).parent_path(); !dir.empty())
    std::filesystem::create_directories(dir);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dd::ConfigError("cannot open output file: " + path);
  return out;
}

struct CommonOpts {
  std::string config_path;
  int order = 0;       // 0 = take from config
  int n_atoms = 0;
  double d_um = 0;
  double w = -1;
  int64_t sample = 0;
  uint64_t seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("-c,--config", opts.config_path, "run configuration file");
  cmd->add_option("--order", opts.order, "interaction order (2, 3 or 4)");
  cmd->add_option("-n,--atoms", opts.n_atoms, "chain length");
  cmd->add_option("-d,--spacing", opts.d_um, "lattice spacing d [um]");
  cmd->add_option("-w,--disorder", opts.w, "disorder strength w in [0, 0.5)");
  cmd->add_option("--sample", opts.sample, "disorder sample index");
  cmd->add_option("--seed", opts.seed, "override base seed")
      ->each([&opts](const std::string&) { opts.seed_set = true; });
}

RunConfig resolve(const CommonOpts& opts) {
  RunConfig cfg;
  if (!opts.config_path.empty()) cfg = dd::load_config(opts.config_path);
  if (opts.order) cfg.order = opts.order;
  if (opts.n_atoms) cfg.n_atoms = opts.n_atoms;
  if (opts.d_um > 0) cfg.d_list_um = {opts.d_um};
  if (opts.w >= 0) cfg.w_list = {opts.w};
  if (opts.seed_set) cfg.base_seed = opts.seed;
  cfg.validate();
  return cfg;
}

dd::ChainGeometry geometry_for(const RunConfig& cfg, int64_t sample) {
  const dd::ChainGeometry ordered =
      dd::ordered_positions(cfg.n_atoms, cfg.d_list_um.front());
  return dd::apply_disorder(
      ordered, cfg.w_list.front(),
      dd::sample_seed(cfg.base_seed, static_cast<uint64_t>(sample)));
}

struct SampleRun {
  dd::SectorBasis basis;
  dd::SectorHamiltonian h;
  dd::EigenSystem es;
  double time_unit_au = 0;
};

SampleRun run_sample(const RunConfig& cfg, int64_t sample) {
  SampleRun run;
  run.basis = dd::enumerate_sector(cfg.n_atoms, cfg.order);
  run.h = dd::assemble(run.basis, geometry_for(cfg, sample), cfg.constants,
                       cfg.memory_budget_bytes);
  run.es = dd::diagonalize(run.h);
  run.time_unit_au =
      dd::natural_time_unit_au(cfg.order, cfg.d_list_um.front(), cfg.constants);
  return run;
}

dd::QuenchSpec quench_for(const RunConfig& cfg) {
  dd::QuenchSpec quench;
  quench.initial_pattern = cfg.initial_pattern;
  quench.cut_position = cfg.cut;
  quench.time_grid =
      dd::log_time_grid(cfg.t_min, cfg.t_max, cfg.t_points, true);
  return quench;
}

// --- fit input: accept both the evolve and the ensemble series layouts ----

struct SeriesColumns {
  std::vector<double> t, fidelity, ee;
};

SeriesColumns read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dd::ConfigError("cannot open series file: " + path);
  std::string header;
  if (!std::getline(in, header))
    throw dd::ConfigError("empty series file: " + path);

  std::vector<std::string> names;
  {
    std::stringstream ss(header);
    for (std::string col; std::getline(ss, col, ',');) names.push_back(col);
  }
  auto column = [&names, &path](const std::string& want) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == want) return i;
    throw dd::ConfigError("series file " + path + " lacks column " + want);
  };
  const std::size_t it = column("t_natural");
  const std::size_t ifid = column("fidelity");
  const std::size_t iee = column("ee_raw");

  SeriesColumns out;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<double> row;
    for (std::string cell; std::getline(ss, cell, ',');)
      row.push_back(std::stod(cell));
    out.t.push_back(row.at(it));
    out.fidelity.push_back(row.at(ifid));
    out.ee.push_back(row.at(iee));
  }
  return out;
}

json decay_fit_json(const dd::DecayFit& fit) {
  return json{{"gamma", fit.gamma},
              {"residual", fit.residual},
              {"window", {fit.t_start, fit.t_end}},
              {"collapse_time", fit.collapse_time},
              {"rapid_collapse", fit.rapid_collapse},
              {"classification", dd::phase_name(fit.classification)},
              {"n_points", fit.n_points}};
}

// ---------------------------------------------------------------------------

int cmd_basis(const CommonOpts& opts, const std::string& out_path) {
  const RunConfig cfg = resolve(opts);
  const dd::SectorBasis basis = dd::enumerate_sector(cfg.n_atoms, cfg.order);
  if (out_path.empty()) {
    dd::dump_basis(basis, std::cout);
  } else {
    auto out = open_out(out_path);
    dd::dump_basis(basis, out);
  }
  std::cerr << "dimension " << basis.dimension() << ", saturation "
            << dd::saturation_fraction(cfg.n_atoms, cfg.order) << '\n';
  return kOk;
}

int cmd_assemble(const CommonOpts& opts, const std::string& out_path,
                 const std::string& geometry_path) {
  const RunConfig cfg = resolve(opts);
  const dd::SectorBasis basis = dd::enumerate_sector(cfg.n_atoms, cfg.order);
  const dd::ChainGeometry geometry = geometry_for(cfg, opts.sample);
  const dd::SectorHamiltonian h =
      dd::assemble(basis, geometry, cfg.constants, cfg.memory_budget_bytes);
  {
    auto out = open_out(out_path);
    dd::dump_matrix(h, out);
  }
  if (!geometry_path.empty()) {
    auto out = open_out(geometry_path);
    dd::dump_geometry(geometry, static_cast<uint64_t>(opts.sample), out);
  }
  const dd::SparsityReport report = dd::row_sparsity_report(h);
  std::cerr << "dimension " << h.dimension() << ", nnz " << report.total_nnz
            << " (hop " << report.hop_entries << ", field "
            << report.field_entries << ")\n";
  return kOk;
}

int cmd_spectrum(const CommonOpts& opts, const std::string& out_path,
                 int ldos_bins) {
  const RunConfig cfg = resolve(opts);
  const SampleRun run = run_sample(cfg, opts.sample);
  dd::EigenSystem es = run.es;
  const Eigen::Index idx =
      dd::initial_index(run.basis, cfg.initial_pattern);
  dd::compute_overlaps(es, idx);

  {
    auto out = open_out(out_path);
    out << "index,eigenvalue_au,overlap_initial\n";
    for (Eigen::Index i = 0; i < es.dimension(); ++i)
      out << i << ',' << g17(es.eigenvalues(i)) << ',' << g17(es.overlaps(i))
          << '\n';
  }

  const dd::LevelSpacingStats stats = dd::level_spacing_ratio(es.eigenvalues);
  const dd::Ldos density = dd::ldos(es, ldos_bins);
  const dd::GaussianFit gauss = dd::gaussian_fit(density);
  const auto scars = dd::detect_scar_candidates(es);

  json summary = {
      {"dimension", es.dimension()},
      {"mean_r", stats.mean_r},
      {"n_ratios", stats.n_ratios},
      {"t_heisenberg_natural",
       dd::heisenberg_time_au(es.eigenvalues) / run.time_unit_au},
      {"ldos_width_au", gauss.width},
      {"ldos_r_squared", gauss.r_squared},
      {"ldos_sparse", gauss.sparse},
      {"scar_candidates", json::array()},
  };
  for (Eigen::Index i : scars) summary["scar_candidates"].push_back(i);
  std::cout << summary.dump(2) << '\n';
  return kOk;
}

int cmd_evolve(const CommonOpts& opts, const std::string& out_path) {
  const RunConfig cfg = resolve(opts);
  const SampleRun run = run_sample(cfg, opts.sample);
  const dd::ObservableSeries series = dd::observable_series(
      run.basis, run.es, quench_for(cfg), run.time_unit_au);
  if (out_path.empty()) {
    dd::write_series_csv(series, std::cout);
  } else {
    auto out = open_out(out_path);
    dd::write_series_csv(series, out);
  }
  std::cerr << "t_H = " << series.t_heisenberg_natural
            << " natural units, saturation = " << series.saturation << '\n';
  return kOk;
}

int cmd_ensemble(const CommonOpts& opts) {
  const RunConfig cfg = resolve(opts);
  const dd::CellResult cell =
      dd::run_cell(cfg, cfg.d_list_um.front(), cfg.w_list.front());
  const std::string dir =
      cfg.out_dir + "/" +
      dd::cell_dir_name(cfg.order, cell.d_um, cell.w);
  dd::write_cell(cfg, cell, dir);
  std::cout << "wrote " << dir << ": gamma = " << cell.fit.gamma << " ("
            << dd::phase_name(cell.fit.classification) << "), <r> = "
            << cell.mean_r << '\n';
  return kOk;
}

int cmd_grid(const CommonOpts& opts) {
  const RunConfig cfg = resolve(opts);
  const dd::GridResult grid = dd::run_grid(cfg);
  dd::write_grid(grid);
  std::cout << "wrote " << grid.cells.size() << " cells to " << cfg.out_dir
            << " (digest " << grid.digest << ")\n";
  return kOk;
}

int cmd_fit(const std::string& series_path, double t_heisenberg) {
  const SeriesColumns series = read_series_csv(series_path);
  const dd::DecayFit fit =
      dd::analyze_fidelity_decay(series.t, series.fidelity, t_heisenberg);
  json out = decay_fit_json(fit);
  try {
    const dd::EeGrowthFit ee = dd::fit_ee_growth(series.t, series.ee);
    out["ee_growth"] = {{"label", ee.label},
                        {"log_b", ee.log_b},
                        {"pow_p", ee.pow_p}};
  } catch (const dd::DomainError&) {
    out["ee_growth"] = {{"label", "logarithmic-or-slower"}};
  }
  out["max_revival_ratio"] =
      dd::max_revival_ratio(series.t, series.fidelity,
                            fit.collapse_time > 0 ? fit.collapse_time : 0.0);
  std::cout << out.dump(2) << '\n';
  return kOk;
}

int cmd_plot_series(const std::vector<std::string>& series_paths,
                    const std::string& out_path, const std::string& quantity,
                    double t_marker) {
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                   "#9467bd", "#ff7f0e", "#8c564b"};
  dd::SvgPlotSpec spec;
  spec.log_x = true;
  spec.log_y = quantity == "fidelity";
  spec.title = quantity;
  spec.x_label = "t [natural units]";
  spec.y_label = quantity;
  int color = 0;
  for (const auto& path : series_paths) {
    const SeriesColumns series = read_series_csv(path);
    dd::SvgCurve curve;
    curve.x = series.t;
    curve.y = quantity == "fidelity" ? series.fidelity : series.ee;
    curve.label = std::filesystem::path(path).parent_path().filename().string();
    if (curve.label.empty()) curve.label = path;
    curve.color = kPalette[color++ % 6];
    spec.curves.push_back(std::move(curve));
  }
  if (t_marker > 0) spec.x_markers.push_back(t_marker);
  auto out = open_out(out_path);
  dd::write_svg_plot(spec, out);
  std::cout << "wrote " << out_path << '\n';
  return kOk;
}

struct SummaryRow {
  int order;
  double d, w, gamma, mean_r;
  std::string classification;
};

std::vector<SummaryRow> read_summary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dd::ConfigError("cannot open summary file: " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<SummaryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<std::string> cells;
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (cells.size() < 9) continue;
    rows.push_back({std::stoi(cells[0]), std::stod(cells[1]),
                    std::stod(cells[2]), std::stod(cells[3]), std::stod(cells[7]),
                    cells[5]});
  }
  return rows;
}

int cmd_plot_grid(const std::string& summary_path, const std::string& out_path,
                  const std::string& quantity) {
  const auto rows = read_summary(summary_path);
  if (rows.empty()) throw dd::DomainError("summary has no data rows");

  std::vector<double> ds, ws;
  for (const auto& r : rows) {
    if (std::find(ds.begin(), ds.end(), r.d) == ds.end()) ds.push_back(r.d);
    if (std::find(ws.begin(), ws.end(), r.w) == ws.end()) ws.push_back(r.w);
  }
  std::sort(ds.begin(), ds.end());
  std::sort(ws.begin(), ws.end());

  dd::SvgGridSpec spec;
  spec.title = quantity;
  spec.x_label = "d [um]";
  spec.y_label = "w";
  spec.x_values = ds;
  spec.y_values = ws;
  spec.values.assign(ds.size() * ws.size(),
                     std::numeric_limits<double>::quiet_NaN());
  double v_max = 0;
  for (const auto& r : rows) {
    const auto xi = std::find(ds.begin(), ds.end(), r.d) - ds.begin();
    const auto yi = std::find(ws.begin(), ws.end(), r.w) - ws.begin();
    const double v = quantity == "mean_r" ? r.mean_r : r.gamma;
    spec.values[yi * ds.size() + xi] = v;
    v_max = std::max(v_max, v);
  }
  spec.v_min = 0;
  spec.v_max = quantity == "mean_r" ? 0.6 : std::max(v_max, 1e-9);
  auto out = open_out(out_path);
  dd::write_svg_grid(spec, out);
  std::cout << "wrote " << out_path << '\n';
  return kOk;
}

int cmd_report(const std::string& dir) {
  const auto rows = read_summary(dir + "/summary.csv");
  std::printf("%5s %8s %6s %10s %8s  %s\n", "order", "d [um]", "w", "gamma",
              "<r>", "phase");
  for (const auto& r : rows)
    std::printf("%5d %8.3g %6.3g %10.4f %8.4f  %s\n", r.order, r.d, r.w,
                r.gamma, r.mean_r, r.classification.c_str());
  int plot_rc = cmd_plot_grid(dir + "/summary.csv", dir + "/gamma_grid.svg",
                              "gamma");
  if (plot_rc) return plot_rc;
  return cmd_plot_grid(dir + "/summary.csv", dir + "/mean_r_grid.svg",
                       "mean_r");
}

}  // namespace

int main(int argc, char** argv) {
  // The ensemble parallelizes across samples; keep BLAS single-threaded so
  // the two levels do not oversubscribe.
  setenv("OPENBLAS_NUM_THREADS", "1", /*overwrite=*/0);

  CLI::App app{"few-body dipole-chain thermalization toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string out_path, geometry_path, series_path, summary_dir, quantity;
  std::vector<std::string> series_paths;
  int ldos_bins = 60;
  double t_heisenberg = std::numeric_limits<double>::infinity();
  double t_marker = 0;

  auto* basis = app.add_subcommand("basis", "enumerate the conserved sector");
  add_common(basis, opts);
  basis->add_option("-o,--out", out_path, "output file (default stdout)");

  auto* assemble =
      app.add_subcommand("assemble", "build and dump the sector Hamiltonian");
  add_common(assemble, opts);
  assemble->add_option("-o,--out", out_path, "binary matrix output")
      ->required();
  assemble->add_option("--geometry-out", geometry_path,
                       "also dump atom positions (CSV)");

  auto* spectrum =
      app.add_subcommand("spectrum", "diagonalize one disorder sample");
  add_common(spectrum, opts);
  spectrum->add_option("-o,--out", out_path, "eigenvalue CSV")->required();
  spectrum->add_option("--ldos-bins", ldos_bins, "LDOS histogram bins");

  auto* evolve =
      app.add_subcommand("evolve", "quench observables for one sample");
  add_common(evolve, opts);
  evolve->add_option("-o,--out", out_path, "series CSV (default stdout)");

  auto* ensemble = app.add_subcommand(
      "ensemble", "disorder-averaged cell at one (d, w) point");
  add_common(ensemble, opts);

  auto* grid =
      app.add_subcommand("grid", "full sweep over the configured d and w lists");
  add_common(grid, opts);

  auto* fit = app.add_subcommand("fit", "decay and EE fits on a series CSV");
  fit->add_option("series", series_path, "series.csv input")->required();
  fit->add_option("--t-heisenberg", t_heisenberg,
                  "fit window cap in natural units");

  auto* plot = app.add_subcommand("plot", "render series or sweep SVG plots");
  plot->add_option("series", series_paths, "series.csv inputs");
  plot->add_option("--summary", series_path, "summary.csv for a grid plot");
  plot->add_option("-o,--out", out_path, "SVG output path")->required();
  plot->add_option("--quantity", quantity,
                   "fidelity | ee | gamma | mean_r (default fidelity)");
  plot->add_option("--marker", t_marker, "vertical marker (e.g. t_H)");

  auto* report =
      app.add_subcommand("report", "tabulate a sweep directory and plot grids");
  report->add_option("dir", summary_dir, "sweep output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (basis->parsed()) return cmd_basis(opts, out_path);
    if (assemble->parsed()) return cmd_assemble(opts, out_path, geometry_path);
    if (spectrum->parsed()) return cmd_spectrum(opts, out_path, ldos_bins);
    if (evolve->parsed()) return cmd_evolve(opts, out_path);
    if (ensemble->parsed()) return cmd_ensemble(opts);
    if (grid->parsed()) return cmd_grid(opts);
    if (fit->parsed()) return cmd_fit(series_path, t_heisenberg);
    if (plot->parsed()) {
      if (quantity == "gamma" || quantity == "mean_r")
        return cmd_plot_grid(series_path, out_path, quantity);
      if (series_paths.empty())
        throw dd::ConfigError("plot needs series files or --summary with "
                              "--quantity gamma|mean_r");
      return cmd_plot_series(series_paths, out_path,
                             quantity.empty() ? "fidelity" : quantity,
                             t_marker);
    }
    if (report->parsed()) return cmd_report(summary_dir);
  } catch (const std::exception& e) {
    int code = kFailure;
    std::string kind = "error";
    if (dynamic_cast<const dd::ConfigError*>(&e)) {
      code = kConfig;
      kind = "config";
    } else if (dynamic_cast<const dd::DomainError*>(&e)) {
      code = kDomain;
      kind = "domain";
    } else if (dynamic_cast<const dd::MembershipError*>(&e)) {
      code = kMembership;
      kind = "membership";
    } else if (dynamic_cast<const dd::ResourceError*>(&e)) {
      code = kResource;
      kind = "resource";
    } else if (dynamic_cast<const dd::SolverError*>(&e)) {
      code = kSolver;
      kind = "solver";
    }
    std::cerr << json{{"error", kind}, {"message", e.what()}}.dump() << '\n';
    return code;
  }
  return kFailure;
}
