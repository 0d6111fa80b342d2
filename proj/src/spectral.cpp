#include "dd/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace dd {

namespace {

void fix_signs(Eigen::MatrixXd& v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    Eigen::Index imax = 0;
    v.col(c).cwiseAbs().maxCoeff(&imax);
    if (v(imax, c) < 0) v.col(c) = -v.col(c);
  }
}

}  // namespace

EigenSystem diagonalize_dense(const Eigen::MatrixXd& symmetric) {
  const auto n = static_cast<lapack_int>(symmetric.rows());
  EigenSystem es;
  es.eigenvectors = symmetric;  // dsyevd overwrites with eigenvectors
  es.eigenvalues.resize(n);
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, es.eigenvectors.data(), n,
                     es.eigenvalues.data());
  if (info != 0)
    throw SolverError("dsyevd failed with info = " + std::to_string(info) +
                      " on a matrix of dimension " + std::to_string(n));
  fix_signs(es.eigenvectors);
  return es;
}

EigenSystem diagonalize(const SectorHamiltonian& h) {
  try {
    return diagonalize_dense(h.matrix);
  } catch (const SolverError& e) {
    throw SolverError(std::string(e.what()) + " (order " +
                      std::to_string(h.order) + ", " +
                      std::to_string(h.n_atoms) + " atoms, d = " +
                      std::to_string(h.geometry.spacing_d_um) + " um, w = " +
                      std::to_string(h.geometry.disorder_w) + ", seed " +
                      std::to_string(h.geometry.seed) + ")");
  }
}

Eigen::VectorXd eigenvalues_only(const Eigen::MatrixXd& symmetric) {
  const auto n = static_cast<lapack_int>(symmetric.rows());
  Eigen::MatrixXd work = symmetric;
  Eigen::VectorXd evals(n);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n,
                                         work.data(), n, evals.data());
  if (info != 0)
    throw SolverError("dsyevd (values only) failed with info = " +
                      std::to_string(info));
  return evals;
}

void compute_overlaps(EigenSystem& es, Eigen::Index initial_index) {
  if (initial_index < 0 || initial_index >= es.dimension())
    throw DomainError("initial state index out of range");
  es.overlaps = es.eigenvectors.row(initial_index).transpose().cwiseAbs2();
}

LevelSpacingStats level_spacing_ratio(const Eigen::VectorXd& eigenvalues,
                                      double trim_fraction, int n_bins) {
  const auto d = eigenvalues.size();
  const auto trim = static_cast<Eigen::Index>(std::floor(trim_fraction * d));
  const Eigen::Index lo = trim, hi = d - trim;
  if (hi - lo < 3)
    throw DomainError("need at least 3 levels after trimming, have " +
                      std::to_string(std::max<Eigen::Index>(hi - lo, 0)));

  LevelSpacingStats stats;
  stats.histogram.assign(n_bins, 0.0);
  stats.bin_width = 1.0 / n_bins;

  const double span = eigenvalues(d - 1) - eigenvalues(0);
  const double degeneracy_eps = 1e-12 * std::max(span, 1.0);

  double sum = 0;
  for (Eigen::Index n = lo + 1; n + 1 < hi; ++n) {
    const double g0 = eigenvalues(n) - eigenvalues(n - 1);
    const double g1 = eigenvalues(n + 1) - eigenvalues(n);
    const double gmax = std::max(g0, g1);
    double r;
    if (gmax <= degeneracy_eps) {
      r = 1.0;  // exactly degenerate triple, by convention
      ++stats.n_degenerate;
    } else {
      r = std::min(g0, g1) / gmax;
    }
    sum += r;
    ++stats.n_ratios;
    const int bin = std::min(static_cast<int>(r * n_bins), n_bins - 1);
    stats.histogram[bin] += 1.0;
  }
  stats.mean_r = sum / static_cast<double>(stats.n_ratios);
  return stats;
}

double heisenberg_time_au(const Eigen::VectorXd& eigenvalues) {
  const auto d = eigenvalues.size();
  if (d < 2) throw DomainError("Heisenberg time needs at least 2 levels");
  const double mean_spacing =
      (eigenvalues(d - 1) - eigenvalues(0)) / static_cast<double>(d - 1);
  if (mean_spacing <= 0) return std::numeric_limits<double>::infinity();
  return 2.0 * std::numbers::pi / mean_spacing;
}

Ldos ldos(const EigenSystem& es, int n_bins) {
  if (n_bins < 2) throw DomainError("ldos needs at least 2 bins");
  if (es.overlaps.size() != es.dimension())
    throw DomainError("ldos requires overlaps for the initial state");

  Ldos out;
  const double e_min = es.eigenvalues.minCoeff();
  const double e_max = es.eigenvalues.maxCoeff();
  const double width = (e_max > e_min) ? (e_max - e_min) / n_bins : 1.0;
  out.bin_centers.resize(n_bins);
  out.bin_mass.assign(n_bins, 0.0);
  for (int b = 0; b < n_bins; ++b)
    out.bin_centers[b] = e_min + (b + 0.5) * width;

  out.scatter.reserve(es.dimension());
  for (Eigen::Index i = 0; i < es.dimension(); ++i) {
    const double e = es.eigenvalues(i);
    const double p = es.overlaps(i);
    out.scatter.push_back({e, p});
    int b = (e_max > e_min)
                ? std::min(static_cast<int>((e - e_min) / width), n_bins - 1)
                : 0;
    out.bin_mass[b] += p;
  }
  return out;
}

GaussianFit gaussian_fit(const Ldos& density) {
  std::vector<double> x, y;
  for (std::size_t b = 0; b < density.bin_mass.size(); ++b) {
    if (density.bin_mass[b] > 0) {
      x.push_back(density.bin_centers[b]);
      y.push_back(density.bin_mass[b]);
    }
  }
  if (x.size() < 5)
    throw DomainError("gaussian_fit needs >= 5 nonempty bins, have " +
                      std::to_string(x.size()));

  // Moment-based initialization, then Gauss-Newton on (A, m, s).
  double mass = 0, mean = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mass += y[i];
    mean += y[i] * x[i];
  }
  mean /= mass;
  double var = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    var += y[i] * (x[i] - mean) * (x[i] - mean);
  var /= mass;
  double sigma = std::sqrt(std::max(var, 1e-300));
  double amp = *std::max_element(y.begin(), y.end());

  for (int iter = 0; iter < 200; ++iter) {
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
    Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double z = (x[i] - mean) / sigma;
      const double g = std::exp(-0.5 * z * z);
      const double f = amp * g;
      const Eigen::Vector3d jac(g, f * z / sigma, f * z * z / sigma);
      jtj += jac * jac.transpose();
      jtr += jac * (y[i] - f);
    }
    jtj.diagonal() *= 1.0 + 1e-9;
    const Eigen::Vector3d step = jtj.ldlt().solve(jtr);
    amp += step(0);
    mean += step(1);
    sigma += step(2);
    sigma = std::max(std::abs(sigma), 1e-300);
    amp = std::max(amp, 1e-300);
    if (step.cwiseAbs().maxCoeff() <
        1e-12 * (std::abs(amp) + std::abs(mean) + sigma))
      break;
  }

  double ss_res = 0, ss_tot = 0;
  const double y_mean = mass / static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double z = (x[i] - mean) / sigma;
    const double f = amp * std::exp(-0.5 * z * z);
    ss_res += (y[i] - f) * (y[i] - f);
    ss_tot += (y[i] - y_mean) * (y[i] - y_mean);
  }

  GaussianFit fit;
  fit.amplitude = amp;
  fit.mean = mean;
  fit.width = sigma;
  fit.r_squared = (ss_tot > 0) ? 1.0 - ss_res / ss_tot : 0.0;
  // Sparse means the weight is not Gaussian-distributed across the spectrum:
  // either the fit is poor, or all the mass collapses into a single bin.
  const double bin_step = density.bin_centers.size() > 1
                              ? density.bin_centers[1] - density.bin_centers[0]
                              : 0.0;
  fit.sparse = fit.r_squared < 0.5 || (bin_step > 0 && sigma < 0.5 * bin_step);
  return fit;
}

std::vector<Eigen::Index> detect_scar_candidates(const EigenSystem& es,
                                                 double window_width,
                                                 double threshold) {
  if (es.overlaps.size() != es.dimension())
    throw DomainError("scar detection requires overlaps");
  const auto d = es.dimension();
  const double span = es.eigenvalues(d - 1) - es.eigenvalues(0);
  if (window_width <= 0) window_width = span / 50.0;

  std::vector<Eigen::Index> hits;
  std::vector<double> window;
  Eigen::Index lo = 0, hi = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double e = es.eigenvalues(i);
    while (lo < d && es.eigenvalues(lo) < e - 0.5 * window_width) ++lo;
    while (hi < d && es.eigenvalues(hi) <= e + 0.5 * window_width) ++hi;
    window.assign(es.overlaps.data() + lo, es.overlaps.data() + hi);
    const auto mid = window.begin() + window.size() / 2;
    std::nth_element(window.begin(), mid, window.end());
    const double median = *mid;
    // The windowed median can be vanishingly small (most overlaps in a large
    // sector are ~0), so also demand a clear excess over the sector-mean
    // overlap 1/D; otherwise numerically tiny states get flagged.
    const double floor = 10.0 / static_cast<double>(d);
    if (es.overlaps(i) > std::max(threshold * median, floor)) hits.push_back(i);
  }
  return hits;
}

}  // namespace dd
