#include "dd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dd/hamiltonian.hpp"
#include "dd/quench.hpp"
#include "dd/spectral.hpp"

namespace dd {

namespace {

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double rms_residual = 0;
  int n = 0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  LineFit f;
  f.n = static_cast<int>(x.size());
  if (f.n < 2) return f;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < f.n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = f.n * sxx - sx * sx;
  f.slope = (f.n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / f.n;
  double ss = 0;
  for (int i = 0; i < f.n; ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    ss += r * r;
  }
  f.rms_residual = std::sqrt(ss / f.n);
  return f;
}

// Local log-log slope over the half decade starting at times[i].
double local_slope(const std::vector<double>& times,
                   const std::vector<double>& fidelity, std::size_t i) {
  const double span = times[i] * (std::sqrt(10.0) - 1.0);
  std::vector<double> lx, ly;
  for (std::size_t j = i; j < times.size() && times[j] <= times[i] + span;
       ++j) {
    if (fidelity[j] > 0 && times[j] > 0) {
      lx.push_back(std::log(times[j]));
      ly.push_back(std::log(fidelity[j]));
    }
  }
  if (lx.size() < 3) return std::numeric_limits<double>::quiet_NaN();
  return fit_line(lx, ly).slope;
}

}  // namespace

std::string phase_name(Phase p) {
  switch (p) {
    case Phase::Delocalized: return "delocalized";
    case Phase::Intermediate: return "intermediate";
    case Phase::Nonergodic: return "nonergodic";
    case Phase::RapidCollapse: return "rapid-collapse";
  }
  return "?";
}

std::optional<double> detect_collapse(const std::vector<double>& times,
                                      const std::vector<double>& fidelity) {
  if (times.size() != fidelity.size() || times.size() < 8)
    throw DomainError("collapse detection needs a matching series of >= 8 points");

  const double f_min = *std::min_element(fidelity.begin(), fidelity.end());
  if (f_min > 0.9) return std::nullopt;  // frozen dynamics

  // Candidate points must lie past the initial drop; the pre-decay plateau
  // at F ~ 1 has a stable (zero) slope and must not register as a collapse.
  const double departed = std::exp(-1.0);
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] <= 0 || fidelity[i] <= 0 || fidelity[i] > departed) continue;
    const double s0 = local_slope(times, fidelity, i);
    // slope of the following half decade
    std::size_t j = i;
    const double t_next = times[i] * std::sqrt(10.0);
    while (j < times.size() && times[j] < t_next) ++j;
    if (j >= times.size()) break;
    const double s1 = local_slope(times, fidelity, j);
    if (std::isnan(s0) || std::isnan(s1)) continue;
    if (std::abs(s1 - s0) < 0.2) return times[i];
  }

  // Fallback: first drop below exp(-2).
  const double cutoff = std::exp(-2.0);
  for (std::size_t i = 0; i < times.size(); ++i)
    if (fidelity[i] < cutoff) return times[i];
  return times.back();
}

DecayFit fit_gamma(const std::vector<double>& times,
                   const std::vector<double>& fidelity, double t_start,
                   double t_end) {
  if (t_start >= t_end) throw DomainError("fit window must have t_start < t_end");
  std::vector<double> lx, ly;
  int excluded = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t_start || times[i] > t_end) continue;
    if (fidelity[i] <= 0) {
      ++excluded;
      continue;
    }
    lx.push_back(std::log(times[i]));
    ly.push_back(std::log(fidelity[i]));
  }
  if (lx.size() < 20)
    throw DomainError("fit window holds " + std::to_string(lx.size()) +
                      " usable points; need >= 20");
  const LineFit line = fit_line(lx, ly);
  DecayFit fit;
  fit.gamma = std::max(-line.slope, 0.0);
  fit.t_start = t_start;
  fit.t_end = t_end;
  fit.residual = line.rms_residual;
  fit.n_points = line.n;
  fit.n_excluded = excluded;
  fit.classification = classify(fit.gamma, false);
  return fit;
}

Phase classify(double gamma, bool rapid_collapse) {
  if (rapid_collapse) return Phase::Delocalized;
  if (gamma >= 2.0) return Phase::Delocalized;
  if (gamma >= 1.0) return Phase::Intermediate;
  return Phase::Nonergodic;
}

DecayFit analyze_fidelity_decay(const std::vector<double>& times,
                                const std::vector<double>& fidelity,
                                double t_heisenberg) {
  const auto collapse = detect_collapse(times, fidelity);
  DecayFit fit;
  if (!collapse) {
    // Frozen dynamics: no decay to fit; report as nonergodic with gamma 0.
    fit.classification = Phase::Nonergodic;
    return fit;
  }
  fit.collapse_time = *collapse;

  // Rapid-collapse short circuit: F stays below 0.02 beyond 5 collapse times.
  bool rapid = true;
  bool any_beyond = false;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] <= 5.0 * fit.collapse_time) continue;
    any_beyond = true;
    if (fidelity[i] >= 0.02) {
      rapid = false;
      break;
    }
  }
  if (rapid && any_beyond) {
    fit.rapid_collapse = true;
    fit.classification = Phase::Delocalized;
    return fit;
  }

  const double t_start = 3.0 * fit.collapse_time;
  const double t_end = std::min(t_heisenberg, times.back());
  DecayFit window_fit = fit_gamma(times, fidelity, t_start, t_end);
  window_fit.collapse_time = fit.collapse_time;
  window_fit.classification = classify(window_fit.gamma, false);
  return window_fit;
}

EeGrowthFit fit_ee_growth(const std::vector<double>& times,
                          const std::vector<double>& entropy, double t_start,
                          double margin) {
  std::vector<double> lt, s, ls;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t_start || entropy[i] <= 0) continue;
    lt.push_back(std::log(times[i]));
    s.push_back(entropy[i]);
    ls.push_back(std::log(entropy[i]));
  }
  if (lt.size() < 5)
    throw DomainError("EE growth fit needs >= 5 usable points after t_start");

  EeGrowthFit fit;
  // S = a + b ln t, fit directly in S.
  const LineFit log_fit = fit_line(lt, s);
  fit.log_a = log_fit.intercept;
  fit.log_b = log_fit.slope;
  fit.log_residual = log_fit.rms_residual;

  // S = a t^p via ln S = ln a + p ln t; residual compared in S space.
  const LineFit pow_fit = fit_line(lt, ls);
  fit.pow_a = std::exp(pow_fit.intercept);
  fit.pow_p = pow_fit.slope;
  double ss = 0;
  for (std::size_t i = 0; i < lt.size(); ++i) {
    const double model = fit.pow_a * std::exp(fit.pow_p * lt[i]);
    ss += (s[i] - model) * (s[i] - model);
  }
  fit.pow_residual = std::sqrt(ss / static_cast<double>(lt.size()));

  const bool power_wins = fit.pow_p > 1e-3 &&
                          fit.pow_residual < (1.0 - margin) * fit.log_residual;
  fit.label = power_wins ? "faster-than-logarithmic" : "logarithmic-or-slower";
  return fit;
}

double max_revival_ratio(const std::vector<double>& times,
                         const std::vector<double>& fidelity, double t_after) {
  double best = 0;
  double left_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < times.size(); ++i) {
    if (times[i] < t_after) continue;
    left_min = std::min(left_min, fidelity[i - 1]);
    const bool is_peak =
        fidelity[i] > fidelity[i - 1] && fidelity[i] >= fidelity[i + 1];
    if (!is_peak) continue;
    // right-side minimum until the next rise
    double right_min = fidelity[i + 1];
    for (std::size_t j = i + 1; j + 1 < times.size(); ++j) {
      right_min = std::min(right_min, fidelity[j]);
      if (fidelity[j + 1] > fidelity[j]) break;
    }
    const double surround = std::max(left_min, right_min);
    if (surround > 0) best = std::max(best, fidelity[i] / surround);
    left_min = fidelity[i];  // reset for the next peak
  }
  return best;
}

std::vector<AlphaScanPoint> alpha_scan(const std::vector<double>& alphas,
                                       int n_atoms, double spacing_d_um,
                                       CouplingConstants constants,
                                       double periods,
                                       int samples_per_period) {
  const SectorBasis basis = enumerate_sector(n_atoms, 2);
  const ChainGeometry geometry = ordered_positions(n_atoms, spacing_d_um);

  std::vector<AlphaScanPoint> out;
  out.reserve(alphas.size());
  for (double alpha : alphas) {
    CouplingConstants c = constants;
    c.alpha = alpha;
    const SectorHamiltonian h = assemble(basis, geometry, c);
    EigenSystem es = diagonalize(h);
    const Eigen::Index idx = initial_index(basis, "");
    const Eigen::VectorXd coef = initial_overlap_coefficients(es, idx);
    const double t_unit = natural_time_unit_au(2, spacing_d_um, c);

    const int n_samples =
        static_cast<int>(periods * samples_per_period);
    std::vector<double> grid(n_samples);
    for (int i = 0; i < n_samples; ++i)
      grid[i] = periods * (i + 0.5) / n_samples;
    const std::vector<double> f =
        fidelity_series(coef, es.eigenvalues, grid, t_unit);
    double mean = 0;
    for (double v : f) mean += v;
    mean /= static_cast<double>(f.size());
    out.push_back({alpha, mean});
  }
  return out;
}

}  // namespace dd
