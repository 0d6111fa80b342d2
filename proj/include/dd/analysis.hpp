#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dd/couplings.hpp"
#include "dd/errors.hpp"

namespace dd {

enum class Phase { Delocalized, Intermediate, Nonergodic, RapidCollapse };

std::string phase_name(Phase p);

struct DecayFit {
  double gamma = 0;
  double t_start = 0;       // natural units
  double t_end = 0;
  double residual = 0;      // rms residual in log-log space
  double collapse_time = 0; // natural units; 0 when not applicable
  bool rapid_collapse = false;
  Phase classification = Phase::Nonergodic;
  int n_points = 0;
  int n_excluded = 0;       // nonpositive F values dropped from the fit
};

// End of the initial exponential regime: earliest time after which the local
// log-log slope of F stabilizes (|slope change| < 0.2 across a half decade);
// falls back to the first crossing of exp(-2). nullopt when F never departs
// from 1 (frozen dynamics).
std::optional<double> detect_collapse(const std::vector<double>& times,
                                      const std::vector<double>& fidelity);

// Least-squares power law F ~ t^-gamma on the window (ln t, ln F).
DecayFit fit_gamma(const std::vector<double>& times,
                   const std::vector<double>& fidelity, double t_start,
                   double t_end);

// Phase label from the fitted exponent, or the rapid-collapse short circuit.
Phase classify(double gamma, bool rapid_collapse);

// Full pipeline on an (ensemble-averaged) fidelity trace: collapse detection,
// rapid-collapse short circuit, power-law fit on [3 t_c, min(t_H, t_max)].
DecayFit analyze_fidelity_decay(const std::vector<double>& times,
                                const std::vector<double>& fidelity,
                                double t_heisenberg);

struct EeGrowthFit {
  std::string label;        // "faster-than-logarithmic" or
                            // "logarithmic-or-slower"
  double log_a = 0, log_b = 0;      // S = a + b ln t
  double pow_a = 0, pow_p = 0;      // S = a t^p
  double log_residual = 0;
  double pow_residual = 0;
};

// Compares logarithmic and power-law growth on the window starting at
// t_start (default 1 natural unit); the power law wins only with p > 0 and a
// residual lower by the margin.
EeGrowthFit fit_ee_growth(const std::vector<double>& times,
                          const std::vector<double>& entropy,
                          double t_start = 1.0, double margin = 0.10);

// Largest ratio of a post-collapse local maximum of F to its surrounding
// minima; > 2 signals partial revivals.
double max_revival_ratio(const std::vector<double>& times,
                         const std::vector<double>& fidelity, double t_after);

struct AlphaScanPoint {
  double alpha;
  double mean_initial_probability;
};

// Mean probability of remaining in the initial state, time-averaged over
// `periods` natural units, for each alpha (order-2 model, ordered chain).
std::vector<AlphaScanPoint> alpha_scan(const std::vector<double>& alphas,
                                       int n_atoms, double spacing_d_um,
                                       CouplingConstants constants,
                                       double periods = 200.0,
                                       int samples_per_period = 16);

}  // namespace dd
