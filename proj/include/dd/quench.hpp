#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "dd/sector_basis.hpp"
#include "dd/spectral.hpp"

namespace dd {

struct QuenchSpec {
  std::string initial_pattern;        // empty means all-p
  std::vector<double> time_grid;      // natural units, nondecreasing, >= 0
  int cut_position = 0;               // 0 means default ceil(n/2)
};

// Log-spaced grid with n_points from t_min to t_max (natural units),
// optionally prefixed with t = 0.
std::vector<double> log_time_grid(double t_min = 1e-2, double t_max = 1e2,
                                  int n_points = 400,
                                  bool include_zero = true);

// Resolve the initial pattern to a basis index; throws MembershipError when
// the pattern violates the sector conservation law.
Eigen::Index initial_index(const SectorBasis& basis,
                           const std::string& pattern);

// Spectral coefficients c_i of the initial basis state.
Eigen::VectorXd initial_overlap_coefficients(const EigenSystem& es,
                                             Eigen::Index index);

// F(t) = |sum_i |c_i|^2 exp(-i E_i t)|^2; times in natural units, converted
// by time_unit_au to atomic units.
std::vector<double> fidelity_series(const Eigen::VectorXd& c,
                                    const Eigen::VectorXd& eigenvalues,
                                    const std::vector<double>& times_natural,
                                    double time_unit_au);

// Psi(t) in the sector basis for a single time (natural units).
Eigen::VectorXcd evolve_state(const EigenSystem& es, const Eigen::VectorXd& c,
                              double t_natural, double time_unit_au);

// Amplitudes for every grid time at once: column t holds Psi(t).
Eigen::MatrixXcd evolve_grid(const EigenSystem& es, const Eigen::VectorXd& c,
                             const std::vector<double>& times_natural,
                             double time_unit_au);

struct ObservableSeries {
  std::vector<double> times_natural;
  std::vector<double> times_us;
  std::vector<double> fidelity;
  std::vector<double> s_fraction;
  std::vector<double> s_over_saturation;
  std::vector<double> ee_raw;
  std::vector<double> ee_normalized;
  double t_heisenberg_natural = 0;
  double saturation = 0;
  double time_unit_au = 0;
};

// Bipartite entanglement entropy helper: classifies each basis state by its
// left/right half configurations for a fixed cut.
struct BipartiteSplit {
  int cut = 0;
  std::vector<int> left_id;   // per basis state
  std::vector<int> right_id;
  int n_left = 0;   // distinct left configurations in the sector basis
  int n_right = 0;

  static BipartiteSplit make(const SectorBasis& basis, int cut);
};

// Von Neumann EE of the left half for one amplitude vector.
double entanglement_entropy(const BipartiteSplit& split,
                            const Eigen::VectorXcd& amplitudes);

// Full per-sample observable sweep: fidelity, s fraction (raw and
// saturation-normalized), EE (raw and /ln(D_A)), over the quench time grid.
ObservableSeries observable_series(const SectorBasis& basis,
                                   const EigenSystem& es,
                                   const QuenchSpec& quench,
                                   double time_unit_au);

}  // namespace dd
