#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dd/hamiltonian.hpp"

namespace dd {

struct EigenSystem {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns, sign-fixed
  Eigen::VectorXd overlaps;      // |<psi_i|Psi(0)>|^2, empty until computed

  Eigen::Index dimension() const { return eigenvalues.size(); }
};

// Full dense symmetric eigendecomposition (LAPACK dsyevd). Eigenvector signs
// are fixed by making the largest-magnitude component positive.
EigenSystem diagonalize(const SectorHamiltonian& h);
EigenSystem diagonalize_dense(const Eigen::MatrixXd& symmetric);

// Eigenvalues only; used where eigenvectors are not needed.
Eigen::VectorXd eigenvalues_only(const Eigen::MatrixXd& symmetric);

// Fill overlaps for the initial basis state at index `initial_index`.
void compute_overlaps(EigenSystem& es, Eigen::Index initial_index);

struct LevelSpacingStats {
  double mean_r = 0;
  std::size_t n_ratios = 0;
  std::size_t n_degenerate = 0;  // exactly degenerate triples counted as r=1
  std::vector<double> histogram;  // bins over [0, 1]
  double bin_width = 0;
};

// Consecutive-gap ratio r_n = min(d_n, d_{n-1}) / max(d_n, d_{n-1}) after
// trimming trim_fraction of levels from each spectral edge.
LevelSpacingStats level_spacing_ratio(const Eigen::VectorXd& eigenvalues,
                                      double trim_fraction = 0.1,
                                      int n_bins = 50);

// t_H = 2 pi / mean level spacing, in atomic units of time. Infinite for a
// fully degenerate spectrum.
double heisenberg_time_au(const Eigen::VectorXd& eigenvalues);

struct LdosScatterPoint {
  double energy_au;
  double overlap;
};

struct Ldos {
  std::vector<double> bin_centers;
  std::vector<double> bin_mass;  // sums to 1
  std::vector<LdosScatterPoint> scatter;
};

Ldos ldos(const EigenSystem& es, int n_bins);

struct GaussianFit {
  double amplitude = 0;
  double mean = 0;
  double width = 0;  // standard deviation
  double r_squared = 0;
  bool sparse = false;  // poor fit (r_squared < 0.5)
};

// Least-squares Gaussian on a binned LDOS; needs >= 5 nonempty bins.
GaussianFit gaussian_fit(const Ldos& density);

// Eigenstates whose overlap exceeds threshold x (median overlap within their
// energy window) and also 10x the sector-mean overlap 1/D.
// window_width <= 0 selects the default, spectrum span / 50.
std::vector<Eigen::Index> detect_scar_candidates(const EigenSystem& es,
                                                 double window_width = 0,
                                                 double threshold = 100.0);

}  // namespace dd
