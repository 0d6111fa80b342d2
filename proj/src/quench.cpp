#include "dd/quench.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dd/couplings.hpp"

namespace dd {

std::vector<double> log_time_grid(double t_min, double t_max, int n_points,
                                  bool include_zero) {
  if (t_min <= 0 || t_max <= t_min || n_points < 2)
    throw ConfigError("time grid requires 0 < t_min < t_max and >= 2 points");
  std::vector<double> grid;
  grid.reserve(n_points + 1);
  if (include_zero) grid.push_back(0.0);
  const double step = std::log(t_max / t_min) / (n_points - 1);
  for (int i = 0; i < n_points; ++i)
    grid.push_back(t_min * std::exp(step * i));
  return grid;
}

Eigen::Index initial_index(const SectorBasis& basis,
                           const std::string& pattern) {
  SectorState state;
  if (pattern.empty()) {
    state = SectorState(std::vector<Site>(basis.n_atoms, Site::P));
  } else {
    state = parse_pattern(pattern);
  }
  if (state.n_atoms() != basis.n_atoms)
    throw MembershipError("initial pattern \"" + state.to_string() + "\" has " +
                          std::to_string(state.n_atoms()) + " atoms, basis has " +
                          std::to_string(basis.n_atoms));
  if (!in_sector(state, basis.order))
    throw MembershipError(
        "initial pattern \"" + state.to_string() +
        "\" violates the sector conservation law n_s' = " +
        std::to_string(basis.order - 1) + " * n_s");
  return basis.rank(state);
}

Eigen::VectorXd initial_overlap_coefficients(const EigenSystem& es,
                                             Eigen::Index index) {
  if (index < 0 || index >= es.dimension())
    throw DomainError("initial state index out of range");
  return es.eigenvectors.row(index).transpose();
}

std::vector<double> fidelity_series(const Eigen::VectorXd& c,
                                    const Eigen::VectorXd& eigenvalues,
                                    const std::vector<double>& times_natural,
                                    double time_unit_au) {
  const Eigen::VectorXd weights = c.cwiseAbs2();
  std::vector<double> out;
  out.reserve(times_natural.size());
  for (double t_nat : times_natural) {
    const double t_au = t_nat * time_unit_au;
    double re = 0, im = 0;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      const double phase = eigenvalues(i) * t_au;
      re += weights(i) * std::cos(phase);
      im -= weights(i) * std::sin(phase);
    }
    out.push_back(re * re + im * im);
  }
  return out;
}

Eigen::VectorXcd evolve_state(const EigenSystem& es, const Eigen::VectorXd& c,
                              double t_natural, double time_unit_au) {
  const double t_au = t_natural * time_unit_au;
  Eigen::VectorXcd modes(c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double phase = es.eigenvalues(i) * t_au;
    modes(i) = c(i) * std::complex<double>(std::cos(phase), -std::sin(phase));
  }
  return es.eigenvectors * modes;
}

Eigen::MatrixXcd evolve_grid(const EigenSystem& es, const Eigen::VectorXd& c,
                             const std::vector<double>& times_natural,
                             double time_unit_au) {
  const Eigen::Index d = es.dimension();
  const Eigen::Index nt = static_cast<Eigen::Index>(times_natural.size());
  Eigen::MatrixXd cos_ph(d, nt), sin_ph(d, nt);
  for (Eigen::Index t = 0; t < nt; ++t) {
    const double t_au = times_natural[t] * time_unit_au;
    for (Eigen::Index i = 0; i < d; ++i) {
      const double phase = es.eigenvalues(i) * t_au;
      cos_ph(i, t) = std::cos(phase);
      sin_ph(i, t) = std::sin(phase);
    }
  }
  const Eigen::MatrixXd weighted = es.eigenvectors * c.asDiagonal();
  Eigen::MatrixXcd amps(d, nt);
  amps.real() = weighted * cos_ph;
  amps.imag() = -(weighted * sin_ph);
  return amps;
}

BipartiteSplit BipartiteSplit::make(const SectorBasis& basis, int cut) {
  if (cut <= 0 || cut >= basis.n_atoms)
    throw DomainError("cut must satisfy 0 < cut < n_atoms, got " +
                      std::to_string(cut));
  BipartiteSplit split;
  split.cut = cut;
  split.left_id.reserve(basis.dimension());
  split.right_id.reserve(basis.dimension());
  std::map<uint64_t, int> left_ids, right_ids;
  const uint64_t left_mask = (uint64_t{1} << (2 * cut)) - 1;
  for (const auto& state : basis.states) {
    const uint64_t left = state.packed() & left_mask;
    const uint64_t right = state.packed() >> (2 * cut);
    auto [lit, lnew] = left_ids.emplace(left, split.n_left);
    if (lnew) ++split.n_left;
    auto [rit, rnew] = right_ids.emplace(right, split.n_right);
    if (rnew) ++split.n_right;
    split.left_id.push_back(lit->second);
    split.right_id.push_back(rit->second);
  }
  return split;
}

double entanglement_entropy(const BipartiteSplit& split,
                            const Eigen::VectorXcd& amplitudes) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(split.n_left, split.n_right);
  for (Eigen::Index a = 0; a < amplitudes.size(); ++a)
    m(split.left_id[a], split.right_id[a]) = amplitudes(a);
  // Schmidt weights are the eigenvalues of the left reduced density matrix.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m * m.adjoint(),
                                                      Eigen::EigenvaluesOnly);
  double s = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    const double lambda = eig.eigenvalues()(i);
    if (lambda > 1e-15) s -= lambda * std::log(lambda);
  }
  return s;
}

ObservableSeries observable_series(const SectorBasis& basis,
                                   const EigenSystem& es,
                                   const QuenchSpec& quench,
                                   double time_unit_au) {
  const Eigen::Index idx = initial_index(basis, quench.initial_pattern);
  const Eigen::VectorXd c = initial_overlap_coefficients(es, idx);

  const int cut = quench.cut_position > 0 ? quench.cut_position
                                          : (basis.n_atoms + 1) / 2;
  const BipartiteSplit split = BipartiteSplit::make(basis, cut);
  const double ee_norm =
      std::log(static_cast<double>(std::max(split.n_left, 2)));

  Eigen::VectorXd s_weight(static_cast<Eigen::Index>(basis.dimension()));
  for (std::size_t a = 0; a < basis.dimension(); ++a)
    s_weight(static_cast<Eigen::Index>(a)) =
        static_cast<double>(basis.states[a].s_count()) / basis.n_atoms;

  ObservableSeries series;
  series.times_natural = quench.time_grid;
  series.time_unit_au = time_unit_au;
  series.saturation = saturation_fraction(basis.n_atoms, basis.order);
  series.t_heisenberg_natural =
      heisenberg_time_au(es.eigenvalues) / time_unit_au;

  series.fidelity =
      fidelity_series(c, es.eigenvalues, quench.time_grid, time_unit_au);

  const Eigen::MatrixXcd amps =
      evolve_grid(es, c, quench.time_grid, time_unit_au);

  const auto nt = static_cast<Eigen::Index>(quench.time_grid.size());
  series.times_us.reserve(nt);
  series.s_fraction.reserve(nt);
  series.s_over_saturation.reserve(nt);
  series.ee_raw.reserve(nt);
  series.ee_normalized.reserve(nt);
  for (Eigen::Index t = 0; t < nt; ++t) {
    series.times_us.push_back(
        au_time_to_us(quench.time_grid[t] * time_unit_au));
    const double s_frac = amps.col(t).cwiseAbs2().dot(s_weight);
    series.s_fraction.push_back(s_frac);
    series.s_over_saturation.push_back(s_frac / series.saturation);
    const double ee = entanglement_entropy(split, amps.col(t));
    series.ee_raw.push_back(ee);
    series.ee_normalized.push_back(ee / ee_norm);
  }
  return series;
}

}  // namespace dd
