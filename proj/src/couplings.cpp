#include "dd/couplings.hpp"

#include <cmath>

namespace dd {

namespace {

double inv_cube(double r_au) {
  if (r_au <= 0)
    throw DomainError("distance must be positive, got " + std::to_string(r_au));
  return 1.0 / (r_au * r_au * r_au);
}

}  // namespace

double CouplingConstants::default_delta() {
  // Omega2(50 um) = mu*nu/R2^3, Omega3(11 um) = (gamma mu^2 nu / delta) *
  // (9/8) / d3^6 for a nearest-neighbor triplet; equate and solve for delta.
  const double mu = 1000.0, nu = 1000.0, gamma_c = 1000.0;
  const double r2 = 50.0 * kBohrPerMicron;
  const double d3 = 11.0 * kBohrPerMicron;
  const double omega2_50 = mu * nu / (r2 * r2 * r2);
  const double d3c = d3 * d3 * d3;
  return gamma_c * mu * mu * nu * (9.0 / 8.0) / (d3c * d3c * omega2_50);
}

void CouplingConstants::validate() const {
  if (mu <= 0 || nu <= 0 || gamma_c <= 0 || delta <= 0)
    throw ConfigError("dipole moments and detuning must be strictly positive");
  if (alpha <= 0 || alpha > 1)
    throw ConfigError("alpha must lie in (0, 1], got " + std::to_string(alpha));
}

double omega2(double r_au, const CouplingConstants& c) {
  return c.alpha * c.mu * c.nu * inv_cube(r_au);
}

double hop_element(HopKind kind, double r_au, const CouplingConstants& c) {
  switch (kind) {
    case HopKind::PS:
      return c.hop_ps ? c.mu * c.mu * inv_cube(r_au) : 0.0;
    case HopKind::PSP:
      return c.hop_psp ? c.nu * c.nu * inv_cube(r_au) : 0.0;
    case HopKind::SSP:
      return c.hop_ssp ? c.gamma_c * c.gamma_c * inv_cube(r_au) : 0.0;
  }
  throw DomainError("unknown hopping kind");
}

double omega3(double r12_au, double r13_au, double r23_au,
              const CouplingConstants& c) {
  return c.gamma_c * c.mu * c.mu * c.nu / c.delta * inv_cube(r12_au) *
         (inv_cube(r13_au) + inv_cube(r23_au));
}

double omega4(double r12_au, double r13_au, double r14_au, double r23_au,
              double r24_au, double r34_au, const CouplingConstants& c) {
  const double i12 = inv_cube(r12_au), i13 = inv_cube(r13_au);
  const double i14 = inv_cube(r14_au), i23 = inv_cube(r23_au);
  const double i24 = inv_cube(r24_au), i34 = inv_cube(r34_au);
  const double paths = i14 * (i12 * i23 + i13 * i23) +
                       i24 * (i12 * i13 + i13 * i23) +
                       i34 * (i12 * i13 + i12 * i23);
  return c.gamma_c * c.gamma_c * c.mu * c.mu * c.mu * c.nu /
         (c.delta * c.delta) * paths;
}

static void check_distinct3(int i, int j, int k) {
  if (i == j || i == k || j == k)
    throw DomainError("omega3 requires three distinct atom indices");
}

double omega3(const ChainGeometry& g, int i, int j, int k,
              const CouplingConstants& c) {
  check_distinct3(i, j, k);
  return omega3(g.pair_distance_au(i, j), g.pair_distance_au(i, k),
                g.pair_distance_au(j, k), c);
}

double omega4(const ChainGeometry& g, int i, int j, int k, int l,
              const CouplingConstants& c) {
  check_distinct3(i, j, k);
  if (l == i || l == j || l == k)
    throw DomainError("omega4 requires four distinct atom indices");
  return omega4(g.pair_distance_au(i, j), g.pair_distance_au(i, k),
                g.pair_distance_au(i, l), g.pair_distance_au(j, k),
                g.pair_distance_au(j, l), g.pair_distance_au(k, l), c);
}

double natural_time_unit_au(int order, double spacing_d_um,
                            const CouplingConstants& c) {
  if (spacing_d_um <= 0) throw ConfigError("spacing d must be positive");
  const double d = spacing_d_um * kBohrPerMicron;
  double omega = 0;
  switch (order) {
    case 2:
      omega = omega2(d, c);
      break;
    case 3:
      // atoms at 0, d, 2d; the s role on the last atom
      omega = omega3(d, 2 * d, d, c);
      break;
    case 4:
      omega = omega4(d, 2 * d, 3 * d, d, 2 * d, d, c);
      break;
    default:
      throw ConfigError("interaction order must be 2, 3 or 4");
  }
  return 1.0 / std::abs(omega);
}

}  // namespace dd
