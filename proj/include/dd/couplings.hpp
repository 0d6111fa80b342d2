#pragma once

#include "dd/errors.hpp"
#include "dd/geometry.hpp"

namespace dd {

enum class HopKind { PS, PSP, SSP };  // p<->s, p<->s', s<->s'

struct CouplingConstants {
  // Dipole matrix elements (atomic units): mu couples p->s, nu couples p->s',
  // gamma_c couples s->s'.
  double mu = 1000.0;
  double nu = 1000.0;
  double gamma_c = 1000.0;
  // Detuning from the two-body resonance (atomic units of energy).
  double delta = default_delta();
  // Artificial weakening of the two-body field-tuned element, (0, 1].
  double alpha = 1.0;
  bool hop_ps = true;
  bool hop_psp = true;
  bool hop_ssp = true;

  // Default delta calibrated so the nearest-neighbor three-body element at
  // 11 um matches the two-body element at 50 um (gamma*mu/delta ~ 12.6 um^3).
  static double default_delta();

  void validate() const;
};

// Two-body field-tuned element alpha*mu*nu/R^3. R in Bohr radii.
double omega2(double r_au, const CouplingConstants& c);

// Hopping (always-resonant) element mu^2/R^3, nu^2/R^3 or gamma^2/R^3.
// Returns 0 when that kind's flag is disabled. R in Bohr radii.
double hop_element(HopKind kind, double r_au, const CouplingConstants& c);

// Effective three-body element for s' atoms at distance r12 and the s atom a
// third party: (gamma mu^2 nu / (delta r12^3)) (1/r13^3 + 1/r23^3).
// r13, r23 are the s'-to-s distances. All distances in Bohr radii.
double omega3(double r12_au, double r13_au, double r23_au,
              const CouplingConstants& c);

// Effective four-body element with atoms 1,2,3 ending in s' and atom 4 in s.
// All six pair distances in Bohr radii.
double omega4(double r12_au, double r13_au, double r14_au, double r23_au,
              double r24_au, double r34_au, const CouplingConstants& c);

// Geometry-indexed variants; the distinguished last index is the s atom.
double omega3(const ChainGeometry& g, int i, int j, int k,
              const CouplingConstants& c);
double omega4(const ChainGeometry& g, int i, int j, int k, int l,
              const CouplingConstants& c);

// Reciprocal of the nearest-neighbor N-body element at exact spacing d, in
// atomic units of time.
double natural_time_unit_au(int order, double spacing_d_um,
                            const CouplingConstants& c);

inline double au_time_to_us(double t_au) {
  return t_au * kMicrosecondPerAtomicTime;
}

}  // namespace dd
