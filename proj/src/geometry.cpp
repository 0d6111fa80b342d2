#include "dd/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace dd {

uint64_t SplitMix64::next() {
  uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double ChainGeometry::pair_distance_um(int i, int j) const {
  if (i == j)
    throw DomainError("pair_distance requires distinct atoms, got i = j = " +
                      std::to_string(i));
  return std::abs(positions_um[i] - positions_um[j]);
}

ChainGeometry ordered_positions(int n_atoms, double spacing_d_um) {
  if (n_atoms < 1) throw ConfigError("n_atoms must be >= 1");
  if (spacing_d_um <= 0) throw ConfigError("spacing d must be positive");
  ChainGeometry g;
  g.n_atoms = n_atoms;
  g.spacing_d_um = spacing_d_um;
  g.positions_um.resize(n_atoms);
  for (int i = 0; i < n_atoms; ++i) g.positions_um[i] = i * spacing_d_um;
  return g;
}

ChainGeometry apply_disorder(const ChainGeometry& geometry, double disorder_w,
                             uint64_t seed) {
  if (disorder_w < 0 || disorder_w >= 0.5)
    throw ConfigError("disorder w must lie in [0, 0.5), got " +
                      std::to_string(disorder_w));
  ChainGeometry g = geometry;
  g.disorder_w = disorder_w;
  g.seed = seed;
  if (disorder_w == 0) return g;
  SplitMix64 rng(seed);
  for (int i = 0; i < g.n_atoms; ++i) {
    double u = (2.0 * rng.next_unit() - 1.0) * disorder_w;
    g.positions_um[i] = i * g.spacing_d_um + u * g.spacing_d_um;
  }
  return g;
}

void dump_geometry(const ChainGeometry& geometry, uint64_t sample,
                   std::ostream& out, bool header) {
  if (header) out << "sample,atom,position_um\n";
  char buf[64];
  for (int i = 0; i < geometry.n_atoms; ++i) {
    std::snprintf(buf, sizeof(buf), "%llu,%d,%.17g",
                  static_cast<unsigned long long>(sample), i,
                  geometry.positions_um[i]);
    out << buf << '\n';
  }
}

}  // namespace dd
