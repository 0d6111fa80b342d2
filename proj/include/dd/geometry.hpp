#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "dd/errors.hpp"

namespace dd {

// 1 micrometer in Bohr radii.
inline constexpr double kBohrPerMicron = 18897.26;
// 1 atomic unit of time in microseconds.
inline constexpr double kMicrosecondPerAtomicTime = 2.4188843e-11;

// Deterministic 64-bit stream (splitmix64); identical sequences on every
// platform, unlike the distribution adaptors in <random>.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}
  uint64_t next();
  double next_unit();  // uniform on [0, 1) with 53-bit resolution
 private:
  uint64_t state_;
};

struct ChainGeometry {
  int n_atoms = 0;
  double spacing_d_um = 0;   // nominal lattice spacing, micrometers
  double disorder_w = 0;     // dimensionless, [0, 0.5)
  uint64_t seed = 0;
  std::vector<double> positions_um;

  double pair_distance_um(int i, int j) const;
  double pair_distance_au(int i, int j) const {
    return pair_distance_um(i, j) * kBohrPerMicron;
  }
};

ChainGeometry ordered_positions(int n_atoms, double spacing_d_um);

// Shift each site by u_i * d, u_i iid uniform on [-w, w] from the stream
// seeded with `seed`. Bit-exact for identical (seed, w, n, d).
ChainGeometry apply_disorder(const ChainGeometry& geometry, double disorder_w,
                             uint64_t seed);

// Per-sample stream seed convention used by the ensemble sweep.
inline uint64_t sample_seed(uint64_t base_seed, uint64_t sample) {
  return base_seed ^ (sample + 1);
}

// CSV dump: "sample,atom,position_um" with 17-significant-digit reals.
void dump_geometry(const ChainGeometry& geometry, uint64_t sample,
                   std::ostream& out, bool header = true);

}  // namespace dd
