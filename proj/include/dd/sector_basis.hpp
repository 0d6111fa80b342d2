#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "dd/errors.hpp"

namespace dd {

// Site labels of the three-level chain. SP is the lower final state s'.
enum class Site : uint8_t { P = 0, S = 1, SP = 2 };

char site_char(Site s);
Site site_from_char(char c);  // accepts 'p', 's'; "s'" is handled by parse_pattern

// One occupation configuration of the chain. Sites are packed two bits per
// atom into a single word (n_atoms <= 31), giving O(1) hashing and compares.
class SectorState {
 public:
  SectorState() = default;
  explicit SectorState(const std::vector<Site>& sites);

  int n_atoms() const { return n_; }
  Site site(int i) const { return static_cast<Site>((bits_ >> (2 * i)) & 3u); }
  void set_site(int i, Site s);
  uint64_t packed() const { return bits_; }

  int count(Site s) const;
  int s_count() const { return count(Site::S); }

  std::vector<Site> sites() const;
  std::string to_string() const;  // e.g. "pss'p"

  bool operator==(const SectorState& o) const = default;

 private:
  uint64_t bits_ = 0;
  int n_ = 0;
};

// Parse "pss'p" style occupation strings.
SectorState parse_pattern(const std::string& text);

bool in_sector(const SectorState& state, int order);

// Dimension of the conserved sector: sum over k of
// n! / ((n - order*k)! k! ((order-1)k)!).
uint64_t sector_dimension(int n_atoms, int order);

// Number of sector states with exactly k s-atoms.
uint64_t sector_count_at_k(int n_atoms, int order, int k);

// Sector-averaged s fraction, computed combinatorially (no enumeration).
double saturation_fraction(int n_atoms, int order);

struct SectorBasis {
  int order = 0;
  int n_atoms = 0;
  std::vector<SectorState> states;         // sorted: n_s ascending, then lex
  std::unordered_map<uint64_t, uint32_t> index;

  std::size_t dimension() const { return states.size(); }
  uint32_t rank(const SectorState& s) const;
  const SectorState& unrank(std::size_t i) const;
  bool contains(const SectorState& s) const;
};

// Complete deterministic enumeration; the all-P state is index 0.
// max_dimension guards against runaway memory use.
SectorBasis enumerate_sector(int n_atoms, int order,
                             uint64_t max_dimension = 2'000'000);

// Combinatorial rank without the hash table; internal cross-check for rank().
uint64_t combinatorial_rank(const SectorState& state, int order);

// Dump format: header "order n_atoms dimension", then one state per line.
void dump_basis(const SectorBasis& basis, std::ostream& out);

}  // namespace dd
