#include "dd/sector_basis.hpp"

#include <algorithm>
#include <ostream>

namespace dd {

char site_char(Site s) {
  switch (s) {
    case Site::P: return 'p';
    case Site::S: return 's';
    case Site::SP: return '\'';  // only used via to_string
  }
  return '?';
}

Site site_from_char(char c) {
  if (c == 'p') return Site::P;
  if (c == 's') return Site::S;
  throw DomainError(std::string("unknown site label '") + c + "'");
}

SectorState::SectorState(const std::vector<Site>& sites) {
  if (sites.size() > 31)
    throw DomainError("SectorState supports at most 31 atoms");
  n_ = static_cast<int>(sites.size());
  for (int i = 0; i < n_; ++i)
    bits_ |= static_cast<uint64_t>(sites[i]) << (2 * i);
}

void SectorState::set_site(int i, Site s) {
  bits_ = (bits_ & ~(uint64_t{3} << (2 * i))) |
          (static_cast<uint64_t>(s) << (2 * i));
}

int SectorState::count(Site s) const {
  int c = 0;
  for (int i = 0; i < n_; ++i)
    if (site(i) == s) ++c;
  return c;
}

std::vector<Site> SectorState::sites() const {
  std::vector<Site> v(n_);
  for (int i = 0; i < n_; ++i) v[i] = site(i);
  return v;
}

std::string SectorState::to_string() const {
  std::string out;
  for (int i = 0; i < n_; ++i) {
    switch (site(i)) {
      case Site::P: out += 'p'; break;
      case Site::S: out += 's'; break;
      case Site::SP: out += "s'"; break;
    }
  }
  return out;
}

SectorState parse_pattern(const std::string& text) {
  std::vector<Site> sites;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == ' ') continue;
    if (c == 'p') {
      sites.push_back(Site::P);
    } else if (c == 's') {
      if (i + 1 < text.size() && text[i + 1] == '\'') {
        sites.push_back(Site::SP);
        ++i;
      } else {
        sites.push_back(Site::S);
      }
    } else {
      throw DomainError(std::string("unknown site label '") + c +
                        "' in pattern \"" + text + "\"");
    }
  }
  return SectorState(sites);
}

bool in_sector(const SectorState& state, int order) {
  return state.count(Site::SP) == (order - 1) * state.count(Site::S);
}

static void check_order(int order) {
  if (order < 2 || order > 4)
    throw ConfigError("interaction order must be 2, 3 or 4, got " +
                      std::to_string(order));
}

static uint64_t multinomial(int n, int a, int b, int c) {
  // n! / (a! b! c!) with a+b+c = n; exact in u64 for n <= 20
  uint64_t result = 1;
  int placed = a;  // skip the largest block implicitly via n!/a!
  if (b > placed) { placed = b; std::swap(a, b); }
  if (c > placed) { placed = c; std::swap(a, c); }
  // result = n!/placed! then divide by remaining factorials incrementally
  for (int i = placed + 1; i <= n; ++i) result *= static_cast<uint64_t>(i);
  auto divide_factorial = [&result](int m) {
    for (int i = 2; i <= m; ++i) result /= static_cast<uint64_t>(i);
  };
  divide_factorial(b);
  divide_factorial(c);
  return result;
}

uint64_t sector_count_at_k(int n_atoms, int order, int k) {
  check_order(order);
  if (k < 0 || order * k > n_atoms) return 0;
  return multinomial(n_atoms, n_atoms - order * k, k, (order - 1) * k);
}

uint64_t sector_dimension(int n_atoms, int order) {
  check_order(order);
  if (n_atoms < 1) throw ConfigError("n_atoms must be >= 1");
  uint64_t dim = 0;
  for (int k = 0; order * k <= n_atoms; ++k)
    dim += sector_count_at_k(n_atoms, order, k);
  return dim;
}

double saturation_fraction(int n_atoms, int order) {
  uint64_t dim = 0, s_total = 0;
  for (int k = 0; order * k <= n_atoms; ++k) {
    uint64_t c = sector_count_at_k(n_atoms, order, k);
    dim += c;
    s_total += c * static_cast<uint64_t>(k);
  }
  return static_cast<double>(s_total) /
         (static_cast<double>(dim) * n_atoms);
}

SectorBasis enumerate_sector(int n_atoms, int order, uint64_t max_dimension) {
  uint64_t dim = sector_dimension(n_atoms, order);
  if (dim > max_dimension)
    throw ResourceError("sector dimension " + std::to_string(dim) +
                        " exceeds basis budget of " +
                        std::to_string(max_dimension) + " states");

  SectorBasis basis;
  basis.order = order;
  basis.n_atoms = n_atoms;
  basis.states.reserve(dim);
  basis.index.reserve(dim);

  for (int k = 0; order * k <= n_atoms; ++k) {
    // Multiset {P x (n - order k), S x k, SP x (order-1)k} in lex order.
    std::vector<Site> sites;
    sites.insert(sites.end(), n_atoms - order * k, Site::P);
    sites.insert(sites.end(), k, Site::S);
    sites.insert(sites.end(), (order - 1) * k, Site::SP);
    do {
      SectorState state(sites);
      basis.index.emplace(state.packed(),
                          static_cast<uint32_t>(basis.states.size()));
      basis.states.push_back(state);
    } while (std::next_permutation(sites.begin(), sites.end()));
  }
  return basis;
}

uint32_t SectorBasis::rank(const SectorState& s) const {
  auto it = index.find(s.packed());
  if (it == index.end() || s.n_atoms() != n_atoms)
    throw MembershipError("state " + s.to_string() +
                          " is not in the order-" + std::to_string(order) +
                          " sector (requires n_s' = " +
                          std::to_string(order - 1) + " * n_s)");
  return it->second;
}

const SectorState& SectorBasis::unrank(std::size_t i) const {
  if (i >= states.size())
    throw DomainError("basis index " + std::to_string(i) + " out of range");
  return states[i];
}

bool SectorBasis::contains(const SectorState& s) const {
  return s.n_atoms() == n_atoms && index.count(s.packed()) > 0;
}

uint64_t combinatorial_rank(const SectorState& state, int order) {
  const int n = state.n_atoms();
  const int k_state = state.s_count();
  if (!in_sector(state, order))
    throw MembershipError("state " + state.to_string() + " not in sector");

  uint64_t r = 0;
  for (int k = 0; k < k_state; ++k) r += sector_count_at_k(n, order, k);

  // Lexicographic rank within the fixed-(n_s) block: at each position, count
  // completions that start with a strictly smaller label.
  int np = n - order * k_state, ns = k_state, nsp = (order - 1) * k_state;
  auto arrangements = [](int a, int b, int c) {
    return multinomial(a + b + c, a, b, c);
  };
  for (int i = 0; i < n; ++i) {
    Site s = state.site(i);
    if (s != Site::P && np > 0) r += arrangements(np - 1, ns, nsp);
    if (s == Site::SP && ns > 0) r += arrangements(np, ns - 1, nsp);
    if (s == Site::P) --np;
    else if (s == Site::S) --ns;
    else --nsp;
  }
  return r;
}

void dump_basis(const SectorBasis& basis, std::ostream& out) {
  out << basis.order << ' ' << basis.n_atoms << ' ' << basis.dimension()
      << '\n';
  for (const auto& s : basis.states) out << s.to_string() << '\n';
}

}  // namespace dd
