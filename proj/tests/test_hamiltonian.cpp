#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>
#include <vector>

#include "dd/hamiltonian.hpp"

using namespace dd;

namespace {

CouplingConstants unit_constants() {
  CouplingConstants c;
  c.mu = c.nu = c.gamma_c = c.delta = 1.0;
  return c;
}

// Spacing that makes nearest-neighbor distances exactly 1 Bohr radius.
constexpr double kUnitSpacingUm = 1.0 / kBohrPerMicron;

// Independent oracle: classify every state pair by its difference pattern
// instead of generating partners.
Eigen::MatrixXd brute_force_hamiltonian(const SectorBasis& basis,
                                        const ChainGeometry& g,
                                        const CouplingConstants& c) {
  const auto dim = static_cast<Eigen::Index>(basis.dimension());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const int n = basis.n_atoms;
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      if (a == b) continue;
      const SectorState& sa = basis.states[a];
      const SectorState& sb = basis.states[b];
      std::vector<int> diff;
      for (int i = 0; i < n; ++i)
        if (sa.site(i) != sb.site(i)) diff.push_back(i);

      if (diff.size() == 2) {
        const int i = diff[0], j = diff[1];
        if (sa.site(i) == sb.site(j) && sa.site(j) == sb.site(i)) {
          // swap; kind from the unordered label pair
          const Site x = sa.site(i), y = sa.site(j);
          HopKind kind;
          if ((x == Site::P && y == Site::S) || (x == Site::S && y == Site::P))
            kind = HopKind::PS;
          else if ((x == Site::P && y == Site::SP) ||
                   (x == Site::SP && y == Site::P))
            kind = HopKind::PSP;
          else
            kind = HopKind::SSP;
          h(a, b) += hop_element(kind, g.pair_distance_au(i, j), c);
        }
      }

      // field-tuned: the state with fewer s atoms has all-p on the diff
      // sites; the other carries one s and (order-1) s' there
      const SectorState* lo = &sa;
      const SectorState* hi = &sb;
      if (lo->s_count() > hi->s_count()) std::swap(lo, hi);
      if (hi->s_count() - lo->s_count() == 1 &&
          static_cast<int>(diff.size()) == basis.order) {
        bool all_p = true;
        int s_site = -1;
        std::vector<int> sp_sites;
        for (int i : diff) {
          if (lo->site(i) != Site::P) all_p = false;
          if (hi->site(i) == Site::S) s_site = i;
          if (hi->site(i) == Site::SP) sp_sites.push_back(i);
        }
        if (all_p && s_site >= 0 &&
            static_cast<int>(sp_sites.size()) == basis.order - 1) {
          if (basis.order == 2) {
            h(a, b) += omega2(g.pair_distance_au(diff[0], diff[1]), c);
          } else if (basis.order == 3) {
            h(a, b) += omega3(g, sp_sites[0], sp_sites[1], s_site, c);
          } else {
            h(a, b) +=
                omega4(g, sp_sites[0], sp_sites[1], sp_sites[2], s_site, c);
          }
        }
      }
    }
  }
  return h;
}

}  // namespace

TEST_CASE("n=2 order-2 hand construction") {
  const SectorBasis basis = enumerate_sector(2, 2);
  const ChainGeometry g = ordered_positions(2, kUnitSpacingUm);
  const SectorHamiltonian h = assemble(basis, g, unit_constants());

  const auto pp = basis.rank(parse_pattern("pp"));
  const auto ssp = basis.rank(parse_pattern("ss'"));
  const auto sps = basis.rank(parse_pattern("s'" "s"));
  CHECK(h.matrix(pp, ssp) == doctest::Approx(1.0));
  CHECK(h.matrix(pp, sps) == doctest::Approx(1.0));
  CHECK(h.matrix(ssp, sps) == doctest::Approx(1.0));  // gamma^2 hop
  CHECK(h.matrix.diagonal().isZero(0.0));
}

TEST_CASE("n=3 order-3 structure") {
  const SectorBasis basis = enumerate_sector(3, 3);
  const ChainGeometry g = ordered_positions(3, kUnitSpacingUm);
  const CouplingConstants c = unit_constants();
  const SectorHamiltonian h = assemble(basis, g, c);
  REQUIRE(h.dimension() == 4);

  const auto ppp = basis.rank(parse_pattern("ppp"));
  for (std::size_t b = 0; b < 4; ++b) {
    if (b == ppp) continue;
    const int s_site = [&] {
      for (int i = 0; i < 3; ++i)
        if (basis.states[b].site(i) == Site::S) return i;
      return -1;
    }();
    std::vector<int> sps;
    for (int i = 0; i < 3; ++i)
      if (basis.states[b].site(i) == Site::SP) sps.push_back(i);
    CHECK(h.matrix(ppp, b) ==
          doctest::Approx(omega3(g, sps[0], sps[1], s_site, c)));
  }
  // the three one-s states couple pairwise by hopping
  int hop_pairs = 0;
  for (std::size_t a = 1; a < 4; ++a)
    for (std::size_t b = a + 1; b < 4; ++b)
      if (h.matrix(a, b) != 0.0) ++hop_pairs;
  CHECK(hop_pairs == 3);
}

TEST_CASE("oracle equivalence for n <= 4 and every order") {
  for (int order = 2; order <= 4; ++order) {
    for (int n = 2; n <= 4; ++n) {
      const SectorBasis basis = enumerate_sector(n, order);
      const ChainGeometry g =
          apply_disorder(ordered_positions(n, 2 * kUnitSpacingUm), 0.2, 31 + n);
      const SectorHamiltonian h = assemble(basis, g, unit_constants());
      const Eigen::MatrixXd oracle =
          brute_force_hamiltonian(basis, g, unit_constants());
      CHECK((h.matrix - oracle).cwiseAbs().maxCoeff() <=
            1e-8 * std::max(1.0, oracle.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("exact symmetry and zero diagonal at scale") {
  const SectorBasis basis = enumerate_sector(7, 3);
  const ChainGeometry g = apply_disorder(ordered_positions(7, 9.0), 0.35, 4);
  const SectorHamiltonian h = assemble(basis, g, CouplingConstants{});
  for (Eigen::Index a = 0; a < h.dimension(); ++a) {
    CHECK(h.matrix(a, a) == 0.0);
    for (Eigen::Index b = a + 1; b < h.dimension(); ++b)
      CHECK(h.matrix(a, b) == h.matrix(b, a));  // bit-for-bit
  }
}

TEST_CASE("couplings only connect legal conservation sectors") {
  const SectorBasis basis = enumerate_sector(6, 3);
  const ChainGeometry g = ordered_positions(6, 9.0);
  const SectorHamiltonian h = assemble(basis, g, CouplingConstants{});
  for (Eigen::Index a = 0; a < h.dimension(); a += 7) {
    for (Eigen::Index b = 0; b < h.dimension(); ++b) {
      if (h.matrix(a, b) == 0.0) continue;
      const int dks = basis.states[b].s_count() - basis.states[a].s_count();
      CHECK((dks == 0 || dks == 1 || dks == -1));
      CHECK(basis.states[b].count(Site::SP) ==
            2 * basis.states[b].s_count());
    }
  }
}

TEST_CASE("dilation scales hopping by l^-3 and order-N blocks by stated powers") {
  for (int order = 2; order <= 4; ++order) {
    const SectorBasis basis = enumerate_sector(4, order);
    const ChainGeometry g1 = ordered_positions(4, 5.0);
    const ChainGeometry g2 = ordered_positions(4, 10.0);  // lambda = 2
    const CouplingConstants c = unit_constants();
    const SectorHamiltonian h1 = assemble(basis, g1, c);
    const SectorHamiltonian h2 = assemble(basis, g2, c);
    const double hop_scale = 8.0;                       // 2^3
    const double field_scale = std::pow(2.0, 3 * (order - 1));
    for (Eigen::Index a = 0; a < h1.dimension(); ++a)
      for (Eigen::Index b = a + 1; b < h1.dimension(); ++b) {
        if (h1.matrix(a, b) == 0.0) continue;
        const bool hop =
            basis.states[a].s_count() == basis.states[b].s_count();
        const double expect =
            h1.matrix(a, b) / (hop ? hop_scale : field_scale);
        CHECK(h2.matrix(a, b) == doctest::Approx(expect).epsilon(1e-12));
      }
  }
}

TEST_CASE("hopping flags off leave only field-tuned couplings") {
  CouplingConstants c = unit_constants();
  c.hop_ps = c.hop_psp = c.hop_ssp = false;
  const SectorBasis basis = enumerate_sector(4, 2);
  const SectorHamiltonian h =
      assemble(basis, ordered_positions(4, kUnitSpacingUm), c);
  for (Eigen::Index a = 0; a < h.dimension(); ++a)
    for (Eigen::Index b = 0; b < h.dimension(); ++b)
      if (h.matrix(a, b) != 0.0)
        CHECK(basis.states[a].s_count() != basis.states[b].s_count());
}

TEST_CASE("row sparsity report") {
  const CouplingConstants c = unit_constants();
  const ChainGeometry g = ordered_positions(2, kUnitSpacingUm);
  const SectorBasis basis = enumerate_sector(2, 2);

  SUBCASE("full model: every row has exactly 2 nonzeros") {
    const SparsityReport rep = row_sparsity_report(assemble(basis, g, c));
    CHECK(rep.row_nnz == std::vector<int>{2, 2, 2});
    CHECK(rep.hop_entries == 1);
    CHECK(rep.field_entries == 2);
  }

  SUBCASE("hopping disabled: rows {2, 1, 1}") {
    CouplingConstants nohop = c;
    nohop.hop_ps = nohop.hop_psp = nohop.hop_ssp = false;
    const SparsityReport rep = row_sparsity_report(assemble(basis, g, nohop));
    std::vector<int> nnz = rep.row_nnz;
    std::sort(nnz.begin(), nnz.end());
    CHECK(nnz == std::vector<int>{1, 1, 2});
  }

  SUBCASE("all-P row count is C(n, order) * order for order >= 3") {
    const SectorBasis b63 = enumerate_sector(6, 3);
    const SparsityReport rep =
        row_sparsity_report(assemble(b63, ordered_positions(6, 9.0), c));
    CHECK(rep.row_nnz[0] == 20 * 3);  // C(6,3) = 20
  }
}

TEST_CASE("memory budget violation reports required bytes") {
  const SectorBasis basis = enumerate_sector(8, 2);  // dim 1107
  try {
    assemble(basis, ordered_positions(8, 9.0), CouplingConstants{}, 1024);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find(std::to_string(1107ull * 1107 * 8)) !=
          std::string::npos);
  }
}

TEST_CASE("basis/geometry mismatch is rejected") {
  const SectorBasis basis = enumerate_sector(4, 2);
  CHECK_THROWS_AS(
      assemble(basis, ordered_positions(5, 9.0), CouplingConstants{}),
      ConfigError);
}

TEST_CASE("binary dump header") {
  const SectorBasis basis = enumerate_sector(2, 2);
  const SectorHamiltonian h =
      assemble(basis, ordered_positions(2, kUnitSpacingUm), unit_constants());
  std::ostringstream out(std::ios::binary);
  dump_matrix(h, out);
  const std::string bytes = out.str();
  REQUIRE(bytes.size() == 16 + 9 * 8);
  CHECK(bytes.substr(0, 4) == "SECH");
  uint32_t dim = 0, order = 0;
  std::memcpy(&dim, bytes.data() + 4, 4);
  std::memcpy(&order, bytes.data() + 8, 4);
  CHECK(dim == 3);
  CHECK(order == 2);
}
