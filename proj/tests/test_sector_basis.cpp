#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "dd/sector_basis.hpp"

using namespace dd;

namespace {

// Independent oracle: filter all 3^n occupation strings by the conservation
// law n_s' = (order-1) n_s.
std::set<std::string> brute_force_sector(int n, int order) {
  std::set<std::string> out;
  std::vector<Site> sites(n, Site::P);
  const long total = static_cast<long>(std::pow(3.0, n) + 0.5);
  for (long code = 0; code < total; ++code) {
    long c = code;
    int ns = 0, nsp = 0;
    for (int i = 0; i < n; ++i) {
      const int digit = c % 3;
      c /= 3;
      sites[i] = static_cast<Site>(digit);
      if (digit == 1) ++ns;
      if (digit == 2) ++nsp;
    }
    if (nsp == (order - 1) * ns) out.insert(SectorState(sites).to_string());
  }
  return out;
}

}  // namespace

TEST_CASE("sector_dimension matches published counts") {
  CHECK(sector_dimension(12, 2) == 73789);
  CHECK(sector_dimension(13, 3) == 93094);
  CHECK(sector_dimension(14, 4) == 108109);
}

TEST_CASE("sector_dimension small cases against brute force values") {
  CHECK(sector_dimension(3, 3) == 4);
  CHECK(sector_dimension(2, 2) == 3);
  CHECK(sector_dimension(1, 2) == 1);
  CHECK(sector_dimension(1, 4) == 1);
}

TEST_CASE("sector_dimension rejects bad arguments") {
  CHECK_THROWS_AS(sector_dimension(5, 5), ConfigError);
  CHECK_THROWS_AS(sector_dimension(5, 1), ConfigError);
  CHECK_THROWS_AS(sector_dimension(0, 2), ConfigError);
}

TEST_CASE("enumerate_sector equals brute-force filtering for n <= 6") {
  for (int order = 2; order <= 4; ++order) {
    for (int n = 1; n <= 6; ++n) {
      const SectorBasis basis = enumerate_sector(n, order);
      const auto expected = brute_force_sector(n, order);
      REQUIRE(basis.dimension() == expected.size());
      REQUIRE(basis.dimension() == sector_dimension(n, order));
      std::set<std::string> got;
      for (const auto& s : basis.states) got.insert(s.to_string());
      CHECK(got == expected);
    }
  }
}

TEST_CASE("canonical ordering: all-P first, n_s ascending then lex") {
  const SectorBasis basis = enumerate_sector(2, 2);
  REQUIRE(basis.dimension() == 3);
  CHECK(basis.states[0].to_string() == "pp");
  CHECK(basis.states[1].to_string() == "ss'");
  CHECK(basis.states[2].to_string() == "s'" "s");

  const SectorBasis b44 = enumerate_sector(4, 4);
  REQUIRE(b44.dimension() == 5);
  CHECK(b44.states[0].to_string() == "pppp");
  for (int i = 1; i < 5; ++i) CHECK(b44.states[i].s_count() == 1);
}

TEST_CASE("single atom basis") {
  for (int order = 2; order <= 4; ++order) {
    const SectorBasis basis = enumerate_sector(1, order);
    REQUIRE(basis.dimension() == 1);
    CHECK(basis.states[0].to_string() == "p");
  }
}

TEST_CASE("rank/unrank round trip over the whole (8,2) basis") {
  const SectorBasis basis = enumerate_sector(8, 2);
  REQUIRE(basis.dimension() == 1107);
  for (std::size_t i = 0; i < basis.dimension(); ++i) {
    CHECK(basis.rank(basis.unrank(i)) == i);
    // combinatorial unranking cross-check
    CHECK(combinatorial_rank(basis.states[i], 2) == i);
  }
}

TEST_CASE("rank rejects states outside the sector") {
  const SectorBasis basis = enumerate_sector(4, 2);
  CHECK_THROWS_AS(basis.rank(parse_pattern("sppp")), MembershipError);
  CHECK_THROWS_AS(basis.rank(parse_pattern("pp")), MembershipError);
}

TEST_CASE("saturation fractions match published values") {
  CHECK(saturation_fraction(12, 2) == doctest::Approx(0.326).epsilon(0.002));
  CHECK(saturation_fraction(13, 3) == doctest::Approx(0.213).epsilon(0.002));
  CHECK(saturation_fraction(14, 4) == doctest::Approx(0.153).epsilon(0.002));
  // tiny case by hand: mean n_s over {pp, ss', s's} is 2/3, over 2 atoms
  CHECK(saturation_fraction(2, 2) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("basis dump is reproducible and carries the header") {
  const SectorBasis basis = enumerate_sector(3, 3);
  std::ostringstream a, b;
  dump_basis(basis, a);
  dump_basis(enumerate_sector(3, 3), b);
  CHECK(a.str() == b.str());
  CHECK(a.str().substr(0, 6) == "3 3 4\n");
}

TEST_CASE("enumeration budget produces a resource error naming the dimension") {
  try {
    enumerate_sector(13, 3, 1000);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("93094") != std::string::npos);
  }
}

TEST_CASE("pattern parsing handles s-prime") {
  const SectorState s = parse_pattern("ps s'");
  CHECK(s.n_atoms() == 3);
  CHECK(s.site(0) == Site::P);
  CHECK(s.site(1) == Site::S);
  CHECK(s.site(2) == Site::SP);
  CHECK_THROWS_AS(parse_pattern("pxq"), DomainError);
}
