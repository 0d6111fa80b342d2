#include "dd/hamiltonian.hpp"

#include <algorithm>
#include <ostream>
#include <vector>

namespace dd {

namespace {

HopKind exchange_kind(Site a, Site b) {
  // a != b; the unordered label pair fixes the exchange kind
  if (a == Site::P) return b == Site::S ? HopKind::PS : HopKind::PSP;
  if (b == Site::P) return a == Site::S ? HopKind::PS : HopKind::PSP;
  return HopKind::SSP;
}

}  // namespace

SectorHamiltonian assemble(const SectorBasis& basis,
                           const ChainGeometry& geometry,
                           const CouplingConstants& constants,
                           uint64_t memory_budget_bytes) {
  if (basis.n_atoms != geometry.n_atoms)
    throw ConfigError("basis has " + std::to_string(basis.n_atoms) +
                      " atoms but geometry has " +
                      std::to_string(geometry.n_atoms));
  constants.validate();

  const auto dim = static_cast<Eigen::Index>(basis.dimension());
  const uint64_t bytes = static_cast<uint64_t>(dim) * dim * sizeof(double);
  if (bytes > memory_budget_bytes)
    throw ResourceError("dense Hamiltonian of dimension " +
                        std::to_string(dim) + " requires " +
                        std::to_string(bytes) + " bytes, over the budget of " +
                        std::to_string(memory_budget_bytes));

  SectorHamiltonian h;
  h.order = basis.order;
  h.n_atoms = basis.n_atoms;
  h.geometry = geometry;
  h.constants = constants;
  h.matrix = Eigen::MatrixXd::Zero(dim, dim);

  const int n = basis.n_atoms;
  const int order = basis.order;

  // Precompute 1/R^3-free pair distances once, in Bohr radii.
  std::vector<double> r_au(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      r_au[i * n + j] = r_au[j * n + i] = geometry.pair_distance_au(i, j);

  std::vector<int> p_sites;
  p_sites.reserve(n);

  for (Eigen::Index a = 0; a < dim; ++a) {
    const SectorState& state = basis.states[a];

    // Hopping: swap any two sites with different labels. Each unordered
    // state pair is seen from both sides; keep the b > a copy.
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        Site si = state.site(i), sj = state.site(j);
        if (si == sj) continue;
        SectorState partner = state;
        partner.set_site(i, sj);
        partner.set_site(j, si);
        const Eigen::Index b = basis.rank(partner);
        if (b <= a) continue;
        const double v =
            hop_element(exchange_kind(si, sj), r_au[i * n + j], constants);
        h.matrix(a, b) += v;
        h.matrix(b, a) = h.matrix(a, b);
      }
    }

    // Field-tuned conversions act on groups of p sites; the reverse process
    // is implied by symmetry, so only the p-side sweep is needed.
    p_sites.clear();
    for (int i = 0; i < n; ++i)
      if (state.site(i) == Site::P) p_sites.push_back(i);
    const int np = static_cast<int>(p_sites.size());

    auto connect = [&](SectorState partner, double v) {
      const Eigen::Index b = basis.rank(partner);
      h.matrix(a, b) += v;
      h.matrix(b, a) = h.matrix(a, b);
    };

    if (order == 2) {
      for (int x = 0; x < np; ++x) {
        for (int y = x + 1; y < np; ++y) {
          const int i = p_sites[x], j = p_sites[y];
          const double v = omega2(r_au[i * n + j], constants);
          SectorState up = state;
          up.set_site(i, Site::S);
          up.set_site(j, Site::SP);
          connect(up, v);
          up = state;
          up.set_site(i, Site::SP);
          up.set_site(j, Site::S);
          connect(up, v);
        }
      }
    } else if (order == 3) {
      for (int x = 0; x < np; ++x)
        for (int y = x + 1; y < np; ++y)
          for (int z = y + 1; z < np; ++z) {
            const std::array<int, 3> trip{p_sites[x], p_sites[y], p_sites[z]};
            for (int s_pos = 0; s_pos < 3; ++s_pos) {
              const int k = trip[s_pos];
              const int i = trip[(s_pos + 1) % 3], j = trip[(s_pos + 2) % 3];
              SectorState up = state;
              up.set_site(k, Site::S);
              up.set_site(i, Site::SP);
              up.set_site(j, Site::SP);
              connect(up, omega3(r_au[i * n + j], r_au[i * n + k],
                                 r_au[j * n + k], constants));
            }
          }
    } else {  // order == 4
      for (int x = 0; x < np; ++x)
        for (int y = x + 1; y < np; ++y)
          for (int z = y + 1; z < np; ++z)
            for (int u = z + 1; u < np; ++u) {
              const std::array<int, 4> quad{p_sites[x], p_sites[y],
                                            p_sites[z], p_sites[u]};
              for (int s_pos = 0; s_pos < 4; ++s_pos) {
                const int l = quad[s_pos];
                const int i = quad[(s_pos + 1) % 4];
                const int j = quad[(s_pos + 2) % 4];
                const int k = quad[(s_pos + 3) % 4];
                SectorState up = state;
                up.set_site(l, Site::S);
                up.set_site(i, Site::SP);
                up.set_site(j, Site::SP);
                up.set_site(k, Site::SP);
                connect(up,
                        omega4(r_au[i * n + j], r_au[i * n + k],
                               r_au[i * n + l], r_au[j * n + k],
                               r_au[j * n + l], r_au[k * n + l], constants));
              }
            }
    }
  }
  return h;
}

SparsityReport row_sparsity_report(const SectorHamiltonian& h) {
  const SectorBasis basis = enumerate_sector(h.n_atoms, h.order);
  SparsityReport rep;
  const auto dim = h.dimension();
  rep.row_nnz.assign(dim, 0);
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      if (h.matrix(a, b) == 0.0) continue;
      ++rep.row_nnz[a];
      ++rep.total_nnz;
      if (b > a) {
        const bool same_ns =
            basis.states[a].s_count() == basis.states[b].s_count();
        if (same_ns)
          ++rep.hop_entries;
        else
          ++rep.field_entries;
      }
    }
    rep.max_row_nnz = std::max(rep.max_row_nnz, rep.row_nnz[a]);
  }
  return rep;
}

void dump_matrix(const SectorHamiltonian& h, std::ostream& out) {
  const char magic[4] = {'S', 'E', 'C', 'H'};
  const uint32_t dim = static_cast<uint32_t>(h.dimension());
  const uint32_t order = static_cast<uint32_t>(h.order);
  const uint32_t reserved = 0;
  out.write(magic, 4);
  out.write(reinterpret_cast<const char*>(&dim), 4);
  out.write(reinterpret_cast<const char*>(&order), 4);
  out.write(reinterpret_cast<const char*>(&reserved), 4);
  // Eigen stores column-major; emit rows explicitly. H is symmetric so the
  // distinction is cosmetic, but the format says row-major.
  std::vector<double> row(dim);
  for (uint32_t a = 0; a < dim; ++a) {
    for (uint32_t b = 0; b < dim; ++b) row[b] = h.matrix(a, b);
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(sizeof(double) * dim));
  }
}

}  // namespace dd
