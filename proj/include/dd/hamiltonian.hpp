#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <iosfwd>

#include "dd/couplings.hpp"
#include "dd/geometry.hpp"
#include "dd/sector_basis.hpp"

namespace dd {

struct SectorHamiltonian {
  Eigen::MatrixXd matrix;  // dense, exactly symmetric, zero diagonal
  int order = 0;
  int n_atoms = 0;
  ChainGeometry geometry;
  CouplingConstants constants;

  Eigen::Index dimension() const { return matrix.rows(); }
};

// Build the resonant-sector Hamiltonian: hopping exchanges on all site pairs
// plus the order-N field-tuned conversions on all p-site groups.
// memory_budget_bytes bounds the dense matrix allocation.
SectorHamiltonian assemble(const SectorBasis& basis,
                           const ChainGeometry& geometry,
                           const CouplingConstants& constants,
                           uint64_t memory_budget_bytes = uint64_t{16} << 30);

struct SparsityReport {
  std::vector<int> row_nnz;
  uint64_t total_nnz = 0;
  uint64_t hop_entries = 0;     // symmetric pairs counted once
  uint64_t field_entries = 0;
  int max_row_nnz = 0;
};

SparsityReport row_sparsity_report(const SectorHamiltonian& h);

// Binary dump: 16-byte header (magic "SECH", u32 dimension, u32 order,
// u32 reserved), then row-major little-endian f64.
void dump_matrix(const SectorHamiltonian& h, std::ostream& out);

}  // namespace dd
