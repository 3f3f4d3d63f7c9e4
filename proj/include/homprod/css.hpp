#pragma once
// CSS codes carved out of total complexes, with canonical logical bases
// arranged on a grid (2D) or cube (3D) of logical qubits.

#include <memory>
#include <optional>
#include <vector>

#include "homprod/chain.hpp"
#include "homprod/classical.hpp"
#include "homprod/gf2.hpp"

namespace homprod {

struct QubitCoord {
  std::size_t summand = 0;           // index into qubit-grade summands
  std::vector<std::size_t> idx;      // per-factor indices inside the summand
};

struct CssCode {
  gf2::BinMatrix HX, HZ;             // X and Z parity checks (rows) on n qubits
  std::optional<gf2::BinMatrix> MX;  // metachecks on X syndromes: MX * HX = 0
  std::optional<gf2::BinMatrix> MZ;  // metachecks on Z syndromes: MZ * HZ = 0
  std::size_t n = 0, k = 0;
  std::optional<int> d;

  // Canonical logical representatives, symplectically paired: lx[a].dot(lz[b])
  // = (a == b).  Present only when the factor checks are full row rank.
  std::vector<gf2::BinVector> lx, lz;
  // Shape of the logical grid; logical (i1,..,iD') sits at row-major index.
  std::vector<std::size_t> grid;

  std::vector<QubitCoord> coords;    // per physical qubit
  std::vector<Summand> qubit_summands;

  std::size_t grid_index(const std::vector<std::size_t>& g) const;
  // Physical qubit index of (summand, per-factor idx).
  std::size_t qubit_at(std::size_t summand, const std::vector<std::size_t>& idx) const;
};

// Qubits at total grade g: HX = delta_g, HZ = delta_{g+1}^T, and the
// metachecks one step further out when those grades exist.
CssCode css_from_total(const TotalComplex& t, int qubit_grade, bool want_logicals);

// 2D homological product ("hypergraph product"): factor 1 transposed, factor
// 2 direct, qubits at grade 1.  Block structure:
//   HX = (I (x) H2 | H1^T (x) I),  HZ = (H1 (x) I | I (x) H2^T),
// qubit block 1 = bits x bits (n1 x n2), block 2 = checks x checks (r1 x r2).
CssCode hgp(const ClassicalCode& c1, const ClassicalCode& c2);

// 3D product: factors 1,2 direct, factor 3 transposed, qubits at grade 2.
// Comes with X metachecks (MX = delta_1).
CssCode homological_3d(const ClassicalCode& c1, const ClassicalCode& c2,
                       const ClassicalCode& c3);

// 4D product: all four factors direct, qubits at grade 2; metachecks on both
// sides.  With repetition-code bases the logical count is zero: the object
// of interest is single-shot syndrome repair, not stored qubits.
CssCode homological_4d(const ClassicalCode& c1, const ClassicalCode& c2,
                       const ClassicalCode& c3, const ClassicalCode& c4);

// Several code blocks sharing the same first factor, merged into one product
// over the block-diagonal second factor; used to aim grid measurements
// across blocks.  embedding[q] locates each merged qubit in its block.
struct HgpUnion {
  std::vector<ClassicalCode> seconds;          // per block
  ClassicalCode merged_second;                 // block-diagonal stack
  CssCode code;                                // hgp(first, merged_second)
  struct Loc { std::size_t block, local; };
  std::vector<Loc> embedding;                  // merged qubit -> block qubit
  // Column j of block b on the merged logical grid.
  std::size_t merged_col(std::size_t block, std::size_t col) const;
};
HgpUnion hgp_union(const ClassicalCode& first, std::vector<ClassicalCode> seconds);

}  // namespace homprod
