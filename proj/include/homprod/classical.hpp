#pragma once
// Classical GF(2) codes: the base objects the homological products are
// built from, plus the check-matrix surgery (puncture / augment) whose
// chain maps later lift to transversal-CNOT masks between quantum codes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homprod/gf2.hpp"

namespace homprod {

// A code is kept as a parity-check matrix plus a generator matrix that is
// systematic on the information bits: G.row(j) restricted to the info-bit
// positions is the j-th unit vector.  Information bits are the non-pivot
// columns when H is reduced with rightmost pivot preference, so for the
// catalog codes they are the leftmost k positions.
struct ClassicalCode {
  gf2::BinMatrix H;                    // r x n
  gf2::BinMatrix G;                    // k x n, systematic on info_bits
  std::vector<std::size_t> info_bits;  // ascending, size k
  std::optional<int> d;                // minimum distance when known

  std::size_t n() const { return H.cols(); }
  std::size_t num_checks() const { return H.rows(); }
  std::size_t k() const { return G.rows(); }
};

// Builds G and the info-bit set from H.  H need not be full row rank.
ClassicalCode make_code(gf2::BinMatrix h, std::optional<int> d = std::nullopt);

// Non-pivot columns of H under rightmost pivot preference; requires H to be
// full row rank (the canonical notion is only used in that regime).
std::vector<std::size_t> information_bits(const gf2::BinMatrix& h);

// Kernel basis of H, systematic on the information bits.
gf2::BinMatrix generator_from_check(const gf2::BinMatrix& h);

// A chain map between two-term complexes: gamma1 acts on bits, gamma0 on
// checks, and H_to * gamma1 == gamma0 * H_from.
struct ClassicalMap {
  gf2::BinMatrix gamma1;
  gf2::BinMatrix gamma0;
};

bool verify_classical_map(const gf2::BinMatrix& h_to, const ClassicalMap& m,
                          const gf2::BinMatrix& h_from);

// Removes the bit positions S (columns of H).  Kept codewords are those
// vanishing on S, so distance never decreases.  `warning` (if given) is set
// when S is not contained in the information bits.
struct ModifiedCode {
  ClassicalCode code;   // the modified code C'
  ClassicalMap to_base; // chain map C' -> C (bit inclusion / check projection)
};
ModifiedCode puncture(const ClassicalCode& c, const std::vector<std::size_t>& drop,
                      bool* warning = nullptr);

// Adds extra parity rows.
ModifiedCode augment(const ClassicalCode& c, const gf2::BinMatrix& extra_rows);

// augment followed by puncture, composing the two chain maps.
ModifiedCode augment_then_puncture(const ClassicalCode& c, const gf2::BinMatrix& extra_rows,
                                   const std::vector<std::size_t>& drop,
                                   bool* warning = nullptr);

// Parity rows tying together the positions inside each hyperedge: for an
// edge {i1 < i2 < ... < im} the rows e_{i1}+e_{i2}, ..., e_{i(m-1)}+e_{im}.
// Edges must be disjoint; edges of size one contribute no rows.
gf2::BinMatrix repetition_on_hyperedges(std::size_t n,
                                        const std::vector<std::vector<std::size_t>>& edges);

// Minimum weight of a nonzero codeword by Gray-code enumeration of all
// 2^k - 1 combinations; k = 0 returns 0; throws if 2^k exceeds `cap`.
int distance_bruteforce(const ClassicalCode& c, std::uint64_t cap = (std::uint64_t(1) << 24));

// --- quasi-cyclic codes -----------------------------------------------------

// A lifted code given by polynomial block matrices over F2[x]/(x^l - 1).
// Polynomials are strings like "1", "x", "x^2", "1+x+x^3".
struct QuasiCyclicSpec {
  std::size_t l = 0;                            // lift size
  std::vector<std::vector<std::string>> hpoly;  // r_b x n_b
  std::vector<std::string> gpoly;               // 1 x n_b, gpoly[0] == "1"
};

// Coefficient vector (length l) of a polynomial string.
std::vector<int> parse_poly(const std::string& s, std::size_t l);

// M(p)[i][j] = coeff of x^((i - j) mod l); M(x^s) shifts e_j to e_{j+s}.
gf2::BinMatrix circulant(const std::vector<int>& coeffs);

// Expansion of the block polynomial matrices.  Verifies H G^T = 0, that the
// expanded G is one-generator systematic-circulant (first block identity),
// that k = l, and that the information bits are exactly {0..l-1}.
ClassicalCode expand_quasi_cyclic(const QuasiCyclicSpec& spec,
                                  std::optional<int> d = std::nullopt);

// Permutation shifting position p to p + s (mod l) inside every length-l
// block of an n_blocks * l bit space.
gf2::BinMatrix block_shift(std::size_t n_blocks, std::size_t l, std::size_t s);

// The four one-generator systematic-circulant catalog codes, keyed
// "ogsc-9-3-4", "ogsc-12-3-6", "ogsc-16-4-8", "ogsc-20-5-9" ([n,k,d]).
struct CatalogEntry {
  std::string name;
  QuasiCyclicSpec spec;
  int n, k, d;
};
const std::vector<CatalogEntry>& ogsc_catalog();

// --- stock families ---------------------------------------------------------

ClassicalCode hamming_code(std::size_t r);   // [2^r-1, 2^r-1-r, 3]
ClassicalCode repetition_code(std::size_t n);  // [n, 1, n]

}  // namespace homprod
