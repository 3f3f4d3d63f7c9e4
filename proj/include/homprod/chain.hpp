#pragma once
// Total complexes of tensor products of two-term GF(2) chain complexes.
//
// Each classical code gives a two-term complex; a factor enters the product
// either "direct" (bits in grade 1, boundary H) or "transposed" (bits in
// grade 0, boundary H^T).  Grade-g spaces of the total complex split into
// summands indexed by 0/1 vectors over the factors, ordered ascending
// lexicographically, and the boundary restricted to a summand applies one
// factor's boundary tensored with identities.

#include <cstddef>
#include <vector>

#include "homprod/gf2.hpp"

namespace homprod {

struct FactorComplex {
  gf2::BinMatrix H;
  bool transposed = false;

  std::size_t dim(int grade) const {
    bool bits_at_one = !transposed;
    return (grade == 1) == bits_at_one ? H.cols() : H.rows();
  }
  // The grade 1 -> 0 boundary map.
  gf2::BinMatrix boundary() const { return transposed ? H.transposed() : H; }
};

struct Summand {
  std::vector<int> grades;                 // one 0/1 entry per factor
  std::size_t offset = 0;                  // start inside the flat grade space
  std::size_t dim = 0;                     // product of factor_dims
  std::vector<std::size_t> factor_dims;    // per-factor dimension at this grade

  // Row-major flattening of a per-factor multi-index.
  std::size_t flatten(const std::vector<std::size_t>& idx) const;
  std::vector<std::size_t> unflatten(std::size_t local) const;
};

struct TotalComplex {
  std::vector<FactorComplex> factors;
  std::vector<std::vector<Summand>> summands;  // [grade]
  std::vector<gf2::BinMatrix> delta;           // delta[g]: grade g -> g-1 (g >= 1)

  int D() const { return (int)factors.size(); }
  std::size_t dim(int g) const;
  const Summand* find_summand(int g, const std::vector<int>& grades) const;
};

// Builds all summands and boundary maps and verifies delta^2 = 0.
TotalComplex total_complex(std::vector<FactorComplex> factors);

}  // namespace homprod
