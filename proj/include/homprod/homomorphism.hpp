#pragma once
// Lifting classical chain maps to maps between product codes.
//
// A puncture/augment of one factor induces a map between the corresponding
// total complexes: on each summand it acts as the factor map tensored with
// identities.  Maps on direct factors run modified -> base; maps on
// transposed factors reverse, base -> modified.  A lift mixing the two
// directions does not compose, so it is rejected; gadget constructions that
// modify both kinds of factor use two separate lifted maps.

#include <optional>
#include <vector>

#include "homprod/chain.hpp"
#include "homprod/classical.hpp"
#include "homprod/css.hpp"

namespace homprod {

struct FactorModification {
  gf2::BinMatrix modified_H;
  ClassicalMap to_base;  // bits gamma1, checks gamma0: H_base gamma1 = gamma0 H_mod
};

struct LiftedProductMap {
  TotalComplex base;
  TotalComplex modified;
  std::vector<gf2::BinMatrix> gamma;  // per grade: dim_dst(g) x dim_src(g)
  bool modified_is_source = true;     // true: arrow modified -> base

  const TotalComplex& source() const { return modified_is_source ? modified : base; }
  const TotalComplex& target() const { return modified_is_source ? base : modified; }
};

// base_factors gives the unmodified product; mods[f] (if set) replaces factor
// f.  Verifies the chain-map identity at every grade.
LiftedProductMap lift_to_product(const std::vector<FactorComplex>& base_factors,
                                 const std::vector<std::optional<FactorModification>>& mods);

bool verify_total_map(const TotalComplex& dst, const std::vector<gf2::BinMatrix>& gamma,
                      const TotalComplex& src);

// Qubit/check permutations realizing the lifted translation (i, j) on a 2D
// product of two quasi-cyclic codes with equal lift size.  g1 permutes
// qubits, g2 Z-checks, g0 X-checks; logical (x, y) moves to (x+i, y+j) mod l.
struct ProductAutomorphism {
  gf2::BinMatrix g2, g1, g0;
  std::size_t i = 0, j = 0;
};
ProductAutomorphism translation_automorphism(const QuasiCyclicSpec& s1,
                                             const QuasiCyclicSpec& s2, std::size_t i,
                                             std::size_t j);

}  // namespace homprod
