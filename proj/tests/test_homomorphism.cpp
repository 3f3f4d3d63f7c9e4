#include "doctest.h"

#include <random>

#include "homprod/error.hpp"
#include "homprod/homomorphism.hpp"
#include "test_util.hpp"

using namespace homprod;
using gf2::BinMatrix;
using gf2::BinVector;

TEST_SUITE("homomorphism") {

TEST_CASE("puncturing a direct factor lifts to a map into the base product") {
  auto c1 = repetition_code(3);
  auto c2 = hamming_code(3);
  auto punc = puncture(c2, {c2.info_bits[1]});
  FactorModification mod{punc.code.H, punc.to_base};
  auto lift = lift_to_product({{c1.H, true}, {c2.H, false}},
                              {std::nullopt, mod});
  CHECK(lift.modified_is_source);
  CHECK(verify_total_map(lift.base, lift.gamma, lift.modified));
  // Qubit-grade component embeds the smaller product.
  CHECK(lift.gamma[1].rows() == lift.base.dim(1));
  CHECK(lift.gamma[1].cols() == lift.modified.dim(1));
}

TEST_CASE("modifying a transposed factor reverses the arrow") {
  auto c1 = hamming_code(3);
  auto c2 = repetition_code(3);
  auto aug = augment(c1, repetition_on_hyperedges(c1.n(), {{c1.info_bits[0], c1.info_bits[2]}}));
  FactorModification mod{aug.code.H, aug.to_base};
  auto lift = lift_to_product({{c1.H, true}, {c2.H, false}}, {mod, std::nullopt});
  CHECK(!lift.modified_is_source);
  CHECK(verify_total_map(lift.modified, lift.gamma, lift.base));
}

TEST_CASE("mixed-direction modifications are rejected") {
  auto c = repetition_code(3);
  auto p = puncture(c, {c.info_bits[0]});
  FactorModification mod{p.code.H, p.to_base};
  CHECK_THROWS_AS(lift_to_product({{c.H, true}, {c.H, false}}, {mod, mod}), Error);
}

TEST_CASE("lift of a composition is the composition of lifts") {
  auto c1 = repetition_code(3);
  auto c2 = hamming_code(3);
  auto p1 = puncture(c2, {c2.info_bits[3]});
  auto p2 = puncture(p1.code, {p1.code.info_bits[0]});
  // Composite classical map c2'' -> c2.
  ClassicalMap comp{p1.to_base.gamma1 * p2.to_base.gamma1,
                    p1.to_base.gamma0 * p2.to_base.gamma0};
  REQUIRE(verify_classical_map(c2.H, comp, p2.code.H));

  std::vector<FactorComplex> base = {{c1.H, true}, {c2.H, false}};
  auto l1 = lift_to_product(base, {std::nullopt, FactorModification{p1.code.H, p1.to_base}});
  std::vector<FactorComplex> mid = {{c1.H, true}, {p1.code.H, false}};
  auto l2 = lift_to_product(mid, {std::nullopt, FactorModification{p2.code.H, p2.to_base}});
  auto direct = lift_to_product(base, {std::nullopt, FactorModification{p2.code.H, comp}});
  for (int g = 0; g <= 2; ++g) CHECK(direct.gamma[g] == l1.gamma[g] * l2.gamma[g]);
}

TEST_CASE("random triple products lift with vanishing residuals") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<FactorComplex> base;
    std::vector<ClassicalCode> codes;
    for (int f = 0; f < 3; ++f) {
      std::size_t r = 1 + rng() % 3, n = r + 1 + rng() % 6;
      codes.push_back(make_code(testutil::random_full_rank_check(rng, r, n, 0.45)));
      base.push_back({codes.back().H, (rng() & 1) != 0});
    }
    int f = rng() % 3;
    std::vector<std::optional<FactorModification>> mods(3);
    const auto& code = codes[f];
    if (rng() & 1 && code.k() >= 2) {
      auto p = puncture(code, {code.info_bits[rng() % code.info_bits.size()]});
      mods[f] = FactorModification{p.code.H, p.to_base};
    } else {
      BinMatrix extra = testutil::random_matrix(rng, 1, code.n(), 0.4);
      auto a = augment(code, extra);
      mods[f] = FactorModification{a.code.H, a.to_base};
    }
    auto lift = lift_to_product(base, mods);
    CHECK(verify_total_map(lift.target(), lift.gamma, lift.source()));
  }
}

TEST_CASE("lifted translations move grid logicals by the shift offsets") {
  const auto& entry = ogsc_catalog()[0];  // [9,3,4], lift 3
  auto base = expand_quasi_cyclic(entry.spec, entry.d);
  auto code = hgp(base, base);
  gf2::RowBasis xstab(code.n), zstab(code.n);
  xstab.insert_rows(code.HX);
  zstab.insert_rows(code.HZ);
  const std::size_t l = entry.spec.l;
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) {
      auto aut = translation_automorphism(entry.spec, entry.spec, i, j);
      for (std::size_t x = 0; x < l; ++x) {
        for (std::size_t y = 0; y < l; ++y) {
          std::size_t from = code.grid_index({x, y});
          std::size_t to = code.grid_index({(x + i) % l, (y + j) % l});
          BinVector ix = aut.g1.mul(code.lx[from]);
          BinVector iz = aut.g1.mul(code.lz[from]);
          CHECK(xstab.reduce(ix ^ code.lx[to]).is_zero());
          CHECK(zstab.reduce(iz ^ code.lz[to]).is_zero());
        }
      }
    }
  }
}

}  // TEST_SUITE
