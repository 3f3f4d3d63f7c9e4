#include "doctest.h"

#include <random>
#include <set>
#include <string>

#include "homprod/css.hpp"
#include "homprod/error.hpp"
#include "test_util.hpp"

using namespace homprod;
using gf2::BinMatrix;
using gf2::BinVector;

TEST_SUITE("product") {

TEST_CASE("2D product of two length-3 repetition codes is [[13,1,3]]") {
  auto rep = repetition_code(3);
  auto c = hgp(rep, rep);
  CHECK(c.n == 13);
  CHECK(c.k == 1);
  REQUIRE(c.d.has_value());
  CHECK(*c.d == 3);
  // Block forms of the check matrices.
  BinMatrix i3 = BinMatrix::identity(3), i2 = BinMatrix::identity(2);
  CHECK(c.HX == gf2::hstack({gf2::kron(i3, rep.H), gf2::kron(rep.H.transposed(), i2)}));
  CHECK(c.HZ == gf2::hstack({gf2::kron(rep.H, i3), gf2::kron(i2, rep.H.transposed())}));
  CHECK((c.HX * c.HZ.transposed()).is_zero());
  CHECK(c.qubit_summands[0].grades == std::vector<int>{0, 1});
  CHECK(c.qubit_summands[1].grades == std::vector<int>{1, 0});
}

TEST_CASE("catalog base codes give the advertised quantum parameters") {
  auto base = expand_quasi_cyclic(ogsc_catalog()[0].spec, ogsc_catalog()[0].d);
  auto c = hgp(base, base);
  CHECK(c.n == 117);
  CHECK(c.k == 9);
  REQUIRE(c.d.has_value());
  CHECK(*c.d == 4);
  CHECK(c.grid == std::vector<std::size_t>{3, 3});
}

TEST_CASE("product of two Hamming codes is [[58,16]]") {
  auto ham = hamming_code(3);
  auto c = hgp(ham, ham);
  CHECK(c.n == 58);
  CHECK(c.k == 16);
  CHECK(c.grid == std::vector<std::size_t>{4, 4});
}

TEST_CASE("canonical logicals sit at information-bit crossings") {
  auto c1 = hamming_code(3);
  auto c2 = repetition_code(3);
  auto c = hgp(c1, c2);
  REQUIRE(c.grid == std::vector<std::size_t>{4, 1});
  for (std::size_t i = 0; i < c1.k(); ++i) {
    for (std::size_t j = 0; j < c2.k(); ++j) {
      std::size_t idx = c.grid_index({i, j});
      std::size_t anchor = c.qubit_at(0, {c1.info_bits[i], c2.info_bits[j]});
      CHECK(c.lx[idx].get(anchor));
      CHECK(c.lz[idx].get(anchor));
      // X logical (i,j) is supported on the single column of its j info bit.
      for (auto q : c.lx[idx].support()) {
        CHECK(c.coords[q].summand == 0);
        CHECK(c.coords[q].idx[1] == c2.info_bits[j]);
      }
      // Z logical (i,j) on the single row of its i info bit.
      for (auto q : c.lz[idx].support()) {
        CHECK(c.coords[q].summand == 0);
        CHECK(c.coords[q].idx[0] == c1.info_bits[i]);
      }
    }
  }
}

TEST_CASE("3D product of repetition codes has one-sided metachecks") {
  auto rep = repetition_code(3);
  auto c = homological_3d(rep, rep, rep);
  CHECK(c.n == 51);
  CHECK(c.k == 1);
  REQUIRE(c.MX.has_value());
  CHECK(!c.MZ.has_value());
  CHECK((*c.MX * c.HX).is_zero());
  CHECK((c.HX * c.HZ.transposed()).is_zero());
  CHECK(c.grid == std::vector<std::size_t>{1, 1, 1});
  // Ascending lexicographic summand order at the qubit grade.
  CHECK(c.qubit_summands[0].grades == std::vector<int>{0, 1, 1});
  CHECK(c.qubit_summands[1].grades == std::vector<int>{1, 0, 1});
  CHECK(c.qubit_summands[2].grades == std::vector<int>{1, 1, 0});
}

TEST_CASE("4D product of repetition codes checks its own syndromes") {
  auto rep = repetition_code(3);
  auto c = homological_4d(rep, rep, rep, rep);
  CHECK(c.n == 216);
  CHECK(c.k == 0);
  CHECK(c.HX.rows() == 96);
  CHECK(c.HZ.rows() == 216);
  REQUIRE(c.MX.has_value());
  REQUIRE(c.MZ.has_value());
  CHECK(c.MX->rows() == 16);
  CHECK(c.MZ->rows() == 81);
  CHECK((*c.MX * c.HX).is_zero());
  CHECK((*c.MZ * c.HZ).is_zero());
}

TEST_CASE("random products have vanishing composite boundaries") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<FactorComplex> f;
    for (int i = 0; i < 3; ++i) {
      std::size_t r = 1 + rng() % 3, n = 1 + rng() % 6;
      f.push_back({testutil::random_matrix(rng, r, n, 0.5), (rng() & 1) != 0});
    }
    // total_complex verifies delta^2 = 0 internally; also check CSS slices.
    auto t = total_complex(f);
    for (int g = 1; g < 3; ++g) {
      auto c = css_from_total(t, g, false);
      CHECK((c.HX * c.HZ.transposed()).is_zero());
    }
  }
}

TEST_CASE("block union restricts to the standalone blocks") {
  auto first = repetition_code(3);
  auto a = repetition_code(3), b = hamming_code(3);
  auto u = hgp_union(first, {a, b});
  auto ca = hgp(first, a), cb = hgp(first, b);
  REQUIRE(u.code.n == ca.n + cb.n);
  REQUIRE(u.code.k == ca.k + cb.k);

  std::vector<std::set<std::string>> hx_rows(2), hz_rows(2);
  for (std::size_t r = 0; r < ca.HX.rows(); ++r) hx_rows[0].insert(ca.HX.row(r).to_string());
  for (std::size_t r = 0; r < cb.HX.rows(); ++r) hx_rows[1].insert(cb.HX.row(r).to_string());
  for (std::size_t r = 0; r < ca.HZ.rows(); ++r) hz_rows[0].insert(ca.HZ.row(r).to_string());
  for (std::size_t r = 0; r < cb.HZ.rows(); ++r) hz_rows[1].insert(cb.HZ.row(r).to_string());

  auto pull_back = [&](const BinVector& merged_row, std::size_t block, std::size_t block_n) {
    BinVector local(block_n);
    bool other = false;
    for (auto q : merged_row.support()) {
      if (u.embedding[q].block == block)
        local.set(u.embedding[q].local, true);
      else
        other = true;
    }
    return std::pair{local, other};
  };

  for (std::size_t r = 0; r < u.code.HX.rows(); ++r) {
    BinVector row = u.code.HX.row(r);
    if (row.is_zero()) continue;
    std::size_t blk = u.embedding[row.support()[0]].block;
    auto [local, other] = pull_back(row, blk, blk == 0 ? ca.n : cb.n);
    CHECK(!other);  // each union check touches a single block
    CHECK(hx_rows[blk].count(local.to_string()) == 1);
  }
  for (std::size_t r = 0; r < u.code.HZ.rows(); ++r) {
    BinVector row = u.code.HZ.row(r);
    if (row.is_zero()) continue;
    std::size_t blk = u.embedding[row.support()[0]].block;
    auto [local, other] = pull_back(row, blk, blk == 0 ? ca.n : cb.n);
    CHECK(!other);
    CHECK(hz_rows[blk].count(local.to_string()) == 1);
  }

  // Logicals of the union pull back to the standalone logicals.
  for (std::size_t i = 0; i < first.k(); ++i) {
    for (std::size_t blk = 0; blk < 2; ++blk) {
      const CssCode& sc = blk == 0 ? ca : cb;
      for (std::size_t j = 0; j < (blk == 0 ? a.k() : b.k()); ++j) {
        std::size_t idx = u.code.grid_index({i, u.merged_col(blk, j)});
        auto [lx, ox] = pull_back(u.code.lx[idx], blk, sc.n);
        auto [lz, oz] = pull_back(u.code.lz[idx], blk, sc.n);
        CHECK(!ox);
        CHECK(!oz);
        CHECK(lx == sc.lx[sc.grid_index({i, j})]);
        CHECK(lz == sc.lz[sc.grid_index({i, j})]);
      }
    }
  }
}

}  // TEST_SUITE
