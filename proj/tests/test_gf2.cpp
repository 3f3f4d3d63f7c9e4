#include "doctest.h"

#include <random>

#include "homprod/gf2.hpp"
#include "test_util.hpp"

using namespace homprod;
using gf2::BinMatrix;
using gf2::BinVector;
using gf2::PivotOrder;

TEST_SUITE("gf2") {

TEST_CASE("rank of the 3-cycle parity matrix is 2") {
  BinMatrix m = BinMatrix::from_dense({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  CHECK(gf2::rank(m) == 2);
}

TEST_CASE("rref leftmost vs rightmost pivot preference") {
  BinMatrix m = BinMatrix::from_dense({{1, 1, 0, 1}, {0, 1, 1, 1}});
  auto left = gf2::rref(m, PivotOrder::Leftmost);
  CHECK(left.pivots == std::vector<std::size_t>{0, 1});
  auto right = gf2::rref(m, PivotOrder::Rightmost);
  CHECK(right.pivots == std::vector<std::size_t>{3, 2});
  CHECK(left.rank == 2);
  CHECK(right.rank == 2);
  CHECK(left.transform * m == left.R);
  CHECK(right.transform * m == right.R);
}

TEST_CASE("kernel of the length-3 repetition check is the all-ones word") {
  BinMatrix h = BinMatrix::from_dense({{1, 1, 0}, {0, 1, 1}});
  BinMatrix k = gf2::kernel_basis(h);
  REQUIRE(k.rows() == 1);
  CHECK(k.row(0) == BinVector::from_bits({1, 1, 1}));
}

TEST_CASE("solve returns a witness or reports inconsistency") {
  BinMatrix m = BinMatrix::from_dense({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  // (1,1,0) = column sums of x=(1,0,0)+... : m*(1,1,0)^T = (0,1,1).
  auto good = gf2::solve(m, BinVector::from_bits({0, 1, 1}));
  REQUIRE(good.has_value());
  CHECK(m.mul(*good) == BinVector::from_bits({0, 1, 1}));
  // Rows of m sum to zero, so any consistent b must have even weight.
  auto bad = gf2::solve(m, BinVector::from_bits({1, 0, 0}));
  CHECK(!bad.has_value());
}

TEST_CASE("complementary_space completes the row space") {
  BinMatrix m = BinMatrix::from_dense({{1, 1, 0, 0}, {0, 0, 1, 1}});
  BinMatrix c = gf2::complementary_space(m);
  CHECK(c.rows() == 2);
  CHECK(gf2::rank(gf2::vstack({m, c})) == 4);
}

TEST_CASE("seeded properties: rref, kernel, solve, complement") {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t rows = 1 + rng() % 12, cols = 1 + rng() % 140;
    BinMatrix m = testutil::random_matrix(rng, rows, cols, 0.3);
    auto order = (trial % 2) ? PivotOrder::Leftmost : PivotOrder::Rightmost;
    auto rr = gf2::rref(m, order);
    CHECK(rr.transform * m == rr.R);
    CHECK(rr.rank == gf2::rank(m));

    BinMatrix k = gf2::kernel_basis(m, order);
    CHECK(k.rows() == cols - rr.rank);
    if (k.rows() > 0) CHECK((m * k.transposed()).is_zero());
    CHECK(gf2::rank(k) == k.rows());

    BinVector x = testutil::random_vector(rng, cols);
    BinVector b = m.mul(x);
    auto sol = gf2::solve(m, b);
    REQUIRE(sol.has_value());
    CHECK(m.mul(*sol) == b);

    BinMatrix comp = gf2::complementary_space(m);
    CHECK(comp.rows() == cols - rr.rank);
    CHECK(gf2::rank(gf2::vstack({m, comp})) == cols);
  }
}

TEST_CASE("kernel basis is systematic on the free columns") {
  std::mt19937_64 rng(7);
  BinMatrix m = testutil::random_matrix(rng, 5, 12, 0.4);
  auto rr = gf2::rref(m, PivotOrder::Rightmost);
  std::vector<bool> is_pivot(12, false);
  for (auto p : rr.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < 12; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  BinMatrix k = gf2::kernel_basis(m, PivotOrder::Rightmost);
  REQUIRE(k.rows() == free_cols.size());
  for (std::size_t i = 0; i < k.rows(); ++i)
    for (std::size_t j = 0; j < free_cols.size(); ++j)
      CHECK(k.get(i, free_cols[j]) == (i == j));
}

TEST_CASE("kron acts factorwise on vectors and matches the serial reference") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t ra = 1 + rng() % 6, ca = 1 + rng() % 9;
    std::size_t rb = 1 + rng() % 6, cb = 1 + rng() % 9;
    BinMatrix a = testutil::random_matrix(rng, ra, ca);
    BinMatrix b = testutil::random_matrix(rng, rb, cb);
    BinMatrix kr = gf2::kron(a, b);
    CHECK(kr == gf2::reference::kron(a, b));
    BinVector x = testutil::random_vector(rng, ca), y = testutil::random_vector(rng, cb);
    // x (x) y at packed index i*cb + j.
    BinVector xy(ca * cb);
    for (std::size_t i = 0; i < ca; ++i)
      for (std::size_t j = 0; j < cb; ++j)
        if (x.get(i) && y.get(j)) xy.set(i * cb + j, true);
    BinVector ax = a.mul(x), by = b.mul(y);
    BinVector axby(ra * rb);
    for (std::size_t i = 0; i < ra; ++i)
      for (std::size_t j = 0; j < rb; ++j)
        if (ax.get(i) && by.get(j)) axby.set(i * rb + j, true);
    CHECK(kr.mul(xy) == axby);
  }
}

TEST_CASE("multiply matches the serial reference and vector action") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t ra = 1 + rng() % 90, n = 1 + rng() % 90, cb = 1 + rng() % 90;
    BinMatrix a = testutil::random_matrix(rng, ra, n, 0.3);
    BinMatrix b = testutil::random_matrix(rng, n, cb, 0.3);
    BinMatrix c = a * b;
    CHECK(c == gf2::reference::multiply(a, b));
    BinVector x = testutil::random_vector(rng, cb);
    CHECK(c.mul(x) == a.mul(b.mul(x)));
  }
}

TEST_CASE("transpose is an involution and distributes over stacking") {
  std::mt19937_64 rng(17);
  BinMatrix a = testutil::random_matrix(rng, 9, 33);
  CHECK(a.transposed().transposed() == a);
  BinMatrix b = testutil::random_matrix(rng, 9, 12);
  CHECK(gf2::hstack({a, b}).transposed() == gf2::vstack({a.transposed(), b.transposed()}));
}

TEST_CASE("vector slice/concat/xor_shifted round-trip") {
  std::mt19937_64 rng(19);
  BinVector a = testutil::random_vector(rng, 70), b = testutil::random_vector(rng, 75);
  BinVector c = BinVector::concat(a, b);
  CHECK(c.slice(0, 70) == a);
  CHECK(c.slice(70, 75) == b);
  BinVector d(145);
  d.xor_shifted(a, 0);
  d.xor_shifted(b, 70);
  CHECK(d == c);
  CHECK(c.weight() == a.weight() + b.weight());
}

TEST_CASE("row basis span equality is order and presentation independent") {
  std::mt19937_64 rng(23);
  BinMatrix m = testutil::random_matrix(rng, 8, 40, 0.3);
  gf2::RowBasis b1(40), b2(40);
  b1.insert_rows(m);
  // Present the same span via random row combinations, inserted in reverse.
  std::vector<BinVector> combos;
  for (int i = 0; i < 20; ++i) {
    BinVector v(40);
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (rng() & 1) v ^= m.row(r);
    combos.push_back(v);
  }
  for (auto it = combos.rbegin(); it != combos.rend(); ++it) b2.insert(*it);
  // Force b2 to reach the full span.
  b2.insert_rows(m);
  CHECK(gf2::RowBasis::same_span(b1, b2));
  // A proper subspace is rejected.
  gf2::RowBasis b3(40);
  for (std::size_t r = 0; r + 1 < m.rows(); ++r) b3.insert(m.row(r));
  if (b3.rank() < b1.rank()) CHECK(!gf2::RowBasis::same_span(b1, b3));
  // Membership of reductions.
  BinVector v = m.row(0) ^ m.row(3) ^ m.row(5);
  CHECK(b1.contains(v));
  CHECK(b1.reduce(v).is_zero());
}

}  // TEST_SUITE
