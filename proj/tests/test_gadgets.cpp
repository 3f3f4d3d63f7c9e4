#include <algorithm>
#include <set>

#include "doctest.h"
#include "homprod/gadgets.hpp"
#include "homprod/verify.hpp"

using namespace homprod;

namespace {

BlockSpec hamming_block() {
  static const BlockSpec b = make_block(hamming_code(3), hamming_code(3));
  return b;
}

// Smallest square quasi-cyclic block: a [4,2,2] one-generator systematic
// circulant code, product [[20,4,2]] on a 2x2 logical grid.
BlockSpec toy_qc_block() {
  static const QuasiCyclicSpec spec{2, {{"1+x", "1"}}, {"1", "1+x"}};
  static const BlockSpec b = make_block(spec, spec, 2);
  return b;
}

void require_certified(GadgetSchedule& s) {
  auto rep = certify_schedule(s);
  INFO(s.name << ": " << rep.summary());
  REQUIRE(rep.certified);
}

}  // namespace

TEST_SUITE_BEGIN("gadgets");

TEST_CASE("horizontal rounds measure whole-edge row products") {
  BlockSpec ham = hamming_block();

  SUBCASE("a three-column hyperedge, all four rows") {
    auto s = horizontal_ppms(ham, {{0, 2, 3}});
    CHECK(s.effect.measured.size() == 4);
    for (const auto& p : s.effect.measured) CHECK(p.factors.size() == 3);
    require_certified(s);
  }
  SUBCASE("two singleton edges pin single columns") {
    auto s = horizontal_ppms(ham, {{1}, {3}});
    CHECK(s.effect.measured.size() == 8);
    require_certified(s);
  }
  SUBCASE("the empty family measures nothing") {
    auto s = horizontal_ppms(ham, {});
    CHECK(s.effect.measured.empty());
    require_certified(s);
  }
}

TEST_CASE("grid rounds: Z basis") {
  BlockSpec ham = hamming_block();

  SUBCASE("single cell") {
    auto s = grid_ppms(ham, 'Z', {{1}}, {{2}});
    REQUIRE(s.effect.measured.size() == 1);
    CHECK(s.effect.measured[0].factors.size() == 1);
    require_certified(s);
  }
  SUBCASE("rectangle pair x pair") {
    auto s = grid_ppms(ham, 'Z', {{0, 1}}, {{0, 1}});
    REQUIRE(s.effect.measured.size() == 1);
    CHECK(s.effect.measured[0].factors.size() == 4);
    require_certified(s);
  }
  SUBCASE("row chains longer than two split into adjacent pairs") {
    auto s = grid_ppms(ham, 'Z', {{0, 1, 3}}, {{2}});
    REQUIRE(s.effect.measured.size() == 2);  // (0,1) and (1,3) pairs
    for (const auto& p : s.effect.measured) CHECK(p.factors.size() == 2);
    require_certified(s);
  }
  SUBCASE("column edges are measured whole") {
    auto s = grid_ppms(ham, 'Z', {{2}}, {{0, 1, 2}});
    REQUIRE(s.effect.measured.size() == 1);
    CHECK(s.effect.measured[0].factors.size() == 3);
    require_certified(s);
  }
  SUBCASE("several disjoint edges in one round") {
    auto s = grid_ppms(ham, 'Z', {{0}, {1, 2}}, {{0, 3}, {1}});
    CHECK(s.effect.measured.size() == 4);
    require_certified(s);
  }
}

TEST_CASE("grid rounds: X basis mirrors the Z construction") {
  BlockSpec ham = hamming_block();

  SUBCASE("single cell") {
    auto s = grid_ppms(ham, 'X', {{3}}, {{0}});
    REQUIRE(s.effect.measured.size() == 1);
    require_certified(s);
  }
  SUBCASE("row edges are measured whole, column chains split") {
    auto s = grid_ppms(ham, 'X', {{0, 2}}, {{0, 1, 3}});
    REQUIRE(s.effect.measured.size() == 2);
    for (const auto& p : s.effect.measured) CHECK(p.factors.size() == 4);
    require_certified(s);
  }
  SUBCASE("full-grid rectangle") {
    auto s = grid_ppms(ham, 'X', {{0, 1, 2, 3}}, {{0, 1, 2, 3}});
    require_certified(s);
  }
}

TEST_CASE("a wrong declaration is rejected") {
  BlockSpec ham = hamming_block();
  auto s = grid_ppms(ham, 'Z', {{0, 1}}, {{0, 1}});
  s.effect.measured[0].factors.pop_back();  // drop one letter from the product
  auto rep = certify_schedule(s);
  CHECK_FALSE(rep.certified);
}

TEST_CASE("translation permutes the logical grid cyclically") {
  BlockSpec toy = toy_qc_block();
  for (auto [i, j] : {std::pair<std::size_t, std::size_t>{0, 1}, {1, 0}, {1, 1}}) {
    auto s = translation_gadget(toy, i, j);
    require_certified(s);
  }
}

TEST_CASE("fold gadgets act as transversal H-swap and folded S") {
  SUBCASE("H-swap on the Hamming product") {
    auto s = fold_hswap_gadget(hamming_block());
    require_certified(s);
  }
  SUBCASE("folded S on the Hamming product") {
    auto s = fold_czs_gadget(hamming_block());
    require_certified(s);
  }
  SUBCASE("both on the quasi-cyclic block") {
    auto s = fold_hswap_gadget(toy_qc_block());
    require_certified(s);
    auto t = fold_czs_gadget(toy_qc_block());
    require_certified(t);
  }
}

TEST_CASE("selective teleport moves chosen cells onto a fresh block") {
  BlockSpec ham = hamming_block();
  SUBCASE("one cell") {
    auto s = selective_teleport(ham, {{2, 1}});
    require_certified(s);
  }
  SUBCASE("an L of cells grouped by column") {
    auto s = selective_teleport(ham, {{0, 0}, {2, 0}, {1, 3}});
    require_certified(s);
  }
  SUBCASE("a full row grouped by row") {
    auto s = selective_teleport(ham, {{1, 0}, {1, 1}, {1, 2}, {1, 3}});
    require_certified(s);
  }
}

TEST_CASE("cyclic shift advances every logical by one grid position") {
  auto s = cyclic_shift(toy_qc_block());
  require_certified(s);
}

TEST_CASE("diagonal X measurement is non-destructive") {
  auto s = diagonal_x_measure(hamming_block());
  CHECK(s.effect.measured.size() == 4);
  require_certified(s);
}

TEST_CASE("measurement-based cnot in all three helper alignments") {
  BlockSpec ham = hamming_block();
  SUBCASE("corner helper") {
    auto s = mb_cnot(ham, {0, 1}, {2, 3});
    require_certified(s);
  }
  SUBCASE("control and target share a column") {
    auto s = mb_cnot(ham, {0, 2}, {3, 2});
    require_certified(s);
  }
  SUBCASE("control and target share a row") {
    auto s = mb_cnot(ham, {1, 0}, {1, 2});
    require_certified(s);
  }
  SUBCASE("corner helper on the 2x2 block") {
    auto s = mb_cnot(toy_qc_block(), {0, 0}, {1, 1});
    require_certified(s);
  }
}

TEST_CASE("ghz preparation leaves the cat group on a fresh block") {
  SUBCASE("2x2") {
    auto s = ghz_state(toy_qc_block());
    CHECK(s.stats["gppm_rounds"] == 2);
    require_certified(s);
  }
  SUBCASE("1x1 degenerates to a plus state") {
    auto s = ghz_state(make_block(repetition_code(3), repetition_code(3)));
    CHECK(s.stats["gppm_rounds"] == 0);
    require_certified(s);
  }
}

TEST_CASE("i-state preparation fills a block with Y eigenstates") {
  auto s = i_state_prep(toy_qc_block());
  CHECK(s.effect.residues.size() == 4);
  require_certified(s);
}

TEST_CASE("teleported S applies S exactly on the target cells") {
  BlockSpec toy = toy_qc_block();
  SUBCASE("single diagonal target") {
    auto s = teleported_s(toy, {{0, 0}});
    require_certified(s);
  }
  SUBCASE("off-diagonal pair") {
    auto s = teleported_s(toy, {{0, 1}, {1, 0}});
    require_certified(s);
  }
  SUBCASE("no targets: plain teleportation") {
    auto s = teleported_s(toy, {});
    require_certified(s);
  }
  SUBCASE("all cells") {
    auto s = teleported_s(toy, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    require_certified(s);
  }
}

TEST_CASE("parallel hadamard cancels the fold transpose") {
  auto s = parallel_hadamard(toy_qc_block());
  require_certified(s);
}

TEST_CASE("cube rounds measure box products in both bases") {
  ClassicalCode par =
      make_code(gf2::BinMatrix::from_rows({gf2::BinVector::from_bits({1, 1, 1})}), 3);
  ClassicalCode ham = hamming_code(3);
  CubeSpec cube = make_cube(par, par, ham);  // logical grid 2 x 2 x 4

  SUBCASE("Z basis: x,y exact, z chains") {
    auto s = cube_ppms(cube, 'Z', {{0, 1}}, {{1}}, {{0, 2, 3}});
    REQUIRE(s.effect.measured.size() == 2);
    for (const auto& p : s.effect.measured) CHECK(p.factors.size() == 4);
    require_certified(s);
  }
  SUBCASE("X basis: x,y chain, z exact") {
    auto s = cube_ppms(cube, 'X', {{0, 1}}, {{0}, {1}}, {{1, 3}});
    REQUIRE(s.effect.measured.size() == 2);
    for (const auto& p : s.effect.measured) CHECK(p.factors.size() == 4);
    require_certified(s);
  }
  SUBCASE("single box on the cubed repetition code") {
    CubeSpec rep = make_cube(repetition_code(3), repetition_code(3), repetition_code(3));
    auto s = cube_ppms(rep, 'Z', {{0}}, {{0}}, {{0}});
    REQUIRE(s.effect.measured.size() == 1);
    require_certified(s);
    auto t = cube_ppms(rep, 'X', {{0}}, {{0}}, {{0}});
    require_certified(t);
  }
}

TEST_SUITE_END();
