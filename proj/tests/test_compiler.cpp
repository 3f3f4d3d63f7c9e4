#include <random>
#include <set>

#include "doctest.h"
#include "homprod/compiler.hpp"
#include "homprod/verify.hpp"

using namespace homprod;

namespace {

// Minimal square quasi-cyclic blocks: one-generator systematic circulant
// factors of distance 2, giving [[20,4,2]] on a 2x2 grid and [[45,9,2]] on
// a 3x3 grid.
BlockSpec toy2() {
  static const QuasiCyclicSpec spec{2, {{"1+x", "1"}}, {"1", "1+x"}};
  static const BlockSpec b = make_block(spec, spec, 2);
  return b;
}

BlockSpec toy3() {
  static const QuasiCyclicSpec spec{3, {{"x", "1"}}, {"1", "x^2"}};
  static const BlockSpec b = make_block(spec, spec, 2);
  return b;
}

LogicalCircuit circuit_on(const BlockSpec& b, std::vector<LogicalGate> gates) {
  return {b.rows(), b.cols(), std::move(gates)};
}

LogicalCircuit random_layer(const BlockSpec& b, std::size_t n_gates, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::uint32_t> rr(0, static_cast<std::uint32_t>(b.rows()) - 1);
  std::uniform_int_distribution<std::uint32_t> cc(0, static_cast<std::uint32_t>(b.cols()) - 1);
  std::uniform_int_distribution<int> kind(0, 2);
  LogicalCircuit c{b.rows(), b.cols(), {}};
  for (std::size_t i = 0; i < n_gates; ++i) {
    Cell a{rr(rng), cc(rng)};
    switch (kind(rng)) {
      case 0: c.gates.push_back(gate_h(a)); break;
      case 1: c.gates.push_back(gate_s(a)); break;
      default: {
        Cell t{rr(rng), cc(rng)};
        while (t.row == a.row && t.col == a.col) t = {rr(rng), cc(rng)};
        c.gates.push_back(gate_cnot(a, t));
        break;
      }
    }
  }
  return c;
}

CompiledLayer check_layer(const BlockSpec& b, const LogicalCircuit& c, bool engine,
                          CompilerConfig cfg = {}) {
  CompiledLayer layer = compile_layer(b, c, cfg);
  CHECK(equivalent_on_data(layer, c));
  if (engine) {
    auto rep = certify_schedule(layer.schedule);
    INFO(layer.schedule.name << ": " << rep.summary());
    CHECK(rep.certified);
  }
  return layer;
}

}  // namespace

TEST_SUITE_BEGIN("compiler");

TEST_CASE("CNOT placement classes and the partition") {
  CHECK(classify_cnot({0, 0}, {2, 0}) == CnotClass::Aligned);
  CHECK(classify_cnot({0, 0}, {0, 2}) == CnotClass::Aligned);
  CHECK(classify_cnot({1, 0}, {0, 2}) == CnotClass::AntiDiagonal);
  CHECK(classify_cnot({0, 2}, {1, 0}) == CnotClass::AntiDiagonal);
  CHECK(classify_cnot({0, 0}, {1, 2}) == CnotClass::MainDiagonal);
  CHECK(classify_cnot({1, 2}, {0, 0}) == CnotClass::MainDiagonal);

  LogicalCircuit c{3, 3, {gate_cnot({0, 0}, {2, 0}), gate_cnot({1, 0}, {0, 2}),
                          gate_cnot({0, 0}, {1, 2}), gate_h({1, 1})}};
  CnotPartition p = classify_cnots(c);
  CHECK(p.total == 3);
  CHECK(p.aligned == 1);
  CHECK(p.anti_diagonal == 1);
  CHECK(p.main_diagonal == 1);
  CHECK(p.aligned + p.main_diagonal + p.anti_diagonal == p.total);
}

TEST_CASE("empty layer compiles to the identity channel") {
  auto layer = check_layer(toy2(), circuit_on(toy2(), {}), /*engine=*/true);
  CHECK(layer.carrier == "D");
  CHECK(layer.schedule.steps.empty());
}

TEST_CASE("single staged CNOTs certify in every placement") {
  BlockSpec b = toy2();
  SUBCASE("main diagonal") {
    check_layer(b, circuit_on(b, {gate_cnot({0, 0}, {1, 1})}), true);
  }
  SUBCASE("anti diagonal") {
    check_layer(b, circuit_on(b, {gate_cnot({1, 0}, {0, 1})}), true);
  }
  SUBCASE("same column") {
    check_layer(b, circuit_on(b, {gate_cnot({0, 0}, {1, 0})}), true);
  }
  SUBCASE("same row, control hops to a spare row") {
    check_layer(b, circuit_on(b, {gate_cnot({0, 0}, {0, 1})}), true);
  }
  SUBCASE("reversed orientation") {
    check_layer(b, circuit_on(b, {gate_cnot({1, 1}, {0, 0})}), true);
  }
}

TEST_CASE("single-cell passes certify") {
  BlockSpec b = toy2();
  SUBCASE("S on one cell") {
    check_layer(b, circuit_on(b, {gate_s({1, 0})}), true);
  }
  SUBCASE("H on every cell") {
    check_layer(b, circuit_on(b, {gate_h({0, 0}), gate_h({0, 1}), gate_h({1, 0}),
                                  gate_h({1, 1})}),
                true);
  }
  SUBCASE("H on a subset sandwiches through a companion") {
    check_layer(b, circuit_on(b, {gate_h({0, 1})}), true);
  }
  SUBCASE("mixed disjoint sublayer") {
    check_layer(b, circuit_on(b, {gate_s({0, 0}), gate_h({1, 1}),
                                  gate_cnot({1, 0}, {0, 1})}),
                true);
  }
  SUBCASE("overlapping gates split into ordered sublayers") {
    auto layer = check_layer(
        b, circuit_on(b, {gate_h({0, 0}), gate_cnot({0, 0}, {1, 1})}), true);
    CHECK(layer.schedule.stats.at("sublayers") == 2);
  }
}

TEST_CASE("corner clusters: sparse passes and the folded-CZ path") {
  BlockSpec b = toy3();
  // Two CNOTs sharing corner (0,0): within the default threshold they run
  // as two sparse passes, under a forced threshold of one they fold.
  LogicalCircuit c = circuit_on(
      b, {gate_cnot({1, 0}, {0, 1}), gate_cnot({2, 0}, {0, 2})});

  SUBCASE("sparse: one pass per cluster member") {
    auto layer = check_layer(b, c, /*engine=*/true);
    CHECK(layer.schedule.stats.at("cnot_passes") == 2);
    CHECK(layer.schedule.stats.count("dense_clusters") == 0);
  }
  SUBCASE("dense: translate, symmetrize, dress, fold") {
    CompilerConfig cfg;
    cfg.dense_threshold = 1;
    auto layer = check_layer(b, c, /*engine=*/true, cfg);
    CHECK(layer.schedule.stats.at("dense_clusters") == 1);
    CHECK(layer.schedule.stats.count("cnot_passes") == 0);
  }
}

TEST_CASE("disjoint CNOTs share a pass but stage on distinct cells") {
  BlockSpec b = toy3();
  LogicalCircuit c = circuit_on(
      b, {gate_cnot({1, 0}, {0, 1}), gate_cnot({2, 1}, {1, 2})});
  auto layer = check_layer(b, c, /*engine=*/true);
  CHECK(layer.schedule.stats.at("cnot_passes") == 1);
  CHECK(layer.schedule.stats.at("staged_cnots") == 2);
}

TEST_CASE("random layers match the tableau reference") {
  BlockSpec b = toy3();
  for (std::uint32_t seed = 0; seed < 10; ++seed) {
    LogicalCircuit c = random_layer(b, 12, 7000 + seed);
    CAPTURE(seed);
    check_layer(b, c, /*engine=*/false);
  }
}

TEST_CASE("one random layer certifies end to end") {
  BlockSpec b = toy2();
  LogicalCircuit c = random_layer(b, 8, 41);
  check_layer(b, c, /*engine=*/true);
}

TEST_CASE("logical replay: GHZ ladder") {
  BlockSpec b = toy3();
  GhzResult g = ghz_schedule(b);
  CHECK(g.schedule.stats.at("gppm_rounds") == 4);
  CHECK(g.schedule.stats.at("preps") == 1);
  // d + one coupling round of four cycles per grid round
  CHECK(g.schedule.total_cycles == 2 + 16);

  Tableau t = simulate_logical(g.replay);
  std::size_t k = b.code->k;
  std::vector<Pauli> expected;
  Pauli all_x = Pauli::identity(k);
  for (std::size_t q = 0; q < k; ++q) all_x.x.flip(q);
  expected.push_back(all_x);
  for (std::size_t q = 0; q + 1 < k; ++q) {
    Pauli zz = Pauli::identity(k);
    zz.z.flip(q);
    zz.z.flip(q + 1);
    expected.push_back(zz);
  }
  CHECK(Tableau::same_group(t.stabilizers(), expected, /*up_to_sign=*/false));

  auto rep = certify_schedule(g.schedule);
  INFO(rep.summary());
  CHECK(rep.certified);
}

TEST_CASE("magic-state rounds: diagonal reactivity is cheaper than full") {
  BlockSpec b = toy3();
  GadgetSchedule diag = msd_round_schedule(b, ReactiveMode::Diagonal);
  GadgetSchedule full = msd_round_schedule(b, ReactiveMode::Full);
  CHECK(diag.stats.at("rotations") == 8);
  CHECK(diag.stats.at("reactive_preps") == 8);
  CHECK(diag.total_cycles > 0);
  CHECK(full.total_cycles > diag.total_cycles);
}

TEST_CASE("magic-state consumption schedule") {
  BlockSpec b = toy2();
  GadgetSchedule s = msi_schedule(b, ReactiveMode::Diagonal);
  CHECK(s.stats.at("joint_products") == 3);
  CHECK(s.stats.at("reactive_pairs") == 3);
  GadgetSchedule full = msi_schedule(b, ReactiveMode::Full);
  CHECK(full.total_cycles >= s.total_cycles);
}

TEST_CASE("adder: parallel head and a k-round reactive tail") {
  BlockSpec b = toy3();
  GadgetSchedule s = adder_schedule(b);
  std::size_t k = b.code->k;
  CHECK(s.stats.at("temporary_ands") == static_cast<int>(k - 1));
  CHECK(s.stats.at("shifts") == 1);
  CHECK(s.stats.at("sequential_code_cycles") == static_cast<int>(k) * 2);
  CHECK(s.stats.at("parallel_code_cycles") > 0);
  CHECK(s.total_cycles == s.stats.at("parallel_code_cycles") +
                              s.stats.at("sequential_code_cycles"));

  BlockSpec single = make_block(repetition_code(3), repetition_code(3));
  GadgetSchedule degenerate = adder_schedule(single);
  CHECK(degenerate.stats.at("temporary_ands") == 0);
  CHECK(degenerate.stats.at("shifts") == 0);
}

TEST_CASE("resource report compares the three schemes") {
  BlockSpec b = toy2();
  LogicalCircuit c = circuit_on(b, {gate_cnot({0, 0}, {1, 1}), gate_s({0, 1})});
  CompiledLayer layer = compile_layer(b, c);
  CostReport r = cost_report(b, layer);
  CHECK(r.k == 4);
  CHECK(r.d == 2);
  REQUIRE(r.lines.size() == 3);
  CHECK(r.lines[0].scheme == "surface-lattice-surgery");
  CHECK(r.lines[1].scheme == "hgp-lattice-surgery");
  CHECK(r.lines[2].scheme == "hgp-gppm");
  CHECK(r.lines[2].space_n >= b.code->n);
  CHECK(r.lines[2].time_n == layer.schedule.total_cycles);
  CHECK(r.to_text().find("hgp-gppm") != std::string::npos);
}

TEST_SUITE_END();
