// Certification engine oracles: tiny schedules whose determined groups are
// worked out by hand, plus failure cases that a sound certifier must reject.

#include <memory>

#include "doctest.h"
#include "homprod/css.hpp"
#include "homprod/classical.hpp"
#include "homprod/schedule.hpp"
#include "homprod/verify.hpp"

using namespace homprod;
using gf2::BinMatrix;
using gf2::BinVector;

namespace {

// A block of b bare qubits: no checks, every qubit logical.
std::shared_ptr<CssCode> bare(std::size_t nq) {
  auto c = std::make_shared<CssCode>();
  c->n = nq;
  c->k = nq;
  c->HX = BinMatrix(0, nq);
  c->HZ = BinMatrix(0, nq);
  for (std::size_t i = 0; i < nq; ++i) {
    c->lx.push_back(BinVector::unit(nq, i));
    c->lz.push_back(BinVector::unit(nq, i));
  }
  return c;
}

// [[2,1]] with X0X1 as the only check: |0_L> is a Bell pair.
std::shared_ptr<CssCode> bell_pair_code() {
  auto c = std::make_shared<CssCode>();
  c->n = 2;
  c->k = 1;
  c->HX = BinMatrix::from_dense({{1, 1}});
  c->HZ = BinMatrix(0, 2);
  c->lx = {BinVector::unit(2, 0)};
  c->lz = {BinVector::from_bits({1, 1})};
  return c;
}

std::shared_ptr<CssCode> surface13() {
  auto rep3 = repetition_code(3);
  return std::make_shared<CssCode>(hgp(rep3, rep3));
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> full_mask(std::size_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> m;
  for (std::uint32_t q = 0; q < n; ++q) m.emplace_back(q, q);
  return m;
}

GadgetStep prep(StepKind kind, std::string block, bool background = false) {
  GadgetStep s;
  s.kind = kind;
  s.block = std::move(block);
  s.background = background;
  return s;
}

GadgetStep cnot(std::string control, std::string target,
                std::vector<std::pair<std::uint32_t, std::uint32_t>> mask) {
  GadgetStep s;
  s.kind = StepKind::TransversalCNOT;
  s.control = std::move(control);
  s.block = std::move(target);
  s.mask = std::move(mask);
  return s;
}

GadgetStep measure(StepKind kind, std::string block) {
  GadgetStep s;
  s.kind = kind;
  s.block = std::move(block);
  return s;
}

}  // namespace

TEST_SUITE_BEGIN("engine");

TEST_CASE("bell ancilla extracts a two-qubit Z parity and keeps XX coherent") {
  GadgetSchedule s;
  s.name = "zz-parity";
  s.blocks["A"] = {bell_pair_code(), false};
  s.blocks["D"] = {bare(2), true};
  s.steps = {
      prep(StepKind::PrepZ, "A", true),
      cnot("D", "A", full_mask(2)),
      measure(StepKind::MeasureZ, "A"),
  };
  s.effect.measured = {PauliProductRef{{{"D", 0, 'Z'}, {"D", 1, 'Z'}}}};

  auto rep = certify_schedule(s);
  CAPTURE(rep.summary());
  CHECK(rep.certified);
  CHECK(s.certified);

  compute_cost(s, 3);
  CHECK(s.total_cycles == 3 + 2);  // ancilla ready at d, then CNOT + measure
  CHECK(s.logical_cycles == 2);
}

TEST_CASE("underdeclared parity measurement is rejected") {
  GadgetSchedule s;
  s.blocks["A"] = {bell_pair_code(), false};
  s.blocks["D"] = {bare(2), true};
  s.steps = {
      prep(StepKind::PrepZ, "A", true),
      cnot("D", "A", full_mask(2)),
      measure(StepKind::MeasureZ, "A"),
  };
  // Lie: claim nothing was measured.
  auto rep = certify_schedule(s);
  CHECK_FALSE(rep.certified);
  CHECK_FALSE(rep.missing.empty());  // X frames declared alive but dead
  CHECK_FALSE(rep.extra.empty());    // undeclared determined ZZ content
}

TEST_CASE("separate single-qubit copies do not certify as a joint parity") {
  GadgetSchedule s;
  s.blocks["A0"] = {bare(1), false};
  s.blocks["A1"] = {bare(1), false};
  s.blocks["D"] = {bare(2), true};
  s.steps = {
      prep(StepKind::PrepZ, "A0", true),
      prep(StepKind::PrepZ, "A1", true),
      cnot("D", "A0", {{0, 0}}),
      cnot("D", "A1", {{1, 0}}),
      measure(StepKind::MeasureZ, "A0"),
      measure(StepKind::MeasureZ, "A1"),
  };
  s.effect.measured = {PauliProductRef{{{"D", 0, 'Z'}, {"D", 1, 'Z'}}}};
  auto rep = certify_schedule(s);
  CHECK_FALSE(rep.certified);   // X0X1 does not survive, Z0 and Z1 are
  CHECK_FALSE(rep.missing.empty());  // individually determined
  CHECK_FALSE(rep.extra.empty());
}

TEST_CASE("transversal teleport moves the frame to the far bell leg") {
  for (bool coded : {false, true}) {
    std::shared_ptr<CssCode> code = coded ? surface13() : bare(1);
    GadgetSchedule s;
    s.name = "teleport";
    s.blocks["B"] = {code, false};
    s.blocks["C"] = {code, false};
    s.blocks["D"] = {code, true};
    s.steps = {
        prep(StepKind::PrepX, "B", true),
        prep(StepKind::PrepZ, "C", true),
        cnot("B", "C", full_mask(code->n)),  // logical bell pair (B, C)
        cnot("D", "B", full_mask(code->n)),  // bell measurement of (D, B)
        measure(StepKind::MeasureX, "D"),
        measure(StepKind::MeasureZ, "B"),
    };
    for (std::uint32_t j = 0; j < code->k; ++j) {
      s.effect.map.push_back({{"D", j, 'X'}, {{"C", j, 'X'}}});
      s.effect.map.push_back({{"D", j, 'Z'}, {{"C", j, 'Z'}}});
    }
    auto rep = certify_schedule(s);
    CAPTURE(coded);
    CAPTURE(rep.summary());
    CHECK(rep.certified);
  }
}

TEST_CASE("teleport with a wrong declared destination letter fails") {
  auto code = bare(1);
  GadgetSchedule s;
  s.blocks["B"] = {code, false};
  s.blocks["C"] = {code, false};
  s.blocks["D"] = {code, true};
  s.steps = {
      prep(StepKind::PrepX, "B", true),
      prep(StepKind::PrepZ, "C", true),
      cnot("B", "C", full_mask(1)),
      cnot("D", "B", full_mask(1)),
      measure(StepKind::MeasureX, "D"),
      measure(StepKind::MeasureZ, "B"),
  };
  s.effect.map.push_back({{"D", 0, 'X'}, {{"C", 0, 'Z'}}});  // wrong image
  s.effect.map.push_back({{"D", 0, 'Z'}, {{"C", 0, 'Z'}}});
  auto rep = certify_schedule(s);
  CHECK_FALSE(rep.certified);
}

TEST_CASE("companion-|i> teleportation implements S: X to Y, Z to Z") {
  GadgetSchedule s;
  s.name = "teleported-s";
  s.blocks["A"] = {bare(1), false};
  s.blocks["D"] = {bare(1), true};

  GadgetStep pc = prep(StepKind::PrepContent, "A", true);
  PrepRow y;
  y.x = BinVector::from_bits({1});
  y.z = BinVector::from_bits({1});
  pc.content = {y};
  s.steps = {
      pc,
      cnot("A", "D", full_mask(1)),  // companion controls
      measure(StepKind::MeasureZ, "D"),
  };
  s.effect.map.push_back({{"D", 0, 'X'}, {{"A", 0, 'Y'}}});
  s.effect.map.push_back({{"D", 0, 'Z'}, {{"A", 0, 'Z'}}});
  auto rep = certify_schedule(s);
  CAPTURE(rep.summary());
  CHECK(rep.certified);

  // The opposite CNOT direction instead measures Z outright.
  GadgetSchedule t;
  t.blocks["A"] = {bare(1), false};
  t.blocks["D"] = {bare(1), true};
  t.steps = {pc, cnot("D", "A", full_mask(1)), measure(StepKind::MeasureZ, "D")};
  t.effect.map.push_back({{"D", 0, 'X'}, {{"A", 0, 'Y'}}});
  t.effect.map.push_back({{"D", 0, 'Z'}, {{"A", 0, 'Z'}}});
  auto bad = certify_schedule(t);
  CHECK_FALSE(bad.certified);
}

TEST_CASE("prep content must be abelian and complete") {
  GadgetSchedule s;
  s.blocks["A"] = {bare(2), false};
  s.blocks["D"] = {bare(1), true};
  GadgetStep pc = prep(StepKind::PrepContent, "A");
  PrepRow r1, r2;
  r1.x = BinVector::from_bits({1, 0});
  r1.z = BinVector::from_bits({0, 0});
  r2.x = BinVector::from_bits({0, 0});
  r2.z = BinVector::from_bits({1, 0});  // anticommutes with r1
  pc.content = {r1, r2};
  s.steps = {pc};
  auto rep = certify_schedule(s);
  CHECK_FALSE(rep.certified);
  REQUIRE_FALSE(rep.errors.empty());

  GadgetSchedule u;
  u.blocks["A"] = {bare(2), false};
  u.blocks["D"] = {bare(1), true};
  GadgetStep pc2 = prep(StepKind::PrepContent, "A");
  pc2.content = {r1};  // rank 1 of 2
  u.steps = {pc2};
  auto rep2 = certify_schedule(u);
  CHECK_FALSE(rep2.certified);
  REQUIRE_FALSE(rep2.errors.empty());
}

TEST_CASE("fold hswap on the square surface block transposes the frame") {
  auto code = surface13();
  GadgetSchedule s;
  s.name = "fold-hswap";
  s.blocks["D"] = {code, true};
  GadgetStep f;
  f.kind = StepKind::FoldHSwap;
  f.block = "D";
  s.steps = {f};
  s.effect.map.push_back({{"D", 0, 'X'}, {{"D", 0, 'Z'}}});
  s.effect.map.push_back({{"D", 0, 'Z'}, {{"D", 0, 'X'}}});
  auto rep = certify_schedule(s);
  CAPTURE(rep.summary());
  CHECK(rep.certified);
}

TEST_CASE("fold czs on the square surface block is a logical S") {
  auto code = surface13();
  GadgetSchedule s;
  s.name = "fold-czs";
  s.blocks["D"] = {code, true};
  GadgetStep f;
  f.kind = StepKind::FoldCZS;
  f.block = "D";
  s.steps = {f};
  s.effect.map.push_back({{"D", 0, 'X'}, {{"D", 0, 'Y'}}});
  s.effect.map.push_back({{"D", 0, 'Z'}, {{"D", 0, 'Z'}}});
  auto rep = certify_schedule(s);
  CAPTURE(rep.summary());
  CHECK(rep.certified);
}

TEST_CASE("permute relabels determined rows") {
  GadgetSchedule s;
  s.blocks["D"] = {bare(2), true};
  GadgetStep p;
  p.kind = StepKind::Permute;
  p.block = "D";
  p.perm = {1, 0};
  s.steps = {p};
  s.effect.map.push_back({{"D", 0, 'X'}, {{"D", 1, 'X'}}});
  s.effect.map.push_back({{"D", 0, 'Z'}, {{"D", 1, 'Z'}}});
  s.effect.map.push_back({{"D", 1, 'X'}, {{"D", 0, 'X'}}});
  s.effect.map.push_back({{"D", 1, 'Z'}, {{"D", 0, 'Z'}}});
  auto rep = certify_schedule(s);
  CHECK(rep.certified);
}

TEST_CASE("structural violations are reported as errors") {
  GadgetSchedule s;
  s.blocks["D"] = {bare(1), true};
  s.steps = {prep(StepKind::PrepZ, "D")};  // prep of a data block
  auto rep = certify_schedule(s);
  CHECK_FALSE(rep.certified);
  REQUIRE_FALSE(rep.errors.empty());

  GadgetSchedule t;
  t.blocks["D"] = {bare(2), true};
  t.blocks["A"] = {bare(1), false};
  t.steps = {prep(StepKind::PrepZ, "A"), cnot("D", "A", {{0, 0}, {0, 0}})};
  auto rep2 = certify_schedule(t);  // exact duplicate pair
  CHECK_FALSE(rep2.certified);
  REQUIRE_FALSE(rep2.errors.empty());

  GadgetSchedule u;
  u.blocks["D"] = {bare(1), true};
  u.blocks["A"] = {bare(1), false};
  u.steps = {cnot("D", "A", {{0, 0}})};  // A never prepared
  auto rep3 = certify_schedule(u);
  CHECK_FALSE(rep3.certified);
  REQUIRE_FALSE(rep3.errors.empty());
}

TEST_CASE("pipelined cost: background preps overlap the foreground") {
  auto code = surface13();
  GadgetSchedule s;
  s.blocks["D"] = {code, true};
  s.blocks["Q"] = {code, false};
  s.blocks["M"] = {code, false};
  // GPPM-shaped: 2 background preps, then 4 unit foreground steps.
  s.steps = {
      prep(StepKind::PrepZ, "Q", true),
      prep(StepKind::PrepX, "M", true),
      cnot("M", "Q", full_mask(code->n)),
      measure(StepKind::MeasureX, "M"),
      cnot("D", "Q", full_mask(code->n)),
      measure(StepKind::MeasureZ, "Q"),
  };
  compute_cost(s, 4);
  CHECK(s.total_cycles == 8);   // ready at 4, then 4 unit steps
  CHECK(s.logical_cycles == 2);

  // GHZ-shaped: foreground data prep overlapping 4 background preps, then
  // 16 unit steps.
  GadgetSchedule g;
  g.blocks["D"] = {code, true};
  g.steps.push_back(prep(StepKind::PrepX, "D0"));
  for (int i = 0; i < 4; ++i) {
    g.steps.push_back(prep(StepKind::PrepZ, "Q" + std::to_string(i), true));
    g.steps.push_back(prep(StepKind::PrepX, "M" + std::to_string(i), true));
  }
  for (int i = 0; i < 4; ++i) {
    g.steps.push_back(cnot("M" + std::to_string(i), "Q" + std::to_string(i), {}));
    g.steps.push_back(measure(StepKind::MeasureX, "M" + std::to_string(i)));
    g.steps.push_back(cnot("D0", "Q" + std::to_string(i), {}));
    g.steps.push_back(measure(StepKind::MeasureZ, "Q" + std::to_string(i)));
  }
  compute_cost(g, 4);
  CHECK(g.total_cycles == 4 + 16);
  CHECK(g.logical_cycles == 5);
}

TEST_SUITE_END();
