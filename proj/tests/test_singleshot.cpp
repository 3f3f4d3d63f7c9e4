#include "doctest.h"

#include <random>

#include "homprod/css.hpp"
#include "homprod/error.hpp"
#include "homprod/singleshot.hpp"
#include "test_util.hpp"

using namespace homprod;
using gf2::BinMatrix;
using gf2::BinVector;

namespace {

const CssCode& four_d() {
  static const CssCode c = [] {
    auto rep = repetition_code(3);
    return homological_4d(rep, rep, rep, rep);
  }();
  return c;
}

}  // namespace

TEST_SUITE("singleshot") {

TEST_CASE("soundness bound: cubic closed form with table override") {
  SoundnessParams p;
  CHECK(p.f(0) == doctest::Approx(0.0));
  CHECK(p.f(2) == doctest::Approx(2.0));
  CHECK(p.f(4) == doctest::Approx(16.0));
  for (int x = 0; x < 8; ++x) CHECK(p.f(x) <= p.f(x + 1));
  SoundnessParams q{.t = 2, .table = {0.0, 5.0}, .q = 0.5};
  CHECK(q.f(1) == doctest::Approx(5.0));
  CHECK(q.f(2) == doctest::Approx(2.0));  // past the table: closed form
}

TEST_CASE("bounded-weight solving finds minimum-weight preimages") {
  // H of the length-4 repetition code: kernel is {0, 1111}.
  BinMatrix h = BinMatrix::from_dense({{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}});

  auto zero = bounded_weight_solve(h, BinVector(3), 3);
  REQUIRE(zero.has_value());
  CHECK(zero->is_zero());

  // Syndrome of the weight-3 error 1110 is matched by the weight-1 error
  // 0001 through the kernel word 1111.
  BinVector e = BinVector::from_bits({1, 1, 1, 0});
  auto rep = bounded_weight_solve(h, h.mul(e), 3);
  REQUIRE(rep.has_value());
  CHECK(rep->weight() == 1);
  CHECK(h.mul(*rep) == h.mul(e));

  auto rw = reduced_weight_upper(h, e, 1);
  REQUIRE(rw.has_value());
  CHECK(*rw == 1);

  // A full-rank target that needs weight 2 is invisible below its weight.
  BinVector two = h.mul(BinVector::from_bits({1, 0, 0, 1}));
  CHECK(!bounded_weight_solve(h, two, 1).has_value());
  auto found = bounded_weight_solve(h, two, 2);
  REQUIRE(found.has_value());
  CHECK(found->weight() == 2);
}

TEST_CASE("reduced weight vanishes on stabilizer-equivalents of zero") {
  const CssCode& c = four_d();
  auto rw0 = reduced_weight_upper(c.HX, BinVector(c.n), 0);
  REQUIRE(rw0.has_value());
  CHECK(*rw0 == 0);
  // Rows of HZ are X-syndrome-invisible errors.
  for (std::size_t r = 0; r < 5; ++r) {
    auto rw = reduced_weight_upper(c.HX, c.HZ.row(r * 37 % c.HZ.rows()), 0);
    REQUIRE(rw.has_value());
    CHECK(*rw == 0);
  }
}

TEST_CASE("metacheck repair is exact at the cap") {
  const CssCode& c = four_d();
  REQUIRE(c.MX.has_value());
  const BinMatrix& mx = *c.MX;

  // Valid syndromes pass untouched.
  BinVector e(c.n);
  e.set(7, true);
  e.set(100, true);
  BinVector s = c.HX.mul(e);
  auto r0 = metacheck_repair(mx, s, 2);
  REQUIRE(r0.has_value());
  CHECK(r0->is_zero());

  // A single flipped syndrome bit violates the metachecks and repairs at
  // weight one.
  BinVector obs = s;
  obs.flip(11);
  CHECK(!mx.mul(obs).is_zero());
  auto r1 = metacheck_repair(mx, obs, 2);
  REQUIRE(r1.has_value());
  CHECK(r1->weight() == 1);
  CHECK(mx.mul(obs ^ *r1).is_zero());

  // Cap zero cannot repair it.
  CHECK(!metacheck_repair(mx, obs, 0).has_value());
}

TEST_CASE("two-stage preparation repairs noiseless and single-bit syndromes") {
  const CssCode& c = four_d();
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> qubit(0, c.n - 1);

  // Clean syndromes: the correction cancels the data error up to stabilizer.
  for (int trial = 0; trial < 5; ++trial) {
    BinVector e0(c.n);
    e0.set(qubit(rng), true);
    e0.set(qubit(rng), true);
    auto t = single_shot_prepare(c, e0, BinVector(c.HX.rows()));
    REQUIRE(t.outcome == RepairOutcome::Repaired);
    CHECK(t.s_prime == (t.s ^ t.s_e ^ t.s_r));
    CHECK(t.s_r.is_zero());
    CHECK(c.HX.mul(t.E).is_zero());
    auto rw = reduced_weight_upper(c.HX, t.E, 0);
    REQUIRE(rw.has_value());
    CHECK(*rw == 0);
  }

  // One syndrome-bit error on top of a data error: still repaired, residual
  // within the cubic bound at argument two.
  BinVector e0(c.n);
  e0.set(3, true);
  BinVector se(c.HX.rows());
  se.set(40, true);
  auto t = single_shot_prepare(c, e0, se);
  REQUIRE(t.outcome == RepairOutcome::Repaired);
  CHECK(t.s_prime == (t.s ^ t.s_e ^ t.s_r));
  CHECK(c.HX.mul(t.Er) == t.s_prime);
  auto rw = reduced_weight_upper(c.HX, t.E, 2);
  REQUIRE(rw.has_value());
  CHECK(*rw <= 2);
}

TEST_CASE("unrealizable corrected syndromes take the failure branch") {
  const CssCode& c = four_d();
  // Any metacheck-violating vector lies outside the image of HX because the
  // complex is exact at the syndrome grade.
  BinVector bad(c.HX.rows());
  bad.set(0, true);
  REQUIRE(!c.MX->mul(bad).is_zero());
  CHECK(!syndrome_correction(c, bad).has_value());

  // Stage-one failure (cap zero, violated metachecks) is reported as a
  // logical failure with the trace intact.
  auto t = single_shot_prepare(c, BinVector(c.n), bad, 'X', /*cap=*/0);
  CHECK(t.outcome == RepairOutcome::LogicalFailure);
  CHECK(t.s_prime == bad);
}

TEST_CASE("soundness probe is clean on the 4D code and vacuous at weight zero") {
  const CssCode& c = four_d();
  auto vac = soundness_probe(c, 0);
  CHECK(vac.checked == 1);
  CHECK(vac.in_claim == 0);
  CHECK(vac.clean());

  auto rep = soundness_probe(c, 1);
  CHECK(rep.checked == 1 + c.n);
  CHECK(rep.in_claim > 0);
  CHECK(rep.clean());
}

TEST_CASE("soundness probe runs informationally on a 2D product") {
  auto r3 = repetition_code(3);
  auto c = hgp(r3, r3);
  auto rep = soundness_probe(c, 1);
  CHECK(rep.checked == 1 + c.n);
}

TEST_CASE("exhaustive single-shot sweep over weight-one syndrome errors") {
  const CssCode& c = four_d();
  CHECK(c.n == 216);
  CHECK(c.k == 0);
  auto rep = single_shot_sweep(c, 1, /*random_traces=*/20, /*seed=*/5);
  CHECK(rep.traces == 1 + c.HX.rows() + 20);
  CHECK(rep.failures == 0);
  CHECK(rep.residual_violations == 0);
  CHECK(rep.worst_residual <= 2);
  CHECK(rep.clean());
}

TEST_CASE("basis and precondition errors are reported") {
  auto r3 = repetition_code(3);
  auto c = hgp(r3, r3);  // no metachecks in 2D
  CHECK_THROWS_AS(single_shot_prepare(c, BinVector(c.n), BinVector(c.HX.rows())),
                  Error);
  const CssCode& f = four_d();
  CHECK_THROWS_AS(single_shot_prepare(f, BinVector(3), BinVector(f.HX.rows())), Error);
  CHECK_THROWS_AS(single_shot_prepare(f, BinVector(f.n), BinVector(2)), Error);
  CHECK_THROWS_AS(single_shot_prepare(f, BinVector(f.n), BinVector(f.HX.rows()), 'Q'),
                  Error);
}

}  // TEST_SUITE
