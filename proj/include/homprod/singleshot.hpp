#pragma once
// Two-stage syndrome repair for product codes with metachecks, plus
// desk-scale soundness probes.
//
// A noisy X-syndrome extraction reports s + s_e instead of s = HX * E0.
// Stage one restores metacheck consistency: the minimum-weight s_r with
// MX * (s + s_e + s_r) = 0, found by exhaustive search up to a weight cap.
// Stage two solves HX * Er = s' for a data correction; an unrealizable
// corrected syndrome is a logical failure.  On the 4D product of repetition
// codes the complex is exact at the syndrome grade, so stage two never
// fails, and the residual E0 + Er is certified small by bounded-support
// coset search ("reduced weight" upper bounds).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "homprod/css.hpp"
#include "homprod/gf2.hpp"

namespace homprod {

// Soundness declaration (t, f): every error e with |H e| < t admits a coset
// representative e* (H e* = H e) of weight at most f(|H e|).
struct SoundnessParams {
  int t = 3;
  // f(x) = x^3 / 4 unless a table entry overrides it.  f(0) = 0; monotone.
  std::vector<double> table;  // table[x] = f(x) for x < table.size()
  // Tolerated syndrome-error weight (half the smallest factor distance for
  // the 4D repetition-code family).
  double q = 1.5;

  double f(int x) const;
};

// Smallest-weight x with M x = b and |x| <= cap, scanning supports
// exhaustively by increasing weight; nullopt when none exists within the
// cap.  Shared kernel behind metacheck repair and reduced-weight bounds.
std::optional<gf2::BinVector> bounded_weight_solve(const gf2::BinMatrix& m,
                                                   const gf2::BinVector& b,
                                                   int cap);

// Minimum-weight s_r with MX * (observed + s_r) = 0, exhaustive up to
// `cap`; nullopt means unrepairable at the cap.
std::optional<gf2::BinVector> metacheck_repair(const gf2::BinMatrix& MX,
                                               const gf2::BinVector& observed,
                                               int cap = 2);

// Smallest weight (<= cap) of any e* with H e* = H e.  Upper-bound
// semantics: nullopt means no representative of weight <= cap was found,
// not that the coset minimum exceeds the cap's value elsewhere.
std::optional<int> reduced_weight_upper(const gf2::BinMatrix& H,
                                        const gf2::BinVector& e, int cap);

// Stage two alone: a data correction matching the corrected syndrome, or
// nullopt when the syndrome is unrealizable (the logical-failure branch).
// basis 'X' corrects against HX, 'Z' against HZ.
std::optional<gf2::BinVector> syndrome_correction(const CssCode& code,
                                                  const gf2::BinVector& s_prime,
                                                  char basis = 'X');

enum class RepairOutcome { Repaired, LogicalFailure };

struct SingleShotTrace {
  gf2::BinVector s;        // true syndrome H * E0
  gf2::BinVector s_e;      // syndrome measurement error
  gf2::BinVector s_r;      // metacheck repair (zero when stage one failed)
  gf2::BinVector s_prime;  // s + s_e + s_r
  gf2::BinVector E0;       // injected data error
  gf2::BinVector Er;       // applied correction (empty on failure)
  gf2::BinVector E;        // residual E0 + Er (empty on failure)
  RepairOutcome outcome = RepairOutcome::LogicalFailure;
};

// Runs the two-stage protocol for a data error E0 and syndrome error s_e.
// basis 'X' uses (HX, MX), 'Z' uses (HZ, MZ); the code must carry the
// matching metachecks.  `cap` bounds the stage-one search.
SingleShotTrace single_shot_prepare(const CssCode& code, const gf2::BinVector& E0,
                                    const gf2::BinVector& s_e, char basis = 'X',
                                    int cap = 2);

struct SoundnessViolation {
  gf2::BinVector e;
  int syndrome_weight = 0;
  double bound = 0.0;  // f(|H e|) that no representative met
};

struct SoundnessReport {
  SoundnessParams params;
  int max_weight = 0;
  std::size_t checked = 0;   // errors enumerated
  std::size_t in_claim = 0;  // errors with 0 < |H e| < t
  std::vector<SoundnessViolation> violations;
  bool clean() const { return violations.empty(); }
};

// Enumerates every data error of weight <= max_weight; for each with
// 0 < |HX e| < t, requires a coset representative of weight <= f(|HX e|).
// Tiny codes only (the enumeration is exhaustive).
SoundnessReport soundness_probe(const CssCode& code, int max_weight,
                                SoundnessParams params = {});

struct PrepSweepReport {
  SoundnessParams params;
  int se_weight = 0;          // syndrome errors enumerated up to this weight
  std::size_t traces = 0;
  std::size_t failures = 0;   // stage-one or stage-two failures
  std::size_t residual_violations = 0;  // residual above f(2|s_e|)
  int worst_residual = 0;     // largest certified residual reduced weight
  bool clean() const { return failures == 0 && residual_violations == 0; }
};

// Exhaustive single-shot sweep: every syndrome error of weight <= se_weight
// (E0 = 0), checking no-failure and the residual bound f(2|s_e|).  Extra
// randomized traces with nonzero E0 of weight <= 2 exercise the same bound
// off the zero data error.
PrepSweepReport single_shot_sweep(const CssCode& code, int se_weight,
                                  std::size_t random_traces = 0,
                                  std::uint64_t seed = 1,
                                  SoundnessParams params = {});

}  // namespace homprod
