#include "homprod/singleshot.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "homprod/error.hpp"

namespace homprod {

using gf2::BinMatrix;
using gf2::BinVector;

double SoundnessParams::f(int x) const {
  if (x < 0) throw Error("SoundnessParams::f: negative argument");
  if (static_cast<std::size_t>(x) < table.size()) return table[x];
  double xd = x;
  return xd * xd * xd / 4.0;
}

namespace {

// Calls fn(support) for every strictly increasing index tuple of the given
// weight over [0, n); returns true as soon as fn does.
bool for_each_support(std::size_t n, int weight,
                      const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  if (weight == 0) {
    static const std::vector<std::size_t> empty;
    return fn(empty);
  }
  if (static_cast<std::size_t>(weight) > n) return false;
  std::vector<std::size_t> idx(weight);
  for (int i = 0; i < weight; ++i) idx[i] = i;
  for (;;) {
    if (fn(idx)) return true;
    int j = weight - 1;
    while (j >= 0 && idx[j] == n - static_cast<std::size_t>(weight - j)) --j;
    if (j < 0) return false;
    ++idx[j];
    for (int i = j + 1; i < weight; ++i) idx[i] = idx[i - 1] + 1;
  }
}

BinVector from_support(std::size_t n, const std::vector<std::size_t>& support) {
  BinVector v(n);
  for (std::size_t i : support) v.flip(i);
  return v;
}

}  // namespace

std::optional<BinVector> bounded_weight_solve(const BinMatrix& m, const BinVector& b,
                                              int cap) {
  if (b.size() != m.rows()) throw Error("bounded_weight_solve: size mismatch");
  const std::size_t n = m.cols();
  if (b.is_zero()) return BinVector(n);
  if (cap <= 0) return std::nullopt;
  const BinMatrix cols = m.transposed();  // row c = column c of m
  for (int w = 1; w <= cap && static_cast<std::size_t>(w) <= n; ++w) {
    // Accumulate XORs along the lexicographic scan: acc[i] is the sum of the
    // columns picked at levels < i.
    std::vector<std::size_t> idx(w);
    std::vector<BinVector> acc(w + 1, BinVector(m.rows()));
    int level = 0;
    idx[0] = 0;
    while (level >= 0) {
      if (idx[level] > n - static_cast<std::size_t>(w - level)) {
        --level;
        if (level >= 0) ++idx[level];
        continue;
      }
      acc[level + 1] = acc[level] ^ cols.row(idx[level]);
      if (level == w - 1) {
        if (acc[level + 1] == b)
          return from_support(n, idx);
        ++idx[level];
      } else {
        ++level;
        idx[level] = idx[level - 1] + 1;
      }
    }
  }
  return std::nullopt;
}

std::optional<BinVector> metacheck_repair(const BinMatrix& MX, const BinVector& observed,
                                          int cap) {
  return bounded_weight_solve(MX, MX.mul(observed), cap);
}

std::optional<int> reduced_weight_upper(const BinMatrix& H, const BinVector& e, int cap) {
  auto rep = bounded_weight_solve(H, H.mul(e), cap);
  if (!rep) return std::nullopt;
  return static_cast<int>(rep->weight());
}

namespace {

struct BasisView {
  const BinMatrix* H = nullptr;
  const BinMatrix* M = nullptr;
};

BasisView basis_view(const CssCode& code, char basis, bool need_meta) {
  BasisView v;
  if (basis == 'X') {
    v.H = &code.HX;
    if (code.MX) v.M = &*code.MX;
  } else if (basis == 'Z') {
    v.H = &code.HZ;
    if (code.MZ) v.M = &*code.MZ;
  } else {
    throw Error("single-shot: basis must be 'X' or 'Z'");
  }
  if (need_meta && v.M == nullptr)
    throw Error("single-shot: code has no metachecks for the requested basis");
  return v;
}

}  // namespace

std::optional<BinVector> syndrome_correction(const CssCode& code, const BinVector& s_prime,
                                             char basis) {
  BasisView v = basis_view(code, basis, /*need_meta=*/false);
  return gf2::solve(*v.H, s_prime);
}

SingleShotTrace single_shot_prepare(const CssCode& code, const BinVector& E0,
                                    const BinVector& s_e, char basis, int cap) {
  BasisView v = basis_view(code, basis, /*need_meta=*/true);
  if (E0.size() != code.n) throw Error("single_shot_prepare: data error size mismatch");
  if (s_e.size() != v.H->rows()) throw Error("single_shot_prepare: syndrome size mismatch");

  SingleShotTrace t;
  t.E0 = E0;
  t.s_e = s_e;
  t.s = v.H->mul(E0);
  BinVector observed = t.s ^ s_e;
  auto repair = metacheck_repair(*v.M, observed, cap);
  if (!repair) {
    t.s_r = BinVector(s_e.size());
    t.s_prime = observed;
    t.outcome = RepairOutcome::LogicalFailure;
    return t;
  }
  t.s_r = *repair;
  t.s_prime = observed ^ t.s_r;
  auto corr = syndrome_correction(code, t.s_prime, basis);
  if (!corr) {
    t.outcome = RepairOutcome::LogicalFailure;
    return t;
  }
  t.Er = *corr;
  t.E = E0 ^ t.Er;
  t.outcome = RepairOutcome::Repaired;
  return t;
}

SoundnessReport soundness_probe(const CssCode& code, int max_weight,
                                SoundnessParams params) {
  SoundnessReport rep;
  rep.params = params;
  rep.max_weight = max_weight;
  const BinMatrix& H = code.HX;
  for (int w = 0; w <= max_weight; ++w) {
    for_each_support(code.n, w, [&](const std::vector<std::size_t>& support) {
      ++rep.checked;
      BinVector e = from_support(code.n, support);
      BinVector syn = H.mul(e);
      int sw = static_cast<int>(syn.weight());
      if (sw == 0 || sw >= params.t) return false;
      ++rep.in_claim;
      double bound = params.f(sw);
      int cap = static_cast<int>(std::floor(bound));
      if (!reduced_weight_upper(H, e, cap))
        rep.violations.push_back({e, sw, bound});
      return false;
    });
  }
  return rep;
}

PrepSweepReport single_shot_sweep(const CssCode& code, int se_weight,
                                  std::size_t random_traces, std::uint64_t seed,
                                  SoundnessParams params) {
  PrepSweepReport rep;
  rep.params = params;
  rep.se_weight = se_weight;
  BasisView v = basis_view(code, 'X', /*need_meta=*/true);
  const std::size_t r = v.H->rows();

  // Materialize the syndrome-error list so the trace loop can be split
  // across threads with a deterministic merge.
  std::vector<BinVector> side;
  for (int w = 0; w <= se_weight; ++w) {
    for_each_support(r, w, [&](const std::vector<std::size_t>& support) {
      side.push_back(from_support(r, support));
      return false;
    });
  }
  std::vector<BinVector> data(side.size(), BinVector(code.n));
  if (random_traces > 0) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> qubit(0, code.n - 1);
    std::uniform_int_distribution<std::size_t> synd(0, r - 1);
    std::uniform_int_distribution<int> wdist(1, 2);
    for (std::size_t i = 0; i < random_traces; ++i) {
      BinVector e0(code.n);
      int w = wdist(rng);
      for (int j = 0; j < w; ++j) e0.set(qubit(rng), true);
      BinVector se(r);
      if (se_weight > 0) se.set(synd(rng), true);
      side.push_back(se);
      data.push_back(e0);
    }
  }

  const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(side.size());
  std::size_t failures = 0, violations = 0;
  int worst = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : failures, violations) \
    reduction(max : worst) if (total > 8)
  for (std::ptrdiff_t i = 0; i < total; ++i) {
    SingleShotTrace t = single_shot_prepare(code, data[i], side[i]);
    if (t.outcome != RepairOutcome::Repaired) {
      ++failures;
      continue;
    }
    double bound = params.f(2 * static_cast<int>(side[i].weight()));
    int cap = static_cast<int>(std::floor(bound));
    auto rw = reduced_weight_upper(*v.H, t.E, cap);
    if (!rw)
      ++violations;
    else
      worst = std::max(worst, *rw);
  }
  rep.traces = side.size();
  rep.failures = failures;
  rep.residual_violations = violations;
  rep.worst_residual = worst;
  return rep;
}

}  // namespace homprod
