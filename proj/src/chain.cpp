#include "homprod/chain.hpp"

#include <algorithm>

#include "homprod/error.hpp"

namespace homprod {

using gf2::BinMatrix;

std::size_t Summand::flatten(const std::vector<std::size_t>& idx) const {
  std::size_t flat = 0;
  for (std::size_t f = 0; f < factor_dims.size(); ++f) flat = flat * factor_dims[f] + idx[f];
  return flat;
}

std::vector<std::size_t> Summand::unflatten(std::size_t local) const {
  std::vector<std::size_t> idx(factor_dims.size());
  for (std::size_t f = factor_dims.size(); f-- > 0;) {
    idx[f] = local % factor_dims[f];
    local /= factor_dims[f];
  }
  return idx;
}

std::size_t TotalComplex::dim(int g) const {
  if (g < 0 || g > D()) return 0;
  std::size_t d = 0;
  for (const auto& s : summands[g]) d += s.dim;
  return d;
}

const Summand* TotalComplex::find_summand(int g, const std::vector<int>& grades) const {
  for (const auto& s : summands[g])
    if (s.grades == grades) return &s;
  return nullptr;
}

namespace {

void add_block(BinMatrix& big, const BinMatrix& blk, std::size_t r0, std::size_t c0) {
  for (std::size_t r = 0; r < blk.rows(); ++r) {
    gf2::BinVector wide(big.cols());
    wide.xor_shifted(blk.row(r), c0);
    big.row_xor(r0 + r, wide);
  }
}

}  // namespace

TotalComplex total_complex(std::vector<FactorComplex> factors) {
  TotalComplex t;
  t.factors = std::move(factors);
  const int D = t.D();
  if (D == 0) throw Error("total_complex: no factors");

  // Enumerate grade vectors of each total grade in ascending lex order.
  t.summands.assign(D + 1, {});
  std::vector<std::vector<int>> all;
  for (std::size_t mask = 0; mask < (std::size_t(1) << D); ++mask) {
    std::vector<int> g(D);
    for (int f = 0; f < D; ++f) g[f] = (mask >> f) & 1;
    all.push_back(std::move(g));
  }
  std::sort(all.begin(), all.end());
  for (auto& g : all) {
    int total = 0;
    for (int x : g) total += x;
    Summand s;
    s.grades = g;
    s.dim = 1;
    for (int f = 0; f < D; ++f) {
      s.factor_dims.push_back(t.factors[f].dim(g[f]));
      s.dim *= s.factor_dims.back();
    }
    s.offset = t.dim(total);
    t.summands[total].push_back(std::move(s));
  }

  // Boundary maps.
  t.delta.assign(D + 1, BinMatrix());
  for (int g = 1; g <= D; ++g) {
    BinMatrix d(t.dim(g - 1), t.dim(g));
    for (const auto& src : t.summands[g]) {
      for (int f = 0; f < D; ++f) {
        if (!src.grades[f]) continue;
        std::vector<int> tgt_grades = src.grades;
        tgt_grades[f] = 0;
        const Summand* tgt = t.find_summand(g - 1, tgt_grades);
        BinMatrix blk = BinMatrix::identity(1);
        for (int j = 0; j < D; ++j) {
          BinMatrix part = (j == f) ? t.factors[j].boundary()
                                    : BinMatrix::identity(src.factor_dims[j]);
          blk = gf2::kron(blk, part);
        }
        add_block(d, blk, tgt->offset, src.offset);
      }
    }
    t.delta[g] = std::move(d);
  }

  for (int g = 2; g <= D; ++g)
    if (!(t.delta[g - 1] * t.delta[g]).is_zero())
      throw Error("total_complex: delta^2 != 0");
  return t;
}

}  // namespace homprod
