#include "homprod/classical.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "homprod/error.hpp"

namespace homprod {

using gf2::BinMatrix;
using gf2::BinVector;
using gf2::PivotOrder;

namespace {

std::vector<std::size_t> free_columns_rightmost(const BinMatrix& h) {
  auto rr = gf2::rref(h, PivotOrder::Rightmost);
  std::vector<bool> is_pivot(h.cols(), false);
  for (auto p : rr.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < h.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  return free_cols;
}

}  // namespace

ClassicalCode make_code(BinMatrix h, std::optional<int> d) {
  ClassicalCode c;
  c.info_bits = free_columns_rightmost(h);
  c.G = gf2::kernel_basis(h, PivotOrder::Rightmost);
  c.H = std::move(h);
  c.d = d;
  return c;
}

std::vector<std::size_t> information_bits(const BinMatrix& h) {
  if (gf2::rank(h) != h.rows())
    throw Error("information_bits: check matrix is not full row rank");
  return free_columns_rightmost(h);
}

gf2::BinMatrix generator_from_check(const BinMatrix& h) {
  return gf2::kernel_basis(h, PivotOrder::Rightmost);
}

bool verify_classical_map(const BinMatrix& h_to, const ClassicalMap& m,
                          const BinMatrix& h_from) {
  return h_to * m.gamma1 == m.gamma0 * h_from;
}

ModifiedCode puncture(const ClassicalCode& c, const std::vector<std::size_t>& drop,
                      bool* warning) {
  return augment_then_puncture(c, BinMatrix(0, c.n()), drop, warning);
}

ModifiedCode augment(const ClassicalCode& c, const BinMatrix& extra_rows) {
  return augment_then_puncture(c, extra_rows, {});
}

ModifiedCode augment_then_puncture(const ClassicalCode& c, const BinMatrix& extra_rows,
                                   const std::vector<std::size_t>& drop, bool* warning) {
  const std::size_t n = c.n(), r = c.num_checks();
  std::set<std::size_t> dropped(drop.begin(), drop.end());
  if (!drop.empty() && (*dropped.rbegin() >= n))
    throw Error("puncture: position out of range");
  if (dropped.size() != drop.size()) throw Error("puncture: repeated position");
  if (extra_rows.rows() > 0 && extra_rows.cols() != n)
    throw Error("augment: row length mismatch");
  if (warning) {
    std::set<std::size_t> info(c.info_bits.begin(), c.info_bits.end());
    *warning = false;
    for (auto p : drop)
      if (!info.count(p)) *warning = true;
  }

  BinMatrix h_aug = extra_rows.rows() > 0 ? gf2::vstack({c.H, extra_rows}) : c.H;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (!dropped.count(i)) keep.push_back(i);

  ModifiedCode out;
  out.code = make_code(h_aug.submatrix_cols(keep));
  // Bits of C' include into the base bit space; base checks are the first r
  // rows of the augmented matrix.
  out.to_base.gamma1 = BinMatrix(n, keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) out.to_base.gamma1.set(keep[i], i, true);
  out.to_base.gamma0 = BinMatrix(r, h_aug.rows());
  for (std::size_t i = 0; i < r; ++i) out.to_base.gamma0.set(i, i, true);
  if (!verify_classical_map(c.H, out.to_base, out.code.H))
    throw Error("augment_then_puncture: chain map verification failed");
  return out;
}

gf2::BinMatrix repetition_on_hyperedges(std::size_t n,
                                        const std::vector<std::vector<std::size_t>>& edges) {
  std::set<std::size_t> seen;
  std::size_t nrows = 0;
  for (const auto& e : edges) {
    if (e.empty()) throw Error("hyperedge must be nonempty");
    for (auto i : e) {
      if (i >= n) throw Error("hyperedge position out of range");
      if (!seen.insert(i).second) throw Error("hyperedges must be disjoint");
    }
    nrows += e.size() - 1;
  }
  BinMatrix rows(nrows, n);
  std::size_t at = 0;
  for (const auto& e : edges) {
    std::vector<std::size_t> s(e.begin(), e.end());
    std::sort(s.begin(), s.end());
    for (std::size_t t = 0; t + 1 < s.size(); ++t) {
      rows.set(at, s[t], true);
      rows.set(at, s[t + 1], true);
      ++at;
    }
  }
  return rows;
}

int distance_bruteforce(const ClassicalCode& c, std::uint64_t cap) {
  const std::size_t k = c.k();
  if (k == 0) return 0;
  if (k >= 63 || (std::uint64_t(1) << k) > cap)
    throw Error("distance_bruteforce: enumeration exceeds cap");
  BinVector v(c.n());
  std::size_t best = c.n() + 1;
  const std::uint64_t total = std::uint64_t(1) << k;
  for (std::uint64_t i = 1; i < total; ++i) {
    v ^= c.G.row(std::countr_zero(i));  // Gray-code step
    best = std::min(best, v.weight());
  }
  return (int)best;
}

// --- quasi-cyclic -----------------------------------------------------------

std::vector<int> parse_poly(const std::string& s, std::size_t l) {
  std::vector<int> coeffs(l, 0);
  std::size_t pos = 0;
  auto fail = [&]() { throw Error("bad polynomial: '" + s + "'"); };
  while (pos < s.size()) {
    while (pos < s.size() && s[pos] == ' ') ++pos;
    std::size_t end = s.find('+', pos);
    if (end == std::string::npos) end = s.size();
    std::string term = s.substr(pos, end - pos);
    while (!term.empty() && term.back() == ' ') term.pop_back();
    std::size_t e;
    if (term == "0") {
      pos = end + 1;
      continue;
    } else if (term == "1") {
      e = 0;
    } else if (term == "x") {
      e = 1;
    } else if (term.rfind("x^", 0) == 0) {
      try {
        e = std::stoul(term.substr(2));
      } catch (...) {
        fail();
        return coeffs;
      }
    } else {
      fail();
      return coeffs;
    }
    if (e >= l) throw Error("polynomial exponent " + std::to_string(e) + " outside lift " +
                            std::to_string(l));
    if (coeffs[e]) throw Error("repeated term in polynomial: '" + s + "'");
    coeffs[e] = 1;
    pos = end + 1;
  }
  return coeffs;
}

gf2::BinMatrix circulant(const std::vector<int>& coeffs) {
  const std::size_t l = coeffs.size();
  BinMatrix m(l, l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      if (coeffs[(i + l - j) % l]) m.set(i, j, true);
  return m;
}

namespace {
BinMatrix expand_blocks(const std::vector<std::vector<std::string>>& polys, std::size_t l) {
  std::vector<BinMatrix> rows;
  for (const auto& prow : polys) {
    std::vector<BinMatrix> blocks;
    for (const auto& p : prow) blocks.push_back(circulant(parse_poly(p, l)));
    rows.push_back(gf2::hstack(blocks));
  }
  return gf2::vstack(rows);
}
}  // namespace

ClassicalCode expand_quasi_cyclic(const QuasiCyclicSpec& spec, std::optional<int> d) {
  if (spec.l == 0 || spec.hpoly.empty() || spec.gpoly.empty())
    throw Error("expand_quasi_cyclic: empty spec");
  const std::size_t nb = spec.gpoly.size();
  for (const auto& row : spec.hpoly)
    if (row.size() != nb) throw Error("expand_quasi_cyclic: H/G block width mismatch");

  auto g0 = parse_poly(spec.gpoly[0], spec.l);
  for (std::size_t e = 0; e < spec.l; ++e)
    if (g0[e] != (e == 0 ? 1 : 0))
      throw Error("expand_quasi_cyclic: generator must lead with the identity block");

  BinMatrix h = expand_blocks(spec.hpoly, spec.l);
  BinMatrix g = expand_blocks({spec.gpoly}, spec.l);
  if (!(h * g.transposed()).is_zero())
    throw Error("expand_quasi_cyclic: H G^T != 0");

  ClassicalCode c = make_code(h, d);
  if (c.k() != spec.l)
    throw Error("expand_quasi_cyclic: k = " + std::to_string(c.k()) +
                " but one-generator lift expects k = " + std::to_string(spec.l));
  for (std::size_t i = 0; i < spec.l; ++i)
    if (c.info_bits[i] != i)
      throw Error("expand_quasi_cyclic: information bits are not the first block");
  // The expanded generator is systematic on {0..l-1} because its first block
  // is the identity; store it so logical bases use the circulant form.
  c.G = g;
  return c;
}

gf2::BinMatrix block_shift(std::size_t n_blocks, std::size_t l, std::size_t s) {
  std::vector<int> coeffs(l, 0);
  coeffs[s % l] = 1;
  return gf2::kron(BinMatrix::identity(n_blocks), circulant(coeffs));
}

const std::vector<CatalogEntry>& ogsc_catalog() {
  static const std::vector<CatalogEntry> catalog = {
      {"ogsc-9-3-4",
       {3, {{"x^2", "x^2", "x^2"}, {"x", "x^2", "0"}}, {"1", "x", "1+x"}},
       9, 3, 4},
      {"ogsc-12-3-6",
       {3,
        {{"x^2", "x^2", "x^2", "0"}, {"x^2", "0", "x^2", "x^2"}, {"x^2", "x^2", "x", "x^2"}},
        {"1", "1+x^2", "x^2", "1+x^2"}},
       12, 3, 6},
      {"ogsc-16-4-8",
       {4,
        {{"x^3", "x^3", "0", "x^3"}, {"x^3", "x^2", "x^3", "x^2"}, {"x^3", "x^3", "x^2", "0"}},
        {"1", "1+x+x^2", "1+x", "x+x^2"}},
       16, 4, 8},
      {"ogsc-20-5-9",
       {5,
        {{"x^4", "0", "x^4", "x^3"}, {"0", "x^3", "x^3", "x^4"}, {"x^3", "x^4", "0", "x^3"}},
        {"1", "x+x^2+x^3", "1+x^2+x^3", "x+x^2"}},
       20, 5, 9},
  };
  return catalog;
}

ClassicalCode hamming_code(std::size_t r) {
  const std::size_t n = (std::size_t(1) << r) - 1;
  BinMatrix h(r, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t b = 0; b < r; ++b)
      if ((c + 1) >> b & 1) h.set(b, c, true);
  return make_code(std::move(h), 3);
}

ClassicalCode repetition_code(std::size_t n) {
  BinMatrix h(n - 1, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h.set(i, i, true);
    h.set(i, i + 1, true);
  }
  return make_code(std::move(h), (int)n);
}

}  // namespace homprod
