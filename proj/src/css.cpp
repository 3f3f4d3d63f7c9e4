#include "homprod/css.hpp"

#include <algorithm>

#include "homprod/error.hpp"

namespace homprod {

using gf2::BinMatrix;
using gf2::BinVector;

std::size_t CssCode::grid_index(const std::vector<std::size_t>& g) const {
  if (g.size() != grid.size()) throw Error("grid_index: wrong arity");
  std::size_t flat = 0;
  for (std::size_t f = 0; f < grid.size(); ++f) {
    if (g[f] >= grid[f]) throw Error("grid_index: out of range");
    flat = flat * grid[f] + g[f];
  }
  return flat;
}

std::size_t CssCode::qubit_at(std::size_t summand, const std::vector<std::size_t>& idx) const {
  const Summand& s = qubit_summands.at(summand);
  return s.offset + s.flatten(idx);
}

CssCode css_from_total(const TotalComplex& t, int qubit_grade, bool /*want_logicals*/) {
  if (qubit_grade < 1 || qubit_grade >= t.D())
    throw Error("css_from_total: qubit grade must have checks on both sides");
  CssCode c;
  c.HX = t.delta[qubit_grade];
  c.HZ = t.delta[qubit_grade + 1].transposed();
  if (qubit_grade - 1 >= 1) c.MX = t.delta[qubit_grade - 1];
  if (qubit_grade + 2 <= t.D()) c.MZ = t.delta[qubit_grade + 2].transposed();
  c.n = t.dim(qubit_grade);
  c.k = c.n - gf2::rank(c.HX) - gf2::rank(c.HZ);
  c.qubit_summands = t.summands[qubit_grade];
  for (std::size_t s = 0; s < c.qubit_summands.size(); ++s) {
    const Summand& sm = c.qubit_summands[s];
    for (std::size_t local = 0; local < sm.dim; ++local)
      c.coords.push_back({s, sm.unflatten(local)});
  }
  return c;
}

namespace {

// Tensor a list of per-factor row vectors into a flat summand vector.
BinVector tensor_rows(const std::vector<BinVector>& parts) {
  BinMatrix acc = BinMatrix::identity(1);
  for (const auto& p : parts) acc = gf2::kron(acc, BinMatrix::from_rows({p}));
  return acc.row(0);
}

// Canonical grid logicals: per factor, direct factors contribute a unit on
// an information bit for X and a generator row for Z; transposed factors the
// other way around.  Both land in the summand whose grade is 1 exactly at
// the direct factors.
void attach_canonical_logicals(CssCode& c, const TotalComplex& t,
                               const std::vector<const ClassicalCode*>& factors,
                               int qubit_grade) {
  std::vector<int> star;
  int star_grade = 0;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    star.push_back(t.factors[f].transposed ? 0 : 1);
    star_grade += star.back();
  }
  if (star_grade != qubit_grade) return;  // no grid basis at this grade
  for (std::size_t f = 0; f < factors.size(); ++f)
    if (gf2::rank(factors[f]->H) != factors[f]->H.rows()) return;

  const Summand* sm = t.find_summand(qubit_grade, star);
  std::size_t sm_index = 0;
  for (; sm_index < c.qubit_summands.size(); ++sm_index)
    if (c.qubit_summands[sm_index].grades == star) break;

  c.grid.clear();
  for (const auto* f : factors) c.grid.push_back(f->k());
  std::size_t k = 1;
  for (auto g : c.grid) k *= g;
  if (k != c.k) throw Error("canonical logicals: homology dimension mismatch");

  std::vector<std::size_t> j(c.grid.size(), 0);
  for (std::size_t flat = 0; flat < k; ++flat) {
    std::vector<BinVector> xs, zs;
    for (std::size_t f = 0; f < factors.size(); ++f) {
      const ClassicalCode& base = *factors[f];
      BinVector unit = BinVector::unit(base.n(), base.info_bits[j[f]]);
      BinVector gen = base.G.row(j[f]);
      if (t.factors[f].transposed) {
        xs.push_back(gen);
        zs.push_back(unit);
      } else {
        xs.push_back(unit);
        zs.push_back(gen);
      }
    }
    BinVector lx(c.n), lz(c.n);
    lx.xor_shifted(tensor_rows(xs), sm->offset);
    lz.xor_shifted(tensor_rows(zs), sm->offset);
    if (!c.HZ.mul(lx).is_zero() || !c.HX.mul(lz).is_zero())
      throw Error("canonical logicals: representative fails the checks");
    c.lx.push_back(std::move(lx));
    c.lz.push_back(std::move(lz));
    // Advance the row-major multi-index.
    for (std::size_t f = c.grid.size(); f-- > 0;) {
      if (++j[f] < c.grid[f]) break;
      j[f] = 0;
    }
  }
  (void)sm_index;

  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (c.lx[a].dot(c.lz[b]) != (a == b))
        throw Error("canonical logicals: pairing is not the identity");
}

}  // namespace

CssCode hgp(const ClassicalCode& c1, const ClassicalCode& c2) {
  TotalComplex t = total_complex({{c1.H, true}, {c2.H, false}});
  CssCode c = css_from_total(t, 1, true);
  attach_canonical_logicals(c, t, {&c1, &c2}, 1);
  if (!c.grid.empty() && c1.d && c2.d) c.d = std::min(*c1.d, *c2.d);
  return c;
}

CssCode homological_3d(const ClassicalCode& c1, const ClassicalCode& c2,
                       const ClassicalCode& c3) {
  TotalComplex t = total_complex({{c1.H, false}, {c2.H, false}, {c3.H, true}});
  CssCode c = css_from_total(t, 2, true);
  attach_canonical_logicals(c, t, {&c1, &c2, &c3}, 2);
  return c;
}

CssCode homological_4d(const ClassicalCode& c1, const ClassicalCode& c2,
                       const ClassicalCode& c3, const ClassicalCode& c4) {
  TotalComplex t = total_complex(
      {{c1.H, false}, {c2.H, false}, {c3.H, false}, {c4.H, false}});
  return css_from_total(t, 2, false);
}

HgpUnion hgp_union(const ClassicalCode& first, std::vector<ClassicalCode> seconds) {
  if (seconds.empty()) throw Error("hgp_union: no blocks");
  HgpUnion u;
  std::size_t total_n = 0, total_r = 0;
  for (const auto& s : seconds) {
    total_n += s.n();
    total_r += s.num_checks();
  }
  BinMatrix merged(total_r, total_n);
  std::size_t bit_at = 0, check_at = 0;
  std::vector<std::size_t> bit_off, check_off;
  for (const auto& s : seconds) {
    bit_off.push_back(bit_at);
    check_off.push_back(check_at);
    for (std::size_t r = 0; r < s.num_checks(); ++r) {
      BinVector wide(total_n);
      wide.xor_shifted(s.H.row(r), bit_at);
      merged.set_row(check_at + r, wide);
    }
    bit_at += s.n();
    check_at += s.num_checks();
  }
  u.merged_second = make_code(std::move(merged));
  u.code = hgp(first, u.merged_second);
  u.seconds = std::move(seconds);

  const std::size_t n1 = first.n(), r1 = first.num_checks();
  auto block_of_bit = [&](std::size_t beta, std::size_t& local) {
    for (std::size_t b = u.seconds.size(); b-- > 0;)
      if (beta >= bit_off[b]) {
        local = beta - bit_off[b];
        return b;
      }
    throw Error("hgp_union: bad bit index");
  };
  auto block_of_check = [&](std::size_t rho, std::size_t& local) {
    for (std::size_t b = u.seconds.size(); b-- > 0;)
      if (rho >= check_off[b]) {
        local = rho - check_off[b];
        return b;
      }
    throw Error("hgp_union: bad check index");
  };

  u.embedding.resize(u.code.n);
  for (std::size_t q = 0; q < u.code.n; ++q) {
    const QubitCoord& qc = u.code.coords[q];
    if (qc.summand == 0) {  // bits x bits: (a over n1, beta over total_n)
      std::size_t local_beta;
      std::size_t b = block_of_bit(qc.idx[1], local_beta);
      u.embedding[q] = {b, qc.idx[0] * u.seconds[b].n() + local_beta};
    } else {  // checks x checks: (c over r1, rho over total_r)
      std::size_t local_rho;
      std::size_t b = block_of_check(qc.idx[1], local_rho);
      u.embedding[q] = {b, n1 * u.seconds[b].n() + qc.idx[0] * u.seconds[b].num_checks() +
                               local_rho};
    }
  }
  (void)r1;
  return u;
}

std::size_t HgpUnion::merged_col(std::size_t block, std::size_t col) const {
  std::size_t off = 0;
  for (std::size_t b = 0; b < block; ++b) off += seconds[b].k();
  if (col >= seconds[block].k()) throw Error("merged_col: out of range");
  return off + col;
}

}  // namespace homprod
