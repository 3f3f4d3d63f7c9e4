#include "homprod/gf2.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

namespace homprod::gf2 {

// ---------------------------------------------------------------------------
// BinVector

BinVector BinVector::unit(std::size_t n, std::size_t i) {
  BinVector v(n);
  v.set(i, true);
  return v;
}

BinVector BinVector::from_bits(const std::vector<int>& bits) {
  BinVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) v.set(i, bits[i] != 0);
  return v;
}

BinVector& BinVector::operator^=(const BinVector& o) {
  assert(n_ == o.n_);
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
  return *this;
}

std::size_t BinVector::weight() const {
  std::size_t c = 0;
  for (Word w : w_) c += std::popcount(w);
  return c;
}

bool BinVector::is_zero() const {
  for (Word w : w_) if (w) return false;
  return true;
}

std::size_t BinVector::lowest_set() const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i]) return i * kWordBits + std::countr_zero(w_[i]);
  return n_;
}

bool BinVector::dot(const BinVector& o) const {
  assert(n_ == o.n_);
  Word acc = 0;
  for (std::size_t i = 0; i < w_.size(); ++i) acc ^= (w_[i] & o.w_[i]);
  return std::popcount(acc) & 1u;
}

std::vector<std::size_t> BinVector::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    Word w = w_[i];
    while (w) {
      s.push_back(i * kWordBits + std::countr_zero(w));
      w &= w - 1;
    }
  }
  return s;
}

void BinVector::xor_shifted(const BinVector& src, std::size_t at) {
  assert(at + src.n_ <= n_);
  std::size_t sh = at % kWordBits, base = at / kWordBits;
  for (std::size_t i = 0; i < src.w_.size(); ++i) {
    Word w = src.w_[i];
    if (!w) continue;
    w_[base + i] ^= (w << sh);
    if (sh && base + i + 1 < w_.size()) w_[base + i + 1] ^= (w >> (kWordBits - sh));
  }
  // The shift may have pushed bits past size(); the invariant that trailing
  // bits are zero is preserved because at + src.size() <= size().
}

BinVector BinVector::slice(std::size_t begin, std::size_t len) const {
  assert(begin + len <= n_);
  BinVector out(len);
  for (std::size_t i = 0; i < len; ++i)
    if (get(begin + i)) out.set(i, true);
  return out;
}

BinVector BinVector::concat(const BinVector& a, const BinVector& b) {
  BinVector out(a.n_ + b.n_);
  out.xor_shifted(a, 0);
  out.xor_shifted(b, a.n_);
  return out;
}

std::string BinVector::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) if (get(i)) s[i] = '1';
  return s;
}

// ---------------------------------------------------------------------------
// BinMatrix

BinMatrix BinMatrix::identity(std::size_t n) {
  BinMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BinMatrix BinMatrix::from_rows(const std::vector<BinVector>& rows) {
  if (rows.empty()) return BinMatrix();
  BinMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

BinMatrix BinMatrix::from_dense(const std::vector<std::vector<int>>& bits) {
  if (bits.empty()) return BinMatrix();
  BinMatrix m(bits.size(), bits[0].size());
  for (std::size_t r = 0; r < bits.size(); ++r) {
    if (bits[r].size() != m.cols()) throw std::invalid_argument("ragged dense matrix");
    for (std::size_t c = 0; c < m.cols(); ++c) m.set(r, c, bits[r][c] != 0);
  }
  return m;
}

BinVector BinMatrix::row(std::size_t r) const {
  BinVector v(cols_);
  std::copy(w_.begin() + r * stride_, w_.begin() + (r + 1) * stride_, v.words().begin());
  return v;
}

void BinMatrix::set_row(std::size_t r, const BinVector& v) {
  assert(v.size() == cols_);
  std::copy(v.words().begin(), v.words().end(), w_.begin() + r * stride_);
}

void BinMatrix::row_xor(std::size_t dst, std::size_t src) {
  Word* d = w_.data() + dst * stride_;
  const Word* s = w_.data() + src * stride_;
  for (std::size_t i = 0; i < stride_; ++i) d[i] ^= s[i];
}

void BinMatrix::row_xor(std::size_t dst, const BinVector& v) {
  assert(v.size() == cols_);
  Word* d = w_.data() + dst * stride_;
  for (std::size_t i = 0; i < stride_; ++i) d[i] ^= v.words()[i];
}

void BinMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(w_.begin() + a * stride_, w_.begin() + (a + 1) * stride_,
                   w_.begin() + b * stride_);
}

BinMatrix BinMatrix::transposed() const {
  BinMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const Word* src = w_.data() + r * stride_;
    for (std::size_t wi = 0; wi < stride_; ++wi) {
      Word w = src[wi];
      while (w) {
        std::size_t c = wi * kWordBits + std::countr_zero(w);
        t.set(c, r, true);
        w &= w - 1;
      }
    }
  }
  return t;
}

BinVector BinMatrix::mul(const BinVector& v) const {
  assert(v.size() == cols_);
  BinVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const Word* rw = w_.data() + r * stride_;
    Word acc = 0;
    for (std::size_t i = 0; i < stride_; ++i) acc ^= (rw[i] & v.words()[i]);
    if (std::popcount(acc) & 1u) out.set(r, true);
  }
  return out;
}

BinMatrix multiply_impl(const BinMatrix& a, const BinMatrix& b, bool parallel) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("multiply: shape mismatch");
  BinMatrix c(a.rows_, b.cols_);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel && a.rows_ > 64)
#endif
  for (long long r = 0; r < (long long)a.rows_; ++r) {
    Word* crow = c.w_.data() + r * c.stride_;
    const Word* arow = a.w_.data() + r * a.stride_;
    for (std::size_t wi = 0; wi < a.stride_; ++wi) {
      Word w = arow[wi];
      while (w) {
        std::size_t j = wi * kWordBits + std::countr_zero(w);
        const Word* brow = b.w_.data() + j * b.stride_;
        for (std::size_t i = 0; i < b.stride_; ++i) crow[i] ^= brow[i];
        w &= w - 1;
      }
    }
  }
  (void)parallel;
  return c;
}

BinMatrix BinMatrix::operator*(const BinMatrix& o) const { return multiply_impl(*this, o, true); }

bool BinMatrix::is_zero() const {
  for (Word w : w_) if (w) return false;
  return true;
}

BinMatrix BinMatrix::submatrix_cols(const std::vector<std::size_t>& keep) const {
  BinMatrix m(rows_, keep.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t i = 0; i < keep.size(); ++i)
      if (get(r, keep[i])) m.set(r, i, true);
  return m;
}

BinMatrix BinMatrix::submatrix_rows(const std::vector<std::size_t>& keep) const {
  BinMatrix m(keep.size(), cols_);
  for (std::size_t i = 0; i < keep.size(); ++i)
    std::copy(w_.begin() + keep[i] * stride_, w_.begin() + (keep[i] + 1) * stride_,
              m.w_.begin() + i * stride_);
  return m;
}

void BinMatrix::append_row(const BinVector& v) {
  assert(rows_ == 0 || v.size() == cols_);
  if (rows_ == 0 && cols_ == 0) {
    cols_ = v.size();
    stride_ = words_for(cols_);
  }
  w_.resize((rows_ + 1) * stride_, 0);
  ++rows_;
  set_row(rows_ - 1, v);
}

std::string BinMatrix::to_string() const {
  std::string s;
  for (std::size_t r = 0; r < rows_; ++r) {
    s += row(r).to_string();
    s += '\n';
  }
  return s;
}

BinMatrix hstack(const std::vector<BinMatrix>& parts) {
  if (parts.empty()) return BinMatrix();
  std::size_t rows = parts[0].rows(), cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw std::invalid_argument("hstack: row mismatch");
    cols += p.cols();
  }
  BinMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    BinVector v(cols);
    std::size_t at = 0;
    for (const auto& p : parts) {
      v.xor_shifted(p.row(r), at);
      at += p.cols();
    }
    m.set_row(r, v);
  }
  return m;
}

BinMatrix vstack(const std::vector<BinMatrix>& parts) {
  if (parts.empty()) return BinMatrix();
  std::size_t cols = parts[0].cols(), rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw std::invalid_argument("vstack: col mismatch");
    rows += p.rows();
  }
  BinMatrix m(rows, cols);
  std::size_t at = 0;
  for (const auto& p : parts)
    for (std::size_t r = 0; r < p.rows(); ++r) m.set_row(at++, p.row(r));
  return m;
}

BinMatrix kron_impl(const BinMatrix& a, const BinMatrix& b, bool parallel) {
  BinMatrix m(a.rows_ * b.rows_, a.cols_ * b.cols_);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel && a.rows_ * b.rows_ > 64)
#endif
  for (long long ra = 0; ra < (long long)a.rows_; ++ra) {
    auto asup = a.row(ra).support();
    for (std::size_t rb = 0; rb < b.rows_; ++rb) {
      BinVector out(m.cols_);
      BinVector brow = b.row(rb);
      for (std::size_t ja : asup) out.xor_shifted(brow, ja * b.cols_);
      m.set_row(ra * b.rows_ + rb, out);
    }
  }
  (void)parallel;
  return m;
}

BinMatrix kron(const BinMatrix& a, const BinMatrix& b) { return kron_impl(a, b, true); }

namespace reference {
BinMatrix multiply(const BinMatrix& a, const BinMatrix& b) { return multiply_impl(a, b, false); }
BinMatrix kron(const BinMatrix& a, const BinMatrix& b) { return kron_impl(a, b, false); }
}  // namespace reference

// ---------------------------------------------------------------------------
// Elimination

RrefResult rref(const BinMatrix& m, PivotOrder order) {
  RrefResult res;
  res.R = m;
  res.transform = BinMatrix::identity(m.rows());
  std::size_t next_row = 0;
  std::vector<std::size_t> scan(m.cols());
  for (std::size_t i = 0; i < m.cols(); ++i)
    scan[i] = (order == PivotOrder::Leftmost) ? i : m.cols() - 1 - i;
  for (std::size_t c : scan) {
    if (next_row >= m.rows()) break;
    std::size_t pr = m.rows();
    for (std::size_t r = next_row; r < m.rows(); ++r)
      if (res.R.get(r, c)) { pr = r; break; }
    if (pr == m.rows()) continue;
    res.R.swap_rows(next_row, pr);
    res.transform.swap_rows(next_row, pr);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r != next_row && res.R.get(r, c)) {
        res.R.row_xor(r, next_row);
        res.transform.row_xor(r, next_row);
      }
    }
    res.pivots.push_back(c);
    ++next_row;
  }
  res.rank = res.pivots.size();
  return res;
}

std::size_t rank(const BinMatrix& m) {
  RowBasis b(m.cols());
  b.insert_rows(m);
  return b.rank();
}

BinMatrix kernel_basis(const BinMatrix& m, PivotOrder order) {
  RrefResult rr = rref(m, order);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : rr.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  BinMatrix out(free_cols.size(), m.cols());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    std::size_t f = free_cols[j];
    out.set(j, f, true);
    for (std::size_t r = 0; r < rr.rank; ++r)
      if (rr.R.get(r, f)) out.set(j, rr.pivots[r], true);
  }
  return out;
}

std::optional<BinVector> solve(const BinMatrix& m, const BinVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: shape mismatch");
  RrefResult rr = rref(m, PivotOrder::Leftmost);
  BinVector bp = rr.transform.mul(b);
  for (std::size_t r = rr.rank; r < m.rows(); ++r)
    if (bp.get(r)) return std::nullopt;
  BinVector x(m.cols());
  for (std::size_t r = 0; r < rr.rank; ++r)
    if (bp.get(r)) x.set(rr.pivots[r], true);
  return x;
}

BinMatrix complementary_space(const BinMatrix& m) {
  RrefResult rr = rref(m, PivotOrder::Leftmost);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : rr.pivots) is_pivot[p] = true;
  BinMatrix out(0, m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) out.append_row(BinVector::unit(m.cols(), c));
  return out;
}

// ---------------------------------------------------------------------------
// RowBasis

// Invariant: rows are mutually reduced (row i is the only row with a 1 in
// pivot column i), so reduction is a single pass over the rows.

bool RowBasis::insert(BinVector v) {
  assert(v.size() == ncols_);
  v = reduce(std::move(v));
  if (v.is_zero()) return false;
  std::size_t piv = v.lowest_set();
  for (auto& r : rows_)
    if (r.get(piv)) r ^= v;
  rows_.push_back(std::move(v));
  pivot_of_row_.push_back(piv);
  return true;
}

void RowBasis::insert_rows(const BinMatrix& m) {
  assert(m.rows() == 0 || m.cols() == ncols_);
  for (std::size_t r = 0; r < m.rows(); ++r) insert(m.row(r));
}

BinVector RowBasis::reduce(BinVector v) const {
  assert(v.size() == ncols_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (v.get(pivot_of_row_[i])) v ^= rows_[i];
  return v;
}

bool RowBasis::contains_all(const BinMatrix& m) const {
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!contains(m.row(r))) return false;
  return true;
}

BinMatrix RowBasis::as_matrix() const {
  BinMatrix m(rows_.size(), ncols_);
  for (std::size_t r = 0; r < rows_.size(); ++r) m.set_row(r, rows_[r]);
  return m;
}

bool RowBasis::same_span(const RowBasis& a, const RowBasis& b) {
  if (a.rank() != b.rank()) return false;
  for (const auto& r : a.rows_)
    if (!b.contains(r)) return false;
  return true;
}

}  // namespace homprod::gf2
