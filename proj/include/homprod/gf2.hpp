#pragma once
// Dense bit-packed linear algebra over GF(2).
//
// BinVector / BinMatrix store bits in 64-bit words, row-major.  All
// higher-level code (codes, chain complexes, Pauli frames, certification)
// reduces to the handful of kernels in this file: row reduction with a
// recorded transform, kernel bases, Kronecker products, and an incremental
// row-echelon basis used for span and membership queries.
//
// Invariant everywhere: unused high bits of the last word of a row are zero.

#include <cstdint>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace homprod::gf2 {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

class BinVector {
public:
  BinVector() = default;
  explicit BinVector(std::size_t n) : n_(n), w_(words_for(n), 0) {}

  static BinVector unit(std::size_t n, std::size_t i);
  static BinVector from_bits(const std::vector<int>& bits);

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

  bool get(std::size_t i) const { return (w_[i / kWordBits] >> (i % kWordBits)) & 1u; }
  void set(std::size_t i, bool v) {
    Word m = Word(1) << (i % kWordBits);
    if (v) w_[i / kWordBits] |= m; else w_[i / kWordBits] &= ~m;
  }
  void flip(std::size_t i) { w_[i / kWordBits] ^= Word(1) << (i % kWordBits); }

  BinVector& operator^=(const BinVector& o);
  friend BinVector operator^(BinVector a, const BinVector& b) { a ^= b; return a; }
  bool operator==(const BinVector&) const = default;

  std::size_t weight() const;
  bool is_zero() const;
  // Index of lowest set bit, or size() if zero.
  std::size_t lowest_set() const;
  // GF(2) inner product.
  bool dot(const BinVector& o) const;
  std::vector<std::size_t> support() const;

  // xor `src` into this vector at bit offset `at` (this[at+i] ^= src[i]).
  void xor_shifted(const BinVector& src, std::size_t at);
  // Bits [begin, begin+len).
  BinVector slice(std::size_t begin, std::size_t len) const;
  static BinVector concat(const BinVector& a, const BinVector& b);

  const std::vector<Word>& words() const { return w_; }
  std::vector<Word>& words() { return w_; }
  std::string to_string() const;

private:
  std::size_t n_ = 0;
  std::vector<Word> w_;
};

class BinMatrix {
public:
  BinMatrix() = default;
  BinMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(words_for(cols)), w_(rows * stride_, 0) {}

  static BinMatrix identity(std::size_t n);
  static BinMatrix from_rows(const std::vector<BinVector>& rows);
  static BinMatrix from_dense(const std::vector<std::vector<int>>& bits);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (w_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v) {
    Word m = Word(1) << (c % kWordBits);
    Word& x = w_[r * stride_ + c / kWordBits];
    if (v) x |= m; else x &= ~m;
  }
  void flip(std::size_t r, std::size_t c) {
    w_[r * stride_ + c / kWordBits] ^= Word(1) << (c % kWordBits);
  }

  BinVector row(std::size_t r) const;
  void set_row(std::size_t r, const BinVector& v);
  void row_xor(std::size_t dst, std::size_t src);           // row dst ^= row src
  void row_xor(std::size_t dst, const BinVector& v);
  void swap_rows(std::size_t a, std::size_t b);

  BinMatrix transposed() const;
  BinVector mul(const BinVector& v) const;                  // M * v
  BinMatrix operator*(const BinMatrix& o) const;
  bool operator==(const BinMatrix&) const = default;
  bool is_zero() const;

  BinMatrix submatrix_cols(const std::vector<std::size_t>& keep) const;
  BinMatrix submatrix_rows(const std::vector<std::size_t>& keep) const;
  void append_row(const BinVector& v);

  std::string to_string() const;

private:
  std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
  std::vector<Word> w_;
  friend BinMatrix multiply_impl(const BinMatrix&, const BinMatrix&, bool);
  friend BinMatrix kron_impl(const BinMatrix&, const BinMatrix&, bool);
};

BinMatrix hstack(const std::vector<BinMatrix>& parts);
BinMatrix vstack(const std::vector<BinMatrix>& parts);
BinMatrix kron(const BinMatrix& a, const BinMatrix& b);

enum class PivotOrder { Leftmost, Rightmost };

struct RrefResult {
  BinMatrix R;                        // reduced row echelon form of M
  std::vector<std::size_t> pivots;    // pivot column of each pivot row, in row order
  BinMatrix transform;                // invertible T with T * M = R
  std::size_t rank = 0;
};

// Gauss-Jordan elimination; column scan order set by `order`, row choice is
// the lowest-index candidate, so results are deterministic.
RrefResult rref(const BinMatrix& m, PivotOrder order = PivotOrder::Leftmost);
std::size_t rank(const BinMatrix& m);

// Rows span ker(M) = {v : M v = 0}; systematic on the non-pivot columns of
// rref(M, order): basis row j has a 1 in the j-th free column and that free
// column is zero in every other basis row.
BinMatrix kernel_basis(const BinMatrix& m, PivotOrder order = PivotOrder::Leftmost);

// A solution x of M x = b, if one exists.
std::optional<BinVector> solve(const BinMatrix& m, const BinVector& b);

// Unit vectors on the free columns of M: rowspace(M) + span(result) = F^n
// and the union of the two bases is independent.
BinMatrix complementary_space(const BinMatrix& m);

// Incremental row-echelon basis: the workhorse behind membership, coset
// reduction, and span-equality checks.
class RowBasis {
public:
  RowBasis() = default;
  explicit RowBasis(std::size_t ncols) : ncols_(ncols) {}

  // Returns true if v enlarged the span.
  bool insert(BinVector v);
  void insert_rows(const BinMatrix& m);
  // Residual of v after reduction by the basis (zero iff v in span).
  BinVector reduce(BinVector v) const;
  bool contains(const BinVector& v) const { return reduce(v).is_zero(); }
  bool contains_all(const BinMatrix& m) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t ncols() const { return ncols_; }
  const std::vector<BinVector>& rows() const { return rows_; }
  BinMatrix as_matrix() const;

  static bool same_span(const RowBasis& a, const RowBasis& b);

private:
  std::size_t ncols_ = 0;
  std::vector<BinVector> rows_;            // echelon rows, one per pivot
  std::vector<std::size_t> pivot_of_row_;  // lowest set bit of each row
};

// Serial reference implementations of the OpenMP-parallel kernels; the test
// suite and the benchmark tool compare against these.
namespace reference {
BinMatrix multiply(const BinMatrix& a, const BinMatrix& b);
BinMatrix kron(const BinMatrix& a, const BinMatrix& b);
}  // namespace reference

}  // namespace homprod::gf2
