#include "homprod/tableau.hpp"

#include <algorithm>

#include "homprod/error.hpp"

namespace homprod {

Tableau::Tableau(std::size_t n) : n_(n) {
  rows_.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) rows_.push_back(Pauli::letter(n, i, 'X'));
  for (std::size_t i = 0; i < n; ++i) rows_.push_back(Pauli::letter(n, i, 'Z'));
}

void Tableau::rowmul(std::size_t dst, std::size_t src) {
  rows_[dst] = pauli_mul(rows_[src], rows_[dst]);
}

void Tableau::h(std::size_t q) {
  for (auto& r : rows_) {
    bool xb = r.x.get(q), zb = r.z.get(q);
    if (xb && zb) r.phase = (r.phase + 2) % 4;  // Y -> -Y
    r.x.set(q, zb);
    r.z.set(q, xb);
  }
}

void Tableau::s(std::size_t q) {
  // i^p X Z^b -> i^(p+1) X Z^(b+1): X -> Y and Y -> -X.
  for (auto& r : rows_) {
    if (r.x.get(q)) {
      r.phase = (r.phase + 1) % 4;
      r.z.flip(q);
    }
  }
}

void Tableau::sdg(std::size_t q) {
  s(q);
  s(q);
  s(q);
}

void Tableau::x(std::size_t q) {
  for (auto& r : rows_)
    if (r.z.get(q)) r.phase = (r.phase + 2) % 4;
}

void Tableau::z(std::size_t q) {
  for (auto& r : rows_)
    if (r.x.get(q)) r.phase = (r.phase + 2) % 4;
}

void Tableau::cnot(std::size_t c, std::size_t t) {
  for (auto& r : rows_) {
    bool xc = r.x.get(c), zt = r.z.get(t);
    if (xc && zt && (r.x.get(t) == r.z.get(c))) r.phase = (r.phase + 2) % 4;
    if (xc) r.x.flip(t);
    if (zt) r.z.flip(c);
  }
}

void Tableau::cz(std::size_t a, std::size_t b) {
  h(b);
  cnot(a, b);
  h(b);
}

void Tableau::swap_qubits(std::size_t a, std::size_t b) {
  cnot(a, b);
  cnot(b, a);
  cnot(a, b);
}

Tableau::Meas Tableau::measure_forced(const Pauli& p) {
  if (p.num_qubits() != n_) throw Error("measure_forced: size mismatch");
  std::size_t pivot = 2 * n_;
  for (std::size_t i = n_; i < 2 * n_; ++i) {
    if (!pauli_commute(rows_[i], p)) {
      pivot = i;
      break;
    }
  }
  if (pivot < 2 * n_) {
    // Random outcome: collapse onto the eigenspace of +P as passed.
    Pauli q = p;
    q.phase = ((q.phase % 4) + 4) % 4;
    int ys = 0;
    for (std::size_t i = 0; i < n_; ++i)
      if (q.x.get(i) && q.z.get(i)) ++ys;
    if ((q.phase - ys) % 2 != 0) throw Error("measure_forced: non-hermitian operator");
    for (std::size_t i = 0; i < 2 * n_; ++i)
      if (i != pivot && !pauli_commute(rows_[i], p)) rowmul(i, pivot);
    rows_[pivot - n_] = rows_[pivot];
    rows_[pivot] = q;
    return {false, +1};
  }
  // Deterministic: decompose over the stabilizer rows via destabilizers.
  Pauli acc = Pauli::identity(n_);
  for (std::size_t j = 0; j < n_; ++j)
    if (!pauli_commute(rows_[j], p)) acc = pauli_mul(acc, rows_[n_ + j]);
  if (acc.x != p.x || acc.z != p.z)
    throw Error("measure_forced: operator outside the stabilizer span");
  int diff = ((p.phase - acc.phase) % 4 + 4) % 4;
  if (diff % 2 != 0) throw Error("measure_forced: imaginary eigenvalue");
  return {true, diff == 0 ? +1 : -1};
}

void Tableau::prep_z(std::size_t q) {
  auto m = measure_forced(Pauli::letter(n_, q, 'Z'));
  if (m.deterministic && m.sign < 0) x(q);
}

void Tableau::prep_x(std::size_t q) {
  auto m = measure_forced(Pauli::letter(n_, q, 'X'));
  if (m.deterministic && m.sign < 0) z(q);
}

std::vector<Pauli> Tableau::stabilizers() const {
  return {rows_.begin() + n_, rows_.end()};
}

std::vector<Pauli> Tableau::stabilizer_group_on(const std::vector<std::size_t>& keep) const {
  std::vector<bool> keep_mask(n_, false);
  for (auto q : keep) keep_mask[q] = true;
  std::vector<Pauli> pool = stabilizers();
  // Eliminate on the complement's x and z columns.
  std::vector<Pauli> kept_rows;
  for (std::size_t q = 0; q < n_; ++q) {
    if (keep_mask[q]) continue;
    for (int which = 0; which < 2; ++which) {
      auto bit = [&](const Pauli& p) { return which == 0 ? p.x.get(q) : p.z.get(q); };
      std::size_t piv = pool.size();
      for (std::size_t i = 0; i < pool.size(); ++i)
        if (bit(pool[i])) { piv = i; break; }
      if (piv == pool.size()) continue;
      Pauli pv = pool[piv];
      pool.erase(pool.begin() + piv);
      for (auto& r : pool)
        if (bit(r)) r = pauli_mul(pv, r);
    }
  }
  // Remaining rows must be supported on `keep`; restrict coordinates.
  std::vector<Pauli> out;
  for (const auto& r : pool) {
    Pauli s = Pauli::identity(keep.size());
    bool clean = true;
    for (std::size_t q = 0; q < n_ && clean; ++q)
      if (!keep_mask[q] && (r.x.get(q) || r.z.get(q))) clean = false;
    if (!clean) throw Error("stabilizer_group_on: subsystem is not in a product state");
    for (std::size_t i = 0; i < keep.size(); ++i) {
      if (r.x.get(keep[i])) s.x.set(i, true);
      if (r.z.get(keep[i])) s.z.set(i, true);
    }
    s.phase = r.phase;
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

// Canonical generator list: symplectic echelon form with phases combined.
std::vector<Pauli> canonicalize(std::vector<Pauli> rows) {
  if (rows.empty()) return rows;
  std::size_t n = rows[0].num_qubits();
  std::vector<Pauli> out;
  std::size_t at = 0;
  for (std::size_t col = 0; col < 2 * n; ++col) {
    auto bit = [&](const Pauli& p) {
      return col < n ? p.x.get(col) : p.z.get(col - n);
    };
    std::size_t piv = rows.size();
    for (std::size_t i = at; i < rows.size(); ++i)
      if (bit(rows[i])) { piv = i; break; }
    if (piv == rows.size()) continue;
    std::swap(rows[at], rows[piv]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != at && bit(rows[i])) rows[i] = pauli_mul(rows[at], rows[i]);
    ++at;
  }
  rows.resize(at);
  return rows;
}

}  // namespace

bool Tableau::same_group(const std::vector<Pauli>& a, const std::vector<Pauli>& b,
                         bool up_to_sign) {
  auto ca = canonicalize(a), cb = canonicalize(b);
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i].x != cb[i].x || ca[i].z != cb[i].z) return false;
    if (!up_to_sign && ((ca[i].phase - cb[i].phase) % 4 + 4) % 4 != 0) return false;
  }
  return true;
}

}  // namespace homprod
