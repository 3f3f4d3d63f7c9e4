#pragma once
// Pauli operators with phase tracking: P = i^phase * X^x * Z^z.

#include <cstdint>
#include <string>

#include "homprod/gf2.hpp"

namespace homprod {

struct Pauli {
  gf2::BinVector x, z;
  int phase = 0;  // power of i, mod 4

  static Pauli identity(std::size_t n) { return {gf2::BinVector(n), gf2::BinVector(n), 0}; }
  // Single-qubit letter embedded at position q; letter in {'X','Y','Z','I'}.
  static Pauli letter(std::size_t n, std::size_t q, char letter);

  std::size_t num_qubits() const { return x.size(); }
  std::size_t weight() const;
  bool is_identity() const { return x.is_zero() && z.is_zero() && phase % 4 == 0; }
  // 'I','X','Y','Z' at position q.
  char letter_at(std::size_t q) const;
  std::string to_string() const;  // e.g. "+XIZY", "-ZZ"
  bool operator==(const Pauli&) const = default;
};

Pauli pauli_mul(const Pauli& a, const Pauli& b);
bool pauli_commute(const Pauli& a, const Pauli& b);

}  // namespace homprod
