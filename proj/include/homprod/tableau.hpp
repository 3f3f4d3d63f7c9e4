#pragma once
// CHP-style stabilizer simulation with destabilizers and exact signs.
//
// Measurements are "forced": a random outcome collapses onto the +1
// eigenspace (the Pauli frame absorbs the correction), while a deterministic
// outcome reports its sign untouched.  This matches how gadget schedules are
// replayed: measurement results feed classical frames, never branches.

#include <cstdint>
#include <vector>

#include "homprod/pauli.hpp"

namespace homprod {

class Tableau {
 public:
  explicit Tableau(std::size_t n);  // |0...0>

  std::size_t num_qubits() const { return n_; }

  void h(std::size_t q);
  void s(std::size_t q);
  void sdg(std::size_t q);
  void x(std::size_t q);
  void z(std::size_t q);
  void cnot(std::size_t c, std::size_t t);
  void cz(std::size_t a, std::size_t b);
  void swap_qubits(std::size_t a, std::size_t b);

  struct Meas {
    bool deterministic = false;
    int sign = +1;  // pre-forcing sign; random outcomes force +1
  };
  Meas measure_forced(const Pauli& p);
  void prep_z(std::size_t q);  // reset to |0>
  void prep_x(std::size_t q);  // reset to |+>

  std::vector<Pauli> stabilizers() const;
  // Stabilizer group of the qubits in `keep` (which must be in a product
  // state with the rest): rows are eliminated on the complement's columns
  // and restricted.
  std::vector<Pauli> stabilizer_group_on(const std::vector<std::size_t>& keep) const;
  // Span equality of two stabilizer groups given by generator lists.
  static bool same_group(const std::vector<Pauli>& a, const std::vector<Pauli>& b,
                         bool up_to_sign);

 private:
  std::size_t n_;
  // rows 0..n-1 destabilizers, n..2n-1 stabilizers
  std::vector<Pauli> rows_;

  void rowmul(std::size_t dst, std::size_t src);
};

}  // namespace homprod
