#include "homprod/pauli.hpp"

#include "homprod/error.hpp"

namespace homprod {

Pauli Pauli::letter(std::size_t n, std::size_t q, char letter) {
  Pauli p = identity(n);
  switch (letter) {
    case 'I': break;
    case 'X': p.x.set(q, true); break;
    case 'Z': p.z.set(q, true); break;
    case 'Y':
      p.x.set(q, true);
      p.z.set(q, true);
      p.phase = 1;
      break;
    default: throw Error("Pauli::letter: unknown letter");
  }
  return p;
}

std::size_t Pauli::weight() const {
  std::size_t w = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x.get(i) || z.get(i)) ++w;
  return w;
}

char Pauli::letter_at(std::size_t q) const {
  bool xb = x.get(q), zb = z.get(q);
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

std::string Pauli::to_string() const {
  // Count the i factors contributed by writing each Y as i*XZ.
  int ys = 0;
  for (std::size_t q = 0; q < num_qubits(); ++q)
    if (x.get(q) && z.get(q)) ++ys;
  int ph = ((phase - ys) % 4 + 4) % 4;
  static const char* signs[] = {"+", "+i", "-", "-i"};
  std::string s = signs[ph];
  for (std::size_t q = 0; q < num_qubits(); ++q) s += letter_at(q);
  return s;
}

Pauli pauli_mul(const Pauli& a, const Pauli& b) {
  // (i^pa X^xa Z^za)(i^pb X^xb Z^zb) = i^(pa+pb+2 za.xb) X^(xa+xb) Z^(za+zb)
  Pauli out;
  out.x = a.x ^ b.x;
  out.z = a.z ^ b.z;
  out.phase = (a.phase + b.phase + 2 * (a.z.dot(b.x) ? 1 : 0)) % 4;
  return out;
}

bool pauli_commute(const Pauli& a, const Pauli& b) {
  return a.x.dot(b.z) == a.z.dot(b.x);
}

}  // namespace homprod
