#include "homprod/homomorphism.hpp"

#include "homprod/error.hpp"

namespace homprod {

using gf2::BinMatrix;

bool verify_total_map(const TotalComplex& dst, const std::vector<BinMatrix>& gamma,
                      const TotalComplex& src) {
  if (dst.D() != src.D() || (int)gamma.size() != src.D() + 1) return false;
  for (int g = 1; g <= src.D(); ++g)
    if (!(dst.delta[g] * gamma[g] == gamma[g - 1] * src.delta[g])) return false;
  return true;
}

LiftedProductMap lift_to_product(const std::vector<FactorComplex>& base_factors,
                                 const std::vector<std::optional<FactorModification>>& mods) {
  const int D = (int)base_factors.size();
  if ((int)mods.size() != D) throw Error("lift_to_product: one modification slot per factor");

  bool any_direct = false, any_transposed = false;
  for (int f = 0; f < D; ++f) {
    if (!mods[f]) continue;
    (base_factors[f].transposed ? any_transposed : any_direct) = true;
    const auto& m = *mods[f];
    if (!verify_classical_map(base_factors[f].H, m.to_base, m.modified_H))
      throw Error("lift_to_product: factor map fails H gamma1 = gamma0 H'");
  }
  if (any_direct && any_transposed)
    throw Error("lift_to_product: cannot mix direct- and transposed-factor modifications");

  LiftedProductMap out;
  out.modified_is_source = !any_transposed;  // pure transposed mods reverse the arrow

  std::vector<FactorComplex> modified_factors = base_factors;
  for (int f = 0; f < D; ++f)
    if (mods[f]) modified_factors[f].H = mods[f]->modified_H;
  out.base = total_complex(base_factors);
  out.modified = total_complex(modified_factors);

  const TotalComplex& src = out.source();
  const TotalComplex& dst = out.target();
  out.gamma.resize(D + 1);
  for (int g = 0; g <= D; ++g) {
    BinMatrix fg(dst.dim(g), src.dim(g));
    for (std::size_t s = 0; s < src.summands[g].size(); ++s) {
      const Summand& ss = src.summands[g][s];
      const Summand& ds = dst.summands[g][s];  // same grade-vector order both sides
      BinMatrix blk = BinMatrix::identity(1);
      for (int f = 0; f < D; ++f) {
        BinMatrix part;
        if (!mods[f]) {
          part = BinMatrix::identity(ss.factor_dims[f]);
        } else if (!base_factors[f].transposed) {
          // modified -> base: bits gamma1 at factor grade 1, checks gamma0 at 0
          part = ss.grades[f] ? mods[f]->to_base.gamma1 : mods[f]->to_base.gamma0;
        } else {
          // base -> modified: factor grade 1 holds checks, grade 0 bits
          part = ss.grades[f] ? mods[f]->to_base.gamma0.transposed()
                              : mods[f]->to_base.gamma1.transposed();
        }
        blk = gf2::kron(blk, part);
      }
      for (std::size_t r = 0; r < blk.rows(); ++r) {
        gf2::BinVector wide(fg.cols());
        wide.xor_shifted(blk.row(r), ss.offset);
        fg.row_xor(ds.offset + r, wide);
      }
    }
    out.gamma[g] = std::move(fg);
  }

  if (!verify_total_map(dst, out.gamma, src))
    throw Error("lift_to_product: lifted map fails the chain identity");
  return out;
}

ProductAutomorphism translation_automorphism(const QuasiCyclicSpec& s1,
                                             const QuasiCyclicSpec& s2, std::size_t i,
                                             std::size_t j) {
  if (s1.l != s2.l) throw Error("translation_automorphism: lift sizes differ");
  const std::size_t nb1 = s1.gpoly.size(), rb1 = s1.hpoly.size();
  const std::size_t nb2 = s2.gpoly.size(), rb2 = s2.hpoly.size();
  BinMatrix sb1 = block_shift(nb1, s1.l, i), sc1 = block_shift(rb1, s1.l, i);
  BinMatrix sb2 = block_shift(nb2, s2.l, j), sc2 = block_shift(rb2, s2.l, j);

  ProductAutomorphism a;
  a.i = i;
  a.j = j;
  // Qubits: bits x bits then checks x checks.
  BinMatrix q_bits = gf2::kron(sb1, sb2);
  BinMatrix q_checks = gf2::kron(sc1, sc2);
  std::size_t nb = q_bits.rows(), nc = q_checks.rows();
  a.g1 = BinMatrix(nb + nc, nb + nc);
  for (std::size_t r = 0; r < nb; ++r) {
    gf2::BinVector wide(nb + nc);
    wide.xor_shifted(q_bits.row(r), 0);
    a.g1.set_row(r, wide);
  }
  for (std::size_t r = 0; r < nc; ++r) {
    gf2::BinVector wide(nb + nc);
    wide.xor_shifted(q_checks.row(r), nb);
    a.g1.set_row(nb + r, wide);
  }
  a.g2 = gf2::kron(sc1, sb2);  // Z-check space: checks x bits
  a.g0 = gf2::kron(sb1, sc2);  // X-check space: bits x checks

  // Chain-map identity against the actual product.
  auto c1 = expand_quasi_cyclic(s1);
  auto c2 = expand_quasi_cyclic(s2);
  TotalComplex t = total_complex({{c1.H, true}, {c2.H, false}});
  if (!(t.delta[2] * a.g2 == a.g1 * t.delta[2]) || !(t.delta[1] * a.g1 == a.g0 * t.delta[1]))
    throw Error("translation_automorphism: permutation is not a chain map");
  return a;
}

}  // namespace homprod
