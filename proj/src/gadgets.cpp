#include "homprod/gadgets.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "homprod/chain.hpp"
#include "homprod/error.hpp"
#include "homprod/homomorphism.hpp"

namespace homprod {

using gf2::BinMatrix;
using gf2::BinVector;

namespace {

using Mask = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

void check_family(const EdgeFamily& fam, std::size_t bound, const char* what) {
  std::set<std::uint32_t> seen;
  for (const auto& e : fam) {
    if (e.empty()) throw Error(std::string(what) + ": empty hyperedge");
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] >= bound) throw Error(std::string(what) + ": index out of range");
      if (i > 0 && e[i] <= e[i - 1])
        throw Error(std::string(what) + ": edge must be strictly ascending");
      if (!seen.insert(e[i]).second)
        throw Error(std::string(what) + ": edges must be disjoint");
    }
  }
}

// Consecutive-pair chain splitting: edges of size one and two stand whole,
// larger edges decay into adjacent pairs (which generate the same even
// subgroup the mask absorption leaves intact).
EdgeFamily expand_edge(const Edge& e) {
  if (e.size() <= 2) return {e};
  EdgeFamily out;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) out.push_back({e[i], e[i + 1]});
  return out;
}

// Check-matrix surgery of one factor for a measurement round.  Edges are
// over the factor's logical indices.  Every multi-edge gets consecutive-pair
// parity rows over its information bits.  In the ancilla role the bits
// belonging to no edge are punctured (so the selected logicals survive the
// modified code, merged along the chains); in the mask role exactly the
// singleton-edge bits are punctured (those escape absorption entirely,
// multi-edges absorb pairwise, untouched logicals absorb fully).
ModifiedCode round_factor(const ClassicalCode& c, const EdgeFamily& fam,
                          bool ancilla_role, const char* what) {
  check_family(fam, c.k(), what);
  std::vector<std::vector<std::size_t>> chains;
  std::vector<bool> in_edge(c.k(), false);
  std::vector<std::size_t> drop;
  for (const auto& e : fam) {
    std::vector<std::size_t> bits;
    for (auto j : e) {
      bits.push_back(c.info_bits[j]);
      in_edge[j] = true;
    }
    if (bits.size() >= 2) chains.push_back(std::move(bits));
    if (!ancilla_role && e.size() == 1) drop.push_back(c.info_bits[e[0]]);
  }
  if (ancilla_role)
    for (std::size_t j = 0; j < c.k(); ++j)
      if (!in_edge[j]) drop.push_back(c.info_bits[j]);
  BinMatrix extra = repetition_on_hyperedges(c.n(), chains);
  bool warn = false;
  ModifiedCode m = augment_then_puncture(c, extra, drop, &warn);
  if (warn) throw Error(std::string(what) + ": punctured a non-information bit");
  return m;
}

// Lifted chain maps always orient the control on the destination side of the
// map, so each gamma entry (row, col) is one (control, target) pair.
Mask gamma_pairs(const BinMatrix& g) {
  Mask m;
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t c = 0; c < g.cols(); ++c)
      if (g.get(r, c))
        m.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c)});
  return m;
}

std::shared_ptr<const CssCode> shared_code(CssCode&& c) {
  return std::make_shared<const CssCode>(std::move(c));
}

int dist_of(const BlockSpec& s) { return s.code && s.code->d ? std::max(1, *s.code->d) : 1; }

PauliProductRef single(const std::string& b, std::uint32_t q, char letter) {
  return PauliProductRef{{LogicalRef{b, q, letter}}};
}

}  // namespace

std::uint32_t BlockSpec::cell_index(Cell c) const {
  if (!code) throw Error("block spec has no code");
  if (c.row >= rows() || c.col >= cols()) throw Error("cell outside the logical grid");
  return static_cast<std::uint32_t>(code->grid_index({c.row, c.col}));
}

std::uint32_t CubeSpec::cell_index(std::uint32_t x, std::uint32_t y, std::uint32_t z) const {
  if (!code) throw Error("cube spec has no code");
  return static_cast<std::uint32_t>(code->grid_index({x, y, z}));
}

BlockSpec make_block(const ClassicalCode& first, const ClassicalCode& second) {
  BlockSpec b{first, second, std::nullopt, std::nullopt, nullptr};
  b.code = shared_code(hgp(first, second));
  return b;
}

BlockSpec make_block(const QuasiCyclicSpec& first, const QuasiCyclicSpec& second,
                     std::optional<int> d) {
  ClassicalCode c1 = expand_quasi_cyclic(first);
  ClassicalCode c2 = expand_quasi_cyclic(second);
  if (d) c1.d = c2.d = d;
  BlockSpec b{c1, c2, first, second, nullptr};
  b.code = shared_code(hgp(c1, c2));
  return b;
}

BlockSpec catalog_block(const std::string& name) {
  for (const auto& e : ogsc_catalog())
    if (e.name == name) return make_block(e.spec, e.spec, e.d);
  throw Error("unknown catalog code '" + name + "'");
}

CubeSpec make_cube(const ClassicalCode& c1, const ClassicalCode& c2,
                   const ClassicalCode& c3) {
  CubeSpec s{c1, c2, c3, nullptr};
  s.code = shared_code(homological_3d(c1, c2, c3));
  return s;
}

// ---------------------------------------------------------------------------
// Forge

Forge::Forge(std::string schedule_name, int distance) : distance_(distance) {
  sched_.name = std::move(schedule_name);
}

void Forge::add_data(const std::string& name, const BlockSpec& spec,
                     std::vector<std::uint32_t> unframed,
                     std::vector<PauliProductRef> promised) {
  if (!spec.code) throw Error("block spec has no code");
  if (!sched_.blocks.emplace(name, BlockInfo{spec.code, true, std::move(unframed),
                                             std::move(promised)}).second)
    throw Error("duplicate block name '" + name + "'");
  specs_.emplace(name, spec);
}

void Forge::add_data_cube(const std::string& name, const CubeSpec& spec) {
  if (!spec.code) throw Error("cube spec has no code");
  if (!sched_.blocks.emplace(name, BlockInfo{spec.code, true, {}, {}}).second)
    throw Error("duplicate block name '" + name + "'");
  cubes_.emplace(name, spec);
}

std::string Forge::add_fresh(const BlockSpec& spec, StepKind prep, bool background) {
  if (!spec.code) throw Error("block spec has no code");
  std::string name = "anc" + std::to_string(fresh_++);
  sched_.blocks.emplace(name, BlockInfo{spec.code, false, {}, {}});
  specs_.emplace(name, spec);
  GadgetStep st;
  st.kind = prep;
  st.block = name;
  st.background = background;
  sched_.steps.push_back(std::move(st));
  return name;
}

const BlockSpec& Forge::spec_of(const std::string& block) const {
  auto it = specs_.find(block);
  if (it == specs_.end()) throw Error("block '" + block + "' is not a 2D product block");
  return it->second;
}

void Forge::cnot(const std::string& control, const std::string& target,
                 std::vector<std::pair<std::uint32_t, std::uint32_t>> mask, bool fused) {
  GadgetStep st;
  st.kind = StepKind::TransversalCNOT;
  st.block = target;
  st.control = control;
  st.mask = std::move(mask);
  st.fused = fused;
  sched_.steps.push_back(std::move(st));
}

void Forge::full_cnot(const std::string& control, const std::string& target, bool fused) {
  std::size_t n = sched_.blocks.at(control).code->n;
  if (n != sched_.blocks.at(target).code->n)
    throw Error("full transversal cnot needs equal block sizes");
  Mask m(n);
  for (std::size_t q = 0; q < n; ++q)
    m[q] = {static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(q)};
  cnot(control, target, std::move(m), fused);
}

void Forge::measure(const std::string& block, char basis) {
  GadgetStep st;
  st.kind = basis == 'Z' ? StepKind::MeasureZ : StepKind::MeasureX;
  st.block = block;
  sched_.steps.push_back(std::move(st));
}

void Forge::permute(const std::string& block, std::vector<std::uint32_t> perm,
                    const std::string& note) {
  GadgetStep st;
  st.kind = StepKind::Permute;
  st.block = block;
  st.perm = std::move(perm);
  st.note = note;
  sched_.steps.push_back(std::move(st));
}

void Forge::translate(const std::string& block, std::size_t i, std::size_t j) {
  const BlockSpec& s = spec_of(block);
  if (!s.first_qc || !s.second_qc)
    throw Error("translation needs quasi-cyclic factor specs on '" + block + "'");
  ProductAutomorphism a = translation_automorphism(*s.first_qc, *s.second_qc, i, j);
  // g1 row r carries a single one in the source column: content of qubit q
  // moves to the row holding the one in column q.
  std::vector<std::uint32_t> perm(a.g1.rows(), 0);
  for (std::size_t r = 0; r < a.g1.rows(); ++r)
    for (std::size_t c = 0; c < a.g1.cols(); ++c)
      if (a.g1.get(r, c)) perm[c] = static_cast<std::uint32_t>(r);
  permute(block, std::move(perm),
          "translate(" + std::to_string(i) + "," + std::to_string(j) + ")");
}

void Forge::fold_hswap(const std::string& block) {
  GadgetStep st;
  st.kind = StepKind::FoldHSwap;
  st.block = block;
  sched_.steps.push_back(std::move(st));
}

void Forge::fold_czs(const std::string& block) {
  GadgetStep st;
  st.kind = StepKind::FoldCZS;
  st.block = block;
  sched_.steps.push_back(std::move(st));
}

void Forge::annotate(const std::string& note) {
  GadgetStep st;
  st.kind = StepKind::Annotation;
  st.note = note;
  sched_.steps.push_back(std::move(st));
}

void Forge::gppm(char basis, const EdgeFamily& rows, const ColEdgeFamily& cols) {
  if (basis != 'Z' && basis != 'X') throw Error("gppm basis must be 'Z' or 'X'");
  if (cols.empty()) throw Error("gppm needs at least one column hyperedge");

  // Blocks touched, in order of first appearance; all must share the row factor.
  std::vector<std::string> touched;
  auto block_index = [&](const std::string& b) -> std::size_t {
    for (std::size_t i = 0; i < touched.size(); ++i)
      if (touched[i] == b) return i;
    touched.push_back(b);
    return touched.size() - 1;
  };
  ColEdgeFamily sorted_cols = cols;
  for (auto& e : sorted_cols)
    for (const auto& ref : e) {
      const BlockSpec& s = spec_of(ref.block);
      if (ref.col >= s.cols()) throw Error("gppm column index out of range");
      block_index(ref.block);
    }
  const ClassicalCode& first = spec_of(touched[0]).first;
  for (const auto& b : touched)
    if (!(spec_of(b).first.H == first.H))
      throw Error("gppm blocks must share the row factor");
  check_family(rows, first.k(), "gppm rows");

  std::vector<ClassicalCode> seconds;
  for (const auto& b : touched) seconds.push_back(spec_of(b).second);
  HgpUnion uni = hgp_union(first, std::move(seconds));

  EdgeFamily merged_cols;
  for (const auto& e : sorted_cols) {
    Edge me;
    for (const auto& ref : e)
      me.push_back(static_cast<std::uint32_t>(
          uni.merged_col(block_index(ref.block), ref.col)));
    std::sort(me.begin(), me.end());
    merged_cols.push_back(std::move(me));
  }
  check_family(merged_cols, uni.merged_second.k(), "gppm cols");

  if (basis == 'Z') {
    ModifiedCode c2p = round_factor(uni.merged_second, merged_cols, true, "gppm cols");
    BlockSpec anc_spec{first, c2p.code, std::nullopt, std::nullopt,
                       shared_code(hgp(first, c2p.code))};
    std::string anc = add_fresh(anc_spec, StepKind::PrepZ);
    ModifiedCode c1pp = round_factor(first, rows, false, "gppm rows");
    BlockSpec mask_spec{c1pp.code, c2p.code, std::nullopt, std::nullopt,
                        shared_code(hgp(c1pp.code, c2p.code))};
    std::string msk = add_fresh(mask_spec, StepKind::PrepX);

    LiftedProductMap ml = lift_to_product(
        {{first.H, true}, {c2p.code.H, false}},
        {FactorModification{c1pp.code.H, c1pp.to_base}, std::nullopt});
    cnot(msk, anc, gamma_pairs(ml.gamma[1]));
    measure(msk, 'X');

    LiftedProductMap dl = lift_to_product(
        {{first.H, true}, {uni.merged_second.H, false}},
        {std::nullopt, FactorModification{c2p.code.H, c2p.to_base}});
    std::vector<Mask> per_block(touched.size());
    for (auto [qm, qa] : gamma_pairs(dl.gamma[1])) {
      auto loc = uni.embedding[qm];
      per_block[loc.block].push_back({static_cast<std::uint32_t>(loc.local), qa});
    }
    bool lead = true;
    for (std::size_t b = 0; b < touched.size(); ++b)
      if (!per_block[b].empty()) {
        cnot(touched[b], anc, std::move(per_block[b]), /*fused=*/!lead);
        lead = false;
      }
    measure(anc, 'Z');
  } else {
    ModifiedCode c1p = round_factor(first, rows, true, "gppm rows");
    BlockSpec anc_spec{c1p.code, uni.merged_second, std::nullopt, std::nullopt,
                       shared_code(hgp(c1p.code, uni.merged_second))};
    std::string anc = add_fresh(anc_spec, StepKind::PrepX);
    ModifiedCode c2pp = round_factor(uni.merged_second, merged_cols, false, "gppm cols");
    BlockSpec mask_spec{c1p.code, c2pp.code, std::nullopt, std::nullopt,
                        shared_code(hgp(c1p.code, c2pp.code))};
    std::string msk = add_fresh(mask_spec, StepKind::PrepZ);

    LiftedProductMap ml = lift_to_product(
        {{c1p.code.H, true}, {uni.merged_second.H, false}},
        {std::nullopt, FactorModification{c2pp.code.H, c2pp.to_base}});
    cnot(anc, msk, gamma_pairs(ml.gamma[1]));
    measure(msk, 'Z');

    LiftedProductMap dl = lift_to_product(
        {{first.H, true}, {uni.merged_second.H, false}},
        {FactorModification{c1p.code.H, c1p.to_base}, std::nullopt});
    std::vector<Mask> per_block(touched.size());
    for (auto [qa, qm] : gamma_pairs(dl.gamma[1])) {
      auto loc = uni.embedding[qm];
      per_block[loc.block].push_back({qa, static_cast<std::uint32_t>(loc.local)});
    }
    bool lead = true;
    for (std::size_t b = 0; b < touched.size(); ++b)
      if (!per_block[b].empty()) {
        cnot(anc, touched[b], std::move(per_block[b]), /*fused=*/!lead);
        lead = false;
      }
    measure(anc, 'X');
  }
  sched_.stats["gppm_rounds"] += 1;
}

void Forge::hppm(const std::string& block, const EdgeFamily& cols) {
  const BlockSpec& s = spec_of(block);
  ModifiedCode c2p = round_factor(s.second, cols, true, "hppm cols");
  BlockSpec anc_spec{s.first, c2p.code, std::nullopt, std::nullopt,
                     shared_code(hgp(s.first, c2p.code))};
  std::string anc = add_fresh(anc_spec, StepKind::PrepZ);
  LiftedProductMap dl =
      lift_to_product({{s.first.H, true}, {s.second.H, false}},
                      {std::nullopt, FactorModification{c2p.code.H, c2p.to_base}});
  cnot(block, anc, gamma_pairs(dl.gamma[1]));
  measure(anc, 'Z');
  sched_.stats["hppm_rounds"] += 1;
}

void Forge::cppm(const std::string& block, char basis, const EdgeFamily& ex,
                 const EdgeFamily& ey, const EdgeFamily& ez) {
  auto it = cubes_.find(block);
  if (it == cubes_.end()) throw Error("block '" + block + "' is not a cube block");
  const CubeSpec& s = it->second;
  const auto& g = s.code->grid;
  check_family(ex, g[0], "cppm x");
  check_family(ey, g[1], "cppm y");
  check_family(ez, g[2], "cppm z");

  auto cube_code = [&](const ClassicalCode& a, const ClassicalCode& b,
                       const ClassicalCode& c) {
    return shared_code(homological_3d(a, b, c));
  };

  if (basis == 'Z') {
    ModifiedCode c1p = round_factor(s.c1, ex, true, "cppm x");
    ModifiedCode c2p = round_factor(s.c2, ey, true, "cppm y");
    CubeSpec anc_spec{c1p.code, c2p.code, s.c3, cube_code(c1p.code, c2p.code, s.c3)};
    std::string anc = "anc" + std::to_string(fresh_++);
    sched_.blocks.emplace(anc, BlockInfo{anc_spec.code, false, {}, {}});
    cubes_.emplace(anc, anc_spec);
    GadgetStep pz;
    pz.kind = StepKind::PrepZ;
    pz.block = anc;
    pz.background = true;
    sched_.steps.push_back(pz);

    ModifiedCode c3pp = round_factor(s.c3, ez, false, "cppm z");
    CubeSpec mask_spec{c1p.code, c2p.code, c3pp.code,
                       cube_code(c1p.code, c2p.code, c3pp.code)};
    std::string msk = "anc" + std::to_string(fresh_++);
    sched_.blocks.emplace(msk, BlockInfo{mask_spec.code, false, {}, {}});
    cubes_.emplace(msk, mask_spec);
    GadgetStep px;
    px.kind = StepKind::PrepX;
    px.block = msk;
    px.background = true;
    sched_.steps.push_back(px);

    LiftedProductMap ml = lift_to_product(
        {{c1p.code.H, false}, {c2p.code.H, false}, {s.c3.H, true}},
        {std::nullopt, std::nullopt, FactorModification{c3pp.code.H, c3pp.to_base}});
    cnot(msk, anc, gamma_pairs(ml.gamma[2]));
    measure(msk, 'X');
    LiftedProductMap dl = lift_to_product(
        {{s.c1.H, false}, {s.c2.H, false}, {s.c3.H, true}},
        {FactorModification{c1p.code.H, c1p.to_base},
         FactorModification{c2p.code.H, c2p.to_base}, std::nullopt});
    cnot(block, anc, gamma_pairs(dl.gamma[2]));
    measure(anc, 'Z');
  } else {
    ModifiedCode c3p = round_factor(s.c3, ez, true, "cppm z");
    CubeSpec anc_spec{s.c1, s.c2, c3p.code, cube_code(s.c1, s.c2, c3p.code)};
    std::string anc = "anc" + std::to_string(fresh_++);
    sched_.blocks.emplace(anc, BlockInfo{anc_spec.code, false, {}, {}});
    cubes_.emplace(anc, anc_spec);
    GadgetStep px;
    px.kind = StepKind::PrepX;
    px.block = anc;
    px.background = true;
    sched_.steps.push_back(px);

    // Absorption masks act one factor at a time: a mask must agree with the
    // ancilla on every factor it does not modify, so a composite two-factor
    // mask would absorb each factor's rows only on part of the other's
    // space.  A factor needs no mask when its family covers every logical
    // with singleton edges (nothing to absorb).
    auto trivial = [](const EdgeFamily& fam, std::size_t k) {
      std::size_t covered = 0;
      for (const auto& e : fam) {
        if (e.size() > 1) return false;
        ++covered;
      }
      return covered == k;
    };
    auto absorb = [&](std::size_t factor, const EdgeFamily& fam, const char* what) {
      const ClassicalCode& base = factor == 0 ? s.c1 : s.c2;
      ModifiedCode cpp = round_factor(base, fam, false, what);
      CubeSpec mask_spec{factor == 0 ? cpp.code : s.c1, factor == 0 ? s.c2 : cpp.code,
                         c3p.code, nullptr};
      mask_spec.code = cube_code(mask_spec.c1, mask_spec.c2, mask_spec.c3);
      std::string msk = "anc" + std::to_string(fresh_++);
      sched_.blocks.emplace(msk, BlockInfo{mask_spec.code, false, {}, {}});
      cubes_.emplace(msk, mask_spec);
      GadgetStep pz;
      pz.kind = StepKind::PrepZ;
      pz.block = msk;
      pz.background = true;
      sched_.steps.push_back(pz);
      std::vector<std::optional<FactorModification>> mods(3);
      mods[factor] = FactorModification{cpp.code.H, cpp.to_base};
      LiftedProductMap ml = lift_to_product(
          {{s.c1.H, false}, {s.c2.H, false}, {c3p.code.H, true}}, mods);
      cnot(anc, msk, gamma_pairs(ml.gamma[2]));
      measure(msk, 'Z');
    };
    if (!trivial(ex, g[0])) absorb(0, ex, "cppm x");
    if (!trivial(ey, g[1])) absorb(1, ey, "cppm y");

    LiftedProductMap dl = lift_to_product(
        {{s.c1.H, false}, {s.c2.H, false}, {s.c3.H, true}},
        {std::nullopt, std::nullopt, FactorModification{c3p.code.H, c3p.to_base}});
    cnot(anc, block, gamma_pairs(dl.gamma[2]));
    measure(anc, 'X');
  }
  sched_.stats["cppm_rounds"] += 1;
}

std::string Forge::cat_line(const BlockSpec& spec, std::uint32_t offset, char line_basis) {
  std::size_t l = spec.rows();
  if (spec.cols() != l) throw Error("cat line needs a square logical grid");
  std::string q = add_fresh(spec, line_basis == 'X' ? StepKind::PrepX : StepKind::PrepZ);
  char round_basis = line_basis == 'X' ? 'Z' : 'X';
  std::size_t bits = 0;
  while ((std::size_t(1) << bits) < l) ++bits;
  auto rect = [&](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.empty() || b.empty()) return;
    EdgeFamily rows;
    for (auto i : a) rows.push_back({i});
    ColEdgeFamily cols;
    for (auto j : b) cols.push_back({ColRef{q, j}});
    gppm(round_basis, rows, cols);
  };
  for (std::size_t t = 0; t < bits; ++t) {
    std::vector<std::uint32_t> a0, a1, b0, b1;
    for (std::uint32_t i = 0; i < l; ++i)
      ((i >> t) & 1 ? a1 : a0).push_back(i);
    for (std::uint32_t j = 0; j < l; ++j) {
      std::uint32_t y = (j + l - offset % l) % l;
      ((y >> t) & 1 ? b1 : b0).push_back(j);
    }
    rect(a0, b1);
    rect(a1, b0);
  }
  return q;
}

void Forge::line_x_measure(const std::string& block, std::uint32_t offset) {
  std::string q = cat_line(spec_of(block), offset, 'X');
  full_cnot(q, block);
  measure(q, 'X');
}

std::string Forge::teleport_out_line(const std::string& block, std::uint32_t offset) {
  std::string h = cat_line(spec_of(block), offset, 'Z');
  full_cnot(block, h);
  line_x_measure(block, offset);
  return h;
}

void Forge::teleport_back(const std::string& helper, const std::string& block) {
  full_cnot(block, helper);
  measure(helper, 'Z');
}

void Forge::reset_cells_x(const std::string& block, const std::vector<Cell>& cells) {
  const BlockSpec& s = spec_of(block);
  std::map<std::uint32_t, std::set<std::uint32_t>> by_row;
  for (const auto& c : cells) {
    if (c.row >= s.rows() || c.col >= s.cols()) throw Error("reset cell outside the grid");
    by_row[c.row].insert(c.col);
  }
  for (const auto& [r, csl] : by_row) {
    ColEdgeFamily cols;
    for (auto j : csl) cols.push_back({ColRef{block, j}});
    gppm('X', {{r}}, cols);
  }
}

void Forge::emit_teleport_cells(const std::string& from, const std::string& to,
                                const std::vector<Cell>& cells) {
  const BlockSpec& s = spec_of(from);
  std::set<std::uint32_t> rows_used, cols_used;
  std::set<std::pair<std::uint32_t, std::uint32_t>> cset;
  for (const auto& c : cells) {
    if (c.row >= s.rows() || c.col >= s.cols()) throw Error("teleport cell outside the grid");
    if (!cset.insert({c.row, c.col}).second) throw Error("duplicate teleport cell");
    rows_used.insert(c.row);
    cols_used.insert(c.col);
  }
  bool by_col = cols_used.size() <= rows_used.size();
  std::map<std::uint32_t, std::vector<std::uint32_t>> lines;
  for (const auto& [r, c] : cset) lines[by_col ? c : r].push_back(by_col ? r : c);

  for (auto& [line, others] : lines) {
    std::sort(others.begin(), others.end());
    if (by_col) {
      EdgeFamily rr;
      for (auto r : others) rr.push_back({r});
      gppm('Z', rr, {{ColRef{from, line}, ColRef{to, line}}});
      gppm('X', rr, {{ColRef{from, line}}});
    } else {
      ColEdgeFamily zz, xx;
      for (auto c : others) {
        zz.push_back({ColRef{from, c}, ColRef{to, c}});
        xx.push_back({ColRef{from, c}});
      }
      gppm('Z', {{line}}, zz);
      gppm('X', {{line}}, xx);
    }
  }
}

std::string Forge::emit_selective_out(const std::string& from,
                                      const std::vector<Cell>& cells) {
  std::string t = add_fresh(spec_of(from), StepKind::PrepX);
  emit_teleport_cells(from, t, cells);
  return t;
}

// Two |0>-blocks each accumulate diagonal |i> lines (X-measure the diagonal,
// apply the folded S, shift); the line classes of the two blocks partition
// all diagonal offsets, so a transversal XX merge plus a Z measurement of
// the second block leaves every cell of the first in |i>.
std::string Forge::emit_i_state(const BlockSpec& spec) {
  std::size_t l = spec.rows();
  if (spec.cols() != l) throw Error("i-state preparation needs a square logical grid");
  std::string a = add_fresh(spec, StepKind::PrepZ);
  std::string b = add_fresh(spec, StepKind::PrepZ);
  std::size_t pa = (l + 1) / 2, pb = l - pa;
  for (std::size_t t = 0; t < pa; ++t) {
    line_x_measure(a, 0);
    fold_czs(a);
    if (t + 1 < pa) translate(a, 0, 1);
  }
  for (std::size_t t = 0; t < pb; ++t) {
    line_x_measure(b, 0);
    fold_czs(b);
    translate(b, 0, l - 1);
  }
  EdgeFamily singles;
  for (std::uint32_t i = 0; i < l; ++i) singles.push_back({i});
  ColEdgeFamily merge;
  for (std::uint32_t j = 0; j < l; ++j) merge.push_back({ColRef{a, j}, ColRef{b, j}});
  gppm('X', singles, merge);
  measure(b, 'Z');
  return a;
}

void Forge::emit_parallel_hadamard(const std::string& block) {
  const BlockSpec& s = spec_of(block);
  std::size_t l = s.rows();
  if (s.cols() != l) throw Error("parallel hadamard needs a square logical grid");
  fold_hswap(block);
  auto exchange = [&](std::uint32_t c1, std::uint32_t c2) {
    // Contents of diagonal classes c1 and c2 swap back to their pre-fold
    // positions: line c of the helper moves to line c' with row shift +c.
    std::string h1 = teleport_out_line(block, c1);
    std::string h2 = c1 == c2 ? "" : teleport_out_line(block, c2);
    translate(h1, c1, (l - c1) % l);
    if (!h2.empty()) translate(h2, c2, (l - c2) % l);
    teleport_back(h1, block);
    if (!h2.empty()) teleport_back(h2, block);
  };
  for (std::uint32_t c = 1; 2 * c < l; ++c)
    exchange(c, static_cast<std::uint32_t>(l - c));
  if (l % 2 == 0 && l > 1) exchange(static_cast<std::uint32_t>(l / 2),
                                    static_cast<std::uint32_t>(l / 2));
}

std::string Forge::emit_teleported_s(const std::string& data,
                                     const std::vector<Cell>& targets) {
  const BlockSpec& s = spec_of(data);
  std::string a = emit_i_state(s);
  std::set<std::uint32_t> tset;
  for (const auto& c : targets) tset.insert(s.cell_index(c));
  std::vector<Cell> resets;
  for (std::uint32_t r = 0; r < s.rows(); ++r)
    for (std::uint32_t c = 0; c < s.cols(); ++c)
      if (!tset.count(s.cell_index({r, c}))) resets.push_back({r, c});
  reset_cells_x(a, resets);
  full_cnot(a, data);
  measure(data, 'Z');
  return a;
}

void Forge::emit_cyclic_shift(const std::string& block) {
  const BlockSpec& s = spec_of(block);
  std::size_t l = s.rows();
  if (s.cols() != l) throw Error("cyclic shift needs a square logical grid");
  translate(block, 0, 1);
  std::string r = add_fresh(s, StepKind::PrepX);
  EdgeFamily singles;
  for (std::uint32_t i = 0; i < l; ++i) singles.push_back({i});
  gppm('Z', singles, {{ColRef{block, 0}, ColRef{r, 0}}});
  gppm('X', singles, {{ColRef{block, 0}}});
  translate(r, 1, 0);
  gppm('Z', singles, {{ColRef{block, 0}, ColRef{r, 0}}});
  measure(r, 'X');
}

GadgetSchedule Forge::take() {
  compute_cost(sched_, distance_);
  return std::move(sched_);
}

// ---------------------------------------------------------------------------
// Measured-product bookkeeping

std::vector<PauliProductRef> gppm_products(const BlockSpec& spec,
                                           const std::string& block, char basis,
                                           const EdgeFamily& rows,
                                           const EdgeFamily& cols) {
  std::vector<PauliProductRef> out;
  if (basis == 'Z') {
    for (const auto& ec : cols)
      for (const auto& er : rows)
        for (const auto& p : expand_edge(er)) {
          PauliProductRef ref;
          for (auto i : p)
            for (auto j : ec)
              ref.factors.push_back({block, spec.cell_index({i, j}), 'Z'});
          out.push_back(std::move(ref));
        }
  } else {
    for (const auto& er : rows)
      for (const auto& ec : cols)
        for (const auto& p : expand_edge(ec)) {
          PauliProductRef ref;
          for (auto i : er)
            for (auto j : p)
              ref.factors.push_back({block, spec.cell_index({i, j}), 'X'});
          out.push_back(std::move(ref));
        }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gadget builders

GadgetSchedule horizontal_ppms(const BlockSpec& data, const EdgeFamily& cols) {
  Forge f("horizontal-ppms", dist_of(data));
  f.add_data("D", data);
  f.hppm("D", cols);
  auto& s = f.schedule();
  for (const auto& e : cols)
    for (std::uint32_t i = 0; i < data.rows(); ++i) {
      PauliProductRef ref;
      for (auto j : e) ref.factors.push_back({"D", data.cell_index({i, j}), 'Z'});
      s.effect.measured.push_back(std::move(ref));
    }
  return f.take();
}

GadgetSchedule grid_ppms(const BlockSpec& data, char basis, const EdgeFamily& rows,
                         const EdgeFamily& cols) {
  Forge f("grid-ppms", dist_of(data));
  f.add_data("D", data);
  ColEdgeFamily ce;
  for (const auto& e : cols) {
    ColEdge edge;
    for (auto j : e) edge.push_back({"D", j});
    ce.push_back(std::move(edge));
  }
  f.gppm(basis, rows, ce);
  f.schedule().effect.measured = gppm_products(data, "D", basis, rows, cols);
  return f.take();
}

GadgetSchedule cube_ppms(const CubeSpec& data, char basis, const EdgeFamily& ex,
                         const EdgeFamily& ey, const EdgeFamily& ez) {
  Forge f("cube-ppms", data.code->d ? std::max(1, *data.code->d) : 1);
  f.add_data_cube("D", data);
  f.cppm("D", basis, ex, ey, ez);
  auto& s = f.schedule();
  auto box = [&](const Edge& x, const Edge& y, const Edge& z, char letter) {
    PauliProductRef ref;
    for (auto a : x)
      for (auto b : y)
        for (auto c : z) ref.factors.push_back({"D", data.cell_index(a, b, c), letter});
    return ref;
  };
  for (const auto& x : ex)
    for (const auto& y : ey)
      for (const auto& z : ez) {
        if (basis == 'Z') {
          for (const auto& p : expand_edge(z))
            s.effect.measured.push_back(box(x, y, p, 'Z'));
        } else {
          for (const auto& px : expand_edge(x))
            for (const auto& py : expand_edge(y))
              s.effect.measured.push_back(box(px, py, z, 'X'));
        }
      }
  return f.take();
}

GadgetSchedule translation_gadget(const BlockSpec& data, std::size_t i, std::size_t j) {
  Forge f("translation", dist_of(data));
  f.add_data("D", data);
  f.translate("D", i, j);
  auto& s = f.schedule();
  std::size_t k1 = data.rows(), k2 = data.cols();
  for (std::uint32_t r = 0; r < k1; ++r)
    for (std::uint32_t c = 0; c < k2; ++c) {
      std::uint32_t from = data.cell_index({r, c});
      std::uint32_t to = data.cell_index({static_cast<std::uint32_t>((r + i) % k1),
                                          static_cast<std::uint32_t>((c + j) % k2)});
      s.effect.map.push_back({{"D", from, 'X'}, {{"D", to, 'X'}}});
      s.effect.map.push_back({{"D", from, 'Z'}, {{"D", to, 'Z'}}});
    }
  return f.take();
}

GadgetSchedule fold_hswap_gadget(const BlockSpec& data) {
  Forge f("fold-hswap", dist_of(data));
  f.add_data("D", data);
  f.fold_hswap("D");
  auto& s = f.schedule();
  for (std::uint32_t r = 0; r < data.rows(); ++r)
    for (std::uint32_t c = 0; c < data.cols(); ++c) {
      std::uint32_t from = data.cell_index({r, c}), to = data.cell_index({c, r});
      s.effect.map.push_back({{"D", from, 'X'}, {{"D", to, 'Z'}}});
      s.effect.map.push_back({{"D", from, 'Z'}, {{"D", to, 'X'}}});
    }
  return f.take();
}

GadgetSchedule fold_czs_gadget(const BlockSpec& data) {
  Forge f("fold-czs", dist_of(data));
  f.add_data("D", data);
  f.fold_czs("D");
  auto& s = f.schedule();
  for (std::uint32_t r = 0; r < data.rows(); ++r)
    for (std::uint32_t c = 0; c < data.cols(); ++c) {
      std::uint32_t q = data.cell_index({r, c}), t = data.cell_index({c, r});
      s.effect.map.push_back({{"D", q, 'X'}, {{"D", q, 'X'}, {"D", t, 'Z'}}});
    }
  return f.take();
}

GadgetSchedule selective_teleport(const BlockSpec& data, const std::vector<Cell>& cells) {
  Forge f("selective-teleport", dist_of(data));
  f.add_data("D", data);
  std::string t = f.emit_selective_out("D", cells);

  std::set<std::pair<std::uint32_t, std::uint32_t>> cset;
  for (const auto& c : cells) cset.insert({c.row, c.col});

  auto& s = f.schedule();
  for (std::uint32_t r = 0; r < data.rows(); ++r)
    for (std::uint32_t c = 0; c < data.cols(); ++c) {
      std::uint32_t q = data.cell_index({r, c});
      if (cset.count({r, c})) {
        s.effect.map.push_back({{"D", q, 'X'}, {{t, q, 'X'}}});
        s.effect.map.push_back({{"D", q, 'Z'}, {{t, q, 'Z'}}});
        s.effect.residues.push_back(single("D", q, 'X'));
      } else {
        s.effect.residues.push_back(single(t, q, 'X'));
      }
    }
  return f.take();
}

GadgetSchedule cyclic_shift(const BlockSpec& data) {
  Forge f("cyclic-shift", dist_of(data));
  f.add_data("D", data);
  f.emit_cyclic_shift("D");

  auto& s = f.schedule();
  std::uint32_t k = static_cast<std::uint32_t>(data.code->k);
  for (std::uint32_t q = 0; q < k; ++q) {
    std::uint32_t to = (q + 1) % k;  // row-major successor
    s.effect.map.push_back({{"D", q, 'X'}, {{"D", to, 'X'}}});
    s.effect.map.push_back({{"D", q, 'Z'}, {{"D", to, 'Z'}}});
  }
  return f.take();
}

GadgetSchedule diagonal_x_measure(const BlockSpec& data) {
  Forge f("diagonal-x-measure", dist_of(data));
  f.add_data("D", data);
  std::size_t l = data.rows();
  if (data.cols() != l) throw Error("diagonal measure needs a square logical grid");
  f.line_x_measure("D", 0);
  auto& s = f.schedule();
  for (std::uint32_t i = 0; i < l; ++i)
    s.effect.measured.push_back(single("D", data.cell_index({i, i}), 'X'));
  return f.take();
}

GadgetSchedule i_state_prep(const BlockSpec& spec) {
  Forge f("i-state-prep", dist_of(spec));
  std::string a = f.emit_i_state(spec);
  auto& s = f.schedule();
  for (std::uint32_t q = 0; q < spec.code->k; ++q)
    s.effect.residues.push_back(single(a, q, 'Y'));
  return f.take();
}

GadgetSchedule parallel_hadamard(const BlockSpec& data) {
  Forge f("parallel-hadamard", dist_of(data));
  f.add_data("D", data);
  f.emit_parallel_hadamard("D");

  auto& s = f.schedule();
  for (std::uint32_t q = 0; q < data.code->k; ++q) {
    s.effect.map.push_back({{"D", q, 'X'}, {{"D", q, 'Z'}}});
    s.effect.map.push_back({{"D", q, 'Z'}, {{"D", q, 'X'}}});
  }
  return f.take();
}

GadgetSchedule teleported_s(const BlockSpec& data, const std::vector<Cell>& targets) {
  Forge f("teleported-s", dist_of(data));
  f.add_data("D", data);
  std::string a = f.emit_teleported_s("D", targets);
  std::set<std::uint32_t> tset;
  for (const auto& c : targets) tset.insert(data.cell_index(c));

  auto& s = f.schedule();
  for (std::uint32_t q = 0; q < data.code->k; ++q) {
    if (tset.count(q))
      s.effect.map.push_back({{"D", q, 'X'}, {{a, q, 'X'}, {a, q, 'Z'}}});
    else
      s.effect.map.push_back({{"D", q, 'X'}, {{a, q, 'X'}}});
    s.effect.map.push_back({{"D", q, 'Z'}, {{a, q, 'Z'}}});
  }
  return f.take();
}

GadgetSchedule mb_cnot(const BlockSpec& data, Cell control, Cell target,
                       std::optional<Cell> helper) {
  if (control.row == target.row && control.col == target.col)
    throw Error("mb-cnot control and target coincide");
  std::size_t k1 = data.rows(), k2 = data.cols();
  Cell a;
  if (helper) {
    a = *helper;
  } else if (control.row != target.row && control.col != target.col) {
    a = {target.row, control.col};
  } else if (control.col == target.col) {
    std::uint32_t r = 0;
    while (r == control.row || r == target.row) ++r;
    if (r >= k1) throw Error("mb-cnot needs a free row for the helper cell");
    a = {r, control.col};
  } else {
    std::uint32_t c = 0;
    while (c == control.col || c == target.col) ++c;
    if (c >= k2) throw Error("mb-cnot needs a free column for the helper cell");
    a = {control.row, c};
  }
  std::uint32_t qc = data.cell_index(control), qt = data.cell_index(target),
                qa = data.cell_index(a);
  if (qa == qc || qa == qt) throw Error("mb-cnot helper collides with control or target");

  Forge f("mb-cnot", dist_of(data));
  f.add_data("D", data, {qa}, {single("D", qa, 'X')});

  auto pair_edge = [](std::uint32_t u, std::uint32_t v) {
    return u < v ? Edge{u, v} : Edge{v, u};
  };
  if (a.col == control.col && a.row == target.row && control.row != target.row &&
      control.col != target.col) {
    // corner helper
    f.gppm('Z', {pair_edge(control.row, a.row)}, {{ColRef{"D", control.col}}});
    f.gppm('X', {{target.row}}, {{ColRef{"D", pair_edge(a.col, target.col)[0]},
                                  ColRef{"D", pair_edge(a.col, target.col)[1]}}});
    f.gppm('Z', {{a.row}}, {{ColRef{"D", a.col}}});
  } else if (control.col == target.col && a.col == control.col) {
    f.gppm('Z', {pair_edge(control.row, a.row)}, {{ColRef{"D", control.col}}});
    f.gppm('X', {pair_edge(a.row, target.row)}, {{ColRef{"D", control.col}}});
    f.gppm('Z', {{a.row}}, {{ColRef{"D", a.col}}});
  } else if (control.row == target.row && a.row == control.row) {
    f.gppm('Z', {{control.row}}, {{ColRef{"D", pair_edge(control.col, a.col)[0]},
                                   ColRef{"D", pair_edge(control.col, a.col)[1]}}});
    f.gppm('X', {{control.row}}, {{ColRef{"D", pair_edge(a.col, target.col)[0]},
                                   ColRef{"D", pair_edge(a.col, target.col)[1]}}});
    f.gppm('Z', {{a.row}}, {{ColRef{"D", a.col}}});
  } else {
    throw Error("mb-cnot helper cell is not aligned with control and target");
  }

  auto& s = f.schedule();
  s.effect.map.push_back({{"D", qc, 'X'}, {{"D", qc, 'X'}, {"D", qt, 'X'}}});
  s.effect.map.push_back({{"D", qt, 'Z'}, {{"D", qc, 'Z'}, {"D", qt, 'Z'}}});
  s.effect.residues.push_back(single("D", qa, 'Z'));
  return f.take();
}

GadgetSchedule ghz_state(const BlockSpec& spec) {
  Forge f("ghz-state", dist_of(spec));
  std::string d = f.add_fresh(spec, StepKind::PrepX);
  std::size_t m = spec.rows(), n = spec.cols();

  EdgeFamily row_singles;
  for (std::uint32_t i = 0; i < m; ++i) row_singles.push_back({i});
  auto adjacent_pairs = [](std::size_t count, std::uint32_t start) {
    EdgeFamily fam;
    for (std::uint32_t p = start; p + 1 < count; p += 2) fam.push_back({p, p + 1});
    return fam;
  };
  auto col_edges = [&](const EdgeFamily& fam) {
    ColEdgeFamily ce;
    for (const auto& e : fam) {
      ColEdge edge;
      for (auto j : e) edge.push_back({d, j});
      ce.push_back(std::move(edge));
    }
    return ce;
  };
  EdgeFamily even_cols = adjacent_pairs(n, 0), odd_cols = adjacent_pairs(n, 1);
  EdgeFamily even_rows = adjacent_pairs(m, 0), odd_rows = adjacent_pairs(m, 1);
  if (!even_cols.empty()) f.gppm('Z', row_singles, col_edges(even_cols));
  if (!odd_cols.empty()) f.gppm('Z', row_singles, col_edges(odd_cols));
  if (!even_rows.empty()) f.gppm('Z', even_rows, {{ColRef{d, 0}}});
  if (!odd_rows.empty()) f.gppm('Z', odd_rows, {{ColRef{d, 0}}});

  auto& s = f.schedule();
  PauliProductRef all_x;
  for (std::uint32_t q = 0; q < spec.code->k; ++q) all_x.factors.push_back({d, q, 'X'});
  s.effect.residues.push_back(std::move(all_x));
  auto zz = [&](Cell u, Cell v) {
    s.effect.residues.push_back(
        {{{d, spec.cell_index(u), 'Z'}, {d, spec.cell_index(v), 'Z'}}});
  };
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j + 1 < n; ++j) zz({i, j}, {i, j + 1});
  for (std::uint32_t i = 0; i + 1 < m; ++i) zz({i, 0}, {i + 1, 0});
  s.stats["preps"] = 1;
  return f.take();
}

}  // namespace homprod
