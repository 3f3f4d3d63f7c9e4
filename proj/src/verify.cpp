#include "homprod/verify.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "homprod/error.hpp"

namespace homprod {

using gf2::BinMatrix;
using gf2::BinVector;

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct BlockLayout {
  const CssCode* code = nullptr;
  bool is_data = false;
  std::size_t n = 0, k = 0;
  std::size_t qoff = 0;  // global qubit offset
  std::size_t loff = 0;  // global framed-logical offset (data blocks only)
  std::vector<std::size_t> frame_pos;  // logical q -> framed index, or kNone
  std::size_t framed_count = 0;
};

// Column layout of the determined-group rows: [x | z | refX | refZ].
struct Layout {
  std::map<std::string, BlockLayout> blk;
  std::size_t N = 0, K = 0;
  std::vector<std::pair<std::string, std::size_t>> logical_of;  // global -> (block, q)

  std::size_t width() const { return 2 * N + 2 * K; }
  std::size_t xcol(const BlockLayout& b, std::size_t q) const { return b.qoff + q; }
  std::size_t zcol(const BlockLayout& b, std::size_t q) const { return N + b.qoff + q; }
  std::size_t refx(std::size_t i) const { return 2 * N + i; }
  std::size_t refz(std::size_t i) const { return 2 * N + K + i; }
};

Layout make_layout(const GadgetSchedule& s) {
  Layout lay;
  std::size_t qoff = 0, loff = 0;
  for (const auto& [name, info] : s.blocks) {
    if (!info.code) throw Error("schedule block '" + name + "' has no code");
    BlockLayout b;
    b.code = info.code.get();
    b.is_data = info.is_data;
    b.n = info.code->n;
    b.qoff = qoff;
    qoff += b.n;
    if (info.is_data) {
      b.k = info.code->k;
      if (info.code->lx.size() != b.k || info.code->lz.size() != b.k)
        throw Error("data block '" + name + "' lacks a canonical logical basis");
      b.frame_pos.assign(b.k, kNone);
      for (auto u : info.unframed)
        if (u >= b.k) throw Error("unframed index out of range on '" + name + "'");
      b.loff = loff;
      for (std::size_t j = 0; j < b.k; ++j) {
        if (std::find(info.unframed.begin(), info.unframed.end(), j) != info.unframed.end())
          continue;
        b.frame_pos[j] = b.framed_count++;
        lay.logical_of.emplace_back(name, j);
      }
      loff += b.framed_count;
    }
    lay.blk.emplace(name, b);
  }
  lay.N = qoff;
  lay.K = loff;
  return lay;
}

std::string render_row(const Layout& lay, const BinVector& r) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, b] : lay.blk) {
    std::string part;
    for (std::size_t q = 0; q < b.n; ++q) {
      bool x = r.get(lay.xcol(b, q)), z = r.get(lay.zcol(b, q));
      if (!x && !z) continue;
      part += (x && z) ? 'Y' : (x ? 'X' : 'Z');
      part += std::to_string(q) + " ";
    }
    if (!part.empty()) {
      if (!first) out << " ";
      out << name << "[" << part.substr(0, part.size() - 1) << "]";
      first = false;
    }
  }
  for (std::size_t i = 0; i < lay.K; ++i) {
    bool fx = r.get(lay.refx(i)), fz = r.get(lay.refz(i));
    if (!fx && !fz) continue;
    const auto& [name, q] = lay.logical_of[i];
    if (!first) out << " ";
    out << "ref" << ((fx && fz) ? "Y" : (fx ? "X" : "Z")) << "(" << name << ":" << q << ")";
    first = false;
  }
  if (first) out << "I";
  return out.str();
}

class Engine {
 public:
  Engine(GadgetSchedule& s, CertificationReport& rep)
      : sched_(s), rep_(rep), lay_(make_layout(s)) {}

  bool run() {
    seed_data();
    for (const auto& st : sched_.steps) {
      apply(st);
      if (!rep_.errors.empty()) return false;
    }
    return true;
  }

  const Layout& layout() const { return lay_; }
  const std::vector<BinVector>& rows() const { return rows_; }
  bool is_live(const std::string& b) const { return live_.count(b) != 0; }

 private:
  GadgetSchedule& sched_;
  CertificationReport& rep_;
  Layout lay_;
  std::vector<BinVector> rows_;
  std::set<std::string> live_;

  void fail(const std::string& msg) { rep_.errors.push_back(msg); }

  BinVector make_row(const BlockLayout& b, const BinVector* xv, const BinVector* zv) const {
    BinVector r(lay_.width());
    if (xv) r.xor_shifted(*xv, b.qoff);
    if (zv) r.xor_shifted(*zv, lay_.N + b.qoff);
    return r;
  }

  void seed_data() {
    for (const auto& [name, b] : lay_.blk) {
      if (!b.is_data) continue;
      live_.insert(name);
      const CssCode& c = *b.code;
      for (std::size_t i = 0; i < c.HX.rows(); ++i) {
        BinVector v = c.HX.row(i);
        rows_.push_back(make_row(b, &v, nullptr));
      }
      for (std::size_t i = 0; i < c.HZ.rows(); ++i) {
        BinVector v = c.HZ.row(i);
        rows_.push_back(make_row(b, nullptr, &v));
      }
      for (std::size_t j = 0; j < b.k; ++j) {
        if (b.frame_pos[j] == kNone) continue;
        BinVector fx = make_row(b, &c.lx[j], nullptr);
        fx.flip(lay_.refx(b.loff + b.frame_pos[j]));
        rows_.push_back(std::move(fx));
        BinVector fz = make_row(b, nullptr, &c.lz[j]);
        fz.flip(lay_.refz(b.loff + b.frame_pos[j]));
        rows_.push_back(std::move(fz));
      }
      for (const auto& prom : sched_.blocks.at(name).promised) {
        BinVector r(lay_.width());
        for (const auto& f : prom.factors) {
          if (f.block != name || f.q >= b.k)
            throw Error("promise on '" + name + "' must reference its own logicals");
          if (f.letter == 'X' || f.letter == 'Y') r.xor_shifted(c.lx[f.q], b.qoff);
          if (f.letter == 'Z' || f.letter == 'Y') r.xor_shifted(c.lz[f.q], lay_.N + b.qoff);
        }
        rows_.push_back(std::move(r));
      }
    }
  }

  const BlockLayout* block_of(const GadgetStep& st, const std::string& name,
                              bool must_be_live) {
    auto it = lay_.blk.find(name);
    if (it == lay_.blk.end()) {
      fail(std::string(step_kind_name(st.kind)) + ": unknown block '" + name + "'");
      return nullptr;
    }
    if (must_be_live && !live_.count(name)) {
      fail(std::string(step_kind_name(st.kind)) + ": block '" + name + "' is not live");
      return nullptr;
    }
    return &it->second;
  }

  void apply(const GadgetStep& st) {
    switch (st.kind) {
      case StepKind::Annotation:
        return;
      case StepKind::PrepZ:
      case StepKind::PrepX:
      case StepKind::PrepContent:
        return apply_prep(st);
      case StepKind::TransversalCNOT:
        return apply_cnot(st);
      case StepKind::MeasureZ:
        return apply_measure(st, /*x_side=*/true);
      case StepKind::MeasureX:
        return apply_measure(st, /*x_side=*/false);
      case StepKind::Permute:
        return apply_permute(st);
      case StepKind::FoldHSwap:
        return apply_fold_hswap(st);
      case StepKind::FoldCZS:
        return apply_fold_czs(st);
    }
  }

  void apply_prep(const GadgetStep& st) {
    const BlockLayout* b = block_of(st, st.block, false);
    if (!b) return;
    if (b->is_data) return fail("prep would erase the tracked frame of data block '" + st.block + "'");
    if (live_.count(st.block)) return fail("prep of live block '" + st.block + "'");
    const CssCode& c = *b->code;
    std::vector<BinVector> local;  // block-local [x|z] rows for validation
    auto push = [&](const BinVector* xv, const BinVector* zv) {
      rows_.push_back(make_row(*b, xv, zv));
      BinVector l(2 * b->n);
      if (xv) l.xor_shifted(*xv, 0);
      if (zv) l.xor_shifted(*zv, b->n);
      local.push_back(std::move(l));
    };
    for (std::size_t i = 0; i < c.HX.rows(); ++i) {
      BinVector v = c.HX.row(i);
      push(&v, nullptr);
    }
    for (std::size_t i = 0; i < c.HZ.rows(); ++i) {
      BinVector v = c.HZ.row(i);
      push(nullptr, &v);
    }
    if (st.kind == StepKind::PrepZ) {
      BinMatrix kz = gf2::kernel_basis(c.HX);
      for (std::size_t i = 0; i < kz.rows(); ++i) {
        BinVector v = kz.row(i);
        push(nullptr, &v);
      }
    } else if (st.kind == StepKind::PrepX) {
      BinMatrix kx = gf2::kernel_basis(c.HZ);
      for (std::size_t i = 0; i < kx.rows(); ++i) {
        BinVector v = kx.row(i);
        push(&v, nullptr);
      }
    } else {
      for (const auto& row : st.content) {
        if (row.x.size() != b->n || row.z.size() != b->n)
          return fail("prep content row width mismatch on '" + st.block + "'");
        push(&row.x, &row.z);
      }
      // The stated rows must commute pairwise and pin a unique state.
      gf2::RowBasis basis(2 * b->n);
      for (const auto& l : local) basis.insert(l);
      if (basis.rank() != b->n)
        return fail("prep content on '" + st.block + "' fixes rank " +
                    std::to_string(basis.rank()) + " of " + std::to_string(b->n));
      for (std::size_t i = 0; i < local.size(); ++i)
        for (std::size_t j = i + 1; j < local.size(); ++j) {
          bool anti = local[i].slice(0, b->n).dot(local[j].slice(b->n, b->n)) ^
                      local[i].slice(b->n, b->n).dot(local[j].slice(0, b->n));
          if (anti)
            return fail("prep content on '" + st.block + "' is not abelian");
        }
    }
    live_.insert(st.block);
  }

  void apply_cnot(const GadgetStep& st) {
    const BlockLayout* tb = block_of(st, st.block, true);
    const BlockLayout* cb = block_of(st, st.control, true);
    if (!tb || !cb) return;
    if (st.block == st.control) return fail("cnot control and target block coincide");
    // Controls and targets live on distinct blocks, so pairs sharing a
    // control (or a target) commute; only exact duplicates are rejected.
    std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (auto [c, t] : st.mask) {
      if (c >= cb->n || t >= tb->n) return fail("cnot mask index out of range");
      if (!pairs.insert({c, t}).second) return fail("cnot mask repeats a pair");
    }
    for (auto& r : rows_) {
      for (auto [c, t] : st.mask) {
        if (r.get(lay_.xcol(*cb, c))) r.flip(lay_.xcol(*tb, t));
        if (r.get(lay_.zcol(*tb, t))) r.flip(lay_.zcol(*cb, c));
      }
    }
  }

  void apply_measure(const GadgetStep& st, bool x_side) {
    const BlockLayout* b = block_of(st, st.block, true);
    if (!b) return;
    // Rows anticommuting with the single-qubit measurements are destroyed:
    // eliminate the offending columns, keeping only combinations clear of
    // them, then absorb the measured single-qubit operators.
    for (std::size_t q = 0; q < b->n; ++q) {
      std::size_t col = x_side ? lay_.xcol(*b, q) : lay_.zcol(*b, q);
      std::size_t piv = kNone;
      for (std::size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i].get(col)) { piv = i; break; }
      if (piv == kNone) continue;
      for (std::size_t i = 0; i < rows_.size(); ++i)
        if (i != piv && rows_[i].get(col)) rows_[i] ^= rows_[piv];
      rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(piv));
    }
    for (auto& r : rows_)
      for (std::size_t q = 0; q < b->n; ++q) {
        r.set(lay_.xcol(*b, q), false);
        r.set(lay_.zcol(*b, q), false);
      }
    rows_.erase(std::remove_if(rows_.begin(), rows_.end(),
                               [](const BinVector& r) { return r.is_zero(); }),
                rows_.end());
    live_.erase(st.block);
  }

  void apply_permutation(const BlockLayout& b, const std::vector<std::uint32_t>& perm,
                         bool swap_xz) {
    for (auto& r : rows_) {
      BinVector nx(b.n), nz(b.n);
      for (std::size_t q = 0; q < b.n; ++q) {
        bool x = r.get(lay_.xcol(b, q)), z = r.get(lay_.zcol(b, q));
        if (swap_xz) std::swap(x, z);
        if (x) nx.set(perm[q], true);
        if (z) nz.set(perm[q], true);
      }
      for (std::size_t q = 0; q < b.n; ++q) {
        r.set(lay_.xcol(b, q), nx.get(q));
        r.set(lay_.zcol(b, q), nz.get(q));
      }
    }
  }

  bool check_perm(const std::vector<std::uint32_t>& perm, std::size_t n) {
    if (perm.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (auto p : perm) {
      if (p >= n || seen[p]) return false;
      seen[p] = true;
    }
    return true;
  }

  void apply_permute(const GadgetStep& st) {
    const BlockLayout* b = block_of(st, st.block, true);
    if (!b) return;
    if (!check_perm(st.perm, b->n)) return fail("permute: not a permutation of the block");
    apply_permutation(*b, st.perm, false);
  }

  void apply_fold_hswap(const GadgetStep& st) {
    const BlockLayout* b = block_of(st, st.block, true);
    if (!b) return;
    std::vector<std::uint32_t> tau;
    try {
      tau = transpose_permutation(*b->code);
    } catch (const Error& e) {
      return fail(std::string("fold_hswap: ") + e.what());
    }
    apply_permutation(*b, tau, true);
  }

  void apply_fold_czs(const GadgetStep& st) {
    const BlockLayout* b = block_of(st, st.block, true);
    if (!b) return;
    std::vector<std::uint32_t> tau;
    try {
      tau = transpose_permutation(*b->code);
    } catch (const Error& e) {
      return fail(std::string("fold_czs: ") + e.what());
    }
    // S on the diagonal, S^dag mirrored, CZ across folded pairs: in phaseless
    // symplectic form, z gains the transpose-permuted x part.
    for (auto& r : rows_)
      for (std::size_t q = 0; q < b->n; ++q)
        if (r.get(lay_.xcol(*b, q))) r.flip(lay_.zcol(*b, tau[q]));
  }
};

std::optional<std::size_t> global_logical(const Layout& lay, const LogicalRef& f,
                                          std::string& err) {
  auto it = lay.blk.find(f.block);
  if (it == lay.blk.end()) { err = "unknown block '" + f.block + "'"; return std::nullopt; }
  if (!it->second.is_data) { err = "block '" + f.block + "' is not a data block"; return std::nullopt; }
  if (f.q >= it->second.k) { err = "logical index out of range on '" + f.block + "'"; return std::nullopt; }
  if (f.letter != 'X' && f.letter != 'Y' && f.letter != 'Z') { err = "bad letter"; return std::nullopt; }
  if (it->second.frame_pos[f.q] == kNone) {
    err = "logical " + std::to_string(f.q) + " of '" + f.block + "' carries no frame";
    return std::nullopt;
  }
  return it->second.loff + it->second.frame_pos[f.q];
}

}  // namespace

std::vector<std::uint32_t> transpose_permutation(const CssCode& code) {
  std::vector<std::uint32_t> tau(code.n);
  if (code.coords.size() != code.n || code.qubit_summands.empty())
    throw Error("transpose_permutation: code has no grid coordinates");
  for (const auto& s : code.qubit_summands) {
    if (s.factor_dims.size() != 2)
      throw Error("transpose_permutation: needs a two-factor product code");
    if (s.factor_dims[0] != s.factor_dims[1])
      throw Error("transpose_permutation: summand is not square");
  }
  for (std::size_t q = 0; q < code.n; ++q) {
    const QubitCoord& c = code.coords[q];
    tau[q] = static_cast<std::uint32_t>(
        code.qubit_at(c.summand, {c.idx[1], c.idx[0]}));
  }
  return tau;
}

std::string CertificationReport::summary() const {
  std::ostringstream out;
  out << (certified ? "certified" : "NOT certified");
  for (const auto& e : errors) out << "\n  error: " << e;
  for (const auto& m : missing) out << "\n  missing: " << m;
  for (const auto& x : extra) out << "\n  extra: " << x;
  return out.str();
}

CertificationReport certify_schedule(GadgetSchedule& s) {
  CertificationReport rep;
  s.certified = false;

  std::unique_ptr<Engine> engp;
  try {
    engp = std::make_unique<Engine>(s, rep);
    if (!engp->run()) return rep;
  } catch (const Error& e) {
    rep.errors.push_back(e.what());
    return rep;
  }
  Engine& eng = *engp;
  const Layout& lay = eng.layout();

  // --- Expected group -----------------------------------------------------
  std::vector<BinVector> expected;

  // Stabilizers of every block still alive at the end.
  for (const auto& [name, b] : lay.blk) {
    if (!eng.is_live(name)) continue;
    const CssCode& c = *b.code;
    for (std::size_t i = 0; i < c.HX.rows(); ++i) {
      BinVector r(lay.width());
      r.xor_shifted(c.HX.row(i), b.qoff);
      expected.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < c.HZ.rows(); ++i) {
      BinVector r(lay.width());
      r.xor_shifted(c.HZ.row(i), lay.N + b.qoff);
      expected.push_back(std::move(r));
    }
  }

  // Declared measured products: their values are reference-frame facts.
  BinMatrix commute(s.effect.measured.size(), 2 * lay.K);
  for (std::size_t m = 0; m < s.effect.measured.size(); ++m) {
    BinVector ref_row(lay.width());
    for (const auto& f : s.effect.measured[m].factors) {
      std::string err;
      auto gi = global_logical(lay, f, err);
      if (!gi) {
        rep.errors.push_back("measured product " + s.effect.measured[m].to_string() + ": " + err);
        return rep;
      }
      if (f.letter == 'X' || f.letter == 'Y') {
        ref_row.flip(lay.refx(*gi));
        commute.flip(m, lay.K + *gi);  // anticommutes with Z_i
      }
      if (f.letter == 'Z' || f.letter == 'Y') {
        ref_row.flip(lay.refz(*gi));
        commute.flip(m, *gi);          // anticommutes with X_i
      }
    }
    expected.push_back(std::move(ref_row));
  }

  // Images of the surviving logical frame.  Per-letter images come from the
  // declared map (default: the letter itself, which requires its block to
  // still be alive); the surviving subgroup is the kernel of the
  // anticommutation pairing with the measured products.
  std::map<std::pair<std::size_t, bool>, std::vector<LogicalRef>> declared;
  for (const auto& e : s.effect.map) {
    std::string err;
    auto gi = global_logical(lay, e.from, err);
    if (!gi || e.from.letter == 'Y') {
      rep.errors.push_back("map entry: " + (err.empty() ? "'Y' sources are not allowed" : err));
      return rep;
    }
    declared[{*gi, e.from.letter == 'Z'}] = e.to;
  }

  auto image_row = [&](std::size_t gi, bool z_letter, BinVector& out) -> bool {
    auto it = declared.find({gi, z_letter});
    std::vector<LogicalRef> to;
    if (it != declared.end()) {
      to = it->second;
    } else {
      const auto& [bname, q] = lay.logical_of[gi];
      if (!eng.is_live(bname)) {
        rep.errors.push_back("logical " + std::string(z_letter ? "Z" : "X") + " of " + bname +
                             ":" + std::to_string(q) +
                             " survives but its block was consumed and no image is declared");
        return false;
      }
      to = {LogicalRef{bname, static_cast<std::uint32_t>(q), z_letter ? 'Z' : 'X'}};
    }
    for (const auto& f : to) {
      auto bit = lay.blk.find(f.block);
      if (bit == lay.blk.end() || !eng.is_live(f.block)) {
        rep.errors.push_back("map image references dead or unknown block '" + f.block + "'");
        return false;
      }
      const BlockLayout& b = bit->second;
      const CssCode& c = *b.code;
      if (f.q >= c.lx.size()) {
        rep.errors.push_back("map image logical index out of range on '" + f.block + "'");
        return false;
      }
      if (f.letter == 'X' || f.letter == 'Y') out.xor_shifted(c.lx[f.q], b.qoff);
      if (f.letter == 'Z' || f.letter == 'Y') out.xor_shifted(c.lz[f.q], lay.N + b.qoff);
    }
    return true;
  };

  BinMatrix surv = gf2::kernel_basis(commute);
  for (std::size_t r = 0; r < surv.rows(); ++r) {
    BinVector row(lay.width());
    for (std::size_t i = 0; i < lay.K; ++i) {
      if (surv.get(r, i)) {  // X_i in the product
        row.flip(lay.refx(i));
        if (!image_row(i, false, row)) return rep;
      }
      if (surv.get(r, lay.K + i)) {  // Z_i
        row.flip(lay.refz(i));
        if (!image_row(i, true, row)) return rep;
      }
    }
    expected.push_back(std::move(row));
  }

  // Declared residues: by-products determined on live blocks but carrying no
  // input reference (e.g. the state left behind on a vacated ancilla cell).
  for (const auto& prod : s.effect.residues) {
    BinVector row(lay.width());
    for (const auto& f : prod.factors) {
      auto bit = lay.blk.find(f.block);
      if (bit == lay.blk.end() || !eng.is_live(f.block)) {
        rep.errors.push_back("residue " + prod.to_string() +
                             " references dead or unknown block '" + f.block + "'");
        return rep;
      }
      const BlockLayout& b = bit->second;
      if (f.q >= b.code->lx.size()) {
        rep.errors.push_back("residue logical index out of range on '" + f.block + "'");
        return rep;
      }
      if (f.letter == 'X' || f.letter == 'Y') row.xor_shifted(b.code->lx[f.q], b.qoff);
      if (f.letter == 'Z' || f.letter == 'Y') row.xor_shifted(b.code->lz[f.q], lay.N + b.qoff);
    }
    expected.push_back(std::move(row));
  }

  // --- Span comparison ----------------------------------------------------
  gf2::RowBasis actual_basis(lay.width()), expected_basis(lay.width());
  for (const auto& r : eng.rows()) actual_basis.insert(r);
  for (const auto& r : expected) expected_basis.insert(r);

  for (const auto& r : expected)
    if (!actual_basis.contains(r)) rep.missing.push_back(render_row(lay, r));
  for (const auto& r : eng.rows())
    if (!expected_basis.contains(r)) rep.extra.push_back(render_row(lay, expected_basis.reduce(r)));

  // Deduplicate diagnostics that reduce to the same residual.
  std::sort(rep.missing.begin(), rep.missing.end());
  rep.missing.erase(std::unique(rep.missing.begin(), rep.missing.end()), rep.missing.end());
  std::sort(rep.extra.begin(), rep.extra.end());
  rep.extra.erase(std::unique(rep.extra.begin(), rep.extra.end()), rep.extra.end());

  rep.certified = rep.errors.empty() && rep.missing.empty() && rep.extra.empty();
  s.certified = rep.certified;
  return rep;
}

}  // namespace homprod
