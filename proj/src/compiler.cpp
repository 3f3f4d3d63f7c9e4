#include "homprod/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "homprod/error.hpp"
#include "homprod/pauli.hpp"

namespace homprod {

using gf2::BinVector;

namespace {

int block_distance(const BlockSpec& s) {
  return s.code && s.code->d ? std::max(1, *s.code->d) : 1;
}

Edge pair_edge(std::uint32_t u, std::uint32_t v) {
  return u < v ? Edge{u, v} : Edge{v, u};
}

using CellKey = std::pair<std::uint32_t, std::uint32_t>;
CellKey key(Cell c) { return {c.row, c.col}; }

}  // namespace

LogicalGate gate_h(Cell q) { return {GateKind::H, q, {}, {}}; }
LogicalGate gate_s(Cell q) { return {GateKind::S, q, {}, {}}; }
LogicalGate gate_cnot(Cell c, Cell t) { return {GateKind::CNOT, c, t, {}}; }
LogicalGate gate_prep_x(Cell q) { return {GateKind::PrepX, q, {}, {}}; }
LogicalGate gate_ppm(std::vector<std::pair<Cell, char>> product) {
  LogicalGate g;
  g.kind = GateKind::PPM;
  g.product = std::move(product);
  return g;
}

CnotClass classify_cnot(Cell control, Cell target) {
  if (control.row == target.row || control.col == target.col) return CnotClass::Aligned;
  bool down = target.row > control.row, right = target.col > control.col;
  return down == right ? CnotClass::MainDiagonal : CnotClass::AntiDiagonal;
}

CnotPartition classify_cnots(const LogicalCircuit& circuit) {
  CnotPartition p;
  for (const auto& g : circuit.gates) {
    if (g.kind != GateKind::CNOT) continue;
    ++p.total;
    switch (classify_cnot(g.a, g.b)) {
      case CnotClass::Aligned: ++p.aligned; break;
      case CnotClass::MainDiagonal: ++p.main_diagonal; break;
      case CnotClass::AntiDiagonal: ++p.anti_diagonal; break;
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Layer compilation

namespace {

// One CNOT staged on a companion patch: the control teleports to its own
// coordinates, the Bell rounds run through the corner cell (t.row, c.col),
// and same-row CNOTs first hop the control to a spare row so the corner
// cell is free.
struct StagedCnot {
  Cell c, t;
  Cell corner;
  std::optional<std::uint32_t> hop;
};

class LayerCompiler {
 public:
  LayerCompiler(const BlockSpec& data, const LogicalCircuit& circuit,
                const CompilerConfig& cfg)
      : spec_(data),
        circ_(circuit),
        f_("clifford-layer", block_distance(data)),
        rows_(data.rows()),
        cols_(data.cols()),
        k_(data.rows() * data.cols()) {
    if (!data.code) throw Error("compile_layer: block spec has no code");
    if (circuit.rows != rows_ || circuit.cols != cols_)
      throw Error("compile_layer: circuit grid does not match the block");
    m_ = cfg.dense_threshold
             ? cfg.dense_threshold
             : static_cast<std::size_t>(std::ceil(std::pow(double(k_), 0.25)));
    limit_ = cfg.staging_limit;
    imgs_.assign(2 * k_, BinVector(2 * k_));
    for (std::size_t v = 0; v < 2 * k_; ++v) imgs_[v].set(v, true);
  }

  CompiledLayer run() {
    f_.add_data("D", spec_);
    std::vector<std::vector<LogicalGate>> subs = split_sublayers();
    for (const auto& sub : subs) compile_sublayer(sub);
    f_.schedule().stats["sublayers"] = static_cast<int>(subs.size());
    declare_effect();
    CompiledLayer out;
    out.carrier = carrier_;
    out.schedule = f_.take();
    return out;
  }

 private:
  const BlockSpec& spec_;
  const LogicalCircuit& circ_;
  Forge f_;
  std::string carrier_ = "D";
  std::size_t rows_, cols_, k_, m_, limit_;
  // imgs_[v] is the image of input letter v (v < k: X_v, else Z_{v-k}) as a
  // product of current letters, bit q = X_q, bit k+q = Z_q.
  std::vector<BinVector> imgs_;

  std::uint32_t cell_q(Cell c) const {
    if (c.row >= rows_ || c.col >= cols_) throw Error("compile_layer: cell outside grid");
    return static_cast<std::uint32_t>(c.row * cols_ + c.col);
  }

  std::vector<Cell> support(const LogicalGate& g) const {
    switch (g.kind) {
      case GateKind::H:
      case GateKind::S:
        return {g.a};
      case GateKind::CNOT:
        if (key(g.a) == key(g.b)) throw Error("compile_layer: CNOT on a single cell");
        return {g.a, g.b};
      default:
        throw Error("compile_layer handles unitary gates only (H, S, CNOT)");
    }
  }

  std::vector<std::vector<LogicalGate>> split_sublayers() const {
    std::vector<std::vector<LogicalGate>> subs;
    std::set<CellKey> used;
    std::vector<LogicalGate> cur;
    for (const auto& g : circ_.gates) {
      std::vector<Cell> sup = support(g);
      bool clash = false;
      for (const auto& c : sup) clash |= used.count(key(c)) > 0;
      if (clash) {
        subs.push_back(std::move(cur));
        cur.clear();
        used.clear();
      }
      for (const auto& c : sup) used.insert(key(c));
      cur.push_back(g);
    }
    if (!cur.empty()) subs.push_back(std::move(cur));
    return subs;
  }

  // --- symbolic channel updates (letters act on the current carrier) ------

  void img_s(std::uint32_t q) {
    for (auto& v : imgs_)
      if (v.get(q)) v.flip(k_ + q);
  }
  void img_h(std::uint32_t q) {
    for (auto& v : imgs_) {
      bool x = v.get(q), z = v.get(k_ + q);
      v.set(q, z);
      v.set(k_ + q, x);
    }
  }
  void img_cnot(std::uint32_t c, std::uint32_t t) {
    for (auto& v : imgs_) {
      if (v.get(c)) v.flip(t);
      if (v.get(k_ + t)) v.flip(k_ + c);
    }
  }

  // --- passes --------------------------------------------------------------

  void compile_sublayer(const std::vector<LogicalGate>& gates) {
    std::vector<Cell> s_targets, h_targets;
    std::vector<LogicalGate> cnots;
    for (const auto& g : gates) {
      switch (g.kind) {
        case GateKind::S: s_targets.push_back(g.a); break;
        case GateKind::H: h_targets.push_back(g.a); break;
        case GateKind::CNOT: cnots.push_back(g); break;
        default: throw Error("compile_layer handles unitary gates only (H, S, CNOT)");
      }
    }
    if (!s_targets.empty()) {
      carrier_ = f_.emit_teleported_s(carrier_, s_targets);
      f_.schedule().stats["s_blocks"] += 1;
      for (const auto& c : s_targets) img_s(cell_q(c));
    }
    if (!h_targets.empty()) {
      if (h_targets.size() == k_) {
        f_.emit_parallel_hadamard(carrier_);
      } else {
        h_sandwich(carrier_, h_targets);
      }
      f_.schedule().stats["h_blocks"] += 1;
      for (const auto& c : h_targets) img_h(cell_q(c));
    }
    if (!cnots.empty()) compile_cnots(cnots);
  }

  void h_sandwich(const std::string& block, const std::vector<Cell>& cells) {
    std::string t = f_.emit_selective_out(block, cells);
    f_.emit_parallel_hadamard(t);
    f_.emit_teleport_cells(t, block, cells);
    f_.measure(t, 'X');
  }

  void compile_cnots(const std::vector<LogicalGate>& cnots) {
    // Cluster by corner cell; diagonal clusters beyond the threshold take
    // the folded-CZ path, everything else stages on companion patches.
    std::map<CellKey, std::vector<LogicalGate>> diag, aligned;
    for (const auto& g : cnots) {
      Cell corner{g.b.row, g.a.col};
      if (classify_cnot(g.a, g.b) == CnotClass::Aligned)
        aligned[key(corner)].push_back(g);
      else
        diag[key(corner)].push_back(g);
    }
    std::vector<std::vector<LogicalGate>> sparse;
    for (auto& [corner, list] : diag) {
      if (list.size() > m_ && dense_ok()) {
        emit_dense(Cell{corner.first, corner.second}, list);
        f_.schedule().stats["dense_clusters"] += 1;
      } else {
        sparse.push_back(std::move(list));
      }
    }
    for (auto& [corner, list] : aligned) sparse.push_back(std::move(list));

    std::size_t passes = 0;
    for (const auto& l : sparse) passes = std::max(passes, l.size());
    for (std::size_t p = 0; p < passes; ++p) {
      std::vector<LogicalGate> pick;
      for (const auto& l : sparse)
        if (p < l.size()) pick.push_back(l[p]);
      emit_pass(pick);
      f_.schedule().stats["cnot_passes"] += 1;
    }
  }

  // --- staged CNOT pass ----------------------------------------------------

  void emit_pass(const std::vector<LogicalGate>& gates) {
    // Greedy cell-disjoint batches on the patch; a batch shares one patch.
    std::vector<std::vector<StagedCnot>> batches;
    std::vector<std::set<CellKey>> used;
    for (const auto& g : gates) {
      StagedCnot sc{g.a, g.b, Cell{g.b.row, g.a.col}, std::nullopt};
      bool placed = false;
      for (std::size_t b = 0; b < batches.size() && !placed; ++b) {
        if (limit_ && batches[b].size() >= limit_) continue;
        placed = try_place(sc, used[b]);
        if (placed) batches[b].push_back(sc);
      }
      if (!placed) {
        batches.emplace_back();
        used.emplace_back();
        if (!try_place(sc, used.back()))
          throw Error("compile_layer: CNOT does not fit an empty patch");
        batches.back().push_back(sc);
      }
    }
    for (const auto& b : batches) {
      emit_batch(b);
      f_.schedule().stats["cnot_batches"] += 1;
    }
  }

  // Reserves the patch cells of `sc` in `used`, picking a hop row for
  // same-row CNOTs.  Returns false (and leaves `used` unchanged) on clash.
  bool try_place(StagedCnot& sc, std::set<CellKey>& used) const {
    std::vector<CellKey> cells{key(sc.c)};
    if (sc.c.row == sc.t.row) {
      std::optional<std::uint32_t> hop;
      for (std::uint32_t r = 0; r < rows_ && !hop; ++r)
        if (r != sc.c.row && !used.count({r, sc.c.col})) hop = r;
      if (!hop) return false;
      sc.hop = hop;
      cells.push_back({*hop, sc.c.col});
    } else {
      cells.push_back(key(sc.corner));
    }
    for (const auto& c : cells)
      if (used.count(c)) return false;
    used.insert(cells.begin(), cells.end());
    return true;
  }

  void vteleport(const std::string& b, std::uint32_t col, std::uint32_t r_src,
                 std::uint32_t r_dst) {
    f_.gppm('Z', {pair_edge(r_src, r_dst)}, {{ColRef{b, col}}});
    f_.gppm('X', {{r_src}}, {{ColRef{b, col}}});
  }

  void emit_batch(const std::vector<StagedCnot>& batch) {
    std::string p = f_.add_fresh(spec_, StepKind::PrepX);
    std::vector<Cell> controls;
    for (const auto& sc : batch) controls.push_back(sc.c);
    f_.emit_teleport_cells(carrier_, p, controls);
    for (const auto& sc : batch)
      if (sc.hop) vteleport(p, sc.c.col, sc.c.row, *sc.hop);

    // Bell halves column-by-column / row-by-row, then the corner cleanup.
    std::map<std::uint32_t, EdgeFamily> zz;
    for (const auto& sc : batch)
      zz[sc.c.col].push_back(pair_edge(sc.hop.value_or(sc.c.row), sc.corner.row));
    for (const auto& [j, fam] : zz) f_.gppm('Z', fam, {{ColRef{p, j}}});

    std::map<std::uint32_t, ColEdgeFamily> xx;
    for (const auto& sc : batch)
      xx[sc.t.row].push_back({ColRef{p, sc.corner.col}, ColRef{carrier_, sc.t.col}});
    for (const auto& [r, fam] : xx) f_.gppm('X', {{r}}, fam);

    std::map<std::uint32_t, EdgeFamily> cleanup;
    for (const auto& sc : batch) cleanup[sc.corner.col].push_back({sc.corner.row});
    for (const auto& [j, fam] : cleanup) f_.gppm('Z', fam, {{ColRef{p, j}}});

    for (const auto& sc : batch)
      if (sc.hop) {
        f_.reset_cells_x(p, {sc.corner});
        vteleport(p, sc.c.col, *sc.hop, sc.c.row);
      }
    f_.emit_teleport_cells(p, carrier_, controls);
    f_.measure(p, 'X');

    for (const auto& sc : batch) img_cnot(cell_q(sc.c), cell_q(sc.t));
    f_.schedule().stats["staged_cnots"] += static_cast<int>(batch.size());
  }

  // --- folded-CZ path for a dense corner cluster ---------------------------

  bool dense_ok() const {
    return rows_ == cols_ && spec_.first_qc && spec_.second_qc;
  }

  void emit_dense(Cell corner, const std::vector<LogicalGate>& gates) {
    std::uint32_t alpha = corner.row, beta = corner.col;
    std::uint32_t l = static_cast<std::uint32_t>(rows_);
    std::vector<Cell> cluster;
    for (const auto& g : gates) {
      cluster.push_back(g.a);
      cluster.push_back(g.b);
    }

    // Park a fresh block in |0>, open the arrival cells, move the cluster
    // over, and shift the target row onto the mirror axis.
    std::string q = f_.add_fresh(spec_, StepKind::PrepZ);
    f_.reset_cells_x(q, cluster);
    f_.emit_teleport_cells(carrier_, q, cluster);
    std::uint32_t shift = (beta + l - alpha) % l;
    if (shift) f_.translate(q, shift, 0);

    // Symmetrize: content of column beta at row (r_i + shift) moves to row
    // c_i, so each control mirrors its target across the diagonal.
    std::map<std::uint32_t, std::uint32_t> pending;  // current row -> wanted row
    std::set<std::uint32_t> occupied, touched, finals;
    for (const auto& g : gates) {
      std::uint32_t at = (g.a.row + shift) % l;
      occupied.insert(at);
      touched.insert(at);
      finals.insert(g.b.col);
      if (at != g.b.col) pending.emplace(at, g.b.col);
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> moves;
    while (!pending.empty()) {
      auto it = std::find_if(pending.begin(), pending.end(),
                             [&](const auto& uv) { return !occupied.count(uv.second); });
      std::uint32_t src, dst;
      if (it != pending.end()) {
        src = it->first;
        dst = it->second;
        pending.erase(it);
      } else {
        // All remaining moves form cycles; break one through a free row.
        src = pending.begin()->first;
        std::uint32_t want = pending.begin()->second;
        pending.erase(pending.begin());
        dst = 0;
        while (occupied.count(dst)) ++dst;
        pending.emplace(dst, want);
      }
      moves.push_back({src, dst});
      occupied.erase(src);
      occupied.insert(dst);
      touched.insert(dst);
    }
    auto run_moves = [&](bool forward) {
      auto emit = [&](std::uint32_t src, std::uint32_t dst) {
        f_.reset_cells_x(q, {Cell{dst, beta}});
        vteleport(q, beta, src, dst);
      };
      if (forward)
        for (const auto& [s, d] : moves) emit(s, d);
      else
        for (auto it = moves.rbegin(); it != moves.rend(); ++it) emit(it->second, it->first);
    };
    auto park = [&](const std::set<std::uint32_t>& keep) {
      EdgeFamily fam;
      for (auto r : touched)
        if (!keep.count(r)) fam.push_back({r});
      if (!fam.empty()) f_.gppm('Z', fam, {{ColRef{q, beta}}});
    };
    run_moves(true);
    park(finals);

    // The fold applies CZ across mirror pairs; dressing the targets with
    // Hadamards turns each pair into a CNOT onto the target.
    std::vector<Cell> dress;
    for (const auto& g : gates) dress.push_back({beta, g.b.col});
    h_sandwich(q, dress);
    f_.fold_czs(q);
    h_sandwich(q, dress);

    run_moves(false);
    std::set<std::uint32_t> starts;
    for (const auto& g : gates) starts.insert((g.a.row + shift) % l);
    park(starts);
    if (shift) f_.translate(q, (l - shift) % l, 0);
    f_.emit_teleport_cells(q, carrier_, cluster);
    f_.measure(q, 'X');

    for (const auto& g : gates) img_cnot(cell_q(g.a), cell_q(g.b));
  }

  // --- declared effect ------------------------------------------------------

  void declare_effect() {
    auto& eff = f_.schedule().effect;
    for (std::uint32_t q = 0; q < k_; ++q)
      for (char letter : {'X', 'Z'}) {
        const BinVector& img = imgs_[letter == 'X' ? q : k_ + q];
        DeclaredEffect::MapEntry e;
        e.from = {"D", q, letter};
        for (std::uint32_t b = 0; b < k_; ++b) {
          if (img.get(b)) e.to.push_back({carrier_, b, 'X'});
          if (img.get(k_ + b)) e.to.push_back({carrier_, b, 'Z'});
        }
        eff.map.push_back(std::move(e));
      }
  }
};

}  // namespace

CompiledLayer compile_layer(const BlockSpec& data, const LogicalCircuit& circuit,
                            const CompilerConfig& cfg) {
  return LayerCompiler(data, circuit, cfg).run();
}

// ---------------------------------------------------------------------------
// Logical replay and equivalence

Tableau simulate_logical(const LogicalCircuit& circuit) {
  std::size_t k = circuit.k();
  if (!k) throw Error("simulate_logical: empty grid");
  Tableau t(k);
  auto idx = [&](Cell c) -> std::size_t {
    if (c.row >= circuit.rows || c.col >= circuit.cols)
      throw Error("simulate_logical: cell outside grid");
    return c.row * circuit.cols + c.col;
  };
  for (const auto& g : circuit.gates) {
    switch (g.kind) {
      case GateKind::H: t.h(idx(g.a)); break;
      case GateKind::S: t.s(idx(g.a)); break;
      case GateKind::CNOT: t.cnot(idx(g.a), idx(g.b)); break;
      case GateKind::PrepX: t.prep_x(idx(g.a)); break;
      case GateKind::PrepZ: t.prep_z(idx(g.a)); break;
      case GateKind::MeasX: t.measure_forced(Pauli::letter(k, idx(g.a), 'X')); break;
      case GateKind::MeasZ: t.measure_forced(Pauli::letter(k, idx(g.a), 'Z')); break;
      case GateKind::PPM: {
        Pauli p = Pauli::identity(k);
        for (const auto& [c, letter] : g.product)
          p = pauli_mul(p, Pauli::letter(k, idx(c), letter));
        t.measure_forced(p);
        break;
      }
    }
  }
  return t;
}

bool equivalent_on_data(const CompiledLayer& layer, const LogicalCircuit& circuit) {
  std::size_t k = circuit.k();
  Tableau ref(2 * k);
  for (std::size_t q = 0; q < k; ++q) {
    ref.h(q);
    ref.cnot(q, q + k);
  }
  auto idx = [&](Cell c) { return c.row * circuit.cols + c.col; };
  for (const auto& g : circuit.gates) {
    switch (g.kind) {
      case GateKind::H: ref.h(idx(g.a)); break;
      case GateKind::S: ref.s(idx(g.a)); break;
      case GateKind::CNOT: ref.cnot(idx(g.a), idx(g.b)); break;
      default: throw Error("equivalent_on_data expects a unitary circuit");
    }
  }

  std::map<std::pair<std::uint32_t, char>, const DeclaredEffect::MapEntry*> by_from;
  for (const auto& e : layer.schedule.effect.map) {
    if (e.from.block != "D") throw Error("equivalent_on_data: unexpected source block");
    by_from[{e.from.q, e.from.letter}] = &e;
  }
  std::vector<Pauli> gens;
  for (std::uint32_t q = 0; q < k; ++q)
    for (char letter : {'X', 'Z'}) {
      Pauli p = Pauli::identity(2 * k);
      auto it = by_from.find({q, letter});
      if (it == by_from.end()) {
        if (letter == 'X') p.x.flip(q); else p.z.flip(q);
      } else {
        for (const auto& ref2 : it->second->to) {
          if (ref2.block != layer.carrier)
            throw Error("equivalent_on_data: image off the carrier");
          if (ref2.letter == 'X' || ref2.letter == 'Y') p.x.flip(ref2.q);
          if (ref2.letter == 'Z' || ref2.letter == 'Y') p.z.flip(ref2.q);
        }
      }
      if (letter == 'X') p.x.flip(k + q); else p.z.flip(k + q);
      gens.push_back(std::move(p));
    }
  return Tableau::same_group(ref.stabilizers(), gens, /*up_to_sign=*/true);
}

// ---------------------------------------------------------------------------
// Subroutine schedules

GhzResult ghz_schedule(const BlockSpec& spec) {
  GhzResult r;
  r.schedule = ghz_state(spec);
  r.replay.rows = spec.rows();
  r.replay.cols = spec.cols();
  for (std::uint32_t i = 0; i < spec.rows(); ++i)
    for (std::uint32_t j = 0; j < spec.cols(); ++j)
      r.replay.gates.push_back(gate_prep_x({i, j}));
  std::uint32_t cols = static_cast<std::uint32_t>(spec.cols());
  for (const auto& res : r.schedule.effect.residues) {
    std::vector<std::pair<Cell, char>> product;
    for (const auto& f : res.factors)
      product.push_back({Cell{f.q / cols, f.q % cols}, f.letter});
    r.replay.gates.push_back(gate_ppm(std::move(product)));
  }
  return r;
}

namespace {

// Reactive |+>-reset of a representative subset: a fresh patch in |+>, the
// folded S on the diagonal, and one X grid round over the subset square.
// Diagonal mode stops there; full mode pays the i-state machinery and
// resets cell-by-cell instead.
std::string reactive_prep(Forge& f, const BlockSpec& spec, ReactiveMode mode) {
  std::size_t l = spec.rows();
  if (mode == ReactiveMode::Diagonal) {
    std::string r = f.add_fresh(spec, StepKind::PrepX);
    f.fold_czs(r);
    f.annotate("reactive: fold kept or undone by the measured byte");
    EdgeFamily subset;
    for (std::uint32_t i = 0; i < l; i += 2) subset.push_back({i});
    ColEdgeFamily cols;
    for (const auto& e : subset) cols.push_back({ColRef{r, e[0]}});
    f.gppm('X', subset, cols);
    return r;
  }
  std::string r = f.emit_i_state(spec);
  std::vector<Cell> resets;
  for (std::uint32_t i = 0; i < spec.rows(); ++i)
    for (std::uint32_t j = 0; j < spec.cols(); ++j)
      if ((i + j) % 2 == 0) resets.push_back({i, j});
  f.annotate("reactive: reset pattern chosen by the measured byte");
  f.reset_cells_x(r, resets);
  return r;
}

void bell_measure(Forge& f, const std::string& a, const std::string& b) {
  f.full_cnot(a, b);
  f.measure(a, 'X');
  f.measure(b, 'Z');
}

EdgeFamily all_rows(const BlockSpec& spec) {
  EdgeFamily rows;
  for (std::uint32_t i = 0; i < spec.rows(); ++i) rows.push_back({i});
  return rows;
}

}  // namespace

GadgetSchedule msd_round_schedule(const BlockSpec& spec, ReactiveMode mode) {
  Forge f("msd-round", block_distance(spec));
  std::vector<std::string> plus;
  for (int i = 0; i < 3; ++i) plus.push_back(f.add_fresh(spec, StepKind::PrepX));
  std::string magic = f.add_fresh(spec, StepKind::PrepX);
  f.annotate("magic input block: non-Clifford content");

  EdgeFamily rows = all_rows(spec);
  // Eight Z-type product rotations; rotation r couples a fresh non-Clifford
  // block to the patch subset with index bits of r+1.
  for (int r = 0; r < 8; ++r) {
    std::string t = f.add_fresh(spec, StepKind::PrepX);
    f.annotate("rotation block: non-Clifford content");
    std::vector<std::string> coupled{t};
    int sel = r + 1;
    for (int i = 0; i < 3; ++i)
      if ((sel >> i) & 1) coupled.push_back(plus[i]);
    if (sel == 8 || coupled.size() == 1) coupled.push_back(magic);
    ColEdgeFamily cols;
    for (std::uint32_t j = 0; j < spec.cols(); ++j) {
      ColEdge e;
      for (const auto& b : coupled) e.push_back({b, j});
      cols.push_back(std::move(e));
    }
    f.gppm('Z', rows, cols);
    std::string react = reactive_prep(f, spec, mode);
    bell_measure(f, t, react);
  }
  f.measure(magic, 'X');
  auto s = f.take();
  s.stats["rotations"] = 8;
  s.stats["reactive_preps"] = 8;
  return s;
}

GadgetSchedule msi_schedule(const BlockSpec& spec, ReactiveMode mode) {
  Forge f("msi", block_distance(spec));
  std::vector<std::string> data, ccz;
  for (int i = 0; i < 3; ++i) {
    data.push_back("D" + std::to_string(i));
    f.add_data(data.back(), spec);
  }
  for (int i = 0; i < 3; ++i) {
    ccz.push_back(f.add_fresh(spec, StepKind::PrepX));
    f.annotate("magic block: non-Clifford content");
  }

  EdgeFamily rows = all_rows(spec);
  for (int i = 0; i < 3; ++i) {
    ColEdgeFamily cols;
    for (std::uint32_t j = 0; j < spec.cols(); ++j)
      cols.push_back({ColRef{data[i], j}, ColRef{ccz[i], j}});
    f.gppm('Z', rows, cols);
  }
  for (int i = 0; i < 3; ++i) f.measure(ccz[i], 'X');

  // Reactive pairwise CZs across six helper blocks.
  const int pairs[3][2] = {{0, 1}, {1, 2}, {0, 2}};
  for (const auto& pr : pairs) {
    std::string a = f.add_fresh(spec, StepKind::PrepX);
    std::string b = f.add_fresh(spec, StepKind::PrepX);
    f.full_cnot(data[pr[0]], a);
    f.full_cnot(data[pr[1]], b);
    f.annotate("reactive: pairwise coupling chosen by the measured bytes");
    EdgeFamily subset;
    for (std::uint32_t i = 0; i < spec.rows(); i += 2) subset.push_back({i});
    for (const std::string& blk : {a, b}) {
      ColEdgeFamily cols;
      for (const auto& e : subset) cols.push_back({ColRef{blk, e[0]}});
      f.gppm('X', subset, cols);
      f.gppm('X', subset, cols);
    }
    bell_measure(f, a, b);
  }

  for (int i = 0; i < 3; ++i) {
    if (mode == ReactiveMode::Diagonal)
      f.fold_hswap(data[i]);
    else
      f.emit_parallel_hadamard(data[i]);
  }
  f.annotate("reactive: transversal Hadamard fix-up");
  auto s = f.take();
  s.stats["joint_products"] = 3;
  s.stats["reactive_pairs"] = 3;
  return s;
}

GadgetSchedule adder_schedule(const BlockSpec& spec) {
  std::size_t k = spec.code->k;
  int d = block_distance(spec);
  Forge f("adder", d);
  f.add_data("A", spec);
  f.add_data("B", spec);
  std::string c = f.add_fresh(spec, StepKind::PrepZ);
  std::string dd = f.add_fresh(spec, StepKind::PrepX);
  std::string e = f.add_fresh(spec, StepKind::PrepX);
  f.full_cnot(e, c);  // Bell bridge: carries teleport back in time via (e, c)

  if (k > 1) {
    // Temporary ANDs of (A, B) into D, consumed from a magic block.
    std::string magic = f.add_fresh(spec, StepKind::PrepX);
    f.annotate("magic block: non-Clifford content");
    EdgeFamily rows = all_rows(spec);
    ColEdgeFamily cols;
    for (std::uint32_t j = 0; j < spec.cols(); ++j)
      cols.push_back({ColRef{"A", j}, ColRef{"B", j}, ColRef{dd, j}, ColRef{magic, j}});
    f.gppm('Z', rows, cols);
    f.measure(magic, 'X');
    f.annotate("temporary-AND consumption");
    f.schedule().stats["temporary_ands"] = static_cast<int>(k - 1);

    // Reset the seed carry.
    f.gppm('Z', {{0}}, {{ColRef{c, 0}}});

    // Six helper blocks for the reactive majority corrections.
    for (int i = 0; i < 6; ++i) {
      std::string h = f.add_fresh(spec, StepKind::PrepX);
      f.full_cnot(i % 2 ? dd : c, h);
      f.measure(h, 'X');
    }

    // Reactive tail: one dependent round per bit, a logical cycle each.
    for (std::size_t i = 0; i < k; ++i) {
      GadgetStep st;
      st.kind = StepKind::Annotation;
      st.note = "reactive round " + std::to_string(i);
      st.cycle_cost = d;
      f.schedule().steps.push_back(std::move(st));
    }

    f.emit_cyclic_shift(e);
    f.schedule().stats["shifts"] = 1;
    bell_measure(f, dd, e);
  } else {
    f.schedule().stats["temporary_ands"] = 0;
    f.schedule().stats["shifts"] = 0;
    f.full_cnot("A", "B");
    f.measure(dd, 'X');
    f.measure(e, 'X');
    f.measure(c, 'Z');
  }

  auto s = f.take();
  int seq = static_cast<int>(k > 1 ? k : 0) * d;
  s.stats["sequential_code_cycles"] = seq;
  s.stats["parallel_code_cycles"] = s.total_cycles - seq;
  return s;
}

// ---------------------------------------------------------------------------
// Resource report

std::string CostReport::to_text() const {
  std::ostringstream os;
  os << "logical qubits k=" << k << ", distance d=" << d << "\n";
  for (const auto& l : lines) {
    os << l.scheme << ":\n";
    os << "  space      " << l.space << "  (" << l.space_n << " physical qubits)\n";
    os << "  time       " << l.time << "  (" << l.time_n << " code cycles)\n";
    os << "  space-time " << l.spacetime << "  (" << l.spacetime_n << ")\n";
  }
  return os.str();
}

CostReport cost_report(const BlockSpec& data, const CompiledLayer& layer) {
  CostReport r;
  r.k = data.code->k;
  r.d = block_distance(data);
  double k = double(r.k), d = double(r.d), n = double(data.code->n);

  r.lines.push_back({"surface-lattice-surgery", "Theta(k*d^2)", "Theta(d)",
                     "Theta(k*d^3)", k * d * d, d, k * d * d * d});
  r.lines.push_back({"hgp-lattice-surgery", "Theta(k)", "Theta(k)*d", "Theta(k^2*d)",
                     n, k * d, n * k * d});

  // Measured from the compiled schedule: peak live physical qubits and the
  // pipelined code-cycle total.
  std::map<std::string, std::size_t> alive;
  std::size_t live = 0, peak = 0;
  for (const auto& [name, info] : layer.schedule.blocks)
    if (info.is_data) {
      alive[name] = info.code->n;
      live += info.code->n;
    }
  peak = live;
  for (const auto& st : layer.schedule.steps) {
    switch (st.kind) {
      case StepKind::PrepZ:
      case StepKind::PrepX:
      case StepKind::PrepContent: {
        std::size_t nn = layer.schedule.blocks.at(st.block).code->n;
        if (!alive.count(st.block)) {
          alive[st.block] = nn;
          live += nn;
        }
        break;
      }
      case StepKind::MeasureZ:
      case StepKind::MeasureX: {
        auto it = alive.find(st.block);
        if (it != alive.end()) {
          live -= it->second;
          alive.erase(it);
        }
        break;
      }
      default: break;
    }
    peak = std::max(peak, live);
  }
  double time_n = double(layer.schedule.total_cycles);
  r.lines.push_back({"hgp-gppm", "Theta(k)", "O(k^(3/4))*d", "O(k^(7/4)*d)",
                     double(peak), time_n, double(peak) * time_n});
  return r;
}

AdderFit adder_fit(const GadgetSchedule& adder, std::size_t k) {
  AdderFit f;
  f.k = k;
  auto stat = [&](const char* key) {
    auto it = adder.stats.find(key);
    return it == adder.stats.end() ? 0 : it->second;
  };
  f.parallel_cycles = stat("parallel_code_cycles");
  f.sequential_cycles = stat("sequential_code_cycles");
  double kd = double(k);
  double par_scale = std::sqrt(kd) * std::log2(kd);
  f.c1 = par_scale > 0 ? f.parallel_cycles / par_scale : 0.0;
  f.c2 = kd > 0 ? f.sequential_cycles / kd : 0.0;
  std::ostringstream os;
  os << "cycles(k=" << k << ") = " << f.c1 << "*sqrt(k)*log2(k) + " << f.c2 << "*k";
  f.formula = os.str();
  return f;
}

}  // namespace homprod
