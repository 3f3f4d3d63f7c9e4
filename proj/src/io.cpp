#include "homprod/io.hpp"

#include <algorithm>
#include <sstream>

#include "homprod/error.hpp"

namespace homprod::io {

using gf2::BinMatrix;
using gf2::BinVector;

// --- matrices ---------------------------------------------------------------

std::string to_alist(const BinMatrix& m) {
  std::vector<std::vector<std::size_t>> by_row(m.rows()), by_col(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c : m.row(r).support()) {
      by_row[r].push_back(c + 1);
      by_col[c].push_back(r + 1);
    }
  std::size_t maxr = 0, maxc = 0;
  for (const auto& v : by_row) maxr = std::max(maxr, v.size());
  for (const auto& v : by_col) maxc = std::max(maxc, v.size());
  std::ostringstream os;
  os << m.rows() << ' ' << m.cols() << '\n' << maxr << ' ' << maxc << '\n';
  auto line = [&os](const auto& xs, const char* sep) {
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? sep : "") << xs[i];
    os << '\n';
  };
  std::vector<std::size_t> rw, cw;
  for (const auto& v : by_row) rw.push_back(v.size());
  for (const auto& v : by_col) cw.push_back(v.size());
  line(rw, " ");
  line(cw, " ");
  for (const auto& v : by_row) line(v, " ");
  for (const auto& v : by_col) line(v, " ");
  return os.str();
}

BinMatrix from_alist(const std::string& text) {
  std::istringstream is(text);
  auto next = [&is]() {
    long long v;
    if (!(is >> v) || v < 0) throw Error("alist: truncated or negative entry");
    return static_cast<std::size_t>(v);
  };
  std::size_t rows = next(), cols = next();
  std::size_t maxr = next(), maxc = next();
  std::vector<std::size_t> rw(rows), cw(cols);
  for (auto& w : rw) w = next();
  for (auto& w : cw) w = next();
  BinMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (rw[r] > maxr) throw Error("alist: row weight above the declared maximum");
    for (std::size_t i = 0; i < rw[r]; ++i) {
      std::size_t c = next();
      if (c < 1 || c > cols) throw Error("alist: column index out of range");
      if (m.get(r, c - 1)) throw Error("alist: repeated entry");
      m.set(r, c - 1, true);
    }
  }
  for (std::size_t c = 0; c < cols; ++c) {
    if (cw[c] > maxc) throw Error("alist: column weight above the declared maximum");
    std::vector<std::size_t> seen;
    for (std::size_t i = 0; i < cw[c]; ++i) seen.push_back(next());
    std::sort(seen.begin(), seen.end());
    std::vector<std::size_t> expect;
    for (std::size_t r = 0; r < rows; ++r)
      if (m.get(r, c)) expect.push_back(r + 1);
    if (seen != expect) throw Error("alist: row and column lists disagree");
  }
  return m;
}

json matrix_json(const BinMatrix& m, MatrixFormat fmt) {
  if (fmt == MatrixFormat::Alist) return to_alist(m);
  json data = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.get(r, c) ? 1 : 0);
    data.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

BinMatrix matrix_from_json(const json& j) {
  if (j.is_string()) return from_alist(j.get<std::string>());
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw Error("matrix: expected an alist string or {rows, cols, data}");
  std::size_t rows = j.at("rows").get<std::size_t>();
  std::size_t cols = j.at("cols").get<std::size_t>();
  const json& data = j.at("data");
  if (!data.is_array() || data.size() != rows) throw Error("matrix: bad row count");
  BinMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = data[r];
    if (!row.is_array() || row.size() != cols) throw Error("matrix: bad column count");
    for (std::size_t c = 0; c < cols; ++c) {
      int b = row[c].get<int>();
      if (b != 0 && b != 1) throw Error("matrix: entries must be 0 or 1");
      if (b) m.set(r, c, true);
    }
  }
  return m;
}

// --- classical code specs ----------------------------------------------------

namespace {

struct FactorSpec {
  ClassicalCode code;
  std::optional<QuasiCyclicSpec> qc;
};

std::optional<int> opt_d(const json& j) {
  if (j.contains("d")) return j.at("d").get<int>();
  return std::nullopt;
}

FactorSpec factor_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw Error("classical spec: expected an object with a \"type\"");
  std::string type = j.at("type").get<std::string>();
  if (type == "explicit")
    return {make_code(matrix_from_json(j.at("H")), opt_d(j)), std::nullopt};
  if (type == "quasi_cyclic") {
    QuasiCyclicSpec spec{j.at("lift").get<std::size_t>(),
                         j.at("H").get<std::vector<std::vector<std::string>>>(),
                         j.at("G").get<std::vector<std::string>>()};
    return {expand_quasi_cyclic(spec, opt_d(j)), spec};
  }
  if (type == "catalog") {
    std::string name = j.at("name").get<std::string>();
    for (const auto& e : ogsc_catalog())
      if (e.name == name) return {expand_quasi_cyclic(e.spec, e.d), e.spec};
    throw Error("classical spec: unknown catalog code '" + name + "'");
  }
  if (type == "repetition")
    return {repetition_code(j.at("n").get<std::size_t>()), std::nullopt};
  if (type == "hamming")
    return {hamming_code(j.at("r").get<std::size_t>()), std::nullopt};
  throw Error("classical spec: unknown type '" + type + "'");
}

std::vector<FactorSpec> factors_from_spec(const json& spec, std::size_t want) {
  if (!spec.contains("factors") || !spec.at("factors").is_array() ||
      spec.at("factors").empty())
    throw Error("build spec: missing \"factors\"");
  const json& fs = spec.at("factors");
  if (fs.size() != 1 && fs.size() != want)
    throw Error("build spec: expected 1 or " + std::to_string(want) + " factors");
  std::vector<FactorSpec> out;
  for (std::size_t i = 0; i < want; ++i)
    out.push_back(factor_from_json(fs[fs.size() == 1 ? 0 : i]));
  return out;
}

std::string product_kind(const json& spec) {
  if (!spec.is_object() || !spec.contains("product"))
    throw Error("build spec: missing \"product\"");
  return spec.at("product").get<std::string>();
}

}  // namespace

ClassicalCode classical_from_json(const json& spec) { return factor_from_json(spec).code; }

CssCode build_code(const json& spec) {
  std::string kind = product_kind(spec);
  CssCode code;
  if (kind == "hgp") {
    auto f = factors_from_spec(spec, 2);
    code = hgp(f[0].code, f[1].code);
  } else if (kind == "3d") {
    auto f = factors_from_spec(spec, 3);
    code = homological_3d(f[0].code, f[1].code, f[2].code);
  } else if (kind == "4d") {
    auto f = factors_from_spec(spec, 4);
    code = homological_4d(f[0].code, f[1].code, f[2].code, f[3].code);
  } else {
    throw Error("build spec: unknown product '" + kind + "'");
  }
  if (auto d = opt_d(spec)) code.d = d;
  return code;
}

BlockSpec block_from_spec(const json& spec) {
  if (product_kind(spec) != "hgp")
    throw Error("block spec: grid gadgets need a 2D (\"hgp\") product");
  auto f = factors_from_spec(spec, 2);
  BlockSpec b{std::move(f[0].code), std::move(f[1].code), std::move(f[0].qc),
              std::move(f[1].qc), nullptr};
  CssCode css = hgp(b.first, b.second);
  if (auto d = opt_d(spec)) css.d = d;
  b.code = std::make_shared<const CssCode>(std::move(css));
  return b;
}

CubeSpec cube_from_spec(const json& spec) {
  if (product_kind(spec) != "3d")
    throw Error("cube spec: cube gadgets need a \"3d\" product");
  auto f = factors_from_spec(spec, 3);
  return make_cube(f[0].code, f[1].code, f[2].code);
}

// --- CSS code export ----------------------------------------------------------

namespace {

json supports_json(const std::vector<BinVector>& rows) {
  json out = json::array();
  for (const auto& v : rows) out.push_back(v.support());
  return out;
}

std::vector<BinVector> supports_from_json(const json& j, std::size_t n) {
  std::vector<BinVector> out;
  for (const auto& sup : j) {
    BinVector v(n);
    for (const auto& i : sup) v.set(i.get<std::size_t>(), true);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

json css_json(const CssCode& code, MatrixFormat fmt, const json* provenance) {
  json j;
  j["n"] = code.n;
  j["k"] = code.k;
  if (code.d) j["d"] = *code.d;
  j["HX"] = matrix_json(code.HX, fmt);
  j["HZ"] = matrix_json(code.HZ, fmt);
  if (code.MX) j["MX"] = matrix_json(*code.MX, fmt);
  if (code.MZ) j["MZ"] = matrix_json(*code.MZ, fmt);
  j["grid"] = code.grid;
  j["logicals"] = json{{"X", supports_json(code.lx)}, {"Z", supports_json(code.lz)}};
  json qubits = json::array();
  for (const auto& c : code.coords) {
    json q = json::array();
    q.push_back(c.summand);
    for (auto i : c.idx) q.push_back(i);
    qubits.push_back(std::move(q));
  }
  json summands = json::array();
  for (const auto& s : code.qubit_summands)
    summands.push_back(json{{"grades", s.grades},
                            {"offset", s.offset},
                            {"dim", s.dim},
                            {"factor_dims", s.factor_dims}});
  j["coords"] = json{{"qubits", std::move(qubits)}, {"summands", std::move(summands)}};
  if (provenance) j["spec"] = *provenance;
  return j;
}

CssCode css_from_json(const json& j) {
  CssCode code;
  code.n = j.at("n").get<std::size_t>();
  code.k = j.at("k").get<std::size_t>();
  if (j.contains("d")) code.d = j.at("d").get<int>();
  code.HX = matrix_from_json(j.at("HX"));
  code.HZ = matrix_from_json(j.at("HZ"));
  if (j.contains("MX")) code.MX = matrix_from_json(j.at("MX"));
  if (j.contains("MZ")) code.MZ = matrix_from_json(j.at("MZ"));
  if (code.HX.cols() != code.n || code.HZ.cols() != code.n)
    throw Error("css import: check matrices do not match n");
  code.grid = j.at("grid").get<std::vector<std::size_t>>();
  code.lx = supports_from_json(j.at("logicals").at("X"), code.n);
  code.lz = supports_from_json(j.at("logicals").at("Z"), code.n);
  for (const auto& q : j.at("coords").at("qubits")) {
    QubitCoord c;
    c.summand = q.at(0).get<std::size_t>();
    for (std::size_t i = 1; i < q.size(); ++i) c.idx.push_back(q[i].get<std::size_t>());
    code.coords.push_back(std::move(c));
  }
  for (const auto& s : j.at("coords").at("summands")) {
    Summand sm;
    sm.grades = s.at("grades").get<std::vector<int>>();
    sm.offset = s.at("offset").get<std::size_t>();
    sm.dim = s.at("dim").get<std::size_t>();
    sm.factor_dims = s.at("factor_dims").get<std::vector<std::size_t>>();
    code.qubit_summands.push_back(std::move(sm));
  }
  if (code.coords.size() != code.n) throw Error("css import: coordinate table size");
  return code;
}

BlockSpec block_from_code_json(const json& j) {
  if (!j.contains("spec"))
    throw Error("code file carries no build spec; gadget synthesis needs one");
  BlockSpec b = block_from_spec(j.at("spec"));
  if (matrix_from_json(j.at("HX")) != b.code->HX ||
      matrix_from_json(j.at("HZ")) != b.code->HZ)
    throw Error("code file matrices disagree with its embedded build spec");
  return b;
}

// --- schedules -----------------------------------------------------------------

namespace {

json ref_json(const LogicalRef& r, const GadgetSchedule* shapes) {
  json j{{"block", r.block}, {"q", r.q + 1}, {"letter", std::string(1, r.letter)}};
  if (shapes) {
    auto it = shapes->blocks.find(r.block);
    if (it != shapes->blocks.end() && it->second.code && it->second.code->grid.size() == 2) {
      std::size_t cols = it->second.code->grid[1];
      if (cols > 0) j["cell"] = {r.q / cols + 1, r.q % cols + 1};
    }
  }
  return j;
}

json product_json(const PauliProductRef& p, const GadgetSchedule* shapes) {
  json out = json::array();
  for (const auto& f : p.factors) out.push_back(ref_json(f, shapes));
  return out;
}

}  // namespace

json effect_json(const DeclaredEffect& e, const GadgetSchedule* shapes) {
  json measured = json::array(), map = json::array(), residues = json::array();
  for (const auto& p : e.measured) measured.push_back(product_json(p, shapes));
  for (const auto& m : e.map) {
    json to = json::array();
    for (const auto& r : m.to) to.push_back(ref_json(r, shapes));
    map.push_back(json{{"from", ref_json(m.from, shapes)}, {"to", std::move(to)}});
  }
  for (const auto& p : e.residues) residues.push_back(product_json(p, shapes));
  return json{{"measured", std::move(measured)},
              {"map", std::move(map)},
              {"residues", std::move(residues)}};
}

json schedule_summary_json(const GadgetSchedule& s) {
  json blocks = json::array();
  for (const auto& [name, info] : s.blocks) {
    json b{{"name", name}, {"is_data", info.is_data}};
    if (info.code) {
      b["n"] = info.code->n;
      b["k"] = info.code->k;
      if (info.code->d) b["d"] = *info.code->d;
    }
    blocks.push_back(std::move(b));
  }
  return json{{"name", s.name},
              {"certified", s.certified},
              {"total_code_cycles", s.total_cycles},
              {"logical_cycles", s.logical_cycles},
              {"stats", s.stats},
              {"blocks", std::move(blocks)},
              {"effect", effect_json(s.effect, &s)}};
}

std::string schedule_jsonl(const GadgetSchedule& s, int distance) {
  std::ostringstream os;
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    const GadgetStep& st = s.steps[i];
    json blocks = json::array();
    if (st.kind == StepKind::TransversalCNOT) blocks.push_back(st.control);
    if (!st.block.empty()) blocks.push_back(st.block);
    json line{{"t", i},
              {"op", step_kind_name(st.kind)},
              {"blocks", std::move(blocks)},
              {"cycles", step_cycles(st, distance)}};
    if (!st.mask.empty()) {
      json mask = json::array();
      for (auto [c, t] : st.mask) mask.push_back({c, t});
      line["mask"] = std::move(mask);
    }
    if (!st.perm.empty()) line["perm"] = st.perm;
    if (!st.note.empty()) line["note"] = st.note;
    if (st.background) line["background"] = true;
    if (st.fused) line["fused"] = true;
    os << line.dump() << '\n';
  }
  os << json{{"summary", schedule_summary_json(s)}}.dump() << '\n';
  return os.str();
}

json certification_json(const CertificationReport& r, const GadgetSchedule& s) {
  json mismatches = json::array();
  for (const auto& e : r.errors) mismatches.push_back("error: " + e);
  for (const auto& m : r.missing) mismatches.push_back("missing: " + m);
  for (const auto& x : r.extra) mismatches.push_back("extra: " + x);
  return json{{"certified", r.certified},
              {"effect", effect_json(s.effect, &s)},
              {"mismatches", std::move(mismatches)}};
}

// --- circuits -------------------------------------------------------------------

namespace {

Cell cell_from_json(const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != 2) throw Error("circuit: a cell is [row, col]");
  long long r = j[0].get<long long>(), c = j[1].get<long long>();
  if (r < 1 || c < 1 || r > static_cast<long long>(rows) ||
      c > static_cast<long long>(cols))
    throw Error("circuit: cell out of range (cells are 1-based)");
  return Cell{static_cast<std::uint32_t>(r - 1), static_cast<std::uint32_t>(c - 1)};
}

json cell_json(Cell c) { return json::array({c.row + 1, c.col + 1}); }

}  // namespace

LogicalCircuit circuit_from_json(const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) throw Error("circuit: expected a JSON list of gates");
  LogicalCircuit c{rows, cols, {}};
  for (const auto& g : j) {
    std::string name = g.at("g").get<std::string>();
    if (name == "H") {
      c.gates.push_back(gate_h(cell_from_json(g.at("q"), rows, cols)));
    } else if (name == "S") {
      c.gates.push_back(gate_s(cell_from_json(g.at("q"), rows, cols)));
    } else if (name == "CNOT") {
      c.gates.push_back(gate_cnot(cell_from_json(g.at("c"), rows, cols),
                                  cell_from_json(g.at("t"), rows, cols)));
    } else if (name == "PREPX" || name == "PREPZ" || name == "MEASX" || name == "MEASZ") {
      GateKind k = name == "PREPX"   ? GateKind::PrepX
                   : name == "PREPZ" ? GateKind::PrepZ
                   : name == "MEASX" ? GateKind::MeasX
                                     : GateKind::MeasZ;
      c.gates.push_back({k, cell_from_json(g.at("q"), rows, cols), {}, {}});
    } else if (name == "PPM") {
      std::vector<std::pair<Cell, char>> product;
      for (const auto& f : g.at("p")) {
        std::string letter = f.at(0).get<std::string>();
        if (letter.size() != 1 || (letter[0] != 'X' && letter[0] != 'Y' && letter[0] != 'Z'))
          throw Error("circuit: PPM letters are X, Y, or Z");
        product.emplace_back(cell_from_json(f.at(1), rows, cols), letter[0]);
      }
      c.gates.push_back(gate_ppm(std::move(product)));
    } else {
      throw Error("circuit: unknown gate '" + name + "'");
    }
  }
  return c;
}

json circuit_json(const LogicalCircuit& c) {
  json out = json::array();
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case GateKind::H: out.push_back(json{{"g", "H"}, {"q", cell_json(g.a)}}); break;
      case GateKind::S: out.push_back(json{{"g", "S"}, {"q", cell_json(g.a)}}); break;
      case GateKind::CNOT:
        out.push_back(json{{"g", "CNOT"}, {"c", cell_json(g.a)}, {"t", cell_json(g.b)}});
        break;
      case GateKind::PrepX: out.push_back(json{{"g", "PREPX"}, {"q", cell_json(g.a)}}); break;
      case GateKind::PrepZ: out.push_back(json{{"g", "PREPZ"}, {"q", cell_json(g.a)}}); break;
      case GateKind::MeasX: out.push_back(json{{"g", "MEASX"}, {"q", cell_json(g.a)}}); break;
      case GateKind::MeasZ: out.push_back(json{{"g", "MEASZ"}, {"q", cell_json(g.a)}}); break;
      case GateKind::PPM: {
        json p = json::array();
        for (const auto& [cell, letter] : g.product)
          p.push_back(json::array({std::string(1, letter), cell_json(cell)}));
        out.push_back(json{{"g", "PPM"}, {"p", std::move(p)}});
        break;
      }
    }
  }
  return out;
}

// --- reports --------------------------------------------------------------------

json cost_json(const CostReport& r) {
  json lines = json::array();
  for (const auto& l : r.lines)
    lines.push_back(json{{"scheme", l.scheme},
                         {"space", l.space},
                         {"time", l.time},
                         {"spacetime", l.spacetime},
                         {"space_n", l.space_n},
                         {"time_n", l.time_n},
                         {"spacetime_n", l.spacetime_n}});
  return json{{"k", r.k}, {"d", r.d}, {"lines", std::move(lines)}};
}

json adder_fit_json(const AdderFit& f) {
  return json{{"k", f.k},
              {"parallel_code_cycles", f.parallel_cycles},
              {"sequential_code_cycles", f.sequential_cycles},
              {"c1", f.c1},
              {"c2", f.c2},
              {"formula", f.formula}};
}

json soundness_params_json(const SoundnessParams& p) {
  json f;
  if (p.table.empty())
    f = "x^3/4";
  else
    f = json{{"table", p.table}};
  return json{{"t", p.t}, {"f", std::move(f)}, {"q", p.q}};
}

json soundness_json(const SoundnessReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations)
    violations.push_back(json{{"support", v.e.support()},
                              {"syndrome_weight", v.syndrome_weight},
                              {"bound", v.bound}});
  return json{{"max_weight", r.max_weight},
              {"checked", r.checked},
              {"in_claim", r.in_claim},
              {"clean", r.clean()},
              {"violations", std::move(violations)},
              {"params", soundness_params_json(r.params)}};
}

json sweep_json(const PrepSweepReport& r) {
  return json{{"se_weight", r.se_weight},
              {"traces", r.traces},
              {"failures", r.failures},
              {"residual_violations", r.residual_violations},
              {"worst_residual", r.worst_residual},
              {"clean", r.clean()},
              {"params", soundness_params_json(r.params)}};
}

}  // namespace homprod::io
