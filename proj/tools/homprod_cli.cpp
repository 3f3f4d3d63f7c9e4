// Batch front-end: builds product codes, verifies them, synthesizes gadget
// schedules, compiles logical Clifford layers, and emits cost / single-shot
// reports.  All artifacts are JSON or JSON-lines on --out (default stdout).
//
// Exit codes: 0 success, 1 verification or certification failure, 2 usage
// or input error.
//
// Conventions: cells, rows, columns, and bit positions in flags are
// 1-based; translation and shift amounts are 0-based offsets.  Randomized
// inputs (report --gates) use std::mt19937 seeded by --seed.

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"

#include "homprod/compiler.hpp"
#include "homprod/error.hpp"
#include "homprod/gadgets.hpp"
#include "homprod/homomorphism.hpp"
#include "homprod/io.hpp"
#include "homprod/singleshot.hpp"
#include "homprod/verify.hpp"

using namespace homprod;
using io::json;

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

// --code accepts either a build spec ({"product":...}) or an exported code
// carrying one under "spec".
json spec_of(const json& j) {
  if (j.contains("product")) return j;
  if (j.contains("spec")) return j.at("spec");
  throw Error("input carries no build spec");
}

BlockSpec load_block(const std::string& path) {
  json j = read_json_file(path);
  if (j.contains("product")) return io::block_from_spec(j);
  return io::block_from_code_json(j);
}

CubeSpec load_cube(const std::string& path) {
  return io::cube_from_spec(spec_of(read_json_file(path)));
}

CssCode load_css(const std::string& path) {
  json j = read_json_file(path);
  if (j.contains("product")) return io::build_code(j);
  return io::css_from_json(j);
}

std::vector<std::size_t> parse_index_list(const std::string& text, std::size_t limit,
                                          const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_array())
    throw Error(std::string(what) + ": expected a JSON list like [1,2]");
  std::vector<std::size_t> out;
  for (const auto& e : j) {
    long long v = e.get<long long>();
    if (v < 1 || v > static_cast<long long>(limit))
      throw Error(std::string(what) + ": index " + std::to_string(v) +
                  " out of range 1.." + std::to_string(limit));
    out.push_back(static_cast<std::size_t>(v - 1));
  }
  return out;
}

EdgeFamily parse_family(const std::string& text, std::size_t limit, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_array())
    throw Error(std::string(what) + ": expected a JSON list of hyperedges like [[1,2],[3]]");
  EdgeFamily fam;
  for (const auto& edge : j) {
    if (!edge.is_array() || edge.empty())
      throw Error(std::string(what) + ": hyperedges are non-empty lists");
    Edge e;
    for (const auto& v : edge) {
      long long idx = v.get<long long>();
      if (idx < 1 || idx > static_cast<long long>(limit))
        throw Error(std::string(what) + ": index " + std::to_string(idx) +
                    " out of range 1.." + std::to_string(limit));
      e.push_back(static_cast<std::uint32_t>(idx - 1));
    }
    fam.push_back(std::move(e));
  }
  return fam;
}

std::vector<Cell> parse_cells(const std::string& text, std::size_t rows, std::size_t cols) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_array())
    throw Error("cells: expected a JSON list like [[1,1],[2,3]]");
  std::vector<Cell> out;
  for (const auto& c : j) {
    if (!c.is_array() || c.size() != 2) throw Error("cells: a cell is [row, col]");
    long long r = c[0].get<long long>(), q = c[1].get<long long>();
    if (r < 1 || q < 1 || r > static_cast<long long>(rows) || q > static_cast<long long>(cols))
      throw Error("cells: cell out of range (1-based)");
    out.push_back({static_cast<std::uint32_t>(r - 1), static_cast<std::uint32_t>(q - 1)});
  }
  return out;
}

std::pair<std::size_t, std::size_t> parse_shift(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_array() || j.size() != 2)
    throw Error("shift: expected [i,j]");
  return {j[0].get<std::size_t>(), j[1].get<std::size_t>()};
}

int block_distance(const BlockSpec& b) {
  return b.code && b.code->d ? std::max(1, *b.code->d) : 1;
}

// Certifies (optionally) and writes the schedule; returns the exit code.
int finish_schedule(GadgetSchedule s, int distance, bool certify, const std::string& out) {
  bool ok = true;
  if (certify) {
    auto rep = certify_schedule(s);
    ok = rep.certified;
    if (!ok) std::cerr << io::certification_json(rep, s).dump(2) << '\n';
  }
  write_text(out, io::schedule_jsonl(s, distance));
  return ok ? 0 : 1;
}

std::vector<ClassicalCode> spec_factors(const json& spec, std::size_t want) {
  const json& fs = spec.at("factors");
  if (!fs.is_array() || fs.empty()) throw Error("build spec: missing \"factors\"");
  if (fs.size() != 1 && fs.size() != want)
    throw Error("build spec: expected 1 or " + std::to_string(want) + " factors");
  std::vector<ClassicalCode> out;
  for (std::size_t i = 0; i < want; ++i)
    out.push_back(io::classical_from_json(fs[fs.size() == 1 ? 0 : i]));
  return out;
}

LogicalCircuit random_layer(const BlockSpec& b, std::size_t n_gates, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::uint32_t> rr(0, static_cast<std::uint32_t>(b.rows()) - 1);
  std::uniform_int_distribution<std::uint32_t> cc(0, static_cast<std::uint32_t>(b.cols()) - 1);
  std::uniform_int_distribution<int> kind(0, 2);
  LogicalCircuit c{b.rows(), b.cols(), {}};
  for (std::size_t i = 0; i < n_gates; ++i) {
    Cell a{rr(rng), cc(rng)};
    switch (kind(rng)) {
      case 0: c.gates.push_back(gate_h(a)); break;
      case 1: c.gates.push_back(gate_s(a)); break;
      default: {
        Cell t{rr(rng), cc(rng)};
        while (t.row == a.row && t.col == a.col) t = {rr(rng), cc(rng)};
        c.gates.push_back(gate_cnot(a, t));
        break;
      }
    }
  }
  return c;
}

// --- verbs -------------------------------------------------------------------

int run_build(const std::string& spec_path, const std::string& out, const std::string& fmt) {
  json spec = read_json_file(spec_path);
  CssCode code = io::build_code(spec);
  auto f = fmt == "alist" ? io::MatrixFormat::Alist : io::MatrixFormat::Dense;
  write_json(out, io::css_json(code, f, &spec));
  return 0;
}

int run_verify(const std::string& code_path, const std::string& out) {
  CssCode c = load_css(code_path);
  std::vector<std::string> violations;
  if (!(c.HX * c.HZ.transposed()).is_zero()) violations.push_back("HX * HZ^T != 0");
  if (c.MX && !(*c.MX * c.HX).is_zero()) violations.push_back("MX * HX != 0");
  if (c.MZ && !(*c.MZ * c.HZ).is_zero()) violations.push_back("MZ * HZ != 0");
  if (c.lx.size() != c.k || c.lz.size() != c.k)
    violations.push_back("logical basis size differs from k");
  for (std::size_t a = 0; a < c.lx.size(); ++a)
    if (!c.HZ.mul(c.lx[a]).is_zero() || !c.HX.mul(c.lz[a]).is_zero())
      violations.push_back("logical " + std::to_string(a + 1) + " fails a check");
  for (std::size_t a = 0; a < c.lx.size(); ++a)
    for (std::size_t b = 0; b < c.lz.size(); ++b)
      if (c.lx[a].dot(c.lz[b]) != (a == b))
        violations.push_back("pairing (" + std::to_string(a + 1) + "," +
                             std::to_string(b + 1) + ") is not canonical");
  write_json(out, json{{"ok", violations.empty()},
                       {"n", c.n},
                       {"k", c.k},
                       {"violations", violations}});
  return violations.empty() ? 0 : 1;
}

int run_modify(const std::string& spec_path, const std::string& puncture_text,
               const std::string& augment_path, const std::string& out) {
  ClassicalCode base = io::classical_from_json(read_json_file(spec_path));
  if (puncture_text.empty() && augment_path.empty())
    throw Error("modify: give --puncture and/or --augment");
  std::vector<std::size_t> drop;
  if (!puncture_text.empty())
    drop = parse_index_list(puncture_text, base.n(), "puncture");
  gf2::BinMatrix extra(0, base.n());
  if (!augment_path.empty()) {
    extra = io::matrix_from_json(read_json_file(augment_path));
    if (extra.cols() != base.n()) throw Error("modify: augment rows have the wrong length");
  }
  bool warning = false;
  ModifiedCode mod = augment_then_puncture(base, extra, drop, &warning);
  json j{{"n", mod.code.n()},
         {"k", mod.code.k()},
         {"H", io::matrix_json(mod.code.H)},
         {"G", io::matrix_json(mod.code.G)},
         {"info_bits", mod.code.info_bits},
         {"map",
          json{{"gamma1", io::matrix_json(mod.to_base.gamma1)},
               {"gamma0", io::matrix_json(mod.to_base.gamma0)}}},
         {"puncture_outside_information_bits", warning}};
  if (mod.code.d) j["d"] = *mod.code.d;
  write_json(out, j);
  return 0;
}

int run_homomorphism(const std::string& spec_path, std::size_t factor,
                     const std::string& puncture_text, const std::string& augment_path,
                     const std::string& translate_text, const std::string& out) {
  json spec = spec_of(read_json_file(spec_path));
  std::string kind = spec.at("product").get<std::string>();

  if (!translate_text.empty()) {
    if (kind != "hgp") throw Error("homomorphism: --translate needs a 2D product");
    BlockSpec b = io::block_from_spec(spec);
    if (!b.first_qc || !b.second_qc)
      throw Error("homomorphism: --translate needs quasi-cyclic factors");
    auto [i, j] = parse_shift(translate_text);
    ProductAutomorphism a = translation_automorphism(*b.first_qc, *b.second_qc, i, j);
    write_json(out, json{{"g2", io::matrix_json(a.g2)},
                         {"g1", io::matrix_json(a.g1)},
                         {"g0", io::matrix_json(a.g0)},
                         {"provenance", json{{"shift", {a.i, a.j}}}}});
    return 0;
  }

  std::size_t nf = kind == "hgp" ? 2 : kind == "3d" ? 3 : kind == "4d" ? 4 : 0;
  if (nf == 0) throw Error("homomorphism: unknown product '" + kind + "'");
  if (factor < 1 || factor > nf) throw Error("homomorphism: --factor out of range");
  std::vector<ClassicalCode> codes = spec_factors(spec, nf);
  // Transposed pattern per product: hgp = (T, D); 3d = (D, D, T); 4d = all D.
  std::vector<bool> transposed(nf, false);
  if (kind == "hgp") transposed[0] = true;
  if (kind == "3d") transposed[2] = true;

  const ClassicalCode& target = codes[factor - 1];
  std::vector<std::size_t> drop;
  if (!puncture_text.empty())
    drop = parse_index_list(puncture_text, target.n(), "puncture");
  gf2::BinMatrix extra(0, target.n());
  if (!augment_path.empty()) {
    extra = io::matrix_from_json(read_json_file(augment_path));
    if (extra.cols() != target.n())
      throw Error("homomorphism: augment rows have the wrong length");
  }
  if (drop.empty() && extra.rows() == 0)
    throw Error("homomorphism: give --puncture/--augment or --translate");
  ModifiedCode mod = augment_then_puncture(target, extra, drop);

  std::vector<FactorComplex> base;
  for (std::size_t i = 0; i < nf; ++i)
    base.push_back({codes[i].H, static_cast<bool>(transposed[i])});
  std::vector<std::optional<FactorModification>> mods(nf);
  mods[factor - 1] = FactorModification{mod.code.H, mod.to_base};
  LiftedProductMap lifted = lift_to_product(base, mods);

  json grades = json::array();
  for (const auto& g : lifted.gamma) grades.push_back(io::matrix_json(g));
  json prov{{"factor", factor}};
  json drop1 = json::array();
  for (auto i : drop) drop1.push_back(i + 1);
  prov["puncture"] = std::move(drop1);
  if (extra.rows() > 0) prov["augment"] = io::matrix_json(extra);
  write_json(out, json{{"direction", lifted.modified_is_source ? "modified->base"
                                                               : "base->modified"},
                       {"grades", std::move(grades)},
                       {"provenance", std::move(prov)}});
  return 0;
}

int run_single_shot(const std::string& code_path, int max_weight, int se_weight,
                    std::size_t traces, std::uint64_t seed, const std::string& out) {
  CssCode c = load_css(code_path);
  json j;
  auto probe = soundness_probe(c, max_weight);
  j["probe"] = io::soundness_json(probe);
  bool ok = probe.clean();
  if (c.MX) {
    auto sweep = single_shot_sweep(c, se_weight, traces, seed);
    j["sweep"] = io::sweep_json(sweep);
    ok = ok && sweep.clean();
  } else {
    j["sweep"] = nullptr;  // informational probe only: no metachecks
  }
  write_json(out, j);
  return ok ? 0 : 1;
}

int run_compile(const std::string& code_path, const std::string& circuit_path, bool certify,
                const std::string& report, std::size_t dense_threshold,
                std::size_t staging_limit, const std::string& out,
                const std::string& report_out) {
  BlockSpec b = load_block(code_path);
  LogicalCircuit circ =
      io::circuit_from_json(read_json_file(circuit_path), b.rows(), b.cols());
  CompilerConfig cfg{dense_threshold, staging_limit};
  CompiledLayer layer = compile_layer(b, circ, cfg);
  bool ok = true;
  if (certify) {
    if (!equivalent_on_data(layer, circ)) {
      std::cerr << "compiled channel is not equivalent to the input layer\n";
      ok = false;
    }
    auto rep = certify_schedule(layer.schedule);
    if (!rep.certified) {
      std::cerr << io::certification_json(rep, layer.schedule).dump(2) << '\n';
      ok = false;
    }
  }
  write_text(out, io::schedule_jsonl(layer.schedule, block_distance(b)));
  if (report == "cost") {
    CostReport cost = cost_report(b, layer);
    std::cerr << cost.to_text();
    if (!report_out.empty()) write_json(report_out, io::cost_json(cost));
  }
  return ok ? 0 : 1;
}

int run_report(const std::string& code_path, const std::string& circuit_path,
               std::size_t gates, std::uint32_t seed, const std::string& out) {
  BlockSpec b = load_block(code_path);
  LogicalCircuit circ;
  if (!circuit_path.empty())
    circ = io::circuit_from_json(read_json_file(circuit_path), b.rows(), b.cols());
  else
    circ = random_layer(b, gates ? gates : 2 * b.rows() * b.cols(), seed);
  CompiledLayer layer = compile_layer(b, circ);
  CostReport cost = cost_report(b, layer);
  GadgetSchedule adder = adder_schedule(b);
  AdderFit fit = adder_fit(adder, b.rows() * b.cols());
  std::cout << cost.to_text() << "adder: " << fit.formula << '\n';
  if (!out.empty())
    write_json(out, json{{"cost", io::cost_json(cost)}, {"adder", io::adder_fit_json(fit)}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homological product code toolkit"};
  app.require_subcommand(1);
  int threads = 0;
  // Applied via each() so it takes effect before any verb callback runs.
  app.add_option("--threads", threads, "worker threads for parallel kernels (0 = default)")
      ->each([](const std::string& s) {
#ifdef _OPENMP
        int n = std::stoi(s);
        if (n > 0) omp_set_num_threads(n);
#else
        (void)s;
#endif
      });

  int rc = 0;
  std::string spec_path, code_path, out, fmt = "dense";

  // build-code
  auto* build = app.add_subcommand("build-code", "construct a product code from a spec");
  build->add_option("--spec", spec_path, "build spec JSON")->required();
  build->add_option("--out", out, "output file (default stdout)");
  build->add_option("--format", fmt, "matrix format: dense|alist")
      ->check(CLI::IsMember({"dense", "alist"}));
  build->callback([&] { rc = run_build(spec_path, out, fmt); });

  // verify-code
  auto* verify = app.add_subcommand("verify-code", "check CSS/metacheck/pairing identities");
  verify->add_option("--code", code_path, "code JSON (export or build spec)")->required();
  verify->add_option("--out", out, "report file (default stdout)");
  verify->callback([&] { rc = run_verify(code_path, out); });

  // modify
  std::string puncture_text, augment_path;
  auto* modify = app.add_subcommand("modify", "puncture/augment a classical code");
  modify->add_option("--spec", spec_path, "classical code spec JSON")->required();
  modify->add_option("--puncture", puncture_text, "1-based bit positions, e.g. [1,2]");
  modify->add_option("--augment", augment_path, "file with extra parity rows (matrix JSON)");
  modify->add_option("--out", out, "output file (default stdout)");
  modify->callback([&] { rc = run_modify(spec_path, puncture_text, augment_path, out); });

  // homomorphism
  std::size_t factor = 1;
  std::string translate_text;
  auto* hom = app.add_subcommand("homomorphism", "lift a factor map or translation");
  hom->add_option("--spec", spec_path, "product build spec JSON")->required();
  hom->add_option("--factor", factor, "1-based factor to modify");
  hom->add_option("--puncture", puncture_text, "1-based bit positions");
  hom->add_option("--augment", augment_path, "file with extra parity rows");
  hom->add_option("--translate", translate_text, "grid translation [i,j] (0-based shifts)");
  hom->add_option("--out", out, "output file (default stdout)");
  hom->callback([&] {
    rc = run_homomorphism(spec_path, factor, puncture_text, augment_path, translate_text, out);
  });

  // gadget family
  bool certify = false;
  std::string basis = "Z", rows_text, cols_text, ex_text, ey_text, ez_text;
  std::string cells_text, by_text, replay_out;
  auto* gadget = app.add_subcommand("gadget", "synthesize a gadget schedule");
  gadget->require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--code", code_path, "code JSON (export with spec, or build spec)")
        ->required();
    sub->add_option("--out", out, "schedule JSONL file (default stdout)");
    sub->add_flag("--certify", certify, "machine-check the declared effect");
  };

  auto* g_gppm = gadget->add_subcommand("gppm", "grid Pauli product measurement round");
  add_common(g_gppm);
  g_gppm->add_option("--basis", basis, "Z or X")->check(CLI::IsMember({"Z", "X"}));
  g_gppm->add_option("--rows", rows_text, "row hyperedges, e.g. [[1,2]]")->required();
  g_gppm->add_option("--cols", cols_text, "column hyperedges, e.g. [[1],[2]]")->required();
  g_gppm->callback([&] {
    BlockSpec b = load_block(code_path);
    auto rows = parse_family(rows_text, b.rows(), "rows");
    auto cols = parse_family(cols_text, b.cols(), "cols");
    rc = finish_schedule(grid_ppms(b, basis[0], rows, cols), block_distance(b), certify, out);
  });

  auto* g_hppm = gadget->add_subcommand("hppm", "all-rows horizontal product round");
  add_common(g_hppm);
  g_hppm->add_option("--cols", cols_text, "column hyperedges")->required();
  g_hppm->callback([&] {
    BlockSpec b = load_block(code_path);
    auto cols = parse_family(cols_text, b.cols(), "cols");
    rc = finish_schedule(horizontal_ppms(b, cols), block_distance(b), certify, out);
  });

  auto* g_cppm = gadget->add_subcommand("cppm", "cube product round on a 3D code");
  add_common(g_cppm);
  g_cppm->add_option("--basis", basis, "Z or X")->check(CLI::IsMember({"Z", "X"}));
  g_cppm->add_option("--ex", ex_text, "x-axis hyperedges")->required();
  g_cppm->add_option("--ey", ey_text, "y-axis hyperedges")->required();
  g_cppm->add_option("--ez", ez_text, "z-axis hyperedges")->required();
  g_cppm->callback([&] {
    CubeSpec cube = load_cube(code_path);
    auto ex = parse_family(ex_text, cube.c1.k(), "ex");
    auto ey = parse_family(ey_text, cube.c2.k(), "ey");
    auto ez = parse_family(ez_text, cube.c3.k(), "ez");
    int d = cube.code && cube.code->d ? std::max(1, *cube.code->d) : 1;
    rc = finish_schedule(cube_ppms(cube, basis[0], ex, ey, ez), d, certify, out);
  });

  auto* g_translate = gadget->add_subcommand("translate", "logical grid translation");
  add_common(g_translate);
  g_translate->add_option("--by", by_text, "shift [i,j] (0-based amounts)")->required();
  g_translate->callback([&] {
    BlockSpec b = load_block(code_path);
    auto [i, j] = parse_shift(by_text);
    rc = finish_schedule(translation_gadget(b, i, j), block_distance(b), certify, out);
  });

  auto* g_hswap = gadget->add_subcommand("hswap", "fold-transversal Hadamard-swap");
  add_common(g_hswap);
  g_hswap->callback([&] {
    BlockSpec b = load_block(code_path);
    rc = finish_schedule(fold_hswap_gadget(b), block_distance(b), certify, out);
  });

  auto* g_czs = gadget->add_subcommand("czs", "fold-transversal CZ-S");
  add_common(g_czs);
  g_czs->callback([&] {
    BlockSpec b = load_block(code_path);
    rc = finish_schedule(fold_czs_gadget(b), block_distance(b), certify, out);
  });

  auto* g_teleport = gadget->add_subcommand("teleport", "move cells to a fresh block");
  add_common(g_teleport);
  g_teleport->add_option("--cells", cells_text, "cells [[r,c],...] (1-based)")->required();
  g_teleport->callback([&] {
    BlockSpec b = load_block(code_path);
    auto cells = parse_cells(cells_text, b.rows(), b.cols());
    rc = finish_schedule(selective_teleport(b, cells), block_distance(b), certify, out);
  });

  auto* g_shift = gadget->add_subcommand("shift", "row-major cyclic shift of the grid");
  add_common(g_shift);
  g_shift->callback([&] {
    BlockSpec b = load_block(code_path);
    rc = finish_schedule(cyclic_shift(b), block_distance(b), certify, out);
  });

  auto* g_ghz = gadget->add_subcommand("ghz", "GHZ ladder over the whole grid");
  add_common(g_ghz);
  g_ghz->add_option("--replay-out", replay_out, "logical replay circuit JSON");
  g_ghz->callback([&] {
    BlockSpec b = load_block(code_path);
    GhzResult r = ghz_schedule(b);
    if (!replay_out.empty()) write_json(replay_out, io::circuit_json(r.replay));
    rc = finish_schedule(std::move(r.schedule), block_distance(b), certify, out);
  });

  // compile
  std::string circuit_path, report, report_out;
  std::size_t dense_threshold = 0, staging_limit = 0;
  auto* compile = app.add_subcommand("compile", "compile a logical Clifford layer");
  compile->add_option("--code", code_path, "code JSON")->required();
  compile->add_option("--circuit", circuit_path, "circuit JSON")->required();
  compile->add_flag("--certify", certify, "engine certification + tableau equivalence");
  compile->add_option("--report", report, "also print a cost report: cost")
      ->check(CLI::IsMember({"cost"}));
  compile->add_option("--report-out", report_out, "cost report JSON file");
  compile->add_option("--dense-threshold", dense_threshold,
                      "corner-cluster size switching to the folded-CZ path (0 = k^(1/4))");
  compile->add_option("--staging-limit", staging_limit, "max CNOTs per companion patch");
  compile->add_option("--out", out, "schedule JSONL file (default stdout)");
  compile->callback([&] {
    rc = run_compile(code_path, circuit_path, certify, report, dense_threshold,
                     staging_limit, out, report_out);
  });

  // subroutine family
  std::string mode = "diagonal";
  auto* sub = app.add_subcommand("subroutine", "emit a subroutine schedule");
  sub->require_subcommand(1);
  std::string fit_out;
  auto add_sub_common = [&](CLI::App* s) {
    s->add_option("--code", code_path, "code JSON")->required();
    s->add_option("--out", out, "schedule JSONL file (default stdout)");
  };
  auto* s_msd = sub->add_subcommand("msd", "one magic-state distillation round");
  add_sub_common(s_msd);
  s_msd->add_option("--mode", mode, "reactive prep shape: diagonal|full")
      ->check(CLI::IsMember({"diagonal", "full"}));
  s_msd->callback([&] {
    BlockSpec b = load_block(code_path);
    auto m = mode == "full" ? ReactiveMode::Full : ReactiveMode::Diagonal;
    rc = finish_schedule(msd_round_schedule(b, m), block_distance(b), false, out);
  });
  auto* s_msi = sub->add_subcommand("msi", "one magic-state consumption round");
  add_sub_common(s_msi);
  s_msi->add_option("--mode", mode, "reactive prep shape: diagonal|full")
      ->check(CLI::IsMember({"diagonal", "full"}));
  s_msi->callback([&] {
    BlockSpec b = load_block(code_path);
    auto m = mode == "full" ? ReactiveMode::Full : ReactiveMode::Diagonal;
    rc = finish_schedule(msi_schedule(b, m), block_distance(b), false, out);
  });
  auto* s_adder = sub->add_subcommand("adder", "in-place ripple-carry adder");
  add_sub_common(s_adder);
  s_adder->add_option("--fit-out", fit_out, "measured cycle decomposition JSON");
  s_adder->callback([&] {
    BlockSpec b = load_block(code_path);
    GadgetSchedule s = adder_schedule(b);
    if (!fit_out.empty())
      write_json(fit_out, io::adder_fit_json(adder_fit(s, b.rows() * b.cols())));
    rc = finish_schedule(std::move(s), block_distance(b), false, out);
  });

  // single-shot
  int max_weight = 1, se_weight = 1;
  std::size_t traces = 20;
  std::uint64_t seed64 = 1;
  auto* ss = app.add_subcommand("single-shot", "soundness probe + two-stage repair sweep");
  ss->add_option("--code", code_path, "code JSON (3D/4D for the sweep)")->required();
  ss->add_option("--max-weight", max_weight, "probe errors up to this weight");
  ss->add_option("--se-weight", se_weight, "exhaustive syndrome-error weight");
  ss->add_option("--traces", traces, "extra randomized traces");
  ss->add_option("--seed", seed64, "PRNG seed (std::mt19937_64)");
  ss->add_option("--out", out, "report JSON (default stdout)");
  ss->callback([&] {
    rc = run_single_shot(code_path, max_weight, se_weight, traces, seed64, out);
  });

  // report
  std::size_t gates = 0;
  std::uint32_t seed32 = 1;
  auto* rep = app.add_subcommand("report", "cost table + adder decomposition");
  rep->add_option("--code", code_path, "code JSON")->required();
  rep->add_option("--circuit", circuit_path, "circuit JSON (default: random layer)");
  rep->add_option("--gates", gates, "random layer size (default 2k)");
  rep->add_option("--seed", seed32, "PRNG seed (std::mt19937)");
  rep->add_option("--out", out, "report JSON file");
  rep->callback([&] { rc = run_report(code_path, circuit_path, gates, seed32, out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return rc;
}
