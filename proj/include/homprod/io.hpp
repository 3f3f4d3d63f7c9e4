#pragma once
// Serialization layer: matrix interchange (alist and dense JSON), code
// construction specs, CSS code export/import, schedule JSON-lines,
// certification / soundness / cost reports, and logical-circuit input.
//
// Index conventions: human-facing coordinates (circuit cells, grid rows and
// columns, logical references in reports) are 1-based, matching the alist
// tradition; machine round-trip payloads (matrix bit data, qubit coordinate
// tables, logical-operator supports) are 0-based.  Matrix fields accept
// either a dense object {"rows","cols","data"} or an alist string.

#include <cstddef>
#include <string>

#include "json.hpp"

#include "homprod/classical.hpp"
#include "homprod/compiler.hpp"
#include "homprod/css.hpp"
#include "homprod/gadgets.hpp"
#include "homprod/gf2.hpp"
#include "homprod/schedule.hpp"
#include "homprod/singleshot.hpp"
#include "homprod/verify.hpp"

namespace homprod::io {

using nlohmann::json;

enum class MatrixFormat { Dense, Alist };

// --- matrices ---------------------------------------------------------------

// Sparse interchange: "rows cols", max row/col weight, per-row weights,
// per-column weights, then 1-indexed per-row and per-column index lists.
std::string to_alist(const gf2::BinMatrix& m);
gf2::BinMatrix from_alist(const std::string& text);

// Dense object or (with Alist) a single alist string.
json matrix_json(const gf2::BinMatrix& m, MatrixFormat fmt = MatrixFormat::Dense);
gf2::BinMatrix matrix_from_json(const json& j);

// --- classical code specs ----------------------------------------------------

// {"type":"explicit","H":<matrix>,"d":int?}
// {"type":"quasi_cyclic","lift":l,"H":[["1+x",...],...],"G":["1",...],"d":int?}
// {"type":"catalog","name":"ogsc-9-3-4"}
// {"type":"repetition","n":3} | {"type":"hamming","r":3}
ClassicalCode classical_from_json(const json& spec);

// --- product build specs -----------------------------------------------------

// {"product":"hgp"|"3d"|"4d", "factors":[<classical spec>,...], "d":int?}
// One factor entry is reused for every position; "hgp" takes 2 factors,
// "3d" 3, "4d" 4.
CssCode build_code(const json& spec);

// The 2D case with gadget-ready factor structure (quasi-cyclic data kept
// when the factors provide it).
BlockSpec block_from_spec(const json& spec);
CubeSpec cube_from_spec(const json& spec);

// --- CSS code export ----------------------------------------------------------

// {"n","k","d"?,"HX","HZ","MX"?,"MZ"?,"grid","logicals":{"X","Z"}
//  (0-based supports),"coords":{"qubits","summands"},"spec"?:<echoed build
//  spec>}.  Round-trips bit-identically through css_from_json.
json css_json(const CssCode& code, MatrixFormat fmt = MatrixFormat::Dense,
              const json* provenance = nullptr);
CssCode css_from_json(const json& j);

// Loads an exported code for gadget work: rebuilds the BlockSpec from the
// embedded "spec" provenance and cross-checks the stored matrices against
// the rebuilt ones.
BlockSpec block_from_code_json(const json& j);

// --- schedules -----------------------------------------------------------------

// One JSON object per line: steps as {"t","op","blocks","mask"?,"cycles"},
// then a {"summary":...} record (totals, block inventory, declared effect,
// stats).  `distance` feeds the per-step cycle column.
std::string schedule_jsonl(const GadgetSchedule& s, int distance);
json schedule_summary_json(const GadgetSchedule& s);
json effect_json(const DeclaredEffect& e, const GadgetSchedule* shapes = nullptr);

// {"certified","effect","mismatches"}
json certification_json(const CertificationReport& r, const GadgetSchedule& s);

// --- circuits -------------------------------------------------------------------

// [{"g":"CNOT","c":[1,1],"t":[2,3]}, {"g":"H","q":[1,2]}, {"g":"S","q":[i,j]},
//  {"g":"PREPX"|"PREPZ"|"MEASX"|"MEASZ","q":[i,j]},
//  {"g":"PPM","p":[["Z",[1,1]],["Z",[1,2]]]}] with 1-based [row, col] cells.
LogicalCircuit circuit_from_json(const json& j, std::size_t rows, std::size_t cols);
json circuit_json(const LogicalCircuit& c);

// --- reports --------------------------------------------------------------------

json cost_json(const CostReport& r);
json adder_fit_json(const AdderFit& f);
json soundness_json(const SoundnessReport& r);
json sweep_json(const PrepSweepReport& r);
json soundness_params_json(const SoundnessParams& p);

}  // namespace homprod::io
