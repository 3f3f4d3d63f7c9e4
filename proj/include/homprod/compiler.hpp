#pragma once
// Compiles layers of logical Clifford gates on one product-code block into
// certified gadget schedules, generates schedules for larger logical
// subroutines (GHZ ladders, magic-state rounds, a ripple-carry adder), and
// reports resource costs next to baseline architectures.
//
// Single-cell gates compile through block teleportation: S via an i-state
// companion, H via the folded Hadamard with translation fix-ups.  CNOTs
// stage their controls on a fresh companion patch and run measurement-based
// CNOTs through a corner cell; clusters of CNOTs sharing a corner beyond a
// size threshold switch to a folded-CZ implementation (translate the cluster
// onto mirror-symmetric positions, apply the fold, dress the targets with
// Hadamards).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homprod/gadgets.hpp"
#include "homprod/tableau.hpp"

namespace homprod {

enum class GateKind { H, S, CNOT, PrepX, PrepZ, MeasX, MeasZ, PPM };

struct LogicalGate {
  GateKind kind{};
  Cell a;  // H/S/Prep/Meas target, or CNOT control
  Cell b;  // CNOT target
  std::vector<std::pair<Cell, char>> product;  // PPM factors
};

LogicalGate gate_h(Cell q);
LogicalGate gate_s(Cell q);
LogicalGate gate_cnot(Cell c, Cell t);
LogicalGate gate_prep_x(Cell q);
LogicalGate gate_ppm(std::vector<std::pair<Cell, char>> product);

// A circuit on the logical grid of one block.  compile_layer accepts the
// unitary kinds (H, S, CNOT); the remaining kinds exist for logical replay
// of measurement-based subroutines.
struct LogicalCircuit {
  std::size_t rows = 0, cols = 0;
  std::vector<LogicalGate> gates;
  std::size_t k() const { return rows * cols; }
};

// Grid placement classes of a CNOT: sharing a row or column, or diagonal
// with the control above-left/below-right of the target (MainDiagonal) or
// above-right/below-left (AntiDiagonal).
enum class CnotClass { Aligned, MainDiagonal, AntiDiagonal };
CnotClass classify_cnot(Cell control, Cell target);

// Counts per class; `total` always equals the number of CNOT gates.
struct CnotPartition {
  std::size_t aligned = 0, main_diagonal = 0, anti_diagonal = 0;
  std::size_t total = 0;
};
CnotPartition classify_cnots(const LogicalCircuit& circuit);

struct CompilerConfig {
  // Corner clusters strictly larger than this compile through the folded-CZ
  // path; 0 means ceil(k^(1/4)).
  std::size_t dense_threshold = 0;
  // Upper bound on CNOTs staged together on one companion patch
  // (0 = limited only by cell-disjointness on the patch).
  std::size_t staging_limit = 0;
};

struct CompiledLayer {
  GadgetSchedule schedule;
  std::string carrier;  // block holding the logical state afterwards
};

// Compiles one layer (gates act in list order) on a block whose logical grid
// matches the circuit.  The declared effect maps every input logical letter
// of block "D" to its image on the final carrier; schedules certify against
// the extraction engine.
CompiledLayer compile_layer(const BlockSpec& data, const LogicalCircuit& circuit,
                            const CompilerConfig& cfg = {});

// Replays a circuit on one tableau qubit per logical cell (row-major).
// Preparations reset, measurements and PPMs are forced to the +1 outcome.
Tableau simulate_logical(const LogicalCircuit& circuit);

// Choi-pair equivalence: entangle every logical with a partner, push the
// circuit through a direct tableau replay, and compare against the compiled
// layer's declared channel, up to sign.
bool equivalent_on_data(const CompiledLayer& layer, const LogicalCircuit& circuit);

// ---------------------------------------------------------------------------
// Subroutine schedules

// GHZ state over all k cells of a fresh block (grid rounds on a spanning
// tree of adjacent ZZ products), plus the logical replay circuit that
// rebuilds the declared state on k tableau qubits.
struct GhzResult {
  GadgetSchedule schedule;
  LogicalCircuit replay;
};
GhzResult ghz_schedule(const BlockSpec& spec);

// Reactive ancilla preparations come in two shapes: Diagonal keeps the
// reactive subset on the main diagonal (one fold suffices), Full pays the
// i-state machinery for arbitrary subsets.
enum class ReactiveMode { Diagonal, Full };

// One distillation round: three |+> blocks and one magic block consume eight
// sequential Z-type product rotations, each with a reactively prepared
// helper block and a transversal Bell measurement.
GadgetSchedule msd_round_schedule(const BlockSpec& spec, ReactiveMode mode);

// One consumption round: three data and three magic blocks joined by Z-type
// grid products, magic blocks measured out, reactive pairwise couplings
// across six helper blocks, and a transversal-Hadamard fix-up.
GadgetSchedule msi_schedule(const BlockSpec& spec, ReactiveMode mode);

// In-place ripple-carry adder across five data blocks; carries bridge
// through a Bell-prepared block pair, with a grid-round carry reset, one
// cyclic shift, and a k-step reactive tail (one logical cycle per dependent
// round).  stats records parallel/sequential code-cycle split.
GadgetSchedule adder_schedule(const BlockSpec& spec);

// ---------------------------------------------------------------------------
// Resource report

struct CostLine {
  std::string scheme;
  std::string space, time, spacetime;            // closed forms
  double space_n = 0, time_n = 0, spacetime_n = 0;  // numbers at this (k, d)
};

struct CostReport {
  std::size_t k = 0;
  int d = 0;
  std::vector<CostLine> lines;
  std::string to_text() const;
};

// Closed forms for surface-code lattice surgery, product-code lattice
// surgery, and grid-round compilation; the grid-round line is measured from
// the compiled layer (peak live physical qubits, total code cycles).
CostReport cost_report(const BlockSpec& data, const CompiledLayer& layer);

// Measured split of an adder schedule's code cycles into the parallel
// gadget work and the sequential reactive tail, normalized as
//   total = c1 * sqrt(k) * log2(k)  +  c2 * k.
struct AdderFit {
  std::size_t k = 0;
  int parallel_cycles = 0, sequential_cycles = 0;
  double c1 = 0, c2 = 0;
  std::string formula;  // the decomposition with the measured constants
};
AdderFit adder_fit(const GadgetSchedule& adder, std::size_t k);

}  // namespace homprod
