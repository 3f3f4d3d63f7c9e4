#pragma once
// Gadget schedules: sequences of fault-tolerant block operations, a declared
// logical effect, and a pipelined code-cycle cost model.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homprod/css.hpp"
#include "homprod/gf2.hpp"

namespace homprod {

enum class StepKind {
  PrepZ,            // block into the all-|0> logical codeword state
  PrepX,            // block into all-|+>
  PrepContent,      // block into an explicitly listed stabilizer state
  TransversalCNOT,  // masked physical CNOTs control block -> target block
  MeasureZ,         // destructive transversal Z measurement of a block
  MeasureX,
  Permute,          // relabel the qubits of a block
  FoldHSwap,        // physical H everywhere + transpose swap (square codes)
  FoldCZS,          // S on diagonals, S^dag on the mirrored diagonal, CZ pairs
  Annotation,       // non-Clifford / reactive marker; zero cost, no state
};

const char* step_kind_name(StepKind k);

struct PrepRow {
  gf2::BinVector x, z;  // stabilizer content over the block's qubits
};

struct GadgetStep {
  StepKind kind{};
  std::string block;    // acted-on block (target block for CNOT)
  std::string control;  // CNOT control block
  std::vector<std::pair<std::uint32_t, std::uint32_t>> mask;  // (control q, target q)
  std::vector<std::uint32_t> perm;
  std::vector<PrepRow> content;
  std::string note;
  bool background = false;  // prepared off the critical path
  // Runs simultaneously with the previous foreground step (disjoint physical
  // supports), e.g. one ancilla coupling to several blocks in one round.
  bool fused = false;
  // Explicit code-cycle cost (-1 = per-kind default).  Lets annotations mark
  // reactive rounds whose latency is real even though no state is tracked.
  int cycle_cost = -1;
};

// A logical qubit letter inside a named block.
struct LogicalRef {
  std::string block;
  std::uint32_t q = 0;  // row-major grid index
  char letter = 'Z';    // 'X', 'Y', 'Z'
};

struct PauliProductRef {
  std::vector<LogicalRef> factors;
  std::string to_string() const;
};

// Declared channel: measured logical products, images of the data blocks'
// logical frame generators, and residual determined content.  Letters
// without a map entry map to themselves (on their own, still-live block).
// `residues` are products of CURRENT logical operators of live blocks that
// end up determined without carrying frame information (teleport leftovers,
// prepared ancilla content, reset cells).
struct DeclaredEffect {
  std::vector<PauliProductRef> measured;
  struct MapEntry {
    LogicalRef from;                 // letter 'X' or 'Z' of an input logical
    std::vector<LogicalRef> to;      // image as a product of letters
  };
  std::vector<MapEntry> map;
  std::vector<PauliProductRef> residues;
};

struct BlockInfo {
  std::shared_ptr<const CssCode> code;
  bool is_data = false;  // carries incoming logical state (frame is tracked)
  // Data-block logical cells excluded from the frame (their input is not
  // tracked); used for helper cells inside a larger data block.
  std::vector<std::uint32_t> unframed = {};
  // Promised input facts: products of this block's logical operators that
  // are determined at the start (e.g. an unframed helper cell in |+>).
  std::vector<PauliProductRef> promised = {};
};

struct GadgetSchedule {
  std::string name;
  std::map<std::string, BlockInfo> blocks;
  std::vector<GadgetStep> steps;
  DeclaredEffect effect;
  std::map<std::string, int> stats;  // construction counters (e.g. "gppm")
  bool certified = false;
  int total_cycles = 0;
  int logical_cycles = 0;
};

// Pipelined cost: preparations take d code cycles, every other state-touching
// step takes 1, annotations 0.  Background preparations run concurrently and
// are ready at time d; the foreground sequence waits on readiness of the
// blocks each step touches.  logical_cycles = ceil(total / d).
void compute_cost(GadgetSchedule& s, int distance);

int step_cycles(const GadgetStep& s, int distance);

}  // namespace homprod
