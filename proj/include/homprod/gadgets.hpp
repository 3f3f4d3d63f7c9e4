#pragma once
// Logical gadgets on homological product codes, built as schedules of
// primitive block operations.  Every builder returns a GadgetSchedule with a
// declared logical effect, ready for machine certification.
//
// Grid measurements follow a two-ancilla scheme: a product-code ancilla is
// prepared in a basis state and coupled to the data by a transversal CNOT
// whose mask is a lifted chain map, and a second "mask" ancilla pre-absorbs
// the unwanted rows (or columns) of the measurement pattern.  Both ancilla
// codes arise from check-matrix surgery (augment parity rows, puncture
// information bits) on one factor of the product, so their distance never
// drops below the data distance.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "homprod/classical.hpp"
#include "homprod/css.hpp"
#include "homprod/schedule.hpp"

namespace homprod {

// A hyperedge over logical row or column indices of one block's grid.
using Edge = std::vector<std::uint32_t>;
using EdgeFamily = std::vector<Edge>;

// A column hyperedge may span several blocks (joint measurements).
struct ColRef {
  std::string block;
  std::uint32_t col = 0;
};
using ColEdge = std::vector<ColRef>;
using ColEdgeFamily = std::vector<ColEdge>;

struct Cell {
  std::uint32_t row = 0, col = 0;
};

// A 2D product block kept with its factor codes (needed to derive ancilla
// and mask codes) and, for quasi-cyclic factors, the specs that make the
// translation automorphisms available.
struct BlockSpec {
  ClassicalCode first;   // row factor (transposed in the product)
  ClassicalCode second;  // column factor (direct)
  std::optional<QuasiCyclicSpec> first_qc, second_qc;
  std::shared_ptr<const CssCode> code;

  std::size_t rows() const { return first.k(); }
  std::size_t cols() const { return second.k(); }
  std::uint32_t cell_index(Cell c) const;  // row-major logical index
};

BlockSpec make_block(const ClassicalCode& first, const ClassicalCode& second);
BlockSpec make_block(const QuasiCyclicSpec& first, const QuasiCyclicSpec& second,
                     std::optional<int> d = std::nullopt);
BlockSpec catalog_block(const std::string& name);  // from ogsc_catalog()

// A 3D product block (factors 1,2 direct, factor 3 transposed).
struct CubeSpec {
  ClassicalCode c1, c2, c3;
  std::shared_ptr<const CssCode> code;
  std::uint32_t cell_index(std::uint32_t x, std::uint32_t y, std::uint32_t z) const;
};
CubeSpec make_cube(const ClassicalCode& c1, const ClassicalCode& c2,
                   const ClassicalCode& c3);

// ---------------------------------------------------------------------------
// Forge: incremental schedule builder.  Data blocks are registered up front;
// ancilla blocks get fresh names.  The primitive appenders emit steps only —
// the net DeclaredEffect stays with the calling gadget builder.
class Forge {
 public:
  explicit Forge(std::string schedule_name, int distance);

  void add_data(const std::string& name, const BlockSpec& spec,
                std::vector<std::uint32_t> unframed = {},
                std::vector<PauliProductRef> promised = {});
  void add_data_cube(const std::string& name, const CubeSpec& spec);
  // Registers a non-data block of the same code and preps it.
  std::string add_fresh(const BlockSpec& spec, StepKind prep, bool background = true);

  const BlockSpec& spec_of(const std::string& block) const;

  // Grid Pauli product measurement round, basis 'Z' or 'X'.  All blocks
  // named in `cols` must share the row factor.  Measures, for every row
  // hyperedge e_r and column hyperedge e_c, products over e_r x e_c cells;
  // on the constrained side (rows for Z, columns for X) edges of size one
  // and two are measured whole and larger edges as consecutive-pair chains.
  void gppm(char basis, const EdgeFamily& rows, const ColEdgeFamily& cols);
  // Single-ancilla variant measuring every row of the grid: for each column
  // hyperedge e, all products over {i} x e, i in [k1].
  void hppm(const std::string& block, const EdgeFamily& cols);
  // 3D cube measurement round on a CubeSpec data block.
  void cppm(const std::string& block, char basis, const EdgeFamily& ex,
            const EdgeFamily& ey, const EdgeFamily& ez);

  // Primitive steps.
  void cnot(const std::string& control, const std::string& target,
            std::vector<std::pair<std::uint32_t, std::uint32_t>> mask, bool fused = false);
  void full_cnot(const std::string& control, const std::string& target, bool fused = false);
  void measure(const std::string& block, char basis);
  void permute(const std::string& block, std::vector<std::uint32_t> perm,
               const std::string& note = "");
  // Translation by (i, j) on an OGSC block (quasi-cyclic factors required).
  void translate(const std::string& block, std::size_t i, std::size_t j);
  void fold_hswap(const std::string& block);
  void fold_czs(const std::string& block);
  void annotate(const std::string& note);

  // Composite appenders used by several gadgets.
  //
  // Fresh block whose diagonal-offset line {(i, i+offset)} is |0> and all
  // other cells |+> (line_basis 'Z'), or line |+> and rest |0> ('X').
  std::string cat_line(const BlockSpec& spec, std::uint32_t offset, char line_basis);
  // Non-destructive X measurement of all cells of one diagonal-offset line;
  // the measured cells are reset to |+>.
  void line_x_measure(const std::string& block, std::uint32_t offset);
  // Moves the state of line `offset` of `block` onto the same line of a
  // fresh helper block (returned); the vacated cells end in |+>.
  std::string teleport_out_line(const std::string& block, std::uint32_t offset);
  // Consumes `helper` (destructive Z measurement), filling the |+>-vacated
  // cells of `block` that the helper's occupied cells sit on.
  void teleport_back(const std::string& helper, const std::string& block);
  // Individually X-measures (and thereby resets to |+>) an arbitrary cell
  // set, one round per occupied row.
  void reset_cells_x(const std::string& block, const std::vector<Cell>& cells);

  // Higher-level emitters shared by the gadget builders and the compiler.
  // These append steps only; logical-effect bookkeeping stays with callers.
  //
  // Fresh block with every logical cell in the +1 eigenstate of Y.
  std::string emit_i_state(const BlockSpec& spec);
  // Moves the listed cells of `from` onto the same coordinates of `to`
  // (the receiving cells must hold |+>); vacated cells end in |+>.
  void emit_teleport_cells(const std::string& from, const std::string& to,
                           const std::vector<Cell>& cells);
  // Fresh identical block receiving the listed cells of `from`.
  std::string emit_selective_out(const std::string& from, const std::vector<Cell>& cells);
  // Hadamard on every cell of `block` with no residual grid transpose.
  void emit_parallel_hadamard(const std::string& block);
  // S on the target cells of `data`: the state moves onto the returned
  // i-state companion (X_t -> X_t' Z_t', other X -> X', Z -> Z').
  std::string emit_teleported_s(const std::string& data, const std::vector<Cell>& targets);
  // Row-major +1 cycle on the logical cells of `block`.
  void emit_cyclic_shift(const std::string& block);

  GadgetSchedule take();  // computes costs and returns the schedule

  GadgetSchedule& schedule() { return sched_; }
  int distance() const { return distance_; }

 private:
  GadgetSchedule sched_;
  std::map<std::string, BlockSpec> specs_;
  std::map<std::string, CubeSpec> cubes_;
  int distance_ = 1;
  int fresh_ = 0;
};

// ---------------------------------------------------------------------------
// Gadget builders.  Each returns a schedule whose declared effect certifies
// against the step-by-step stabilizer-flow engine.

// Measured products for a grid round, in declaration order (used by the
// builders and by tests constructing expectations independently).
std::vector<PauliProductRef> gppm_products(const BlockSpec& spec,
                                           const std::string& block, char basis,
                                           const EdgeFamily& rows,
                                           const EdgeFamily& cols);

// For each column hyperedge e and every row i: the product of Z letters over
// {i} x e.
GadgetSchedule horizontal_ppms(const BlockSpec& data, const EdgeFamily& cols);

// Products over row x column hyperedge rectangles in the given basis.
GadgetSchedule grid_ppms(const BlockSpec& data, char basis, const EdgeFamily& rows,
                         const EdgeFamily& cols);

// 3D: products over e_x x e_y x e_z boxes ('Z': x,y exact, z chained;
// 'X': x,y chained, z exact).
GadgetSchedule cube_ppms(const CubeSpec& data, char basis, const EdgeFamily& ex,
                         const EdgeFamily& ey, const EdgeFamily& ez);

// Physical qubit permutation realizing the logical grid translation
// (r, c) -> (r+i, c+j) on a quasi-cyclic block.
GadgetSchedule translation_gadget(const BlockSpec& data, std::size_t i, std::size_t j);

// Transversal Hadamard + fold swap: X(i,j) -> Z(j,i), Z(i,j) -> X(j,i).
GadgetSchedule fold_hswap_gadget(const BlockSpec& data);

// Diagonal S / mirrored S-dagger / folded CZ: X(i,j) -> X(i,j)Z(j,i).
GadgetSchedule fold_czs_gadget(const BlockSpec& data);

// Moves the listed cells onto a fresh identical block (same coordinates);
// vacated cells end in |+>, unoccupied receiver cells stay |+>.
GadgetSchedule selective_teleport(const BlockSpec& data, const std::vector<Cell>& cells);

// The k-cycle (i,j) -> (i, j+1), (i, k2-1) -> (i+1, 0): row-major index +1.
GadgetSchedule cyclic_shift(const BlockSpec& data);

// Non-destructive X measurement of every diagonal cell (i,i).
GadgetSchedule diagonal_x_measure(const BlockSpec& data);

// Prepares a fresh block with every logical cell in the +1 eigenstate of Y,
// using two half-blocks merged by transversal XX measurements.
GadgetSchedule i_state_prep(const BlockSpec& spec);

// Logical Hadamard on every cell with no residual grid transpose.
GadgetSchedule parallel_hadamard(const BlockSpec& data);

// S on the target cells via teleportation into a companion block prepared
// cellwise in |i> (targets) / |+> (rest).  The data state moves to the
// companion: X_t -> Y_t', Z -> Z' there.
GadgetSchedule teleported_s(const BlockSpec& data, const std::vector<Cell>& targets);

// Measurement-based CNOT between two cells of one block, using a promised
// |+> helper cell aligned with both (the corner (t.row, c.col) by default).
GadgetSchedule mb_cnot(const BlockSpec& data, Cell control, Cell target,
                       std::optional<Cell> helper = std::nullopt);

// GHZ state over all k logical cells of a fresh block: |+>-prep plus four
// grid rounds measuring a spanning tree of adjacent ZZ products.
GadgetSchedule ghz_state(const BlockSpec& spec);

}  // namespace homprod
