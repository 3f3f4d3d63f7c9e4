#include "homprod/schedule.hpp"

#include <algorithm>

#include "homprod/error.hpp"

namespace homprod {

const char* step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::PrepZ: return "prep_z";
    case StepKind::PrepX: return "prep_x";
    case StepKind::PrepContent: return "prep_content";
    case StepKind::TransversalCNOT: return "cnot";
    case StepKind::MeasureZ: return "measure_z";
    case StepKind::MeasureX: return "measure_x";
    case StepKind::Permute: return "permute";
    case StepKind::FoldHSwap: return "fold_hswap";
    case StepKind::FoldCZS: return "fold_czs";
    case StepKind::Annotation: return "annotation";
  }
  return "?";
}

std::string PauliProductRef::to_string() const {
  std::string s;
  for (const auto& f : factors) {
    if (!s.empty()) s += ".";
    s += f.block + ":" + f.letter + std::to_string(f.q);
  }
  return s.empty() ? "I" : s;
}

int step_cycles(const GadgetStep& s, int distance) {
  if (s.cycle_cost >= 0) return s.cycle_cost;
  switch (s.kind) {
    case StepKind::PrepZ:
    case StepKind::PrepX:
    case StepKind::PrepContent:
      return distance;
    case StepKind::Annotation:
      return 0;
    default:
      return 1;
  }
}

void compute_cost(GadgetSchedule& s, int distance) {
  if (distance <= 0) throw Error("compute_cost: distance must be positive");
  std::map<std::string, int> ready;
  int cursor = 0;
  int prev_start = 0;
  for (const auto& st : s.steps) {
    int c = step_cycles(st, distance);
    if (st.kind == StepKind::Annotation && c == 0) continue;
    if (st.background) {
      // Concurrent preparation launched at time 0.
      ready[st.block] = std::max(ready[st.block], c);
      continue;
    }
    int start;
    if (st.fused) {
      start = prev_start;
    } else {
      start = std::max(cursor, ready[st.block]);
      if (!st.control.empty()) start = std::max(start, ready[st.control]);
    }
    cursor = std::max(cursor, start + c);
    ready[st.block] = std::max(ready[st.block], start + c);
    if (!st.control.empty()) ready[st.control] = std::max(ready[st.control], start + c);
    prev_start = start;
  }
  s.total_cycles = cursor;
  s.logical_cycles = (cursor + distance - 1) / distance;
}

}  // namespace homprod
