#pragma once
// Machine certification of gadget schedules over GF(2).
//
// The engine tracks the group of determined Pauli observables (phaseless
// binary symplectic rows) across a schedule.  Data blocks are seeded with
// their stabilizers plus frame rows that tie each logical X/Z generator to a
// virtual reference column, so the surviving rows at the end encode both the
// measured logical products and the channel applied to the logical frame.
// Certification is span equality between those survivors and the group the
// schedule declares.

#include <string>
#include <vector>

#include "homprod/schedule.hpp"

namespace homprod {

struct CertificationReport {
  bool certified = false;
  std::vector<std::string> errors;      // structural problems (bad schedule)
  std::vector<std::string> missing;     // declared but not determined
  std::vector<std::string> extra;       // determined but not declared
  std::string summary() const;
};

// Runs the schedule through the extraction engine and compares the final
// determined group against the declared effect.  Sets s.certified.
CertificationReport certify_schedule(GadgetSchedule& s);

// Transpose permutation of a square two-factor product block: grid cell
// (a,b) -> (b,a) in both summands.  Used by the fold steps.
std::vector<std::uint32_t> transpose_permutation(const CssCode& code);

}  // namespace homprod
