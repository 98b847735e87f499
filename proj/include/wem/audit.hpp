#pragma once

// Audit of the printed counting table against exhaustive enumeration.
//
// State counts are audited in the symbol convention (0..k symbols over 2^n
// values) for the four property combinations. Transition counts are audited
// per valid slot state for every model the printed table covers. Each row
// groups all states of one (model, shape) cell that disagree.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wem/blockmodel.hpp"
#include "wem/numeric.hpp"

namespace wem {

struct DiscrepancyRow {
  std::string kind;  // "states" or "transitions"
  MemoryModel model;
  BlockShape shape;
  std::optional<BlockState> example;  // first disagreeing state (transitions only)
  Count printed = 0;
  Count corrected = 0;
  Count enumerated = 0;
  std::uint64_t mismatching = 0;  // disagreeing states in the cell, 1 for state rows
  std::uint64_t checked = 0;
  std::string cause;
};

struct DiscrepancyReport {
  unsigned max_n = 0;
  unsigned max_k = 0;
  std::uint64_t state_cells = 0;
  std::uint64_t transition_states = 0;
  std::uint64_t undefined_cells = 0;  // cells the printed table leaves blank
  /// Disagreements between the corrected closed forms and enumeration. Any
  /// entry here is a defect in this library, not in the printed table.
  std::vector<DiscrepancyRow> corrected_failures;
  std::vector<DiscrepancyRow> rows;
};

/// Throws std::invalid_argument when a bound is zero or max_n * max_k > 12.
DiscrepancyReport discrepancy_report(unsigned max_n, unsigned max_k);

}  // namespace wem
