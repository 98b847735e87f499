#include "wem/audit.hpp"

#include <stdexcept>

namespace wem {

namespace {

std::string state_cause(const MemoryModel& model) {
  if (model.loa && model.uoe) return "set_alphabet_n_for_2^n";
  if (model.loa) return "loa_alphabet_n_for_2^n";
  return "uoe_product_index";
}

std::string transition_cause(const MemoryModel& model, bool full_blocks_only) {
  if (model.scm == Scm::none) return "self_transition_counted";
  if (model.loa && model.uoe && model.scm == Scm::write_delete) return "null_convention";
  if (full_blocks_only) return "full_block_only";
  return "occupancy_ignored";
}

void audit_states(const BlockShape& shape, const MemoryModel& model, DiscrepancyReport& report) {
  ++report.state_cells;
  const Count enumerated = enumerate_states(shape, model).size();
  const Count corrected = count_states(shape, model);
  const std::optional<Count> printed = printed_state_count(shape, model);
  DiscrepancyRow row{"states", model, shape, std::nullopt, printed.value_or(0), corrected,
                     enumerated, 1, 1, ""};
  if (corrected != enumerated) {
    row.cause = "corrected_form_error";
    report.corrected_failures.push_back(row);
  }
  if (!printed) {
    ++report.undefined_cells;
  } else if (*printed != enumerated) {
    row.cause = state_cause(model);
    report.rows.push_back(row);
  }
}

void audit_transitions(const BlockShape& shape, const MemoryModel& model,
                       DiscrepancyReport& report) {
  std::optional<DiscrepancyRow> printed_row;
  std::optional<DiscrepancyRow> corrected_row;
  bool full_only = true;
  bool undefined = false;
  const std::vector<BlockState> states = enumerate_slot_states(shape, model);
  for (const BlockState& state : states) {
    ++report.transition_states;
    const Count enumerated = enumerate_transitions(state, shape, model).successors.size();
    const Count corrected = count_transitions(state, shape, model);
    const std::optional<Count> printed = printed_transition_count(state, shape, model);
    if (corrected != enumerated) {
      if (!corrected_row) {
        corrected_row = DiscrepancyRow{"transitions", model, shape, state, printed.value_or(0),
                                       corrected, enumerated, 0, states.size(),
                                       "corrected_form_error"};
      }
      ++corrected_row->mismatching;
    }
    if (!printed) {
      undefined = true;
      continue;
    }
    if (*printed != enumerated) {
      if (!printed_row) {
        printed_row = DiscrepancyRow{"transitions", model, shape, state, *printed, corrected,
                                     enumerated, 0, states.size(), ""};
      }
      ++printed_row->mismatching;
      if (state.occupied() != shape.k) full_only = false;
    }
  }
  if (undefined) ++report.undefined_cells;
  if (corrected_row) report.corrected_failures.push_back(*corrected_row);
  if (printed_row) {
    printed_row->cause = transition_cause(model, full_only);
    report.rows.push_back(*printed_row);
  }
}

}  // namespace

DiscrepancyReport discrepancy_report(unsigned max_n, unsigned max_k) {
  if (max_n == 0 || max_k == 0) throw std::invalid_argument("audit bounds must be positive");
  if (max_n * max_k > 12) {
    throw std::invalid_argument("audit needs max_n * max_k <= 12 to stay exhaustive");
  }
  DiscrepancyReport report;
  report.max_n = max_n;
  report.max_k = max_k;
  for (const MemoryModel& model : MemoryModel::all()) {
    for (unsigned n = 1; n <= max_n; ++n) {
      for (unsigned k = 1; k <= max_k; ++k) {
        const BlockShape shape{n, k};
        if (model.scm == Scm::none) audit_states(shape, model, report);
        audit_transitions(shape, model, report);
      }
    }
  }
  return report;
}

}  // namespace wem
