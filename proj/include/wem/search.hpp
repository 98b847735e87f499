#pragma once

// Code search engines probing whether single cell modification can be
// exploited.
//
//  * exhaustive_scm_search walks every bijective code of the plain SCM
//    overwrite model at n*k <= 3, modulo xor translation and bit permutation.
//  * swap_search hill-climbs over codeword swaps of a single-codeword code.
//  * redundant_search hill-climbs over extra codewords drawn from bit strings
//    that the model leaves unused.
//
// All engines are deterministic for a given configuration and never assert
// the outcome: `improved` only records whether the best code found beats the
// baseline on the configured objective.

#include <cstdint>
#include <string>
#include <vector>

#include "wem/blockmodel.hpp"
#include "wem/codecraft.hpp"

namespace wem {

enum class Objective { max, avg };

std::string_view to_string(Objective objective);
Objective parse_objective(std::string_view text);

/// Strict lexicographic comparison on (max, avg) for Objective::max and on
/// (avg, max) for Objective::avg.
bool better(const CostReport& a, const CostReport& b, Objective objective);

/// Whether `candidate` beats `baseline` on the objective's primary metric.
bool improves(const CostReport& candidate, const CostReport& baseline, Objective objective);

struct SearchConfig {
  std::uint64_t seed = 0;
  std::uint64_t iterations = 0;
  unsigned restarts = 1;
  /// Wall-clock limit in seconds; 0 disables it. A run cut short by the limit
  /// is flagged and is no longer reproducible.
  double wall_budget_s = 0.0;
};

struct SearchReport {
  std::string engine;
  BlockShape shape;
  MemoryModel model;
  Objective objective = Objective::max;
  SearchConfig config;
  std::string baseline_encoding;
  CostReport baseline;
  CostReport best_found;
  bool improved = false;
  std::uint64_t codes_examined = 0;
  bool budget_exhausted = false;
  /// Xor translation and bit permutation of the best code reproduced its costs.
  bool symmetry_check = true;
  std::vector<IsolatedBit> baseline_isolated_bits;
  std::vector<IsolatedBit> best_isolated_bits;
  Code best_code;
};

/// Throws std::invalid_argument when n*k > 3.
SearchReport exhaustive_scm_search(const BlockShape& shape, Objective objective);

/// Throws std::invalid_argument when n*k > 16.
SearchReport swap_search(const BlockShape& shape, const MemoryModel& model, Objective objective,
                         const SearchConfig& config);

/// Throws std::invalid_argument when the model has no spare bit strings
/// (slot states fill all 2^(n*k) strings) or n*k > 16.
SearchReport redundant_search(const BlockShape& shape, const MemoryModel& model,
                              Objective objective, const SearchConfig& config);

}  // namespace wem
