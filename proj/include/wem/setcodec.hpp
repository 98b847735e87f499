#pragma once

// Ranking codecs for order-agnostic block contents.
//
// Sets and multisets of up to k values from the 2^n alphabet are numbered
// size-ascending; within one size sets use the colexicographic combinatorial
// number system and multisets the same system after the stars-and-bars shift
// a_j -> a_j + j. Value 0 ranks like any other symbol, so the rank ranges
// equal count_states for the Set and LOA models.

#include <cstdint>
#include <span>
#include <vector>

#include "wem/blockmodel.hpp"
#include "wem/codecraft.hpp"
#include "wem/numeric.hpp"

namespace wem {

/// Throws std::invalid_argument for duplicates, values >= 2^n or more than k
/// values. Input order does not matter.
Count rank_set(std::span<const std::uint64_t> values, const BlockShape& shape);
/// Ascending values. Throws std::out_of_range when rank >= total.
std::vector<std::uint64_t> unrank_set(Count rank, const BlockShape& shape);

Count rank_multiset(std::span<const std::uint64_t> values, const BlockShape& shape);
std::vector<std::uint64_t> unrank_multiset(Count rank, const BlockShape& shape);

class RankedCodec {
 public:
  /// Requires an LOA model; UoE selects set ranking, otherwise multisets.
  RankedCodec(const BlockShape& shape, const MemoryModel& model);

  const BlockShape& shape() const { return shape_; }
  const MemoryModel& model() const { return model_; }
  Count total() const { return total_; }
  unsigned payload_bits() const { return payload_bits_; }
  /// n*k - payload_bits; negative when the rank range does not fit the block.
  int redundancy_bits() const { return static_cast<int>(shape_.bits()) - static_cast<int>(payload_bits_); }
  bool fits() const { return redundancy_bits() >= 0; }

  Count rank(std::span<const std::uint64_t> values) const;
  std::vector<std::uint64_t> unrank(Count rank) const;
  /// Rank of a slot state's non-NULL contents.
  Count rank_state(const BlockState& state) const;

 private:
  BlockShape shape_;
  MemoryModel model_;
  Count total_ = 0;
  unsigned payload_bits_ = 0;
};

/// One codeword per slot state: the rank of its contents as an n*k-bit
/// number. Throws std::invalid_argument for models without LOA or when the
/// rank range needs more than n*k bits.
Code compressed_code(const BlockShape& shape, const MemoryModel& model);

}  // namespace wem
