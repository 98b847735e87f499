#pragma once

// Codes over block slot states and their bit-flip cost metrics.
//
// A code assigns every valid canonical slot state a non-empty set of
// codewords of n*k bits. The cost of a transition s -> t taken from codeword w
// of s is the distance from w to the nearest codeword of t. Averages weigh
// every (state, codeword, successor) triple equally.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wem/bitspace.hpp"
#include "wem/blockmodel.hpp"
#include "wem/numeric.hpp"

namespace wem {

struct CodeEntry {
  BlockState state;
  std::vector<BitString> codewords;

  friend bool operator==(const CodeEntry&, const CodeEntry&) = default;
};

class Code {
 public:
  Code() = default;

  /// Throws std::invalid_argument on an invalid shape or a codeword whose
  /// length is not n*k. Semantic problems (overlaps, gaps) are left to
  /// validate() so that broken codes can still be inspected.
  Code(BlockShape shape, MemoryModel model, std::vector<CodeEntry> entries);

  const BlockShape& shape() const { return shape_; }
  const MemoryModel& model() const { return model_; }
  const std::vector<CodeEntry>& entries() const { return entries_; }

  /// Codewords of a state, or nullptr when the code does not list it.
  const std::vector<BitString>* encode(const BlockState& state) const;
  std::optional<BlockState> decode(const BitString& word) const;

  std::size_t codeword_count() const;
  bool single_codeword() const;

  friend bool operator==(const Code& a, const Code& b) {
    return a.shape_ == b.shape_ && a.model_ == b.model_ && a.entries_ == b.entries_;
  }

 private:
  BlockShape shape_;
  MemoryModel model_;
  std::vector<CodeEntry> entries_;
  std::map<BlockState, std::size_t> by_state_;
  std::unordered_map<std::uint64_t, std::size_t> by_word_;
};

struct Validation {
  bool ok = true;
  std::string violation;             // empty when ok
  std::vector<std::string> witness;  // states and/or codewords involved
};

Validation validate(const Code& code);

/// One codeword per state: the slot values concatenated in canonical order.
Code trivial_code(const BlockShape& shape, const MemoryModel& model);

/// Set-model code with bit (x-1) set iff non-NULL value x is present. Needs
/// 2^n - 1 <= n*k; throws std::invalid_argument otherwise.
Code indicator_code(const BlockShape& shape, Scm scm = Scm::write_delete);

struct CostReport {
  unsigned max_cost = 0;
  Rational avg_cost;
  std::optional<std::uint64_t> total_cost;  // single-codeword codes only
  std::uint64_t codeword_count = 0;
  std::uint64_t transition_samples = 0;

  friend bool operator==(const CostReport&, const CostReport&) = default;
};

/// Valid canonical slot states of a model with their successor lists, indexed
/// densely. Models without SCM form a complete graph that is not
/// materialized.
class TransitionGraph {
 public:
  /// Throws std::length_error for state spaces above 2^16.
  TransitionGraph(const BlockShape& shape, const MemoryModel& model);

  const BlockShape& shape() const { return shape_; }
  const MemoryModel& model() const { return model_; }
  std::size_t size() const { return states_.size(); }
  const std::vector<BlockState>& states() const { return states_; }
  std::optional<std::size_t> index_of(const BlockState& state) const;
  bool complete() const { return complete_; }
  std::size_t out_degree(std::size_t i) const {
    return complete_ ? states_.size() - 1 : adjacency_[i].size();
  }

  template <typename Fn>
  void for_each_successor(std::size_t i, Fn&& fn) const {
    if (complete_) {
      for (std::size_t t = 0; t < states_.size(); ++t) {
        if (t != i) fn(t);
      }
    } else {
      for (std::uint32_t t : adjacency_[i]) fn(static_cast<std::size_t>(t));
    }
  }

 private:
  BlockShape shape_;
  MemoryModel model_;
  std::vector<BlockState> states_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
  bool complete_ = false;
};

inline constexpr std::size_t kGraphLimit = std::size_t{1} << 16;

/// Codeword lists aligned with a graph's state indices (raw bit patterns).
using Assignment = std::vector<std::vector<std::uint64_t>>;

/// Throws std::invalid_argument when the code misses a state of the graph.
Assignment align(const Code& code, const TransitionGraph& graph);

CostReport evaluate(const TransitionGraph& graph, const Assignment& assignment);
CostReport evaluate(const Code& code);

unsigned max_transition_cost(const Code& code);
Rational avg_transition_cost(const Code& code);
/// Sum of distances over all ordered codeword pairs. Throws
/// std::invalid_argument for codes with several codewords per state.
std::uint64_t total_cost(const Code& code);

/// Every codeword xored with `offset`.
Code xor_translate(const Code& code, const BitString& offset);
/// Bit i of each codeword moves to position perm[i].
Code permute_bits(const Code& code, std::span<const unsigned> perm);

/// A codeword bit whose value is determined by one slot of the state alone.
/// Constant bits carry no slot.
struct IsolatedBit {
  unsigned bit = 0;
  std::optional<unsigned> slot;

  friend bool operator==(const IsolatedBit&, const IsolatedBit&) = default;
};

std::vector<IsolatedBit> isolated_bits(const Code& code);

}  // namespace wem
