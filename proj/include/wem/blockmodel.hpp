#pragma once

// Block memory models: k slots of n bits each, constrained by local order
// agnosticism (LOA), uniqueness of elements (UoE) and a single cell
// modification (SCM) transition flavor.
//
// Two state spaces live here.
//
//  * Slot states (BlockState): exactly k slots, slot value 0 is NULL (empty).
//    UoE forbids repeated non-NULL values; LOA makes the sorted tuple the
//    canonical representative. Validity, transitions, codes, search and the
//    simulator all work on slot states.
//
//  * Symbol states (SymbolState): the counting convention behind
//    count_states. A block stores 0..k symbols from the full alphabet of 2^n
//    values, where symbol 0 is an ordinary symbol. Models without LOA and UoE
//    always store exactly k symbols, so that space is every k-tuple. The set
//    and multiset rank codecs number this space.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wem/bitspace.hpp"
#include "wem/numeric.hpp"

namespace wem {

struct BlockShape {
  unsigned n = 1;  // bits per slot
  unsigned k = 1;  // slots per block

  /// Throws std::invalid_argument unless n >= 1, k >= 1 and n*k <= 64.
  void validate() const;

  unsigned bits() const { return n * k; }
  Count alphabet_size() const { return pow2(n); }
  /// Largest slot value, 2^n - 1.
  std::uint64_t max_value() const { return low_mask(n); }

  friend bool operator==(const BlockShape&, const BlockShape&) = default;
};

enum class Scm { none, overwrite, write_delete };

std::string_view to_string(Scm scm);

struct MemoryModel {
  bool loa = false;
  bool uoe = false;
  Scm scm = Scm::none;

  /// Flag string such as "loa+uoe+scm:overwrite"; the empty model is "gmm".
  std::string to_string() const;

  /// Accepts the flag syntax produced by to_string plus the aliases
  /// "gmm", "set", "multiset" and "loads" (loa+uoe+scm:write_delete).
  static MemoryModel parse(std::string_view text);

  /// Name in the eight-model taxonomy: GMM, UoE, LOA, Set, SCM, SCM+UoE,
  /// SCM+LOA, LOADS. The SCM flavor does not affect the name.
  std::string taxonomy_name() const;

  /// Same model without its transition restriction.
  MemoryModel without_scm() const { return {loa, uoe, Scm::none}; }

  /// All twelve flag combinations (four state models times three SCM
  /// flavors), in a fixed order.
  static std::vector<MemoryModel> all();

  friend bool operator==(const MemoryModel&, const MemoryModel&) = default;
};

struct BlockState {
  std::vector<std::uint64_t> slots;

  /// Decimal slot list, e.g. "[0,3,7,7]".
  std::string to_string() const;
  static BlockState parse(std::string_view text);

  /// Number of non-NULL slots (s).
  unsigned occupied() const;
  /// Number of distinct non-NULL values (v).
  unsigned distinct_values() const;
  /// Non-NULL slot values in ascending order, duplicates kept.
  std::vector<std::uint64_t> contents() const;

  friend bool operator==(const BlockState&, const BlockState&) = default;
  friend auto operator<=>(const BlockState&, const BlockState&) = default;
};

struct SymbolState {
  std::vector<std::uint64_t> symbols;

  std::string to_string() const;

  friend bool operator==(const SymbolState&, const SymbolState&) = default;
  friend auto operator<=>(const SymbolState&, const SymbolState&) = default;
};

struct TransitionSet {
  BlockState source;
  std::vector<BlockState> successors;  // canonical, sorted, source excluded
};

/// Largest state space the enumerators will materialize.
inline constexpr Count kEnumerationLimit = Count{1} << 24;

/// Throws std::invalid_argument when the slot count differs from k or a slot
/// value does not fit in n bits.
bool is_valid(const BlockState& state, const BlockShape& shape, const MemoryModel& model);

BlockState canonicalize(BlockState state, const MemoryModel& model);
bool is_canonical(const BlockState& state, const MemoryModel& model);

/// Slots concatenated in order, slot 0 leading: slot j occupies bits
/// [(k-1-j)*n, (k-j)*n), so the text form reads slot 0 first.
BitString pack(const BlockState& state, const BlockShape& shape);
BlockState unpack(const BitString& bits, const BlockShape& shape);

// -- symbol-state counting -------------------------------------------------

/// Closed-form state count: GMM 2^(nk); UoE sum of falling factorials
/// (2^n)_i; LOA sum of multichoose(2^n, i); Set sum of C(2^n, i); i = 0..k.
/// SCM never changes the count.
Count count_states(const BlockShape& shape, const MemoryModel& model);

/// Every canonical symbol state exactly once, ordered by size then
/// lexicographically. Throws std::length_error above kEnumerationLimit.
std::vector<SymbolState> enumerate_states(const BlockShape& shape, const MemoryModel& model);

/// log2(count_states) / (n*k).
double rate(const BlockShape& shape, const MemoryModel& model);

// -- slot-state space ------------------------------------------------------

/// Closed-form number of valid canonical slot states.
Count count_slot_states(const BlockShape& shape, const MemoryModel& model);

/// Valid canonical slot states in ascending lexicographic order. Throws
/// std::length_error above kEnumerationLimit.
std::vector<BlockState> enumerate_slot_states(const BlockShape& shape, const MemoryModel& model);

/// Successors of a valid canonical slot state. Throws std::invalid_argument
/// for invalid or non-canonical input.
TransitionSet enumerate_transitions(const BlockState& state, const BlockShape& shape,
                                    const MemoryModel& model);

/// Closed-form successor count as a function of s, v, n, k. Agrees with
/// enumerate_transitions for every valid canonical state.
Count count_transitions(const BlockState& state, const BlockShape& shape, const MemoryModel& model);

// -- the printed reference table -------------------------------------------
//
// The functions below evaluate the counting table exactly as printed in the
// source material, typos included, so that audits can compare it against
// enumeration. nullopt marks cells the table leaves undefined.

std::optional<Count> printed_state_count(const BlockShape& shape, const MemoryModel& model);
std::optional<Count> printed_transition_count(const BlockState& state, const BlockShape& shape,
                                              const MemoryModel& model);

}  // namespace wem
