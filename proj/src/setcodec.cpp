#include "wem/setcodec.hpp"

#include <algorithm>
#include <stdexcept>

namespace wem {

namespace {

constexpr Count kSaturated = ~Count{0};

// C(n, k), or kSaturated once the value passes 2^127.
Count binomial_saturating(Count n, unsigned k) {
  try {
    return binomial(n, k);
  } catch (const std::overflow_error&) {
    return kSaturated;
  }
}

Count size_class_count(const BlockShape& shape, bool sets, unsigned size) {
  const Count m = shape.alphabet_size();
  return sets ? binomial(m, size) : multichoose(m, size);
}

// Colex rank of strictly increasing positions: sum of C(b_j, j+1).
Count colex_rank(const std::vector<Count>& positions) {
  Count rank = 0;
  for (std::size_t j = 0; j < positions.size(); ++j) {
    rank = checked_add(rank, binomial(positions[j], static_cast<unsigned>(j + 1)));
  }
  return rank;
}

// Inverse of colex_rank for `size` positions drawn from [0, universe).
std::vector<Count> colex_unrank(Count rank, unsigned size, Count universe) {
  std::vector<Count> positions(size);
  Count upper = universe;  // positions[j] < upper
  for (unsigned j = size; j-- > 0;) {
    // Largest c in [j, upper) with C(c, j+1) <= rank.
    Count lo = j;
    Count hi = upper - 1;
    while (lo < hi) {
      const Count mid = lo + (hi - lo + 1) / 2;
      if (binomial_saturating(mid, j + 1) <= rank) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    positions[j] = lo;
    rank -= binomial(lo, j + 1);
    upper = lo;
  }
  return positions;
}

std::vector<std::uint64_t> checked_sorted(std::span<const std::uint64_t> values,
                                          const BlockShape& shape, bool sets) {
  shape.validate();
  if (values.size() > shape.k) {
    throw std::invalid_argument("collection of " + std::to_string(values.size()) +
                                " values exceeds block capacity k=" + std::to_string(shape.k));
  }
  std::vector<std::uint64_t> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] > shape.max_value()) {
      throw std::invalid_argument("value " + std::to_string(sorted[i]) + " does not fit in " +
                                  std::to_string(shape.n) + " bits");
    }
    if (sets && i > 0 && sorted[i] == sorted[i - 1]) {
      throw std::invalid_argument("duplicate value " + std::to_string(sorted[i]) + " in set");
    }
  }
  return sorted;
}

Count rank_impl(std::span<const std::uint64_t> values, const BlockShape& shape, bool sets) {
  const std::vector<std::uint64_t> sorted = checked_sorted(values, shape, sets);
  const auto size = static_cast<unsigned>(sorted.size());
  Count base = 0;
  for (unsigned i = 0; i < size; ++i) base = checked_add(base, size_class_count(shape, sets, i));
  std::vector<Count> positions(size);
  for (unsigned j = 0; j < size; ++j) positions[j] = Count{sorted[j]} + (sets ? 0 : j);
  return checked_add(base, colex_rank(positions));
}

std::vector<std::uint64_t> unrank_impl(Count rank, const BlockShape& shape, bool sets) {
  shape.validate();
  for (unsigned size = 0; size <= shape.k; ++size) {
    const Count here = size_class_count(shape, sets, size);
    if (rank < here) {
      const Count universe = sets ? shape.alphabet_size() : shape.alphabet_size() + size - 1;
      std::vector<std::uint64_t> values;
      const std::vector<Count> positions = colex_unrank(rank, size, universe);
      for (unsigned j = 0; j < size; ++j) {
        values.push_back(static_cast<std::uint64_t>(positions[j] - (sets ? 0 : j)));
      }
      return values;
    }
    rank -= here;
  }
  throw std::out_of_range("rank beyond the number of " +
                          std::string(sets ? "sets" : "multisets") + " of up to " +
                          std::to_string(shape.k) + " values");
}

}  // namespace

Count rank_set(std::span<const std::uint64_t> values, const BlockShape& shape) {
  return rank_impl(values, shape, true);
}

std::vector<std::uint64_t> unrank_set(Count rank, const BlockShape& shape) {
  return unrank_impl(rank, shape, true);
}

Count rank_multiset(std::span<const std::uint64_t> values, const BlockShape& shape) {
  return rank_impl(values, shape, false);
}

std::vector<std::uint64_t> unrank_multiset(Count rank, const BlockShape& shape) {
  return unrank_impl(rank, shape, false);
}

RankedCodec::RankedCodec(const BlockShape& shape, const MemoryModel& model)
    : shape_(shape), model_(model) {
  shape_.validate();
  if (!model.loa) {
    throw std::invalid_argument("rank codecs need an order-agnostic model, got " +
                                model.to_string());
  }
  total_ = count_states(shape_, model_);
  payload_bits_ = ceil_log2(total_);
}

Count RankedCodec::rank(std::span<const std::uint64_t> values) const {
  return model_.uoe ? rank_set(values, shape_) : rank_multiset(values, shape_);
}

std::vector<std::uint64_t> RankedCodec::unrank(Count rank) const {
  return model_.uoe ? unrank_set(rank, shape_) : unrank_multiset(rank, shape_);
}

Count RankedCodec::rank_state(const BlockState& state) const {
  if (!is_valid(state, shape_, model_)) {
    throw std::invalid_argument("state " + state.to_string() + " is not valid under " +
                                model_.to_string());
  }
  const std::vector<std::uint64_t> contents = state.contents();
  return rank(contents);
}

Code compressed_code(const BlockShape& shape, const MemoryModel& model) {
  const RankedCodec codec(shape, model);
  if (!codec.fits()) {
    throw std::invalid_argument(wem::to_string(codec.total()) + " ranks need " +
                                std::to_string(codec.payload_bits()) + " bits, more than the " +
                                std::to_string(shape.bits()) + "-bit block");
  }
  std::vector<CodeEntry> entries;
  for (BlockState& s : enumerate_slot_states(shape, model)) {
    const auto word = static_cast<std::uint64_t>(codec.rank_state(s));
    entries.push_back({std::move(s), {BitString(word, shape.bits())}});
  }
  return Code(shape, model, std::move(entries));
}

}  // namespace wem
