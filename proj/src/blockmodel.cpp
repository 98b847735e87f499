#include "wem/blockmodel.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <set>
#include <stdexcept>

namespace wem {

namespace {

std::string join_values(const std::vector<std::uint64_t>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(values[i]);
  }
  out += ']';
  return out;
}

void require_enumerable(Count count, const char* what) {
  if (count > kEnumerationLimit) {
    throw std::length_error(std::string(what) + " has " + wem::to_string(count) +
                            " states, above the enumeration limit of 2^24; "
                            "use the closed-form count instead");
  }
}

bool has_non_null_duplicate(const std::vector<std::uint64_t>& slots) {
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i] == 0) continue;
    for (std::size_t j = i + 1; j < slots.size(); ++j) {
      if (slots[i] == slots[j]) return true;
    }
  }
  return false;
}

void require_shape_of(const BlockState& state, const BlockShape& shape) {
  shape.validate();
  if (state.slots.size() != shape.k) {
    throw std::invalid_argument("state " + state.to_string() + " has " +
                                std::to_string(state.slots.size()) + " slots, expected " +
                                std::to_string(shape.k));
  }
  for (std::uint64_t v : state.slots) {
    if (v > shape.max_value()) {
      throw std::invalid_argument("slot value " + std::to_string(v) + " does not fit in " +
                                  std::to_string(shape.n) + " bits");
    }
  }
}

}  // namespace

void BlockShape::validate() const {
  if (n < 1 || k < 1 || n * k > kMaxBits) {
    throw std::invalid_argument("block shape requires n >= 1, k >= 1 and n*k <= 64 (got n=" +
                                std::to_string(n) + ", k=" + std::to_string(k) + ")");
  }
}

std::string_view to_string(Scm scm) {
  switch (scm) {
    case Scm::none:
      return "none";
    case Scm::overwrite:
      return "overwrite";
    case Scm::write_delete:
      return "write_delete";
  }
  return "none";
}

std::string MemoryModel::to_string() const {
  std::string out;
  auto add = [&](std::string_view part) {
    if (!out.empty()) out += '+';
    out += part;
  };
  if (loa) add("loa");
  if (uoe) add("uoe");
  if (scm != Scm::none) add("scm:" + std::string(wem::to_string(scm)));
  return out.empty() ? "gmm" : out;
}

MemoryModel MemoryModel::parse(std::string_view text) {
  if (text == "gmm" || text == "none") return {};
  if (text == "set") return {true, true, Scm::none};
  if (text == "multiset") return {true, false, Scm::none};
  if (text == "loads") return {true, true, Scm::write_delete};
  MemoryModel model;
  bool scm_seen = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('+', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view part = text.substr(pos, end - pos);
    auto fail = [&]() {
      return std::invalid_argument("unrecognized model flag \"" + std::string(part) + "\" in \"" +
                                   std::string(text) + "\"");
    };
    if (part == "loa" && !model.loa) {
      model.loa = true;
    } else if (part == "uoe" && !model.uoe) {
      model.uoe = true;
    } else if (!scm_seen && (part == "scm:overwrite" || part == "scm")) {
      model.scm = Scm::overwrite;
      scm_seen = true;
    } else if (!scm_seen && (part == "scm:write_delete" || part == "scm:write-delete")) {
      model.scm = Scm::write_delete;
      scm_seen = true;
    } else {
      throw fail();
    }
    pos = end + 1;
  }
  return model;
}

std::string MemoryModel::taxonomy_name() const {
  if (loa && uoe) return scm != Scm::none ? "LOADS" : "Set";
  if (loa) return scm != Scm::none ? "SCM+LOA" : "LOA";
  if (uoe) return scm != Scm::none ? "SCM+UoE" : "UoE";
  return scm != Scm::none ? "SCM" : "GMM";
}

std::vector<MemoryModel> MemoryModel::all() {
  std::vector<MemoryModel> out;
  for (Scm scm : {Scm::none, Scm::overwrite, Scm::write_delete}) {
    for (bool loa : {false, true}) {
      for (bool uoe : {false, true}) out.push_back({loa, uoe, scm});
    }
  }
  return out;
}

std::string BlockState::to_string() const { return join_values(slots); }

BlockState BlockState::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  const std::string_view body = trim(text);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
    throw std::invalid_argument("state must look like [0,3,7,7]: \"" + std::string(text) + "\"");
  }
  BlockState state;
  std::string_view inner = trim(body.substr(1, body.size() - 2));
  if (inner.empty()) return state;
  std::size_t pos = 0;
  while (pos <= inner.size()) {
    std::size_t end = inner.find(',', pos);
    if (end == std::string_view::npos) end = inner.size();
    const std::string_view item = trim(inner.substr(pos, end - pos));
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || ptr != item.data() + item.size() || item.empty()) {
      throw std::invalid_argument("bad slot value \"" + std::string(item) + "\"");
    }
    state.slots.push_back(value);
    pos = end + 1;
  }
  return state;
}

unsigned BlockState::occupied() const {
  return static_cast<unsigned>(std::count_if(slots.begin(), slots.end(),
                                             [](std::uint64_t v) { return v != 0; }));
}

unsigned BlockState::distinct_values() const {
  std::vector<std::uint64_t> values = contents();
  return static_cast<unsigned>(std::unique(values.begin(), values.end()) - values.begin());
}

std::vector<std::uint64_t> BlockState::contents() const {
  std::vector<std::uint64_t> values;
  for (std::uint64_t v : slots) {
    if (v != 0) values.push_back(v);
  }
  std::sort(values.begin(), values.end());
  return values;
}

std::string SymbolState::to_string() const { return join_values(symbols); }

bool is_valid(const BlockState& state, const BlockShape& shape, const MemoryModel& model) {
  require_shape_of(state, shape);
  return !(model.uoe && has_non_null_duplicate(state.slots));
}

BlockState canonicalize(BlockState state, const MemoryModel& model) {
  if (model.loa) std::sort(state.slots.begin(), state.slots.end());
  return state;
}

bool is_canonical(const BlockState& state, const MemoryModel& model) {
  return !model.loa || std::is_sorted(state.slots.begin(), state.slots.end());
}

BitString pack(const BlockState& state, const BlockShape& shape) {
  require_shape_of(state, shape);
  std::uint64_t bits = 0;
  for (unsigned j = 0; j < shape.k; ++j) bits |= state.slots[j] << ((shape.k - 1 - j) * shape.n);
  return BitString(bits, shape.bits());
}

BlockState unpack(const BitString& bits, const BlockShape& shape) {
  shape.validate();
  if (bits.length() != shape.bits()) {
    throw std::invalid_argument("bit string length " + std::to_string(bits.length()) +
                                " does not match block of " + std::to_string(shape.bits()));
  }
  BlockState state;
  state.slots.resize(shape.k);
  for (unsigned j = 0; j < shape.k; ++j) {
    state.slots[j] = (bits.bits() >> ((shape.k - 1 - j) * shape.n)) & shape.max_value();
  }
  return state;
}

// ---------------------------------------------------------------------------
// symbol states

Count count_states(const BlockShape& shape, const MemoryModel& model) {
  shape.validate();
  const Count m = shape.alphabet_size();
  if (!model.loa && !model.uoe) return pow2(shape.bits());
  Count total = 0;
  for (unsigned i = 0; i <= shape.k; ++i) {
    Count term = 0;
    if (model.loa && model.uoe) {
      term = binomial(m, i);
    } else if (model.loa) {
      term = multichoose(m, i);
    } else {
      term = falling_factorial(m, i);
    }
    total = checked_add(total, term);
  }
  return total;
}

std::vector<SymbolState> enumerate_states(const BlockShape& shape, const MemoryModel& model) {
  require_enumerable(count_states(shape, model), "symbol state space");
  const std::uint64_t max_value = shape.max_value();
  std::vector<SymbolState> out;
  std::vector<std::uint64_t> current;

  std::function<void(unsigned)> extend = [&](unsigned remaining) {
    if (remaining == 0) {
      out.push_back({current});
      return;
    }
    std::uint64_t lo = 0;
    if (model.loa && !current.empty()) lo = current.back() + (model.uoe ? 1 : 0);
    for (std::uint64_t v = lo; v <= max_value; ++v) {
      if (model.uoe && !model.loa &&
          std::find(current.begin(), current.end(), v) != current.end()) {
        continue;
      }
      current.push_back(v);
      extend(remaining - 1);
      current.pop_back();
      if (v == max_value) break;
    }
  };

  const unsigned smallest = (!model.loa && !model.uoe) ? shape.k : 0;
  for (unsigned size = smallest; size <= shape.k; ++size) extend(size);
  return out;
}

double rate(const BlockShape& shape, const MemoryModel& model) {
  return static_cast<double>(log2(count_states(shape, model)) / shape.bits());
}

// ---------------------------------------------------------------------------
// slot states

Count count_slot_states(const BlockShape& shape, const MemoryModel& model) {
  shape.validate();
  const Count non_null = shape.alphabet_size() - 1;
  if (!model.loa && !model.uoe) return pow2(shape.bits());
  if (model.loa && !model.uoe) return multichoose(shape.alphabet_size(), shape.k);
  Count total = 0;
  for (unsigned i = 0; i <= shape.k; ++i) {
    // i occupied slots holding distinct non-NULL values; ordered models also
    // choose which slots are occupied.
    Count term = model.loa ? binomial(non_null, i)
                           : checked_mul(binomial(shape.k, i), falling_factorial(non_null, i));
    total = checked_add(total, term);
  }
  return total;
}

std::vector<BlockState> enumerate_slot_states(const BlockShape& shape, const MemoryModel& model) {
  require_enumerable(count_slot_states(shape, model), "slot state space");
  const std::uint64_t max_value = shape.max_value();
  std::vector<BlockState> out;
  BlockState current;
  current.slots.reserve(shape.k);

  std::function<void()> extend = [&]() {
    if (current.slots.size() == shape.k) {
      out.push_back(current);
      return;
    }
    const std::uint64_t lo = (model.loa && !current.slots.empty()) ? current.slots.back() : 0;
    for (std::uint64_t v = lo;; ++v) {
      const bool clash = model.uoe && v != 0 &&
                         std::find(current.slots.begin(), current.slots.end(), v) !=
                             current.slots.end();
      if (!clash) {
        current.slots.push_back(v);
        extend();
        current.slots.pop_back();
      }
      if (v == max_value) break;
    }
  };
  extend();
  return out;
}

TransitionSet enumerate_transitions(const BlockState& state, const BlockShape& shape,
                                    const MemoryModel& model) {
  if (!is_valid(state, shape, model)) {
    throw std::invalid_argument("state " + state.to_string() + " is not valid under " +
                                model.to_string());
  }
  if (!is_canonical(state, model)) {
    throw std::invalid_argument("state " + state.to_string() + " is not canonical under " +
                                model.to_string());
  }
  TransitionSet result{state, {}};
  if (model.scm == Scm::none) {
    for (BlockState& s : enumerate_slot_states(shape, model)) {
      if (s != state) result.successors.push_back(std::move(s));
    }
    return result;
  }

  std::set<BlockState> successors;
  auto offer = [&](BlockState candidate) {
    if (!is_valid(candidate, shape, model)) return;
    candidate = canonicalize(std::move(candidate), model);
    if (candidate != state) successors.insert(std::move(candidate));
  };
  const std::uint64_t max_value = shape.max_value();
  for (unsigned j = 0; j < shape.k; ++j) {
    const std::uint64_t old = state.slots[j];
    if (model.scm == Scm::write_delete && old != 0) {
      BlockState next = state;
      next.slots[j] = 0;
      offer(std::move(next));
      continue;
    }
    // Overwrite may set any other value, NULL included; write/delete fills an
    // empty slot with a non-NULL value.
    const std::uint64_t lo = model.scm == Scm::write_delete ? 1 : 0;
    for (std::uint64_t v = lo;; ++v) {
      if (v != old) {
        BlockState next = state;
        next.slots[j] = v;
        offer(std::move(next));
      }
      if (v == max_value) break;
    }
  }
  result.successors.assign(successors.begin(), successors.end());
  return result;
}

Count count_transitions(const BlockState& state, const BlockShape& shape,
                        const MemoryModel& model) {
  if (!is_valid(state, shape, model) || !is_canonical(state, model)) {
    throw std::invalid_argument("state " + state.to_string() +
                                " is not a valid canonical state under " + model.to_string());
  }
  if (model.scm == Scm::none) return count_slot_states(shape, model) - 1;

  const Count m = shape.alphabet_size();
  const Count k = shape.k;
  const Count s = state.occupied();
  const Count v = state.distinct_values();
  const Count has_empty = s < k ? 1 : 0;

  if (model.scm == Scm::overwrite) {
    if (!model.loa && !model.uoe) return checked_mul(k, m - 1);
    if (!model.loa) {
      // Occupied slot: any value but the other s-1 members and itself, NULL
      // allowed. Empty slot: a non-NULL non-member.
      return checked_add(checked_mul(s, m - s), checked_mul(k - s, m - 1 - s));
    }
    if (!model.uoe) {
      // Replace one copy of a distinct value (NULL counts when a slot is empty).
      return checked_mul(v + has_empty, m - 1);
    }
    return checked_add(checked_mul(s, m - s), checked_mul(has_empty, m - 1 - s));
  }

  // write/delete
  if (!model.loa && !model.uoe) return checked_add(s, checked_mul(k - s, m - 1));
  if (!model.loa) return checked_add(s, checked_mul(k - s, m - 1 - s));
  if (!model.uoe) return checked_add(v, checked_mul(has_empty, m - 1));
  return checked_add(s, checked_mul(has_empty, m - 1 - s));
}

// ---------------------------------------------------------------------------
// printed table

std::optional<Count> printed_state_count(const BlockShape& shape, const MemoryModel& model) {
  shape.validate();
  const Count m = shape.alphabet_size();
  if (!model.loa && !model.uoe) return pow2(shape.bits());
  Count total = 0;
  for (unsigned i = 0; i <= shape.k; ++i) {
    Count term = 0;
    if (model.loa && model.uoe) {
      // n!/(i!(n-i)!)
      term = binomial(shape.n, i);
    } else if (model.loa) {
      // (n+i-1)!/(i!(n-1)!)
      term = binomial(shape.n + i - 1, i);
    } else {
      // product over j = 0..i of (2^n - j)
      term = falling_factorial(m, i + 1);
    }
    total = checked_add(total, term);
  }
  return total;
}

std::optional<Count> printed_transition_count(const BlockState& state, const BlockShape& shape,
                                              const MemoryModel& model) {
  require_shape_of(state, shape);
  const Count m = shape.alphabet_size();
  const Count k = shape.k;
  const Count s = state.occupied();
  const Count v = state.distinct_values();
  switch (model.scm) {
    case Scm::none:
      if (!model.loa && !model.uoe) return pow2(shape.bits());
      return std::nullopt;
    case Scm::overwrite:
      if (!model.loa && !model.uoe) return k * (m - 1);
      if (!model.loa) return k * (m - s);
      return (v + 1) * (m - 1);
    case Scm::write_delete:
      if (!model.loa && !model.uoe) return s + (k - s) * (m - 1);
      if (!model.loa) return m - 1;
      if (!model.uoe) return v + (m - 1);
      return m;
  }
  return std::nullopt;
}

}  // namespace wem
