#include "wem/codecraft.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

namespace wem {

Code::Code(BlockShape shape, MemoryModel model, std::vector<CodeEntry> entries)
    : shape_(shape), model_(model), entries_(std::move(entries)) {
  shape_.validate();
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    for (const BitString& w : entries_[i].codewords) {
      if (w.length() != shape_.bits()) {
        throw std::invalid_argument("codeword " + w.to_string() + " of state " +
                                    entries_[i].state.to_string() + " is not " +
                                    std::to_string(shape_.bits()) + " bits long");
      }
      by_word_.try_emplace(w.bits(), i);
    }
    by_state_.try_emplace(entries_[i].state, i);
  }
}

const std::vector<BitString>* Code::encode(const BlockState& state) const {
  auto it = by_state_.find(state);
  return it == by_state_.end() ? nullptr : &entries_[it->second].codewords;
}

std::optional<BlockState> Code::decode(const BitString& word) const {
  if (word.length() != shape_.bits()) return std::nullopt;
  auto it = by_word_.find(word.bits());
  if (it == by_word_.end()) return std::nullopt;
  return entries_[it->second].state;
}

std::size_t Code::codeword_count() const {
  std::size_t total = 0;
  for (const CodeEntry& e : entries_) total += e.codewords.size();
  return total;
}

bool Code::single_codeword() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const CodeEntry& e) { return e.codewords.size() == 1; });
}

Validation validate(const Code& code) {
  auto fail = [](std::string what, std::vector<std::string> witness) {
    return Validation{false, std::move(what), std::move(witness)};
  };
  const BlockShape& shape = code.shape();
  const MemoryModel& model = code.model();

  std::set<BlockState> seen_states;
  std::unordered_map<std::uint64_t, std::size_t> owner;
  for (std::size_t i = 0; i < code.entries().size(); ++i) {
    const CodeEntry& e = code.entries()[i];
    bool valid = false;
    try {
      valid = is_valid(e.state, shape, model);
    } catch (const std::invalid_argument&) {
      valid = false;
    }
    if (!valid) return fail("state is not valid under " + model.to_string(), {e.state.to_string()});
    if (!is_canonical(e.state, model)) {
      return fail("state is not canonical under " + model.to_string(), {e.state.to_string()});
    }
    if (!seen_states.insert(e.state).second) {
      return fail("state listed twice", {e.state.to_string()});
    }
    if (e.codewords.empty()) return fail("state has no codeword", {e.state.to_string()});
    for (const BitString& w : e.codewords) {
      auto [it, inserted] = owner.try_emplace(w.bits(), i);
      if (!inserted) {
        const BlockState& other = code.entries()[it->second].state;
        if (it->second == i) {
          return fail("codeword repeated within one state", {e.state.to_string(), w.to_string()});
        }
        return fail("codeword shared by two states",
                    {other.to_string(), e.state.to_string(), w.to_string()});
      }
    }
  }
  for (const CodeEntry& e : code.entries()) {
    for (const BitString& w : e.codewords) {
      auto decoded = code.decode(w);
      if (!decoded || *decoded != e.state) {
        return fail("codeword does not decode to its state", {e.state.to_string(), w.to_string()});
      }
    }
  }
  for (const BlockState& s : enumerate_slot_states(shape, model)) {
    if (!seen_states.contains(s)) return fail("valid state has no codeword", {s.to_string()});
  }
  return {};
}

Code trivial_code(const BlockShape& shape, const MemoryModel& model) {
  std::vector<CodeEntry> entries;
  for (BlockState& s : enumerate_slot_states(shape, model)) {
    BitString w = pack(s, shape);
    entries.push_back({std::move(s), {w}});
  }
  return Code(shape, model, std::move(entries));
}

Code indicator_code(const BlockShape& shape, Scm scm) {
  shape.validate();
  if (shape.alphabet_size() - 1 > shape.bits()) {
    throw std::invalid_argument("indicator code needs 2^n - 1 <= n*k bits (n=" +
                                std::to_string(shape.n) + ", k=" + std::to_string(shape.k) + ")");
  }
  const MemoryModel model{true, true, scm};
  std::vector<CodeEntry> entries;
  for (BlockState& s : enumerate_slot_states(shape, model)) {
    std::uint64_t bits = 0;
    for (std::uint64_t v : s.slots) {
      if (v != 0) bits |= std::uint64_t{1} << (v - 1);
    }
    entries.push_back({std::move(s), {BitString(bits, shape.bits())}});
  }
  return Code(shape, model, std::move(entries));
}

// ---------------------------------------------------------------------------

TransitionGraph::TransitionGraph(const BlockShape& shape, const MemoryModel& model)
    : shape_(shape), model_(model) {
  if (count_slot_states(shape, model) > kGraphLimit) {
    throw std::length_error("state space of " + model.to_string() + " at n=" +
                            std::to_string(shape.n) + ", k=" + std::to_string(shape.k) +
                            " is too large to evaluate exhaustively (limit 2^16 states)");
  }
  states_ = enumerate_slot_states(shape, model);
  for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(pack(states_[i], shape).bits(), i);
  complete_ = model.scm == Scm::none;
  if (complete_) return;
  adjacency_.resize(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    for (const BlockState& t : enumerate_transitions(states_[i], shape, model).successors) {
      adjacency_[i].push_back(static_cast<std::uint32_t>(index_.at(pack(t, shape).bits())));
    }
  }
}

std::optional<std::size_t> TransitionGraph::index_of(const BlockState& state) const {
  if (state.slots.size() != shape_.k) return std::nullopt;
  for (std::uint64_t v : state.slots) {
    if (v > shape_.max_value()) return std::nullopt;
  }
  auto it = index_.find(pack(state, shape_).bits());
  if (it == index_.end() || states_[it->second] != state) return std::nullopt;
  return it->second;
}

Assignment align(const Code& code, const TransitionGraph& graph) {
  Assignment out(graph.size());
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const auto* words = code.encode(graph.states()[i]);
    if (words == nullptr || words->empty()) {
      throw std::invalid_argument("code has no codeword for state " +
                                  graph.states()[i].to_string());
    }
    out[i].reserve(words->size());
    for (const BitString& w : *words) out[i].push_back(w.bits());
  }
  return out;
}

CostReport evaluate(const TransitionGraph& graph, const Assignment& assignment) {
  CostReport report;
  std::uint64_t sum = 0;
  bool single = true;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    report.codeword_count += assignment[i].size();
    single = single && assignment[i].size() == 1;
    for (std::uint64_t w : assignment[i]) {
      graph.for_each_successor(i, [&](std::size_t t) {
        unsigned best = kMaxBits + 1;
        for (std::uint64_t target : assignment[t]) {
          best = std::min(best, static_cast<unsigned>(std::popcount(w ^ target)));
        }
        sum += best;
        report.max_cost = std::max(report.max_cost, best);
        ++report.transition_samples;
      });
    }
  }
  report.avg_cost = Rational(sum, report.transition_samples);
  if (single) {
    // Each bit contributes 2 * ones * zeros over ordered pairs.
    const std::uint64_t size = assignment.size();
    std::uint64_t total = 0;
    for (unsigned b = 0; b < graph.shape().bits(); ++b) {
      std::uint64_t ones = 0;
      for (const auto& words : assignment) ones += (words[0] >> b) & 1U;
      total += 2 * ones * (size - ones);
    }
    report.total_cost = total;
  }
  return report;
}

CostReport evaluate(const Code& code) {
  TransitionGraph graph(code.shape(), code.model());
  return evaluate(graph, align(code, graph));
}

unsigned max_transition_cost(const Code& code) { return evaluate(code).max_cost; }

Rational avg_transition_cost(const Code& code) { return evaluate(code).avg_cost; }

std::uint64_t total_cost(const Code& code) {
  if (!code.single_codeword()) {
    throw std::invalid_argument("total cost is defined only for one codeword per state");
  }
  std::uint64_t total = 0;
  for (const CodeEntry& a : code.entries()) {
    for (const CodeEntry& b : code.entries()) total += hamming_distance(a.codewords[0], b.codewords[0]);
  }
  return total;
}

Code xor_translate(const Code& code, const BitString& offset) {
  std::vector<CodeEntry> entries = code.entries();
  for (CodeEntry& e : entries) {
    for (BitString& w : e.codewords) w = w ^ offset;
  }
  return Code(code.shape(), code.model(), std::move(entries));
}

Code permute_bits(const Code& code, std::span<const unsigned> perm) {
  const unsigned length = code.shape().bits();
  if (perm.size() != length) throw std::invalid_argument("permutation length mismatch");
  std::vector<bool> hit(length, false);
  for (unsigned p : perm) {
    if (p >= length || hit[p]) throw std::invalid_argument("not a permutation of bit positions");
    hit[p] = true;
  }
  std::vector<CodeEntry> entries = code.entries();
  for (CodeEntry& e : entries) {
    for (BitString& w : e.codewords) {
      std::uint64_t moved = 0;
      for (unsigned i = 0; i < length; ++i) {
        if ((w.bits() >> i) & 1U) moved |= std::uint64_t{1} << perm[i];
      }
      w = BitString(moved, length);
    }
  }
  return Code(code.shape(), code.model(), std::move(entries));
}

std::vector<IsolatedBit> isolated_bits(const Code& code) {
  std::vector<IsolatedBit> out;
  const unsigned length = code.shape().bits();
  const auto& entries = code.entries();
  for (unsigned b = 0; b < length; ++b) {
    // Value of bit b per entry; -1 marks an entry whose codewords disagree.
    std::vector<int> value(entries.size());
    bool any_one = false;
    bool any_zero = false;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      int v = -2;
      for (const BitString& w : entries[i].codewords) {
        const int bit = static_cast<int>((w.bits() >> b) & 1U);
        v = (v == -2 || v == bit) ? bit : -1;
      }
      value[i] = v;
      any_one = any_one || v != 0;
      any_zero = any_zero || v != 1;
    }
    if (!(any_one && any_zero)) {
      out.push_back({b, std::nullopt});
      continue;
    }
    for (unsigned j = 0; j < code.shape().k; ++j) {
      std::map<std::uint64_t, int> by_slot_value;
      bool determined = true;
      for (std::size_t i = 0; i < entries.size() && determined; ++i) {
        if (value[i] < 0) {
          determined = false;
          break;
        }
        auto [it, inserted] = by_slot_value.try_emplace(entries[i].state.slots[j], value[i]);
        determined = inserted || it->second == value[i];
      }
      if (determined) {
        out.push_back({b, j});
        break;
      }
    }
  }
  return out;
}

}  // namespace wem
