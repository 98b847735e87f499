#include "wem/search.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <numeric>
#include <random>
#include <stdexcept>

#include "wem/setcodec.hpp"

namespace wem {

namespace {

constexpr unsigned kMaxSearchBits = 16;

class Deadline {
 public:
  explicit Deadline(double seconds)
      : limit_(seconds), start_(std::chrono::steady_clock::now()) {}
  bool passed() const {
    if (limit_ <= 0.0) return false;
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
    return elapsed.count() > limit_;
  }

 private:
  double limit_;
  std::chrono::steady_clock::time_point start_;
};

std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

Code code_from(const TransitionGraph& graph, const Assignment& assignment) {
  std::vector<CodeEntry> entries;
  entries.reserve(graph.size());
  for (std::size_t i = 0; i < graph.size(); ++i) {
    CodeEntry e{graph.states()[i], {}};
    for (std::uint64_t w : assignment[i]) e.codewords.emplace_back(w, graph.shape().bits());
    entries.push_back(std::move(e));
  }
  return Code(graph.shape(), graph.model(), std::move(entries));
}

bool symmetry_holds(const Code& code, const CostReport& expected) {
  const unsigned length = code.shape().bits();
  std::vector<unsigned> rotate(length);
  for (unsigned i = 0; i < length; ++i) rotate[i] = (i + 1) % length;
  const Code moved = permute_bits(xor_translate(code, BitString::ones(length)), rotate);
  return evaluate(moved) == expected;
}

void finish(SearchReport& report, const Code& baseline_code) {
  report.best_found = evaluate(report.best_code);
  report.improved = improves(report.best_found, report.baseline, report.objective);
  report.symmetry_check = symmetry_holds(report.best_code, report.best_found);
  report.baseline_isolated_bits = isolated_bits(baseline_code);
  report.best_isolated_bits = isolated_bits(report.best_code);
}

void require_searchable(const BlockShape& shape) {
  shape.validate();
  if (shape.bits() > kMaxSearchBits) {
    throw std::invalid_argument("code search is limited to n*k <= 16 (got " +
                                std::to_string(shape.bits()) + ")");
  }
}

// Histogram of single-codeword transition costs over ordered edges, updated
// incrementally as codewords of individual states change.
class SwapState {
 public:
  SwapState(const TransitionGraph& graph, std::vector<std::uint64_t> pool)
      : graph_(graph), pool_(std::move(pool)) {
    for (std::size_t i = 0; i < graph_.size(); ++i) {
      graph_.for_each_successor(i, [&](std::size_t t) { add(cost(i, t), 1); });
    }
  }

  CostReport report() const {
    CostReport r;
    for (unsigned c = 0; c < histogram_.size(); ++c) {
      if (histogram_[c] != 0) r.max_cost = c;
    }
    r.avg_cost = Rational(sum_, samples_);
    r.codeword_count = graph_.size();
    r.transition_samples = samples_;
    return r;
  }

  // Exchanges the bit strings at pool positions a (a state) and b.
  void swap(std::size_t a, std::size_t b) {
    const bool b_is_state = b < graph_.size();
    touch(a, b_is_state ? b : a, -1);
    if (b_is_state) touch(b, a, -1);
    std::swap(pool_[a], pool_[b]);
    touch(a, b_is_state ? b : a, 1);
    if (b_is_state) touch(b, a, 1);
  }

  const std::vector<std::uint64_t>& pool() const { return pool_; }

  Assignment assignment() const {
    Assignment out(graph_.size());
    for (std::size_t i = 0; i < graph_.size(); ++i) out[i] = {pool_[i]};
    return out;
  }

 private:
  unsigned cost(std::size_t a, std::size_t b) const {
    return static_cast<unsigned>(std::popcount(pool_[a] ^ pool_[b]));
  }

  void add(unsigned c, int sign) {
    if (sign > 0) {
      ++histogram_[c];
      sum_ += c;
      ++samples_;
    } else {
      --histogram_[c];
      sum_ -= c;
      --samples_;
    }
  }

  // Both directions of every edge at `state`, skipping the edge to `skip`
  // (already handled from the other endpoint).
  void touch(std::size_t state, std::size_t skip, int sign) {
    graph_.for_each_successor(state, [&](std::size_t t) {
      if (t == skip && skip != state) return;
      add(cost(state, t), sign);
      add(cost(t, state), sign);
    });
  }

  const TransitionGraph& graph_;
  std::vector<std::uint64_t> pool_;
  std::array<std::uint64_t, kMaxBits + 1> histogram_{};
  std::uint64_t sum_ = 0;
  std::uint64_t samples_ = 0;
};

}  // namespace

std::string_view to_string(Objective objective) {
  return objective == Objective::max ? "max" : "avg";
}

Objective parse_objective(std::string_view text) {
  if (text == "max") return Objective::max;
  if (text == "avg") return Objective::avg;
  throw std::invalid_argument("objective must be max or avg, got \"" + std::string(text) + "\"");
}

bool better(const CostReport& a, const CostReport& b, Objective objective) {
  if (objective == Objective::max) {
    if (a.max_cost != b.max_cost) return a.max_cost < b.max_cost;
    return a.avg_cost < b.avg_cost;
  }
  if (a.avg_cost != b.avg_cost) return a.avg_cost < b.avg_cost;
  return a.max_cost < b.max_cost;
}

bool improves(const CostReport& candidate, const CostReport& baseline, Objective objective) {
  return objective == Objective::max ? candidate.max_cost < baseline.max_cost
                                     : candidate.avg_cost < baseline.avg_cost;
}

SearchReport exhaustive_scm_search(const BlockShape& shape, Objective objective) {
  shape.validate();
  if (shape.bits() > 3) {
    throw std::invalid_argument("exhaustive search is limited to n*k <= 3; use swap search for n=" +
                                std::to_string(shape.n) + ", k=" + std::to_string(shape.k));
  }
  const MemoryModel model{false, false, Scm::overwrite};
  const TransitionGraph graph(shape, model);
  const Code baseline_code = trivial_code(shape, model);

  SearchReport report;
  report.engine = "exhaustive";
  report.shape = shape;
  report.model = model;
  report.objective = objective;
  report.baseline_encoding = "trivial";
  report.baseline = evaluate(baseline_code);

  const unsigned length = shape.bits();
  const std::size_t size = graph.size();
  // Translation fixes the codeword of state 0 to zero; the remaining words
  // run through every ordering.
  std::vector<std::uint64_t> words(size);
  std::iota(words.begin(), words.end(), 0);

  std::vector<std::vector<unsigned>> bit_perms;
  std::vector<unsigned> perm(length);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bit_perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  auto permuted = [&](std::uint64_t w, const std::vector<unsigned>& p) {
    std::uint64_t out = 0;
    for (unsigned i = 0; i < length; ++i) {
      if ((w >> i) & 1U) out |= std::uint64_t{1} << p[i];
    }
    return out;
  };
  // Keeps only the lexicographically smallest member of each bit-permutation
  // orbit.
  auto orbit_minimal = [&](const std::vector<std::uint64_t>& code) {
    for (std::size_t p = 1; p < bit_perms.size(); ++p) {
      for (std::size_t i = 0; i < size; ++i) {
        const std::uint64_t image = permuted(code[i], bit_perms[p]);
        if (image < code[i]) return false;
        if (image > code[i]) break;
      }
    }
    return true;
  };

  Assignment assignment(size);
  std::optional<CostReport> best;
  std::vector<std::uint64_t> best_words;
  do {
    if (!orbit_minimal(words)) continue;
    for (std::size_t i = 0; i < size; ++i) assignment[i] = {words[i]};
    const CostReport cost = evaluate(graph, assignment);
    ++report.codes_examined;
    if (!best || better(cost, *best, objective)) {
      best = cost;
      best_words = words;
    }
  } while (std::next_permutation(words.begin() + 1, words.end()));

  for (std::size_t i = 0; i < size; ++i) assignment[i] = {best_words[i]};
  report.best_code = code_from(graph, assignment);
  finish(report, baseline_code);
  return report;
}

SearchReport swap_search(const BlockShape& shape, const MemoryModel& model, Objective objective,
                         const SearchConfig& config) {
  require_searchable(shape);
  if (config.restarts == 0) throw std::invalid_argument("swap search needs at least one restart");
  const TransitionGraph graph(shape, model);
  const Code baseline_code = trivial_code(shape, model);

  SearchReport report;
  report.engine = "swap";
  report.shape = shape;
  report.model = model;
  report.objective = objective;
  report.config = config;
  report.baseline_encoding = "trivial";
  report.baseline = evaluate(baseline_code);

  // Pool positions [0, states) hold the assigned codewords; the rest are the
  // unused bit strings, so swaps may also move a state onto a spare string.
  const std::uint64_t universe = std::uint64_t{1} << shape.bits();
  std::vector<std::uint64_t> trivial_pool;
  trivial_pool.reserve(universe);
  std::vector<bool> used(universe, false);
  for (const BlockState& s : graph.states()) {
    const std::uint64_t w = pack(s, shape).bits();
    trivial_pool.push_back(w);
    used[w] = true;
  }
  for (std::uint64_t w = 0; w < universe; ++w) {
    if (!used[w]) trivial_pool.push_back(w);
  }

  std::mt19937_64 rng(config.seed);
  const Deadline deadline(config.wall_budget_s);
  std::optional<CostReport> best;
  std::vector<std::uint64_t> best_pool;
  const std::size_t states = graph.size();

  for (unsigned restart = 0; restart < config.restarts && !report.budget_exhausted; ++restart) {
    std::vector<std::uint64_t> pool = trivial_pool;
    if (restart > 0) {
      for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[uniform(rng, i)]);
    }
    SwapState walk(graph, std::move(pool));
    CostReport current = walk.report();
    ++report.codes_examined;
    if (universe > 1) {
      for (std::uint64_t it = 0; it < config.iterations; ++it) {
        if (deadline.passed()) {
          report.budget_exhausted = true;
          break;
        }
        const std::size_t a = uniform(rng, states);
        std::size_t b = uniform(rng, universe - 1);
        if (b >= a) ++b;
        walk.swap(a, b);
        const CostReport proposed = walk.report();
        ++report.codes_examined;
        if (better(proposed, current, objective)) {
          current = proposed;
        } else {
          walk.swap(a, b);
        }
      }
    }
    if (!best || better(current, *best, objective)) {
      best = current;
      best_pool = walk.pool();
    }
  }

  Assignment assignment(states);
  for (std::size_t i = 0; i < states; ++i) assignment[i] = {best_pool[i]};
  report.best_code = code_from(graph, assignment);
  finish(report, baseline_code);
  return report;
}

SearchReport redundant_search(const BlockShape& shape, const MemoryModel& model,
                              Objective objective, const SearchConfig& config) {
  require_searchable(shape);
  const Count universe_count = pow2(shape.bits());
  if (count_slot_states(shape, model) >= universe_count) {
    throw std::invalid_argument(
        "model " + model.to_string() + " uses every bit string as a state; extra codewords "
        "need redundancy from order agnosticism and/or uniqueness of elements");
  }
  const TransitionGraph graph(shape, model);

  SearchReport report;
  report.engine = "redundant";
  report.shape = shape;
  report.model = model;
  report.objective = objective;
  report.config = config;

  Code baseline_code;
  if (model.loa && RankedCodec(shape, model).fits()) {
    baseline_code = compressed_code(shape, model);
    report.baseline_encoding = "compressed";
  } else {
    baseline_code = trivial_code(shape, model);
    report.baseline_encoding = "trivial";
  }
  report.baseline = evaluate(baseline_code);

  Assignment assignment = align(baseline_code, graph);
  const auto universe = static_cast<std::uint64_t>(universe_count);
  std::vector<bool> used(universe, false);
  for (const auto& words : assignment) {
    for (std::uint64_t w : words) used[w] = true;
  }
  // Unused strings kept in a vector with a position index for O(1) pick/remove.
  std::vector<std::uint64_t> spare;
  std::vector<std::size_t> spare_pos(universe, 0);
  for (std::uint64_t w = 0; w < universe; ++w) {
    if (!used[w]) {
      spare_pos[w] = spare.size();
      spare.push_back(w);
    }
  }
  auto take_spare = [&](std::size_t pos) {
    const std::uint64_t w = spare[pos];
    spare[pos] = spare.back();
    spare_pos[spare[pos]] = pos;
    spare.pop_back();
    return w;
  };
  auto give_spare = [&](std::uint64_t w) {
    spare_pos[w] = spare.size();
    spare.push_back(w);
  };

  std::mt19937_64 rng(config.seed);
  const Deadline deadline(config.wall_budget_s);
  CostReport current = report.baseline;
  const std::size_t states = graph.size();
  ++report.codes_examined;

  for (std::uint64_t it = 0; it < config.iterations; ++it) {
    if (deadline.passed()) {
      report.budget_exhausted = true;
      break;
    }
    const std::uint64_t move = uniform(rng, 4);
    const std::size_t target = uniform(rng, states);
    if (move < 2) {
      // Give a spare string to a state.
      if (spare.empty()) continue;
      const std::size_t pos = uniform(rng, spare.size());
      const std::uint64_t w = spare[pos];
      assignment[target].push_back(w);
      const CostReport proposed = evaluate(graph, assignment);
      ++report.codes_examined;
      if (better(proposed, current, objective)) {
        current = proposed;
        take_spare(pos);
      } else {
        assignment[target].pop_back();
      }
      continue;
    }
    // Release or relocate one extra codeword of a state holding several.
    if (assignment[target].size() < 2) continue;
    const std::size_t pick = uniform(rng, assignment[target].size());
    const std::uint64_t w = assignment[target][pick];
    std::vector<std::uint64_t> before = assignment[target];
    assignment[target].erase(assignment[target].begin() + static_cast<std::ptrdiff_t>(pick));
    std::size_t receiver = states;
    if (move == 3) {
      receiver = uniform(rng, states);
      if (receiver == target) receiver = (receiver + 1) % states;
      assignment[receiver].push_back(w);
    }
    const CostReport proposed = evaluate(graph, assignment);
    ++report.codes_examined;
    if (better(proposed, current, objective)) {
      current = proposed;
      if (receiver == states) give_spare(w);
    } else {
      if (receiver != states) assignment[receiver].pop_back();
      assignment[target] = std::move(before);
    }
  }

  report.best_code = code_from(graph, assignment);
  finish(report, baseline_code);
  return report;
}

}  // namespace wem
