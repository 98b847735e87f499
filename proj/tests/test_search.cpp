#include <doctest.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "oracles.hpp"
#include "support.hpp"
#include "wem/report_io.hpp"
#include "wem/search.hpp"

using wem::BlockShape;
using wem::MemoryModel;
using wem::Objective;
using wem::Scm;

namespace {

struct Best {
  unsigned max = ~0u;
  std::uint64_t sum = ~std::uint64_t{0};
};

/// Optimum over every assignment of all 2^(nk) strings to the SCM overwrite
/// states, without symmetry reduction.
Best brute_force_optimum(const BlockShape& shape, Objective objective) {
  const oracle::Model model{false, false, 1};
  const auto states = oracle::slot_states(shape.n, shape.k, model);
  std::vector<std::vector<std::size_t>> succ(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (const auto& t : oracle::successors(states[i], shape.n, model)) {
      succ[i].push_back(std::find(states.begin(), states.end(), t) - states.begin());
    }
  }
  std::vector<std::uint64_t> words(states.size());
  std::iota(words.begin(), words.end(), 0);
  Best best;
  do {
    unsigned max = 0;
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < states.size(); ++i) {
      for (std::size_t t : succ[i]) {
        const unsigned d = static_cast<unsigned>(std::popcount(words[i] ^ words[t]));
        max = std::max(max, d);
        sum += d;
      }
    }
    const bool better = objective == Objective::max
                            ? (max < best.max || (max == best.max && sum < best.sum))
                            : (sum < best.sum || (sum == best.sum && max < best.max));
    if (better) best = {max, sum};
  } while (std::next_permutation(words.begin(), words.end()));
  return best;
}

}  // namespace

TEST_SUITE("search") {
  TEST_CASE("objective helpers") {
    CHECK(wem::parse_objective("avg") == Objective::avg);
    CHECK(wem::to_string(Objective::max) == "max");
    CHECK_THROWS_AS(wem::parse_objective("min"), std::invalid_argument);
    wem::CostReport a;
    a.max_cost = 2;
    a.avg_cost = wem::Rational(3, 2);
    wem::CostReport b;
    b.max_cost = 3;
    b.avg_cost = wem::Rational(1, 1);
    CHECK(wem::better(a, b, Objective::max));
    CHECK_FALSE(wem::better(a, b, Objective::avg));
    CHECK(wem::better(b, a, Objective::avg));
    CHECK_FALSE(wem::better(a, a, Objective::max));
    CHECK(wem::improves(a, b, Objective::max));
  }

  TEST_CASE("exhaustive search matches an unreduced brute force") {
    for (const BlockShape shape : {BlockShape{1, 1}, BlockShape{1, 2}, BlockShape{2, 1},
                                   BlockShape{1, 3}, BlockShape{3, 1}}) {
      for (Objective objective : {Objective::max, Objective::avg}) {
        CAPTURE(shape.n);
        CAPTURE(shape.k);
        CAPTURE(wem::to_string(objective));
        const auto report = wem::exhaustive_scm_search(shape, objective);
        const Best best = brute_force_optimum(shape, objective);
        CHECK(report.best_found.max_cost == best.max);
        CHECK(report.best_found.avg_cost ==
              wem::Rational(best.sum, report.best_found.transition_samples));
        CHECK(report.baseline_encoding == "trivial");
        CHECK(wem::validate(report.best_code).ok);
        CHECK(wem::evaluate(report.best_code) == report.best_found);
        CHECK(report.symmetry_check);
        CHECK_FALSE(report.budget_exhausted);
        // Every shape here leaves the trivial code optimal.
        CHECK_FALSE(report.improved);
      }
    }
    CHECK_THROWS_AS(wem::exhaustive_scm_search({2, 2}, Objective::max), std::invalid_argument);
  }

  TEST_CASE("swap search") {
    const MemoryModel scm{false, false, Scm::overwrite};
    const wem::SearchConfig none{5, 0, 1, 0.0};
    const auto idle = wem::swap_search({2, 2}, scm, Objective::max, none);
    CHECK(idle.best_found == idle.baseline);
    CHECK_FALSE(idle.improved);

    const wem::SearchConfig config{5, 3000, 2, 0.0};
    const auto a = wem::swap_search({2, 2}, scm, Objective::avg, config);
    const auto b = wem::swap_search({2, 2}, scm, Objective::avg, config);
    CHECK(wem::to_json(a).dump() == wem::to_json(b).dump());
    CHECK(wem::validate(a.best_code).ok);
    CHECK_FALSE(wem::better(a.baseline, a.best_found, Objective::avg));
    CHECK(a.symmetry_check);

    CHECK_THROWS_AS(wem::swap_search({4, 5}, scm, Objective::max, config), std::invalid_argument);
    CHECK_THROWS_AS(wem::swap_search({2, 2}, scm, Objective::max, {1, 10, 0, 0.0}),
                    std::invalid_argument);
  }

  TEST_CASE("swap search works for order-agnostic models") {
    const MemoryModel loads{true, true, Scm::write_delete};
    const auto r = wem::swap_search({2, 2}, loads, Objective::max, {1, 2000, 1, 0.0});
    CHECK(wem::validate(r.best_code).ok);
    const auto costs = support::oracle_costs(r.best_code);
    CHECK(r.best_found.max_cost == costs.max);
  }

  TEST_CASE("redundant search") {
    const MemoryModel loads{true, true, Scm::write_delete};
    const auto idle = wem::redundant_search({1, 3}, loads, Objective::max, {3, 0, 1, 0.0});
    CHECK(idle.best_found == idle.baseline);
    CHECK(idle.baseline_encoding == "compressed");

    const wem::SearchConfig config{3, 2000, 2, 0.0};
    const auto a = wem::redundant_search({1, 3}, loads, Objective::max, config);
    const auto b = wem::redundant_search({1, 3}, loads, Objective::max, config);
    CHECK(wem::to_json(a).dump() == wem::to_json(b).dump());
    CHECK(wem::validate(a.best_code).ok);
    const auto costs = support::oracle_costs(a.best_code);
    CHECK(a.best_found.max_cost == costs.max);
    CHECK(a.best_found.avg_cost == wem::Rational(costs.sum, costs.samples));

    const auto uoe = wem::redundant_search({2, 2}, MemoryModel{false, true, Scm::overwrite},
                                           Objective::avg, config);
    CHECK(uoe.baseline_encoding == "trivial");
    CHECK(wem::validate(uoe.best_code).ok);

    CHECK_THROWS_AS(wem::redundant_search({2, 2}, MemoryModel{false, false, Scm::overwrite},
                                          Objective::max, config),
                    std::invalid_argument);
  }

  TEST_CASE("wall budget is reported") {
    const MemoryModel scm{false, false, Scm::overwrite};
    const auto r = wem::swap_search({3, 3}, scm, Objective::max, {1, 100000000, 1, 0.05});
    CHECK(r.budget_exhausted);
    CHECK(wem::validate(r.best_code).ok);
  }
}
