#include "wem/semilinear.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

namespace wem {

void BasisMatrix::validate() const {
  shape.validate();
  if (shape.n >= 32 || columns.size() != (std::size_t{1} << shape.n)) {
    throw std::invalid_argument("basis matrix needs 2^n = " + wem::to_string(shape.alphabet_size()) +
                                " columns, got " + std::to_string(columns.size()));
  }
  for (const BitString& c : columns) {
    if (c.length() != shape.bits()) {
      throw std::invalid_argument("basis column " + c.to_string() + " is not " +
                                  std::to_string(shape.bits()) + " bits long");
    }
  }
}

BasisMatrix BasisMatrix::indicator(const BlockShape& shape) {
  shape.validate();
  if (shape.alphabet_size() > shape.bits()) {
    throw std::invalid_argument("indicator basis needs 2^n <= n*k");
  }
  BasisMatrix m{shape, {}};
  for (std::uint64_t x = 0; x <= shape.max_value(); ++x) {
    m.columns.emplace_back(std::uint64_t{1} << x, shape.bits());
  }
  return m;
}

BitString encode_set(const BasisMatrix& matrix, std::span<const std::uint64_t> values) {
  matrix.validate();
  if (values.size() > matrix.shape.k) {
    throw std::invalid_argument("set of " + std::to_string(values.size()) +
                                " values exceeds k=" + std::to_string(matrix.shape.k));
  }
  std::vector<std::uint64_t> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("set values must be distinct");
  }
  std::uint64_t word = 0;
  for (std::uint64_t v : sorted) {
    if (v >= matrix.columns.size()) {
      throw std::invalid_argument("value " + std::to_string(v) + " has no basis column");
    }
    word ^= matrix.columns[v].bits();
  }
  return BitString(word, matrix.shape.bits());
}

MatrixCheck verify_matrix(const BasisMatrix& matrix, unsigned k) {
  matrix.validate();
  const std::size_t m = matrix.columns.size();
  const unsigned max_size = static_cast<unsigned>(std::min<std::size_t>(2 * std::size_t{k}, m));
  Count budget = 0;
  for (unsigned j = 1; j <= max_size; ++j) budget = checked_add(budget, binomial(m, j));
  if (budget > kSubsetBudget) {
    throw std::length_error("verifying " + std::to_string(m) + " columns against subsets of up to " +
                            std::to_string(2 * k) + " needs " + wem::to_string(budget) +
                            " subset checks, above 2^26; use smaller n or k");
  }

  std::vector<std::uint64_t> chosen;
  MatrixCheck result;
  // Iterative deepening over subset size with a running xor keeps the
  // witness minimal.
  for (unsigned depth = 1; depth <= max_size; ++depth) {
    std::function<bool(std::size_t, std::uint64_t)> search = [&](std::size_t next,
                                                                 std::uint64_t acc) {
      for (std::size_t i = next; i < m; ++i) {
        const std::uint64_t x = acc ^ matrix.columns[i].bits();
        chosen.push_back(i);
        if (chosen.size() == depth) {
          if (x == 0) return true;
        } else if (search(i + 1, x)) {
          return true;
        }
        chosen.pop_back();
      }
      return false;
    };
    if (search(0, 0)) {
      result.independent = false;
      result.witness.assign(chosen.begin(), chosen.end());
      return result;
    }
  }
  return result;
}

unsigned write_cost(const BasisMatrix& matrix, std::span<const std::uint64_t> from,
                    std::span<const std::uint64_t> to) {
  return hamming_distance(encode_set(matrix, from), encode_set(matrix, to));
}

MatrixSearchReport search_matrix(const BlockShape& shape, unsigned k, std::uint64_t trials,
                                 std::uint64_t seed) {
  shape.validate();
  if (shape.n >= 32) throw std::invalid_argument("basis matrices need n < 32");
  MatrixSearchReport report;
  report.shape = shape;
  report.k = k;
  report.trials = trials;
  report.seed = seed;

  std::mt19937_64 rng(seed);
  const std::size_t columns = std::size_t{1} << shape.n;
  const std::uint64_t mask = low_mask(shape.bits());
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    BasisMatrix candidate{shape, {}};
    candidate.columns.reserve(columns);
    for (std::size_t c = 0; c < columns; ++c) candidate.columns.emplace_back(rng() & mask, shape.bits());
    if (!verify_matrix(candidate, k).independent) continue;
    ++report.passed;
    unsigned max_cost = 0;
    std::uint64_t sum = 0;
    for (const BitString& c : candidate.columns) {
      max_cost = std::max(max_cost, c.weight());
      sum += c.weight();
    }
    const Rational avg(sum, columns);
    if (!report.best || max_cost < report.best_max_cost ||
        (max_cost == report.best_max_cost && avg < report.best_avg_cost)) {
      report.best = std::move(candidate);
      report.best_trial = trial;
      report.best_max_cost = max_cost;
      report.best_avg_cost = avg;
    }
  }
  return report;
}

Code semilinear_code(const BasisMatrix& matrix, Scm scm) {
  matrix.validate();
  const MemoryModel model{true, true, scm};
  std::vector<CodeEntry> entries;
  for (BlockState& s : enumerate_slot_states(matrix.shape, model)) {
    const std::vector<std::uint64_t> contents = s.contents();
    BitString w = encode_set(matrix, contents);
    entries.push_back({std::move(s), {w}});
  }
  return Code(matrix.shape, model, std::move(entries));
}

}  // namespace wem
