#pragma once

// Semi-linear codes: a set of slot values is encoded as the xor of one basis
// codeword (matrix column) per member value.
//
// Sets of at most k values encode injectively whenever no non-empty
// collection of at most 2k columns xors to zero, because two such sets differ
// by a symmetric difference of at most 2k values. Write costs then reduce to
// column weights: adding or deleting x costs weight(c_x), overwriting x by y
// costs weight(c_x ^ c_y).
//
// No compact generator exists for these matrices: a matrix of fewer than 2^n
// columns composed with any per-value map cannot reproduce the one-hot
// selection of a column, so the full 2^n-column basis is stored explicitly.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wem/bitspace.hpp"
#include "wem/blockmodel.hpp"
#include "wem/codecraft.hpp"

namespace wem {

struct BasisMatrix {
  BlockShape shape;
  std::vector<BitString> columns;  // column x encodes value x; 2^n columns of n*k bits

  /// Throws std::invalid_argument on a wrong column count or length.
  void validate() const;

  /// Column x is the unit vector e_x. Needs 2^n <= n*k.
  static BasisMatrix indicator(const BlockShape& shape);

  friend bool operator==(const BasisMatrix&, const BasisMatrix&) = default;
};

/// Xor of the columns indexed by `values` (distinct, each < 2^n, at most k).
BitString encode_set(const BasisMatrix& matrix, std::span<const std::uint64_t> values);

struct MatrixCheck {
  bool independent = true;
  std::vector<std::uint64_t> witness;  // column indices xoring to zero
};

/// Largest number of column subsets verify_matrix will examine.
inline constexpr std::uint64_t kSubsetBudget = std::uint64_t{1} << 26;

/// True iff no non-empty subset of at most 2k columns xors to zero. Throws
/// std::length_error when the subset count exceeds kSubsetBudget.
MatrixCheck verify_matrix(const BasisMatrix& matrix, unsigned k);

/// Distance between the encodings of two sets.
unsigned write_cost(const BasisMatrix& matrix, std::span<const std::uint64_t> from,
                    std::span<const std::uint64_t> to);

struct MatrixSearchReport {
  BlockShape shape;
  unsigned k = 1;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t passed = 0;
  std::optional<BasisMatrix> best;
  std::optional<std::uint64_t> best_trial;
  unsigned best_max_cost = 0;   // largest column weight
  Rational best_avg_cost;       // mean column weight

  double pass_rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(passed) / static_cast<double>(trials);
  }
};

/// Samples `trials` uniformly random matrices from a seeded mt19937_64 and
/// keeps the passing one with the smallest (max, mean) column weight; ties go
/// to the earlier trial.
MatrixSearchReport search_matrix(const BlockShape& shape, unsigned k, std::uint64_t trials,
                                 std::uint64_t seed);

/// Set-model code whose codewords are encode_set of each state's contents.
/// The result is only injective when the matrix passes verify_matrix.
Code semilinear_code(const BasisMatrix& matrix, Scm scm = Scm::write_delete);

}  // namespace wem
