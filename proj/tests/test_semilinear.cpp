#include <doctest.h>

#include <algorithm>
#include <iterator>
#include <set>
#include <stdexcept>

#include "oracles.hpp"
#include "support.hpp"
#include "wem/semilinear.hpp"

using wem::BasisMatrix;
using wem::BitString;
using wem::BlockShape;

namespace {

BasisMatrix matrix_of(const BlockShape& shape, std::uint64_t packed) {
  BasisMatrix m{shape, {}};
  const unsigned bits = shape.bits();
  for (std::size_t c = 0; c < (std::size_t{1} << shape.n); ++c) {
    m.columns.emplace_back((packed >> (c * bits)) & wem::low_mask(bits), bits);
  }
  return m;
}

/// Distinct sets of size <= k map to distinct xors, computed bit by bit.
bool oracle_injective(const BasisMatrix& m, unsigned k) {
  std::set<std::string> seen;
  const auto sets = oracle::ranked_objects(m.columns.size(), k, false);
  for (const auto& s : sets) {
    std::string acc(m.shape.bits(), '0');
    for (auto v : s) {
      const std::string col = m.columns[v].to_string();
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = acc[i] == col[i] ? '0' : '1';
    }
    seen.insert(acc);
  }
  return seen.size() == sets.size();
}

}  // namespace

TEST_SUITE("semilinear") {
  TEST_CASE("encode_set examples") {
    const BasisMatrix m{{2, 2},
                        {BitString::parse("0011"), BitString::parse("0101"),
                         BitString::parse("1001"), BitString::parse("1110")}};
    CHECK(wem::encode_set(m, std::vector<std::uint64_t>{}) == BitString::zeros(4));
    CHECK(wem::encode_set(m, std::vector<std::uint64_t>{2}) == m.columns[2]);
    const auto pair = wem::encode_set(m, std::vector<std::uint64_t>{1, 3});
    CHECK(pair == (m.columns[1] ^ m.columns[3]));
    CHECK((pair ^ wem::encode_set(m, std::vector<std::uint64_t>{1})) == m.columns[3]);
    CHECK_THROWS_AS(wem::encode_set(m, std::vector<std::uint64_t>{0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(wem::encode_set(m, std::vector<std::uint64_t>{4}), std::invalid_argument);
    CHECK_THROWS_AS(wem::encode_set(m, std::vector<std::uint64_t>{1, 1}), std::invalid_argument);
  }

  TEST_CASE("verify_matrix examples") {
    const BasisMatrix distinct{{2, 1},
                               {BitString::parse("01"), BitString::parse("10"),
                                BitString::parse("11"), BitString::parse("11")}};
    const auto dup = wem::verify_matrix(distinct, 1);
    CHECK_FALSE(dup.independent);
    CHECK(dup.witness == std::vector<std::uint64_t>{2, 3});

    const BasisMatrix fine{{3, 3},
                           {BitString::parse("000000001"), BitString::parse("000000010"),
                            BitString::parse("000000100"), BitString::parse("000001000"),
                            BitString::parse("000010000"), BitString::parse("000100000"),
                            BitString::parse("001000000"), BitString::parse("010000000")}};
    CHECK(wem::verify_matrix(fine, 1).independent);

    const BasisMatrix unit = BasisMatrix::indicator({2, 2});
    CHECK(wem::verify_matrix(unit, 1).independent);
    CHECK(wem::verify_matrix(unit, 2).independent);
    CHECK_THROWS_AS(BasisMatrix::indicator({3, 2}), std::invalid_argument);

    const BasisMatrix zero{{1, 1}, {BitString::parse("0"), BitString::parse("1")}};
    const auto z = wem::verify_matrix(zero, 1);
    CHECK_FALSE(z.independent);
    CHECK(z.witness == std::vector<std::uint64_t>{0});
  }

  TEST_CASE("verify_matrix budget") {
    BasisMatrix big{{5, 12}, {}};
    for (unsigned c = 0; c < 32; ++c) big.columns.emplace_back(std::uint64_t{1} << c, 60);
    CHECK_THROWS_AS(wem::verify_matrix(big, 12), std::length_error);
  }

  TEST_CASE("verification equals injectivity for every small matrix") {
    for (const BlockShape shape : {BlockShape{1, 1}, BlockShape{1, 2}, BlockShape{2, 1}, BlockShape{2, 2}}) {
      const unsigned total_bits = shape.bits() << shape.n;
      std::uint64_t passing = 0;
      for (std::uint64_t packed = 0; packed < (std::uint64_t{1} << total_bits); ++packed) {
        const BasisMatrix m = matrix_of(shape, packed);
        const auto check = wem::verify_matrix(m, shape.k);
        CHECK(check.independent == oracle_injective(m, shape.k));
        if (!check.independent) {
          std::uint64_t acc = 0;
          for (auto c : check.witness) acc ^= m.columns[c].bits();
          CHECK(acc == 0);
          CHECK(check.witness.size() <= 2 * shape.k);
        } else {
          ++passing;
        }
      }
      CAPTURE(shape.n);
      CAPTURE(shape.k);
      // Frozen counts of passing matrices from the injectivity oracle.
      if (shape.n == 1 && shape.k == 1) CHECK(passing == 0);
      if (shape.n == 1 && shape.k == 2) CHECK(passing == 6);
      if (shape.n == 2 && shape.k == 1) CHECK(passing == 0);
      if (shape.n == 2 && shape.k == 2) CHECK(passing == 20160);
    }
  }

  TEST_CASE("encodings xor over symmetric differences and write cost is a metric") {
    const BlockShape shape{2, 2};
    const auto sets = oracle::ranked_objects(4, 2, false);
    for (std::uint64_t packed = 0; packed < (std::uint64_t{1} << 16); packed += 97) {
      const BasisMatrix m = matrix_of(shape, packed);
      for (const auto& a : sets) {
        for (const auto& b : sets) {
          std::vector<std::uint64_t> diff;
          std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                        std::back_inserter(diff));
          BitString expected = BitString::zeros(4);
          for (auto x : diff) expected = expected ^ m.columns[x];
          CHECK((wem::encode_set(m, a) ^ wem::encode_set(m, b)) == expected);
          if (diff.size() <= 2) {
            CHECK((wem::encode_set(m, a) ^ wem::encode_set(m, b)) == wem::encode_set(m, diff));
          }

          const unsigned ab = wem::write_cost(m, a, b);
          CHECK(ab == wem::write_cost(m, b, a));
          CHECK(ab == expected.weight());
          for (const auto& c : sets) {
            CHECK(wem::write_cost(m, a, c) <= ab + wem::write_cost(m, b, c));
          }
        }
      }
    }
  }

  TEST_CASE("write cost of adding a value is its column weight") {
    const BasisMatrix m{{2, 2},
                        {BitString::parse("0011"), BitString::parse("0101"),
                         BitString::parse("1001"), BitString::parse("1110")}};
    REQUIRE(wem::verify_matrix(m, 2).independent);
    for (const auto& base : oracle::ranked_objects(4, 1, false)) {
      CHECK(wem::write_cost(m, base, base) == 0);
      for (std::uint64_t x = 0; x < 4; ++x) {
        if (!base.empty() && base[0] == x) continue;
        auto grown = base;
        grown.push_back(x);
        CHECK(wem::write_cost(m, base, grown) == m.columns[x].weight());
      }
    }
  }

  TEST_CASE("matrix search") {
    const auto none = wem::search_matrix({1, 1}, 1, 16, 7);
    CHECK(none.passed == 0);
    CHECK_FALSE(none.best.has_value());
    const auto empty = wem::search_matrix({2, 2}, 2, 0, 7);
    CHECK(empty.trials == 0);
    CHECK_FALSE(empty.best.has_value());
    CHECK(empty.pass_rate() == 0.0);

    const auto a = wem::search_matrix({2, 2}, 2, 500, 9);
    const auto b = wem::search_matrix({2, 2}, 2, 500, 9);
    CHECK(a.passed == b.passed);
    REQUIRE(a.best.has_value());
    CHECK(*a.best == *b.best);
    CHECK(a.best_trial == b.best_trial);
    CHECK(wem::verify_matrix(*a.best, 2).independent);
    CHECK(a.best_max_cost <= 4);
  }

  TEST_CASE("semilinear codes of passing matrices are valid set codes") {
    const auto found = wem::search_matrix({2, 2}, 2, 200, 3);
    REQUIRE(found.best.has_value());
    const wem::Code code = wem::semilinear_code(*found.best);
    CHECK(wem::validate(code).ok);
    const auto costs = support::oracle_costs(code);
    CHECK(wem::evaluate(code).max_cost == costs.max);
    const wem::Code unit = wem::semilinear_code(BasisMatrix::indicator({2, 2}));
    CHECK(wem::max_transition_cost(unit) == 1);
  }
}
