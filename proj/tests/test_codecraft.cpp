#include <doctest.h>

#include <numeric>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "support.hpp"
#include "wem/codecraft.hpp"
#include "wem/setcodec.hpp"

using wem::BitString;
using wem::BlockShape;
using wem::BlockState;
using wem::Code;
using wem::CodeEntry;
using wem::MemoryModel;
using wem::Scm;

namespace {

const MemoryModel kGmm{false, false, Scm::none};
const MemoryModel kScm{false, false, Scm::overwrite};
const MemoryModel kLoads{true, true, Scm::write_delete};

void check_against_oracle(const Code& code) {
  CAPTURE(code.model().to_string());
  CAPTURE(code.shape().n);
  CAPTURE(code.shape().k);
  const oracle::Costs expected = support::oracle_costs(code);
  const wem::CostReport got = wem::evaluate(code);
  CHECK(got.max_cost == expected.max);
  CHECK(got.transition_samples == expected.samples);
  CHECK(got.avg_cost == wem::Rational(expected.sum, expected.samples));
}

std::uint64_t oracle_total(const Code& code) {
  std::vector<std::string> words;
  for (const CodeEntry& e : code.entries()) words.push_back(e.codewords.front().to_string());
  std::uint64_t total = 0;
  for (const auto& a : words) {
    for (const auto& b : words) total += oracle::distance(a, b);
  }
  return total;
}

}  // namespace

TEST_SUITE("codecraft") {
  TEST_CASE("trivial code concatenates slots") {
    const Code code = wem::trivial_code({2, 2}, kGmm);
    CHECK(code.encode(BlockState{{0, 3}})->front().to_string() == "0011");
    CHECK(code.decode(BitString::parse("0011")) == BlockState{{0, 3}});
    CHECK(code.codeword_count() == 16);
    CHECK(code.single_codeword());
    CHECK(wem::validate(code).ok);
  }

  TEST_CASE("indicator code") {
    const Code code = wem::indicator_code({2, 2});
    CHECK(code.encode(BlockState{{1, 3}})->front().to_string() == "0101");
    CHECK(code.encode(BlockState{{0, 0}})->front().to_string() == "0000");
    CHECK(code.decode(BitString::parse("0101")) == BlockState{{1, 3}});
    CHECK(wem::validate(code).ok);
    CHECK_THROWS_AS(wem::indicator_code({3, 2}), std::invalid_argument);
  }

  TEST_CASE("validation failures carry witnesses") {
    const BlockShape shape{1, 1};
    const Code shared(shape, kGmm,
                      {{BlockState{{0}}, {BitString::parse("0")}},
                       {BlockState{{1}}, {BitString::parse("0")}}});
    const auto v1 = wem::validate(shared);
    CHECK_FALSE(v1.ok);
    CHECK(v1.violation == "codeword shared by two states");
    CHECK(v1.witness == std::vector<std::string>{"[0]", "[1]", "0"});

    const Code missing(shape, kGmm, {{BlockState{{0}}, {BitString::parse("0")}}});
    const auto v2 = wem::validate(missing);
    CHECK_FALSE(v2.ok);
    CHECK(v2.violation == "valid state has no codeword");
    CHECK(v2.witness == std::vector<std::string>{"[1]"});

    const Code unsorted({2, 2}, MemoryModel{true, false, Scm::none},
                        {{BlockState{{2, 1}}, {BitString::parse("1001")}}});
    CHECK(wem::validate(unsorted).violation == "state is not canonical under loa");

    const Code empty_set(shape, kGmm, {{BlockState{{0}}, {}}, {BlockState{{1}}, {BitString::parse("1")}}});
    CHECK(wem::validate(empty_set).violation == "state has no codeword");
  }

  TEST_CASE("cost examples") {
    for (unsigned n = 1; n <= 3; ++n) {
      for (unsigned k = 1; k <= 3; ++k) {
        if (n * k > 6) continue;
        CHECK(wem::max_transition_cost(wem::trivial_code({n, k}, kScm)) == n);
        CHECK(wem::max_transition_cost(wem::trivial_code({n, k}, kGmm)) == n * k);
      }
    }
    for (unsigned n = 1; n <= 3; ++n) {
      for (unsigned k = 1; k <= 3; ++k) {
        if ((1u << n) - 1 > n * k) continue;
        const Code ind = wem::indicator_code({n, k});
        CHECK(wem::max_transition_cost(ind) == 1);
        CHECK(wem::avg_transition_cost(ind) == wem::Rational(1, 1));
      }
    }
    CHECK(wem::avg_transition_cost(wem::trivial_code({1, 1}, kGmm)) == wem::Rational(1, 1));
    CHECK(wem::avg_transition_cost(wem::trivial_code({2, 1}, kScm)) == wem::Rational(4, 3));
  }

  TEST_CASE("total cost") {
    CHECK(wem::total_cost(wem::trivial_code({1, 1}, kGmm)) == 2);
    CHECK(wem::total_cost(wem::trivial_code({1, 2}, kGmm)) == 16);
    for (const MemoryModel& model : MemoryModel::all()) {
      const Code code = wem::trivial_code({2, 2}, model);
      CHECK(wem::total_cost(code) == oracle_total(code));
      CHECK(wem::evaluate(code).total_cost == oracle_total(code));
      const Code flipped = wem::xor_translate(code, BitString::ones(4));
      CHECK(wem::total_cost(flipped) == wem::total_cost(code));
    }
  }

  TEST_CASE("costs agree with the brute-force oracle for every model") {
    for (const MemoryModel& model : MemoryModel::all()) {
      for (unsigned n = 1; n <= 3; ++n) {
        for (unsigned k = 1; k <= 3; ++k) {
          if (n * k > 6) continue;
          check_against_oracle(wem::trivial_code({n, k}, model));
          if (model.loa && wem::RankedCodec({n, k}, model).fits()) {
            check_against_oracle(wem::compressed_code({n, k}, model));
          }
        }
      }
    }
    for (Scm scm : {Scm::none, Scm::overwrite, Scm::write_delete}) {
      check_against_oracle(wem::indicator_code({2, 2}, scm));
      check_against_oracle(wem::indicator_code({2, 3}, scm));
    }
  }

  TEST_CASE("several codewords per state use the nearest target codeword") {
    // State [3] is missing, so evaluation has nothing to aim at.
    const Code incomplete({2, 1}, kScm,
                          {{BlockState{{0}}, {BitString::parse("00"), BitString::parse("11")}},
                           {BlockState{{1}}, {BitString::parse("01")}},
                           {BlockState{{2}}, {BitString::parse("10")}}});
    CHECK_FALSE(wem::validate(incomplete).ok);
    CHECK_THROWS_AS(wem::evaluate(incomplete), std::invalid_argument);

    // Three LOA states spread over all four strings.
    const Code multi({1, 2}, MemoryModel{true, false, Scm::overwrite},
                     {{BlockState{{0, 0}}, {BitString::parse("00")}},
                      {BlockState{{0, 1}}, {BitString::parse("01"), BitString::parse("10")}},
                      {BlockState{{1, 1}}, {BitString::parse("11")}}});
    REQUIRE(wem::validate(multi).ok);
    check_against_oracle(multi);
    const auto report = wem::evaluate(multi);
    CHECK(report.max_cost == 1);
    CHECK_FALSE(report.total_cost.has_value());
    CHECK(report.codeword_count == 4);
    CHECK_THROWS_AS(wem::total_cost(multi), std::invalid_argument);
  }

  TEST_CASE("xor translation and bit permutation preserve every metric") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
      const auto models = MemoryModel::all();
      const MemoryModel model = models[rng() % models.size()];
      const BlockShape shape{1 + static_cast<unsigned>(rng() % 2), 1 + static_cast<unsigned>(rng() % 3)};
      const Code base = wem::trivial_code(shape, model);
      const BitString offset(rng() & wem::low_mask(shape.bits()), shape.bits());
      std::vector<unsigned> perm(shape.bits());
      std::iota(perm.begin(), perm.end(), 0u);
      std::shuffle(perm.begin(), perm.end(), rng);
      const Code moved = wem::permute_bits(wem::xor_translate(base, offset), perm);
      CHECK(wem::validate(moved).ok);
      CHECK(wem::evaluate(moved) == wem::evaluate(base));
    }
    const Code base = wem::trivial_code({2, 2}, kGmm);
    const std::vector<unsigned> bad{0, 0, 1, 2};
    CHECK_THROWS_AS(wem::permute_bits(base, bad), std::invalid_argument);
  }

  TEST_CASE("isolated bits") {
    const auto bits = wem::isolated_bits(wem::trivial_code({2, 2}, kGmm));
    REQUIRE(bits.size() == 4);
    CHECK(bits[0] == wem::IsolatedBit{0, 1u});
    CHECK(bits[1] == wem::IsolatedBit{1, 1u});
    CHECK(bits[2] == wem::IsolatedBit{2, 0u});
    CHECK(bits[3] == wem::IsolatedBit{3, 0u});
    // Value 3 sorts last, so its bit follows slot 1 alone; bit 3 is unused.
    CHECK(wem::isolated_bits(wem::indicator_code({2, 2})) ==
          std::vector<wem::IsolatedBit>{{2, 1u}, {3, std::nullopt}});
  }

  TEST_CASE("transition graph") {
    const wem::TransitionGraph graph({2, 2}, kLoads);
    CHECK(graph.size() == 7);
    const auto i = graph.index_of(BlockState{{1, 2}});
    REQUIRE(i.has_value());
    CHECK(graph.out_degree(*i) == 2);
    const wem::TransitionGraph complete({2, 2}, kGmm);
    CHECK(complete.complete());
    CHECK(complete.out_degree(0) == 15);
    CHECK_THROWS_AS(wem::TransitionGraph({9, 2}, kGmm), std::length_error);
  }
}
