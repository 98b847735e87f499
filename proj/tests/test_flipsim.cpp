#include <doctest.h>

#include <random>
#include <set>
#include <stdexcept>

#include "oracles.hpp"
#include "support.hpp"
#include "wem/flipsim.hpp"
#include "wem/report_io.hpp"

using wem::BitString;
using wem::BlockShape;
using wem::BlockState;
using wem::HashTableSim;
using wem::Outcome;

namespace {

const wem::MemoryModel kSet{true, true, wem::Scm::none};

std::shared_ptr<const wem::BlockEncoding> encoding(const std::string& name, const BlockShape& shape) {
  return wem::make_encoding(name, shape, 1);
}

std::multiset<std::uint64_t> contents(const BlockState& s) {
  const auto c = s.contents();
  return {c.begin(), c.end()};
}

/// Replays ops against a table and a plain set, checking every invariant
/// after each step.
void replay(HashTableSim& table, const std::vector<std::pair<bool, std::uint64_t>>& ops) {
  std::set<std::uint64_t> model;
  const std::size_t blocks = table.memory().block_count();
  for (const auto& [insert, key] : ops) {
    std::vector<BitString> before;
    std::vector<BlockState> states_before;
    for (std::size_t b = 0; b < blocks; ++b) {
      before.push_back(table.memory().read(b));
      states_before.push_back(table.block_state(b));
    }
    const std::uint64_t flips_before = table.memory().ledger().total_flips();
    const std::uint64_t writes_before = table.memory().ledger().block_writes();

    const wem::OpResult r = insert ? table.insert(key) : table.erase(key);
    if (insert) {
      if (model.count(key) != 0) {
        CHECK(r.outcome == Outcome::duplicate);
      } else if (model.size() == table.capacity()) {
        CHECK(r.outcome == Outcome::overflow);
      } else {
        CHECK(r.outcome == Outcome::inserted);
        model.insert(key);
      }
    } else {
      CHECK(r.outcome == (model.erase(key) != 0 ? Outcome::deleted : Outcome::absent));
    }

    // Ledger conservation over the observed trajectory.
    std::uint64_t moved = 0;
    unsigned changed_blocks = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
      const BitString after = table.memory().read(b);
      moved += oracle::distance(before[b].to_string(), after.to_string());
      const BlockState state = table.block_state(b);
      CHECK(wem::is_valid(state, table.shape(), kSet));
      if (state != states_before[b]) {
        ++changed_blocks;
        // One element added or removed.
        const auto a = contents(states_before[b]);
        const auto c = contents(state);
        const std::size_t diff = a.size() > c.size() ? a.size() - c.size() : c.size() - a.size();
        CHECK(diff == 1);
        CHECK(std::includes(a.begin(), a.end(), c.begin(), c.end()) !=
              std::includes(c.begin(), c.end(), a.begin(), a.end()));
      }
    }
    CHECK(table.memory().ledger().total_flips() - flips_before == moved);
    CHECK(r.flips == moved);
    CHECK(changed_blocks <= 1);
    CHECK(table.memory().ledger().block_writes() - writes_before == changed_blocks);
    CHECK(table.size() == model.size());

    for (std::uint64_t k = 1; k <= table.shape().max_value(); ++k) {
      CHECK(table.lookup(k) == (model.count(k) != 0));
    }
  }
}

}  // namespace

TEST_SUITE("flipsim") {
  TEST_CASE("memory and ledger") {
    wem::SimMemory memory(2, 6);
    CHECK(memory.write_block(0, BitString::zeros(6)) == 0);
    CHECK(memory.write_block(1, BitString::ones(6)) == 6);
    CHECK(memory.write_block(1, BitString::parse("000111"), "second") == 3);
    CHECK(memory.ledger().total_flips() == 9);
    CHECK(memory.ledger().block_writes() == 3);
    CHECK(memory.ledger().events().back().tag == "second");
    CHECK_THROWS_AS(memory.write_block(2, BitString::zeros(6)), std::out_of_range);
    CHECK_THROWS_AS(memory.write_block(0, BitString::zeros(5)), std::invalid_argument);
    CHECK_THROWS_AS(memory.read(5), std::out_of_range);
  }

  TEST_CASE("encodings round-trip every set state") {
    for (const BlockShape shape : {BlockShape{2, 2}, BlockShape{3, 2}, BlockShape{2, 3}, BlockShape{3, 3}}) {
      for (const std::string name : {"trivial", "indicator", "compressed", "semilinear"}) {
        std::shared_ptr<const wem::BlockEncoding> enc;
        try {
          enc = encoding(name, shape);
        } catch (const std::invalid_argument&) {
          continue;  // does not fit this shape
        }
        CAPTURE(name);
        std::set<BitString> words;
        for (const BlockState& s : wem::enumerate_slot_states(shape, kSet)) {
          const BitString w = enc->encode(s, BitString::zeros(shape.bits()));
          CHECK(enc->decode(w) == s);
          words.insert(w);
        }
        CHECK(words.size() == wem::count_slot_states(shape, kSet));
      }
    }
    CHECK_THROWS_AS(encoding("indicator", {3, 2}), std::invalid_argument);
    CHECK_THROWS_AS(encoding("bogus", {3, 2}), std::invalid_argument);
    CHECK_THROWS_AS(encoding("indicator", {2, 2})->decode(BitString::parse("0111")),
                    std::runtime_error);
    CHECK_THROWS_AS(encoding("trivial", {2, 2})->decode(BitString::parse("0101")),
                    std::runtime_error);
    CHECK_THROWS_AS(encoding("compressed", {2, 2})->decode(BitString::parse("1111")),
                    std::runtime_error);
  }

  TEST_CASE("code encodings pick the nearest codeword") {
    const wem::Code code({1, 2}, wem::MemoryModel{true, true, wem::Scm::write_delete},
                         {{BlockState{{0, 0}}, {BitString::parse("00"), BitString::parse("11")}},
                          {BlockState{{0, 1}}, {BitString::parse("01")}}});
    const auto enc = wem::make_code_encoding(code, "custom");
    CHECK(enc->encode(BlockState{{0, 0}}, BitString::parse("10")) == BitString::parse("00"));
    CHECK(enc->encode(BlockState{{0, 0}}, BitString::parse("01")) == BitString::parse("00"));
    CHECK(enc->encode(BlockState{{0, 0}}, BitString::parse("11")) == BitString::parse("11"));
  }

  TEST_CASE("insert, delete and lookup examples") {
    const BlockShape shape{3, 2};
    HashTableSim trivial(shape, 4, encoding("trivial", shape), 0);
    CHECK_FALSE(trivial.lookup(5));
    const auto first = trivial.insert(5);
    CHECK(first.outcome == Outcome::inserted);
    // [0,5] packs as 000 101.
    CHECK(first.flips == BitString(5, 3).weight());
    CHECK(trivial.lookup(5));
    const auto again = trivial.insert(5);
    CHECK(again.outcome == Outcome::duplicate);
    CHECK(again.flips == 0);
    const auto flips = trivial.memory().ledger().total_flips();
    CHECK(trivial.lookup(5));
    CHECK_FALSE(trivial.lookup(6));
    CHECK(trivial.memory().ledger().total_flips() == flips);
    const auto gone = trivial.erase(6);
    CHECK(gone.outcome == Outcome::absent);
    CHECK(gone.flips == 0);
    CHECK_THROWS_AS(trivial.insert(0), std::invalid_argument);
    CHECK_THROWS_AS(trivial.insert(8), std::invalid_argument);

    const BlockShape small{2, 2};
    HashTableSim indicator(small, 2, encoding("indicator", small), 0);
    const BitString start = indicator.memory().read(wem::home_block(3, 0, 2));
    CHECK(indicator.insert(3).flips == 1);
    CHECK(indicator.insert(1).flips == 1);
    CHECK(indicator.erase(3).flips == 1);
    CHECK(indicator.erase(1).flips == 1);
    CHECK(indicator.memory().ledger().total_flips() == 4);
    CHECK(indicator.memory().read(wem::home_block(3, 0, 2)) == start);
  }

  TEST_CASE("overflow marks keep displaced keys reachable") {
    const BlockShape shape{3, 1};
    HashTableSim table(shape, 2, encoding("trivial", shape), 0);
    std::vector<std::uint64_t> same_home;
    for (std::uint64_t k = 1; k <= 7 && same_home.size() < 2; ++k) {
      if (wem::home_block(k, 0, 2) == 0) same_home.push_back(k);
    }
    REQUIRE(same_home.size() == 2);
    CHECK(table.insert(same_home[0]).block == std::optional<std::size_t>{0});
    CHECK(table.insert(same_home[1]).block == std::optional<std::size_t>{1});
    CHECK(table.overflowed(0));
    CHECK(table.erase(same_home[0]).outcome == Outcome::deleted);
    CHECK(table.lookup(same_home[1]));
    std::uint64_t third = 0;
    for (std::uint64_t k = 1; k <= 7; ++k) {
      if (k != same_home[0] && k != same_home[1]) third = k;
    }
    CHECK(table.insert(third).outcome == Outcome::inserted);
    CHECK(table.insert(same_home[0]).outcome == Outcome::overflow);
  }

  TEST_CASE("lookups agree with a set for every short operation sequence") {
    struct Setup {
      BlockShape shape;
      std::size_t blocks;
      const char* encoding;
    };
    for (const Setup& setup : {Setup{{2, 1}, 2, "trivial"}, Setup{{2, 2}, 1, "indicator"},
                               Setup{{2, 2}, 2, "compressed"}}) {
      const std::uint64_t keys = setup.shape.max_value();
      const std::uint64_t alphabet = 2 * keys;
      const unsigned length = 5;
      std::uint64_t sequences = 1;
      for (unsigned i = 0; i < length; ++i) sequences *= alphabet;
      const auto enc = encoding(setup.encoding, setup.shape);
      for (std::uint64_t code = 0; code < sequences; ++code) {
        std::vector<std::pair<bool, std::uint64_t>> ops;
        for (std::uint64_t c = code, i = 0; i < length; ++i, c /= alphabet) {
          const std::uint64_t symbol = c % alphabet;
          ops.emplace_back(symbol < keys, 1 + symbol % keys);
        }
        HashTableSim table(setup.shape, setup.blocks, enc, 7);
        replay(table, ops);
      }
    }
  }

  TEST_CASE("lookups agree with a set for random operation sequences") {
    std::mt19937_64 rng(77);
    const BlockShape shape{3, 2};
    for (const std::string name : {"trivial", "compressed", "semilinear"}) {
      const auto enc = encoding(name, shape);
      for (int trial = 0; trial < 150; ++trial) {
        std::vector<std::pair<bool, std::uint64_t>> ops;
        for (int i = 0; i < 12; ++i) ops.emplace_back(rng() % 3 != 0, 1 + rng() % 7);
        HashTableSim table(shape, 1 + rng() % 4, enc, rng());
        replay(table, ops);
      }
    }
  }

  TEST_CASE("workload") {
    wem::WorkloadConfig config;
    config.shape = {2, 2};
    config.blocks = 3;
    config.encodings = {"indicator", "trivial"};
    config.operations = 3;
    config.insert_fraction = 1.0;
    const auto report = wem::run_workload(config);
    REQUIRE(report.results.size() == 2);
    // Three distinct keys fill half of the six slots.
    CHECK(report.results[0].final_load_factor == 0.5);
    CHECK(report.results[0].total_flips == config.operations);
    CHECK(report.results[1].total_flips >= config.operations);

    const auto again = wem::run_workload(config);
    CHECK(wem::to_json(again).dump() == wem::to_json(report).dump());

    config.operations = 0;
    const auto nothing = wem::run_workload(config);
    for (const auto& r : nothing.results) {
      CHECK(r.total_flips == 0);
      CHECK(r.ops == 0);
      CHECK(r.flips_per_op == 0.0);
      CHECK(r.final_load_factor == 0.0);
    }

    config.insert_fraction = 1.5;
    CHECK_THROWS_AS(wem::run_workload(config), std::invalid_argument);
    config.insert_fraction = 0.5;
    config.blocks = 0;
    CHECK_THROWS_AS(wem::run_workload(config), std::invalid_argument);
    config.blocks = 4;
    config.shape = {3, 2};
    config.encodings = {"indicator"};
    CHECK_THROWS_AS(wem::run_workload(config), std::invalid_argument);
  }

  TEST_CASE("workload trace") {
    wem::WorkloadConfig config;
    config.operations = 250;
    config.trace_every = 100;
    const auto report = wem::run_workload(config);
    for (const auto& r : report.results) {
      REQUIRE(r.trace.size() == 4);
      CHECK(r.trace[1].ops == 100);
      CHECK(r.trace[3].ops == 250);
      CHECK(r.trace[3].total_flips == r.total_flips);
      CHECK(r.successful_ops == report.results[0].successful_ops);
    }
  }
}
