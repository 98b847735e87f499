#include "wem/flipsim.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "wem/setcodec.hpp"

namespace wem {

namespace {

const MemoryModel kSetModel{true, true, Scm::write_delete};

BlockState state_from_contents(const std::vector<std::uint64_t>& contents, const BlockShape& shape) {
  BlockState s;
  s.slots.assign(shape.k - contents.size(), 0);
  s.slots.insert(s.slots.end(), contents.begin(), contents.end());
  std::sort(s.slots.begin(), s.slots.end());
  return s;
}

void require_set_state(const BlockState& state, const BlockShape& shape) {
  if (!is_valid(state, shape, kSetModel) || !is_canonical(state, kSetModel)) {
    throw std::invalid_argument("block state " + state.to_string() +
                                " is not a canonical set state");
  }
}

class TrivialEncoding final : public BlockEncoding {
 public:
  explicit TrivialEncoding(const BlockShape& shape) : shape_(shape) { shape_.validate(); }
  std::string name() const override { return "trivial"; }
  const BlockShape& shape() const override { return shape_; }
  BitString encode(const BlockState& state, const BitString&) const override {
    require_set_state(state, shape_);
    return pack(state, shape_);
  }
  BlockState decode(const BitString& word) const override {
    BlockState s = unpack(word, shape_);
    if (!is_valid(s, shape_, kSetModel) || !is_canonical(s, kSetModel)) {
      throw std::runtime_error("word " + word.to_string() + " is not a trivial codeword");
    }
    return s;
  }

 private:
  BlockShape shape_;
};

class IndicatorEncoding final : public BlockEncoding {
 public:
  explicit IndicatorEncoding(const BlockShape& shape) : shape_(shape) {
    shape_.validate();
    if (shape_.alphabet_size() - 1 > shape_.bits()) {
      throw std::invalid_argument("indicator encoding needs 2^n - 1 <= n*k");
    }
  }
  std::string name() const override { return "indicator"; }
  const BlockShape& shape() const override { return shape_; }
  BitString encode(const BlockState& state, const BitString&) const override {
    require_set_state(state, shape_);
    std::uint64_t bits = 0;
    for (std::uint64_t v : state.slots) {
      if (v != 0) bits |= std::uint64_t{1} << (v - 1);
    }
    return BitString(bits, shape_.bits());
  }
  BlockState decode(const BitString& word) const override {
    std::vector<std::uint64_t> contents;
    for (unsigned i = 0; i < word.length(); ++i) {
      if (word.test(i)) contents.push_back(i + 1);
    }
    if (contents.size() > shape_.k || (!contents.empty() && contents.back() > shape_.max_value())) {
      throw std::runtime_error("word " + word.to_string() + " is not an indicator codeword");
    }
    return state_from_contents(contents, shape_);
  }

 private:
  BlockShape shape_;
};

class CompressedEncoding final : public BlockEncoding {
 public:
  explicit CompressedEncoding(const BlockShape& shape)
      : shape_(shape), codec_(shape, MemoryModel{true, true, Scm::none}) {
    if (!codec_.fits()) {
      throw std::invalid_argument("set ranks need " + std::to_string(codec_.payload_bits()) +
                                  " bits, more than the " + std::to_string(shape.bits()) +
                                  "-bit block");
    }
  }
  std::string name() const override { return "compressed"; }
  const BlockShape& shape() const override { return shape_; }
  BitString encode(const BlockState& state, const BitString&) const override {
    require_set_state(state, shape_);
    return BitString(static_cast<std::uint64_t>(codec_.rank_state(state)), shape_.bits());
  }
  BlockState decode(const BitString& word) const override {
    if (Count{word.bits()} >= codec_.total()) {
      throw std::runtime_error("word " + word.to_string() + " is beyond the rank range");
    }
    const std::vector<std::uint64_t> contents = codec_.unrank(word.bits());
    if (!contents.empty() && contents.front() == 0) {
      throw std::runtime_error("word " + word.to_string() + " ranks a set holding NULL");
    }
    return state_from_contents(contents, shape_);
  }

 private:
  BlockShape shape_;
  RankedCodec codec_;
};

class CodeEncoding final : public BlockEncoding {
 public:
  CodeEncoding(Code code, std::string name) : code_(std::move(code)), name_(std::move(name)) {
    if (!code_.model().loa || !code_.model().uoe) {
      throw std::invalid_argument("hash table blocks need a set-model code");
    }
    const Validation v = validate(code_);
    if (!v.ok) throw std::invalid_argument("encoding " + name_ + " is not a valid code: " + v.violation);
  }
  std::string name() const override { return name_; }
  const BlockShape& shape() const override { return code_.shape(); }
  BitString encode(const BlockState& state, const BitString& current) const override {
    const auto* words = code_.encode(state);
    if (words == nullptr) throw std::invalid_argument("state " + state.to_string() + " has no codeword");
    const BitString* best = &words->front();
    for (const BitString& w : *words) {
      const unsigned d = hamming_distance(w, current);
      const unsigned best_d = hamming_distance(*best, current);
      if (d < best_d || (d == best_d && w.bits() < best->bits())) best = &w;
    }
    return *best;
  }
  BlockState decode(const BitString& word) const override {
    auto s = code_.decode(word);
    if (!s) throw std::runtime_error("word " + word.to_string() + " is not a codeword of " + name_);
    return *s;
  }

 private:
  Code code_;
  std::string name_;
};

}  // namespace

// ---------------------------------------------------------------------------

void FlipLedger::record(std::string tag, std::uint64_t flips) {
  total_flips_ += flips;
  ++block_writes_;
  events_.push_back({std::move(tag), flips});
}

SimMemory::SimMemory(std::size_t block_count, unsigned block_bits)
    : blocks_(block_count, BitString::zeros(block_bits)) {}

SimMemory::SimMemory(std::vector<BitString> initial) : blocks_(std::move(initial)) {}

const BitString& SimMemory::read(std::size_t index) const {
  if (index >= blocks_.size()) throw std::out_of_range("block index out of range");
  return blocks_[index];
}

std::uint64_t SimMemory::write_block(std::size_t index, const BitString& value, std::string tag) {
  if (index >= blocks_.size()) throw std::out_of_range("block index out of range");
  const std::uint64_t flips = hamming_distance(blocks_[index], value);
  blocks_[index] = value;
  ledger_.record(std::move(tag), flips);
  return flips;
}

std::unique_ptr<BlockEncoding> make_trivial_encoding(const BlockShape& shape) {
  return std::make_unique<TrivialEncoding>(shape);
}

std::unique_ptr<BlockEncoding> make_indicator_encoding(const BlockShape& shape) {
  return std::make_unique<IndicatorEncoding>(shape);
}

std::unique_ptr<BlockEncoding> make_compressed_encoding(const BlockShape& shape) {
  return std::make_unique<CompressedEncoding>(shape);
}

std::unique_ptr<BlockEncoding> make_semilinear_encoding(const BasisMatrix& matrix) {
  return std::make_unique<CodeEncoding>(semilinear_code(matrix), "semilinear");
}

std::unique_ptr<BlockEncoding> make_code_encoding(Code code, std::string name) {
  return std::make_unique<CodeEncoding>(std::move(code), std::move(name));
}

std::unique_ptr<BlockEncoding> make_encoding(const std::string& name, const BlockShape& shape,
                                             std::uint64_t seed) {
  if (name == "trivial") return make_trivial_encoding(shape);
  if (name == "indicator") return make_indicator_encoding(shape);
  if (name == "compressed") return make_compressed_encoding(shape);
  if (name == "semilinear") {
    if (shape.alphabet_size() <= shape.bits()) {
      return make_semilinear_encoding(BasisMatrix::indicator(shape));
    }
    const MatrixSearchReport found = search_matrix(shape, shape.k, 4096, seed);
    if (!found.best) {
      throw std::invalid_argument("no semi-linear basis passed verification for n=" +
                                  std::to_string(shape.n) + ", k=" + std::to_string(shape.k));
    }
    return make_semilinear_encoding(*found.best);
  }
  throw std::invalid_argument("unknown encoding \"" + name +
                              "\" (expected trivial, indicator, compressed or semilinear)");
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::inserted:
      return "inserted";
    case Outcome::duplicate:
      return "duplicate";
    case Outcome::overflow:
      return "overflow";
    case Outcome::deleted:
      return "deleted";
    case Outcome::absent:
      return "absent";
  }
  return "absent";
}

std::size_t home_block(std::uint64_t key, std::uint64_t seed, std::size_t block_count) {
  std::uint64_t x = (key ^ seed) * 0x9E3779B97F4A7C15ULL;
  x ^= x >> 29;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 32;
  return static_cast<std::size_t>(x % block_count);
}

HashTableSim::HashTableSim(const BlockShape& shape, std::size_t block_count,
                           std::shared_ptr<const BlockEncoding> encoding, std::uint64_t hash_seed)
    : shape_(shape),
      encoding_(std::move(encoding)),
      hash_seed_(hash_seed),
      memory_(block_count, shape.bits()),
      overflow_(block_count, false) {
  shape_.validate();
  if (block_count == 0) throw std::invalid_argument("hash table needs at least one block");
  if (!encoding_ || !(encoding_->shape() == shape_)) {
    throw std::invalid_argument("encoding shape does not match the table");
  }
  // Blocks start out holding the empty set; setting that up is not charged.
  BlockState empty;
  empty.slots.assign(shape_.k, 0);
  const BitString initial = encoding_->encode(empty, BitString::zeros(shape_.bits()));
  memory_ = SimMemory(std::vector<BitString>(block_count, initial));
}

void HashTableSim::check_key(std::uint64_t key) const {
  if (key == 0 || key > shape_.max_value()) {
    throw std::invalid_argument("key " + std::to_string(key) + " outside [1, 2^" +
                                std::to_string(shape_.n) + ")");
  }
}

BlockState HashTableSim::block_state(std::size_t index) const {
  return encoding_->decode(memory_.read(index));
}

std::optional<std::size_t> HashTableSim::find(std::uint64_t key) const {
  const std::size_t count = memory_.block_count();
  const std::size_t home = home_block(key, hash_seed_, count);
  for (std::size_t step = 0; step < count; ++step) {
    const std::size_t b = (home + step) % count;
    const BlockState s = block_state(b);
    if (std::find(s.slots.begin(), s.slots.end(), key) != s.slots.end()) return b;
    if (!overflow_[b]) return std::nullopt;
  }
  return std::nullopt;
}

bool HashTableSim::lookup(std::uint64_t key) const {
  check_key(key);
  return find(key).has_value();
}

std::uint64_t HashTableSim::store(std::size_t index, const BlockState& state, const char* tag) {
  const BitString word = encoding_->encode(state, memory_.read(index));
  return memory_.write_block(index, word, tag);
}

OpResult HashTableSim::insert(std::uint64_t key) {
  check_key(key);
  if (auto b = find(key)) return {Outcome::duplicate, 0, b};
  const std::size_t count = memory_.block_count();
  const std::size_t home = home_block(key, hash_seed_, count);
  for (std::size_t step = 0; step < count; ++step) {
    const std::size_t b = (home + step) % count;
    BlockState s = block_state(b);
    if (s.occupied() < shape_.k) {
      // Canonical set states keep NULLs first, so slot 0 is free.
      s.slots[0] = key;
      s = canonicalize(std::move(s), kSetModel);
      const std::uint64_t flips = store(b, s, "insert");
      ++size_;
      return {Outcome::inserted, flips, b};
    }
    overflow_[b] = true;
  }
  return {Outcome::overflow, 0, std::nullopt};
}

OpResult HashTableSim::erase(std::uint64_t key) {
  check_key(key);
  const auto b = find(key);
  if (!b) return {Outcome::absent, 0, std::nullopt};
  BlockState s = block_state(*b);
  std::replace(s.slots.begin(), s.slots.end(), key, std::uint64_t{0});
  s = canonicalize(std::move(s), kSetModel);
  const std::uint64_t flips = store(*b, s, "delete");
  --size_;
  return {Outcome::deleted, flips, b};
}

// ---------------------------------------------------------------------------

void WorkloadConfig::validate() const {
  shape.validate();
  if (blocks == 0) throw std::invalid_argument("workload needs at least one block");
  if (!(insert_fraction >= 0.0 && insert_fraction <= 1.0)) {
    throw std::invalid_argument("insert fraction must lie in [0, 1]");
  }
  if (encodings.empty()) throw std::invalid_argument("workload needs at least one encoding");
  std::set<std::string> seen;
  for (const std::string& e : encodings) {
    if (!seen.insert(e).second) throw std::invalid_argument("encoding \"" + e + "\" listed twice");
  }
}

FlipReport run_workload(const WorkloadConfig& config) {
  config.validate();
  // Build every encoding up front so capacity problems surface before any work.
  std::vector<std::shared_ptr<const BlockEncoding>> encodings;
  for (const std::string& name : config.encodings) {
    encodings.push_back(make_encoding(name, config.shape, config.seed));
  }

  struct Op {
    bool insert;
    std::uint64_t key;
  };
  std::vector<Op> ops;
  ops.reserve(config.operations);
  {
    // The key sequence depends only on logical table contents, which every
    // encoding shares.
    std::mt19937_64 rng(config.seed);
    HashTableSim reference(config.shape, config.blocks, make_trivial_encoding(config.shape),
                           config.seed);
    std::set<std::uint64_t> present;
    const std::uint64_t key_space = config.shape.max_value();
    auto random_key = [&]() { return 1 + rng() % key_space; };
    for (std::uint64_t i = 0; i < config.operations; ++i) {
      const bool insert = static_cast<double>(rng() >> 11) * 0x1.0p-53 < config.insert_fraction;
      std::uint64_t key = 0;
      if (insert) {
        if (present.size() < key_space && key_space <= 4096) {
          std::vector<std::uint64_t> absent;
          for (std::uint64_t k = 1; k <= key_space; ++k) {
            if (!present.contains(k)) absent.push_back(k);
          }
          key = absent[rng() % absent.size()];
        } else {
          key = random_key();
          for (int tries = 0; tries < 64 && present.contains(key); ++tries) key = random_key();
        }
        if (reference.insert(key).outcome == Outcome::inserted) present.insert(key);
      } else {
        if (!present.empty()) {
          auto it = present.begin();
          std::advance(it, static_cast<std::ptrdiff_t>(rng() % present.size()));
          key = *it;
        } else {
          key = random_key();
        }
        if (reference.erase(key).outcome == Outcome::deleted) present.erase(key);
      }
      ops.push_back({insert, key});
    }
  }

  FlipReport report;
  report.config = config;
  const std::uint64_t every =
      config.trace_every != 0 ? config.trace_every : std::max<std::uint64_t>(1, config.operations / 100);
  for (const auto& encoding : encodings) {
    HashTableSim table(config.shape, config.blocks, encoding, config.seed);
    EncodingResult result;
    result.encoding = encoding->name();
    result.trace.push_back({0, 0, 0.0});
    for (const Op& op : ops) {
      const OpResult r = op.insert ? table.insert(op.key) : table.erase(op.key);
      ++result.ops;
      if (r.outcome == Outcome::inserted || r.outcome == Outcome::deleted) ++result.successful_ops;
      if (result.ops % every == 0 || result.ops == ops.size()) {
        result.trace.push_back(
            {result.ops, table.memory().ledger().total_flips(), table.load_factor()});
      }
    }
    result.total_flips = table.memory().ledger().total_flips();
    result.block_writes = table.memory().ledger().block_writes();
    result.flips_per_op =
        result.ops == 0 ? 0.0 : static_cast<double>(result.total_flips) / static_cast<double>(result.ops);
    result.final_load_factor = table.load_factor();
    report.results.push_back(std::move(result));
  }
  return report;
}

}  // namespace wem
