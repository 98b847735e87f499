#pragma once

// Bit-flip accounting memory driven by a linear-probing hash table.
//
// The table is an array of blocks, each holding up to k distinct keys in any
// order, stored through a pluggable block encoding. Every block write is
// charged the Hamming distance between the old and new contents; reads are
// free. Probing is block-granular: a key hashes to a home block and walks
// forward. A block that was ever found full during an insert keeps a sticky
// overflow mark (metadata outside the flip accounting) so lookups continue
// past it even after later deletions free space there.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wem/bitspace.hpp"
#include "wem/blockmodel.hpp"
#include "wem/codecraft.hpp"
#include "wem/semilinear.hpp"

namespace wem {

struct FlipEvent {
  std::string tag;
  std::uint64_t flips = 0;
};

class FlipLedger {
 public:
  void record(std::string tag, std::uint64_t flips);

  std::uint64_t total_flips() const { return total_flips_; }
  std::uint64_t block_writes() const { return block_writes_; }
  const std::vector<FlipEvent>& events() const { return events_; }

 private:
  std::uint64_t total_flips_ = 0;
  std::uint64_t block_writes_ = 0;
  std::vector<FlipEvent> events_;
};

class SimMemory {
 public:
  SimMemory(std::size_t block_count, unsigned block_bits);
  SimMemory(std::vector<BitString> initial);

  std::size_t block_count() const { return blocks_.size(); }
  const BitString& read(std::size_t index) const;

  /// Replaces a block, records the flips and returns them. Throws
  /// std::out_of_range for a bad index and std::invalid_argument for a length
  /// mismatch.
  std::uint64_t write_block(std::size_t index, const BitString& value, std::string tag = "write");

  const FlipLedger& ledger() const { return ledger_; }

 private:
  std::vector<BitString> blocks_;
  FlipLedger ledger_;
};

/// Block encoding for Set-model slot states (keys in [1, 2^n)).
class BlockEncoding {
 public:
  virtual ~BlockEncoding() = default;

  virtual std::string name() const = 0;
  virtual const BlockShape& shape() const = 0;
  /// Codeword for `state` nearest to `current` (ties: smallest bit pattern).
  virtual BitString encode(const BlockState& state, const BitString& current) const = 0;
  /// Throws std::runtime_error when the word is not a codeword.
  virtual BlockState decode(const BitString& word) const = 0;
};

std::unique_ptr<BlockEncoding> make_trivial_encoding(const BlockShape& shape);
std::unique_ptr<BlockEncoding> make_indicator_encoding(const BlockShape& shape);
std::unique_ptr<BlockEncoding> make_compressed_encoding(const BlockShape& shape);
/// Throws std::invalid_argument unless the matrix encodes every block state
/// injectively.
std::unique_ptr<BlockEncoding> make_semilinear_encoding(const BasisMatrix& matrix);
/// Wraps an arbitrary validated Set-model code, several codewords per state
/// allowed.
std::unique_ptr<BlockEncoding> make_code_encoding(Code code, std::string name);

/// Builds an encoding by name: trivial, indicator, compressed or semilinear.
/// The semilinear encoding uses the first passing matrix of a seeded search,
/// or the indicator basis when it fits.
std::unique_ptr<BlockEncoding> make_encoding(const std::string& name, const BlockShape& shape,
                                             std::uint64_t seed = 0);

enum class Outcome { inserted, duplicate, overflow, deleted, absent };

std::string_view to_string(Outcome outcome);

struct OpResult {
  Outcome outcome;
  std::uint64_t flips = 0;
  std::optional<std::size_t> block;
};

/// Seeded multiplicative hash onto [0, block_count).
std::size_t home_block(std::uint64_t key, std::uint64_t seed, std::size_t block_count);

class HashTableSim {
 public:
  HashTableSim(const BlockShape& shape, std::size_t block_count,
               std::shared_ptr<const BlockEncoding> encoding, std::uint64_t hash_seed);

  /// Key must lie in [1, 2^n); throws std::invalid_argument otherwise.
  OpResult insert(std::uint64_t key);
  OpResult erase(std::uint64_t key);
  bool lookup(std::uint64_t key) const;

  /// Decoded logical state of a block.
  BlockState block_state(std::size_t index) const;
  bool overflowed(std::size_t index) const { return overflow_[index]; }
  std::size_t size() const { return size_; }
  std::size_t capacity() const { return memory_.block_count() * shape_.k; }
  double load_factor() const {
    return static_cast<double>(size_) / static_cast<double>(capacity());
  }

  const SimMemory& memory() const { return memory_; }
  const BlockShape& shape() const { return shape_; }
  const BlockEncoding& encoding() const { return *encoding_; }

 private:
  std::optional<std::size_t> find(std::uint64_t key) const;
  void check_key(std::uint64_t key) const;
  std::uint64_t store(std::size_t index, const BlockState& state, const char* tag);

  BlockShape shape_;
  std::shared_ptr<const BlockEncoding> encoding_;
  std::uint64_t hash_seed_;
  SimMemory memory_;
  std::vector<bool> overflow_;
  std::size_t size_ = 0;
};

struct WorkloadConfig {
  BlockShape shape{3, 2};
  std::size_t blocks = 16;
  std::vector<std::string> encodings{"trivial", "compressed"};
  std::uint64_t operations = 1000;
  double insert_fraction = 0.6;  // remaining operations delete
  std::uint64_t seed = 1;
  std::uint64_t trace_every = 0;  // 0 picks max(1, operations / 100)

  /// Throws std::invalid_argument for an impossible configuration.
  void validate() const;
};

struct TracePoint {
  std::uint64_t ops = 0;
  std::uint64_t total_flips = 0;
  double load_factor = 0.0;
};

struct EncodingResult {
  std::string encoding;
  std::uint64_t ops = 0;
  std::uint64_t successful_ops = 0;
  std::uint64_t total_flips = 0;
  std::uint64_t block_writes = 0;
  double flips_per_op = 0.0;
  double final_load_factor = 0.0;
  std::vector<TracePoint> trace;
};

struct FlipReport {
  WorkloadConfig config;
  std::vector<EncodingResult> results;
};

/// Runs one seeded key sequence against every configured encoding. Inserts
/// draw a key absent from the table when one exists; deletes draw a present
/// key when one exists.
FlipReport run_workload(const WorkloadConfig& config);

}  // namespace wem
