#pragma once

// Fixed-length bit strings and Hamming geometry on the hypercube.
//
// Bit 0 is the least significant bit. The textual form is most-significant bit
// first.

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace wem {

inline constexpr unsigned kMaxBits = 64;

class BitString {
 public:
  BitString() = default;

  /// Throws std::invalid_argument when length is 0 or above 64, or when bits
  /// has set positions at or above length.
  BitString(std::uint64_t bits, unsigned length);

  static BitString zeros(unsigned length) { return BitString(0, length); }
  static BitString ones(unsigned length);

  /// Parses the MSB-first textual form, e.g. "0010".
  static BitString parse(std::string_view text);

  std::uint64_t bits() const { return bits_; }
  unsigned length() const { return length_; }
  unsigned weight() const { return static_cast<unsigned>(std::popcount(bits_)); }

  bool test(unsigned i) const;
  BitString with_bit(unsigned i, bool value) const;

  BitString operator^(const BitString& other) const;
  BitString complement() const;

  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  std::uint64_t bits_ = 0;
  unsigned length_ = 0;
};

/// Mask with the low `length` bits set; length in [0, 64].
constexpr std::uint64_t low_mask(unsigned length) {
  return length >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << length) - 1);
}

unsigned hamming_distance(const BitString& a, const BitString& b);

/// Number of bit strings of the given length within distance `radius` of a
/// fixed center, center included.
std::uint64_t ball_size(unsigned length, unsigned radius);

/// Every bit string within distance `radius` of center, each exactly once,
/// ordered by distance and then by flipped-position combination.
std::vector<BitString> enumerate_ball(const BitString& center, unsigned radius);

/// Calls visit for every point of the ball without materializing it.
void for_each_in_ball(const BitString& center, unsigned radius,
                      const std::function<void(const BitString&)>& visit);

}  // namespace wem

template <>
struct std::hash<wem::BitString> {
  std::size_t operator()(const wem::BitString& b) const noexcept {
    return std::hash<std::uint64_t>{}(b.bits() * 0x9E3779B97F4A7C15ULL ^ b.length());
  }
};
