#include "wem/bitspace.hpp"

#include <limits>
#include <stdexcept>

namespace wem {

namespace {

void require_length(unsigned length) {
  if (length == 0 || length > kMaxBits) {
    throw std::invalid_argument("bit string length must be in [1, 64], got " +
                                std::to_string(length));
  }
}

void require_same_length(const BitString& a, const BitString& b) {
  if (a.length() != b.length()) {
    throw std::invalid_argument("bit string length mismatch: " + std::to_string(a.length()) +
                                " vs " + std::to_string(b.length()));
  }
}

// Visits every subset of [0, length) of exactly `size` positions in colex order.
void for_each_combination(unsigned length, unsigned size,
                          const std::function<void(std::uint64_t)>& visit) {
  if (size == 0) {
    visit(0);
    return;
  }
  if (size > length) return;
  // Gosper's hack over a 64-bit word; the last combination is detected before
  // the increment would overflow past bit 63.
  std::uint64_t comb = low_mask(size);
  const std::uint64_t last = comb << (length - size);
  while (true) {
    visit(comb);
    if (comb == last) break;
    const std::uint64_t lowest = comb & (~comb + 1);
    const std::uint64_t ripple = comb + lowest;
    comb = (((ripple ^ comb) >> 2) / lowest) | ripple;
  }
}

}  // namespace

BitString::BitString(std::uint64_t bits, unsigned length) : bits_(bits), length_(length) {
  require_length(length);
  if ((bits & ~low_mask(length)) != 0) {
    throw std::invalid_argument("bit string value has bits beyond length " +
                                std::to_string(length));
  }
}

BitString BitString::ones(unsigned length) {
  require_length(length);
  return BitString(low_mask(length), length);
}

BitString BitString::parse(std::string_view text) {
  require_length(static_cast<unsigned>(text.size()));
  std::uint64_t bits = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit string text may contain only '0' and '1': \"" +
                                  std::string(text) + "\"");
    }
    bits = (bits << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return BitString(bits, static_cast<unsigned>(text.size()));
}

bool BitString::test(unsigned i) const {
  if (i >= length_) throw std::out_of_range("bit index out of range");
  return ((bits_ >> i) & 1U) != 0;
}

BitString BitString::with_bit(unsigned i, bool value) const {
  if (i >= length_) throw std::out_of_range("bit index out of range");
  const std::uint64_t m = std::uint64_t{1} << i;
  return BitString(value ? (bits_ | m) : (bits_ & ~m), length_);
}

BitString BitString::operator^(const BitString& other) const {
  require_same_length(*this, other);
  return BitString(bits_ ^ other.bits_, length_);
}

BitString BitString::complement() const { return BitString(~bits_ & low_mask(length_), length_); }

std::string BitString::to_string() const {
  std::string out(length_, '0');
  for (unsigned i = 0; i < length_; ++i) {
    if ((bits_ >> i) & 1U) out[length_ - 1 - i] = '1';
  }
  return out;
}

unsigned hamming_distance(const BitString& a, const BitString& b) {
  require_same_length(a, b);
  return static_cast<unsigned>(std::popcount(a.bits() ^ b.bits()));
}

std::uint64_t ball_size(unsigned length, unsigned radius) {
  require_length(length);
  if (radius > length) {
    throw std::invalid_argument("ball radius " + std::to_string(radius) +
                                " exceeds length " + std::to_string(length));
  }
  // Running binomial C(length, i) stays exact: C(l, i+1) = C(l, i) * (l-i) / (i+1).
  __extension__ using u128 = unsigned __int128;
  u128 binom = 1;
  u128 total = 0;
  for (unsigned i = 0; i <= radius; ++i) {
    total += binom;
    binom = binom * (length - i) / (i + 1);
  }
  if (total > std::numeric_limits<std::uint64_t>::max()) {
    throw std::overflow_error("ball size exceeds 64-bit range");
  }
  return static_cast<std::uint64_t>(total);
}

void for_each_in_ball(const BitString& center, unsigned radius,
                      const std::function<void(const BitString&)>& visit) {
  if (radius > center.length()) {
    throw std::invalid_argument("ball radius " + std::to_string(radius) +
                                " exceeds length " + std::to_string(center.length()));
  }
  for (unsigned d = 0; d <= radius; ++d) {
    for_each_combination(center.length(), d, [&](std::uint64_t flips) {
      visit(BitString(center.bits() ^ flips, center.length()));
    });
  }
}

std::vector<BitString> enumerate_ball(const BitString& center, unsigned radius) {
  std::vector<BitString> out;
  out.reserve(ball_size(center.length(), radius));
  for_each_in_ball(center, radius, [&](const BitString& b) { out.push_back(b); });
  return out;
}

}  // namespace wem
