#pragma once

// Exact integer helpers for combinatorial counts and rational cost averages.

#include <compare>
#include <cstdint>
#include <string>

namespace wem {

/// Unsigned 128-bit count. State spaces at n*k = 64 reach 2^64, one past the
/// 64-bit range, so counts carry the wider type and overflow is an error.
__extension__ using Count = unsigned __int128;

std::string to_string(Count value);
Count parse_count(const std::string& text);

/// Throws std::overflow_error when the result does not fit in 128 bits.
Count checked_add(Count a, Count b);
Count checked_mul(Count a, Count b);

Count pow2(unsigned exponent);
Count binomial(Count n, unsigned k);
/// Number of multisets of size k drawn from an alphabet of size n.
Count multichoose(Count n, unsigned k);
/// n * (n-1) * ... * (n-k+1); zero once a factor reaches zero.
Count falling_factorial(Count n, unsigned k);

/// Smallest b with 2^b >= value (0 for value <= 1).
unsigned ceil_log2(Count value);
long double log2(Count value);

/// Non-negative rational kept in lowest terms. A zero denominator is never
/// produced; 0/0 is normalized to 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(std::uint64_t num, std::uint64_t den);

  std::uint64_t num() const { return num_; }
  std::uint64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

}  // namespace wem
