#include "wem/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wem {

namespace {
constexpr Count kMax = ~Count{0};

Count gcd(Count a, Count b) {
  while (b != 0) {
    Count t = a % b;
    a = b;
    b = t;
  }
  return a;
}
}  // namespace

std::string to_string(Count value) {
  if (value == 0) return "0";
  std::string out;
  while (value != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Count parse_count(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty count");
  Count value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw std::invalid_argument("invalid count: " + text);
    value = checked_add(checked_mul(value, 10), static_cast<Count>(c - '0'));
  }
  return value;
}

Count checked_add(Count a, Count b) {
  if (a > kMax - b) throw std::overflow_error("count exceeds 128-bit range");
  return a + b;
}

Count checked_mul(Count a, Count b) {
  if (a != 0 && b > kMax / a) throw std::overflow_error("count exceeds 128-bit range");
  return a * b;
}

Count pow2(unsigned exponent) {
  if (exponent >= 128) throw std::overflow_error("count exceeds 128-bit range");
  return Count{1} << exponent;
}

Count binomial(Count n, unsigned k) {
  if (k > n) return 0;
  if (n - k < k) k = static_cast<unsigned>(n - k);
  Count result = 1;
  for (unsigned i = 0; i < k; ++i) {
    // result * (n - i) is divisible by (i + 1); divide out the gcd first so the
    // intermediate stays as small as the final answer allows.
    Count factor = n - i;
    Count divisor = i + 1;
    Count g = gcd(result, divisor);
    result /= g;
    divisor /= g;
    factor /= divisor;
    result = checked_mul(result, factor);
  }
  return result;
}

Count multichoose(Count n, unsigned k) {
  if (k == 0) return 1;
  if (n == 0) return 0;
  return binomial(checked_add(n, k - 1), k);
}

Count falling_factorial(Count n, unsigned k) {
  Count result = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (n <= i) return 0;
    result = checked_mul(result, n - i);
  }
  return result;
}

unsigned ceil_log2(Count value) {
  unsigned bits = 0;
  while (bits < 128 && (Count{1} << bits) < value) ++bits;
  return bits;
}

long double log2(Count value) {
  if (value == 0) throw std::domain_error("log2 of zero count");
  // Split so the conversion keeps full long double precision for large values.
  const auto hi = static_cast<std::uint64_t>(value >> 64);
  const auto lo = static_cast<std::uint64_t>(value);
  const long double v = std::ldexp(static_cast<long double>(hi), 64) + static_cast<long double>(lo);
  return std::log2(v);
}

Rational::Rational(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {
  if (den_ == 0) {
    if (num_ != 0) throw std::invalid_argument("rational with zero denominator");
    den_ = 1;
    return;
  }
  const std::uint64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const Count lhs = static_cast<Count>(a.num_) * b.den_;
  const Count rhs = static_cast<Count>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace wem
