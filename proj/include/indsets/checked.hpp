#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace indsets {

using Count = std::uint64_t;

class OverflowError : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

inline Count checked_add(Count a, Count b) {
  Count r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("count addition overflows 64 bits");
  return r;
}

inline Count checked_mul(Count a, Count b) {
  Count r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("count product overflows 64 bits");
  return r;
}

/// C(a, b), zero when b < 0 or b > a (including negative a).
inline Count binomial(std::int64_t a, std::int64_t b) {
  if (b < 0 || a < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  unsigned __int128 r = 1;
  for (std::int64_t i = 1; i <= b; ++i) {
    // r * (a - b + i) / i stays exact: r holds C(a-b+i-1, i-1).
    r = r * static_cast<unsigned __int128>(a - b + i) / static_cast<unsigned __int128>(i);
    if (r > UINT64_MAX) throw OverflowError("binomial C(" + std::to_string(a) + "," +
                                            std::to_string(b) + ") overflows 64 bits");
  }
  return static_cast<Count>(r);
}

/// x(x-1)...(x-(t-1)); empty product is 1, and a zero factor ends the product.
inline Count falling_power(std::int64_t x, std::int64_t t) {
  if (t < 0) throw std::invalid_argument("falling power with negative length");
  if (t == 0) return 1;
  if (x < 0) throw std::invalid_argument("falling power of negative base");
  if (t > x) return 0;
  Count r = 1;
  for (std::int64_t i = 0; i < t; ++i) r = checked_mul(r, static_cast<Count>(x - i));
  return r;
}

inline Count factorial(std::int64_t t) { return falling_power(t, t); }

}  // namespace indsets
