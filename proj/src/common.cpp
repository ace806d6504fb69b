#include "common.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace curvebound {

namespace {

constexpr i128 kI128Max = static_cast<i128>(~static_cast<u128>(0) >> 1);
constexpr i128 kI128Min = -kI128Max - 1;

}  // namespace

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::overflow, "128-bit addition overflow");
  return r;
}

i128 checked_sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) fail(ErrorCode::overflow, "128-bit subtraction overflow");
  return r;
}

i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::overflow, "128-bit multiplication overflow");
  return r;
}

i64 narrow_i64(i128 v) {
  if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
    fail(ErrorCode::overflow, "value does not fit in 64 bits");
  return static_cast<i64>(v);
}

u128 narrow_u128(const i256& v) {
  if (v < 0) fail(ErrorCode::overflow, "negative value where a count was expected");
  static const i256 limit = i256(1) << 128;
  if (v >= limit) fail(ErrorCode::overflow, "count does not fit in 128 bits");
  u128 out = 0;
  i256 rest = v;
  const u64 lo = static_cast<u64>(rest & i256(~0ULL));
  rest >>= 64;
  const u64 hi = static_cast<u64>(rest & i256(~0ULL));
  out = (static_cast<u128>(hi) << 64) | lo;
  return out;
}

i128 to_i128(const i256& v) {
  const bool negative = v < 0;
  const u128 mag = narrow_u128(negative ? i256(-v) : v);
  if (mag > (~static_cast<u128>(0) >> 1)) fail(ErrorCode::overflow, "value does not fit in 128 bits");
  return negative ? -static_cast<i128>(mag) : static_cast<i128>(mag);
}

i128 abs128(i128 v) {
  if (v == kI128Min) fail(ErrorCode::overflow, "absolute value overflow");
  return v < 0 ? -v : v;
}

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::string to_decimal(u128 v) {
  if (v == 0) return "0";
  std::string digits;
  while (v != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return std::string(digits.rbegin(), digits.rend());
}

std::string to_decimal(i128 v) {
  if (v < 0) {
    const u128 mag = static_cast<u128>(-(v + 1)) + 1;
    return "-" + to_decimal(mag);
  }
  return to_decimal(static_cast<u128>(v));
}

std::string to_decimal(const i256& v) { return v.str(); }

u128 parse_u128(std::string_view text) {
  if (text.empty()) fail(ErrorCode::parse, "empty integer");
  u128 v = 0;
  const u128 max = ~static_cast<u128>(0);
  for (char c : text) {
    if (c < '0' || c > '9') fail(ErrorCode::parse, "invalid digit in integer '" + std::string(text) + "'");
    const unsigned d = static_cast<unsigned>(c - '0');
    if (v > (max - d) / 10) fail(ErrorCode::overflow, "integer exceeds 128 bits");
    v = v * 10 + d;
  }
  return v;
}

i64 parse_i64(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const u128 mag = parse_u128(text);
  const u128 limit = negative ? (static_cast<u128>(std::numeric_limits<i64>::max()) + 1)
                              : static_cast<u128>(std::numeric_limits<i64>::max());
  if (mag > limit) fail(ErrorCode::overflow, "integer exceeds 64 bits");
  if (negative) return mag == limit ? std::numeric_limits<i64>::min() : -static_cast<i64>(mag);
  return static_cast<i64>(mag);
}

Real to_real(u128 v) {
  const u64 hi = static_cast<u64>(v >> 64);
  const u64 lo = static_cast<u64>(v);
  return std::ldexp(static_cast<Real>(hi), 64) + static_cast<Real>(lo);
}

Real to_real(const i256& v) { return v.convert_to<long double>(); }

Real log2_count(u128 v) {
  if (v == 0) return 0;
  return std::log2(to_real(v));
}

std::string format_real(Real v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", v);
  return buf;
}

Real parse_real(std::string_view text) {
  const std::string s(text);
  if (s == "inf") return std::numeric_limits<Real>::infinity();
  if (s == "-inf") return -std::numeric_limits<Real>::infinity();
  char* end = nullptr;
  errno = 0;
  const Real v = std::strtold(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) fail(ErrorCode::parse, "invalid real '" + s + "'");
  return v;
}

}  // namespace curvebound
