#pragma once

// Shared numeric vocabulary: integer widths, the library error type, exact
// decimal conversions and the single real type used for every logarithm.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace curvebound {

using Real = long double;
using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;
using i256 = boost::multiprecision::int256_t;

enum class ErrorCode {
  invalid_argument,
  precondition,
  overflow,
  io,
  parse,
  dichotomy,
  unsupported,
  internal,
};

/// Exception raised by every core routine; the C layer maps `code()` onto
/// its status enumeration.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

inline void require(bool condition, ErrorCode code, const char* what) {
  if (!condition) fail(code, what);
}

// Checked 128-bit arithmetic. Overflow raises ErrorCode::overflow.
i128 checked_add(i128 a, i128 b);
i128 checked_sub(i128 a, i128 b);
i128 checked_mul(i128 a, i128 b);
i64 narrow_i64(i128 v);
u128 narrow_u128(const i256& v);
i128 to_i128(const i256& v);
i128 abs128(i128 v);
i128 gcd128(i128 a, i128 b);
/// Floor division for b > 0.
i128 floor_div(i128 a, i128 b);

std::string to_decimal(i128 v);
std::string to_decimal(u128 v);
std::string to_decimal(const i256& v);
u128 parse_u128(std::string_view text);
i64 parse_i64(std::string_view text);

Real to_real(u128 v);
Real to_real(const i256& v);
/// Base-2 logarithm of an exact count, with log 0 = 0.
Real log2_count(u128 v);

/// Round-trippable rendering of a long double (21 significant digits).
std::string format_real(Real v);
Real parse_real(std::string_view text);

}  // namespace curvebound
