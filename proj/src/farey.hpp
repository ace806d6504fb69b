#pragma once

// Curves on a surface of complexity one, modelled as slopes in the Farey
// graph. Distances come from a dynamic program over the triangle strip
// between two slopes; annular projections come from twist coordinates.

#include <string>
#include <vector>

#include "common.hpp"
#include "constants.hpp"
#include "report.hpp"

namespace curvebound::farey {

/// Reduced slope p/q with q >= 0; infinity is 1/0.
class Slope {
 public:
  Slope() = default;  // infinity
  static Slope of(i128 p, i128 q);
  static Slope infinity() { return Slope(); }
  static Slope parse(std::string_view text);

  i64 p() const { return p_; }
  i64 q() const { return q_; }
  bool is_infinity() const { return q_ == 0; }
  std::string str() const;

  friend bool operator==(const Slope&, const Slope&) = default;

 private:
  Slope(i64 p, i64 q) : p_(p), q_(q) {}
  i64 p_ = 1;
  i64 q_ = 0;
};

/// Order by numeric value with infinity largest.
bool value_less(const Slope& a, const Slope& b);
/// Total order used for containers: by value.
struct ValueLess {
  bool operator()(const Slope& a, const Slope& b) const { return value_less(a, b); }
};

/// Integral matrix [[a, b], [c, d]] acting on column vectors (p, q).
struct Matrix {
  i64 a = 1, b = 0, c = 0, d = 1;
  i128 det() const { return static_cast<i128>(a) * d - static_cast<i128>(b) * c; }
  i128 trace() const { return static_cast<i128>(a) + d; }
  Slope apply(const Slope& s) const;
  Matrix operator*(const Matrix& o) const;
  Matrix power(i64 n) const;
  Matrix inverse() const;
  std::string str() const;
  static Matrix parse(std::string_view text);
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

/// Dehn twist T_core^n as an integral unimodular matrix.
Matrix twist_matrix(const Slope& core, i64 n);

u128 intersection(const Slope& x, const Slope& y);
u64 distance(const Slope& x, const Slope& y);

struct FareyPath {
  std::vector<Slope> vertices;
  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};
FareyPath geodesic(const Slope& x, const Slope& y);

/// Rational twist coordinate num/den with den > 0.
struct Tau {
  i128 num;
  i128 den;
};

/// Nonnegative rational |tau(x) - tau(y)|, kept unreduced in 256 bits.
struct Gap {
  i256 num;
  i256 den;
  Real value() const;
  u128 ceil() const;
  bool is_zero() const { return num == 0; }
  std::string str() const;  // reduced "n/d"
};

/// Unimodular change of basis sending `core` to 1/0; reads twist coordinates.
class TwistFrame {
 public:
  explicit TwistFrame(const Slope& core);
  const Slope& core() const { return core_; }
  /// Raises precondition when x equals the core.
  Tau coordinate(const Slope& x) const;

 private:
  Slope core_;
  i64 a_, b_;
};

Gap gap_between(const Tau& x, const Tau& y);
/// 1 + ceil(gap) computed directly from coordinates.
u128 annular_distance_between(const Tau& x, const Tau& y);

Gap twist_gap(const Slope& core, const Slope& x, const Slope& y);
u128 annular_distance(const Slope& core, const Slope& x, const Slope& y);

struct PivotDatum {
  Slope core;
  Gap twist_gap;
  u128 annular_distance;
};
/// Cores whose annular distance exceeds k, ordered by position along the strip.
std::vector<PivotDatum> large_annuli(const Slope& x, const Slope& y, i64 k);

enum class Slack { raw, minus1, plus1 };
Slack parse_slack(std::string_view name);
std::string_view slack_name(Slack s);

Real script_s(const Slope& x, const Slope& y, i64 k, Slack slack);

/// Which count stands in for i(x, A) when A is an annulus.
enum class AnnulusIntersection { core, doubled_boundary };

struct CheckOptions {
  Real tolerance = 1e-9L;
  bool sound_slack = true;
  AnnulusIntersection annulus = AnnulusIntersection::core;
  constants::Surface surface{1, 1};
};

InequalityReport check_mainone(const Slope& x, const Slope& y, i64 k, const CheckOptions& opt = {});
InequalityReport check_igd(const Slope& x, const Slope& y, i64 k, const CheckOptions& opt = {});
InequalityReport check_hempel_lickorish(const Slope& x, const Slope& y, const CheckOptions& opt = {});
InequalityReport lemma_annulus_check(const Slope& core, const Slope& x, const Slope& y, i64 n,
                                     const CheckOptions& opt = {});

}  // namespace curvebound::farey
