#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "common.hpp"

namespace curvebound::constants {

/// Topological type S_{g,b}. Construction through `make` enforces positive
/// complexity 3g + b - 3.
struct Surface {
  unsigned genus = 1;
  unsigned boundaries = 1;

  static Surface make(unsigned genus, unsigned boundaries);
  /// Parses "g,b".
  static Surface parse(std::string_view text);

  int complexity() const { return 3 * static_cast<int>(genus) + static_cast<int>(boundaries) - 3; }
  unsigned abs_euler() const;
  std::string str() const;
  friend bool operator==(const Surface&, const Surface&) = default;
};

/// The constant M of the intersection/distance inequality.
inline constexpr Real kM = 200;
/// Bounded geodesic image constant.
inline constexpr int kBgiBound = 100;
/// Behrstock thresholds.
inline constexpr int kBehrstockFar = 9;
inline constexpr int kBehrstockNear = 4;

/// [m]_n: m when m > n, otherwise 0.
Real bracket(Real m, Real n);
/// Base-2 logarithm with log 0 = 0; negative input is rejected.
Real log2z(Real x);
/// log2(p) / log2(p - 5), defined for p > 6.
Real l_small(Real p);
/// p / log2(2^((p-12)/2) - 1), defined for p > 14.
Real L_big(Real p);
/// (M^2 |chi| (k + xi M))^(xi + 2) with M = 200.
Real V(const Surface& s, Real k);

struct PBounds {
  u64 xi_bound;         // xi * 4^xi
  u64 chromatic_bound;  // g 4^g (b = 0) or (g+1) 2^(2g+b-1)
  u64 upper;            // min of the two
  std::optional<u64> minimal_known;
};
PBounds p_bounds(const Surface& s);
u64 P_upper(const Surface& s);

/// (P - 1) * 2 L(ceil((k+1)/2)) + 2, for k >= 28 and P >= 2.
Real U(const Surface& s, i64 k, u64 P);
/// 2 l(ceil((k+1)/2)) + 1, for k >= 18.
Real mainone_denominator(i64 k);
/// ceil((k + 1) / 2) for k >= 0.
i64 half_index(i64 k);

enum class Application { tight, endpoint, pure_upper };

struct Coefficients {
  Application which;
  i64 k;
  i64 shifted_cutoff;
  u64 P;
  Real U;
  Real multiplier;
  Real additive;
  Real V;
};
Coefficients application_coefficients(const Surface& s, i64 k, Application which,
                                      std::optional<u64> P = std::nullopt);
Application parse_application(std::string_view name);
std::string_view application_name(Application which);

enum class PlotFunction { l_small, L_big };
PlotFunction parse_plot_function(std::string_view name);
/// Deterministic SVG rendering of l_small or L_big on the integer range [from, to].
std::string constant_plot_svg(PlotFunction which, i64 from, i64 to);
void emit_constant_plot(PlotFunction which, i64 from, i64 to, const std::filesystem::path& out);

}  // namespace curvebound::constants
