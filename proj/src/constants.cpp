#include "constants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

namespace curvebound::constants {

Surface Surface::make(unsigned genus, unsigned boundaries) {
  Surface s{genus, boundaries};
  if (s.complexity() <= 0)
    fail(ErrorCode::invalid_argument, "surface " + s.str() + " has nonpositive complexity");
  return s;
}

Surface Surface::parse(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) fail(ErrorCode::parse, "surface must be written g,b");
  const i64 g = parse_i64(text.substr(0, comma));
  const i64 b = parse_i64(text.substr(comma + 1));
  if (g < 0 || b < 0 || g > 1000 || b > 1000) fail(ErrorCode::invalid_argument, "surface indices out of range");
  return make(static_cast<unsigned>(g), static_cast<unsigned>(b));
}

unsigned Surface::abs_euler() const {
  const int chi = 2 - 2 * static_cast<int>(genus) - static_cast<int>(boundaries);
  return static_cast<unsigned>(chi < 0 ? -chi : chi);
}

std::string Surface::str() const { return std::to_string(genus) + "," + std::to_string(boundaries); }

Real bracket(Real m, Real n) { return m > n ? m : 0; }

Real log2z(Real x) {
  if (x < 0 || std::isnan(x)) fail(ErrorCode::invalid_argument, "log2z of a negative number");
  if (x == 0) return 0;
  return std::log2(x);
}

Real l_small(Real p) {
  if (!(p > 6)) fail(ErrorCode::invalid_argument, "l_p requires p > 6");
  return std::log2(p) / std::log2(p - 5);
}

Real L_big(Real p) {
  if (!(p > 14)) fail(ErrorCode::invalid_argument, "L_p requires p > 14");
  // log2(2^t - 1) = t + log2(1 - 2^-t), evaluated without cancellation.
  const Real t = (p - 12) / 2;
  const Real denom = t + std::log1p(-std::exp2(-t)) / std::log(2.0L);
  return p / denom;
}

Real V(const Surface& s, Real k) {
  if (!(k > 0)) fail(ErrorCode::invalid_argument, "V requires k > 0");
  const int xi = s.complexity();
  if (xi <= 0) fail(ErrorCode::invalid_argument, "surface has nonpositive complexity");
  const Real base = kM * kM * static_cast<Real>(s.abs_euler()) * (k + static_cast<Real>(xi) * kM);
  Real v = 1;
  for (int e = 0; e < xi + 2; ++e) v *= base;
  return v;
}

namespace {

u64 checked_pow(u64 base, unsigned exp) {
  u64 r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) fail(ErrorCode::overflow, "P bound exceeds 64 bits");
  }
  return r;
}

u64 checked_times(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::overflow, "P bound exceeds 64 bits");
  return r;
}

}  // namespace

PBounds p_bounds(const Surface& s) {
  const int xi = s.complexity();
  if (xi <= 0) fail(ErrorCode::invalid_argument, "surface has nonpositive complexity");
  PBounds out{};
  out.xi_bound = checked_times(static_cast<u64>(xi), checked_pow(4, static_cast<unsigned>(xi)));
  if (s.boundaries == 0) {
    out.chromatic_bound = checked_times(s.genus, checked_pow(4, s.genus));
  } else {
    out.chromatic_bound = checked_times(s.genus + 1, checked_pow(2, 2 * s.genus + s.boundaries - 1));
  }
  out.upper = std::min(out.xi_bound, out.chromatic_bound);
  if (xi == 1) out.minimal_known = 2;
  return out;
}

u64 P_upper(const Surface& s) { return p_bounds(s).upper; }

i64 half_index(i64 k) {
  if (k < 0) fail(ErrorCode::invalid_argument, "cutoff must be nonnegative");
  return (k + 2) / 2;
}

Real U(const Surface& s, i64 k, u64 P) {
  if (s.complexity() <= 0) fail(ErrorCode::invalid_argument, "surface has nonpositive complexity");
  if (k < 28) fail(ErrorCode::precondition, "U requires k >= 28");
  if (P < 2) fail(ErrorCode::invalid_argument, "U requires P >= 2");
  return static_cast<Real>(P - 1) * 2 * L_big(static_cast<Real>(half_index(k))) + 2;
}

Real mainone_denominator(i64 k) {
  if (k < 18) fail(ErrorCode::precondition, "the xi = 1 bound requires k >= 18");
  return 2 * l_small(static_cast<Real>(half_index(k))) + 1;
}

Coefficients application_coefficients(const Surface& s, i64 k, Application which, std::optional<u64> P) {
  Coefficients c{};
  c.which = which;
  c.k = k;
  c.P = P ? *P : P_upper(s);
  const Real kr = static_cast<Real>(k);
  switch (which) {
    case Application::tight: {
      if (k < 228) fail(ErrorCode::precondition, "tight-geodesic coefficients require k >= 228");
      c.shifted_cutoff = k - 200;
      c.U = U(s, c.shifted_cutoff, c.P);
      const Real d = static_cast<Real>(c.shifted_cutoff);
      c.multiplier = kr * c.U / d + 2.0L / 3.0L;
      c.additive = 2 * kr / d + 2.0L / 3.0L;
      break;
    }
    case Application::endpoint: {
      if (k < 128) fail(ErrorCode::precondition, "endpoint-geodesic coefficients require k >= 128");
      c.shifted_cutoff = k - 100;
      c.U = U(s, c.shifted_cutoff, c.P);
      const Real d = static_cast<Real>(c.shifted_cutoff);
      c.multiplier = kr * c.U / d;
      c.additive = 4 * kr / d;
      break;
    }
    case Application::pure_upper: {
      if (k < 32) fail(ErrorCode::precondition, "pure-class upper coefficients require k >= 32");
      c.shifted_cutoff = k - 4;
      c.U = U(s, c.shifted_cutoff, c.P);
      const Real d = static_cast<Real>(c.shifted_cutoff);
      c.multiplier = 2 * kr * c.U / d;
      c.additive = 4 * kr * static_cast<Real>(s.complexity()) / d;
      break;
    }
  }
  c.V = V(s, kr);
  return c;
}

Application parse_application(std::string_view name) {
  if (name == "tight") return Application::tight;
  if (name == "endpoint") return Application::endpoint;
  if (name == "pure-upper" || name == "pure_upper") return Application::pure_upper;
  fail(ErrorCode::parse, "unknown coefficient family '" + std::string(name) + "'");
}

std::string_view application_name(Application which) {
  switch (which) {
    case Application::tight: return "tight";
    case Application::endpoint: return "endpoint";
    case Application::pure_upper: return "pure-upper";
  }
  return "?";
}

PlotFunction parse_plot_function(std::string_view name) {
  if (name == "l") return PlotFunction::l_small;
  if (name == "L") return PlotFunction::L_big;
  fail(ErrorCode::parse, "plot function must be 'l' or 'L'");
}

namespace {

std::string fixed(Real v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lf", digits, v);
  return buf;
}

}  // namespace

std::string constant_plot_svg(PlotFunction which, i64 from, i64 to) {
  if (from > to) fail(ErrorCode::invalid_argument, "empty plot range");
  const bool small = which == PlotFunction::l_small;
  if (small && from <= 6) fail(ErrorCode::invalid_argument, "l_p plot range must start above 6");
  if (!small && from <= 14) fail(ErrorCode::invalid_argument, "L_p plot range must start above 14");

  const auto f = [&](i64 p) { return small ? l_small(static_cast<Real>(p)) : L_big(static_cast<Real>(p)); };
  const Real limit = small ? 1 : 2;

  constexpr int kMaxPoints = 2000;
  std::vector<i64> xs;
  const i64 span = to - from;
  if (span + 1 <= kMaxPoints) {
    for (i64 p = from; p <= to; ++p) xs.push_back(p);
  } else {
    for (int i = 0; i < kMaxPoints; ++i) xs.push_back(from + static_cast<i64>(static_cast<i128>(span) * i / (kMaxPoints - 1)));
  }

  Real ymax = limit;
  for (i64 p : xs) ymax = std::max(ymax, f(p));
  const Real ymin = limit - (ymax - limit) * 0.05L;
  ymax += (ymax - limit) * 0.05L;

  constexpr Real W = 640, H = 400, left = 60, right = 20, top = 30, bottom = 40;
  const Real pw = W - left - right, ph = H - top - bottom;
  const auto px = [&](i64 p) {
    return span == 0 ? left + pw / 2 : left + pw * static_cast<Real>(p - from) / static_cast<Real>(span);
  };
  const auto py = [&](Real y) { return top + ph * (ymax - y) / (ymax - ymin); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"400\" fill=\"white\"/>\n";
  svg += "<text x=\"320\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">";
  svg += small ? "l_p = log2(p) / log2(p - 5)" : "L_p = p / log2(2^((p - 12)/2) - 1)";
  svg += "</text>\n";
  svg += "<line x1=\"" + fixed(left, 2) + "\" y1=\"" + fixed(top + ph, 2) + "\" x2=\"" + fixed(left + pw, 2) +
         "\" y2=\"" + fixed(top + ph, 2) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fixed(left, 2) + "\" y1=\"" + fixed(top, 2) + "\" x2=\"" + fixed(left, 2) + "\" y2=\"" +
         fixed(top + ph, 2) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fixed(left, 2) + "\" y1=\"" + fixed(py(limit), 2) + "\" x2=\"" + fixed(left + pw, 2) +
         "\" y2=\"" + fixed(py(limit), 2) + "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";

  for (int t = 0; t <= 4; ++t) {
    const i64 p = from + static_cast<i64>(static_cast<i128>(span) * t / 4);
    svg += "<text x=\"" + fixed(px(p), 2) + "\" y=\"" + fixed(top + ph + 16, 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + std::to_string(p) + "</text>\n";
    const Real y = ymin + (ymax - ymin) * t / 4;
    svg += "<text x=\"" + fixed(left - 6, 2) + "\" y=\"" + fixed(py(y) + 4, 2) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + fixed(y, 3) + "</text>\n";
  }

  svg += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) svg += ' ';
    svg += fixed(px(xs[i]), 2) + "," + fixed(py(f(xs[i])), 2);
  }
  svg += "\"/>\n</svg>\n";
  return svg;
}

void emit_constant_plot(PlotFunction which, i64 from, i64 to, const std::filesystem::path& out) {
  const std::string svg = constant_plot_svg(which, from, to);
  std::ofstream f(out, std::ios::binary);
  if (!f) fail(ErrorCode::io, "cannot open " + out.string() + " for writing");
  f << svg;
  if (!f) fail(ErrorCode::io, "write to " + out.string() + " failed");
}

}  // namespace curvebound::constants
