#include "farey.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

namespace curvebound::farey {

using boost::multiprecision::gcd;

// ---------------------------------------------------------------- slopes

Slope Slope::of(i128 p, i128 q) {
  if (p == 0 && q == 0) fail(ErrorCode::invalid_argument, "0/0 is not a slope");
  const i128 g = gcd128(p, q);
  p /= g;
  q /= g;
  if (q < 0 || (q == 0 && p < 0)) {
    p = -p;
    q = -q;
  }
  return Slope(narrow_i64(p), narrow_i64(q));
}

Slope Slope::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "inf" || text == "\xE2\x88\x9E") return infinity();
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return of(parse_i64(text), 1);
  const i64 p = parse_i64(text.substr(0, slash));
  const i64 q = parse_i64(text.substr(slash + 1));
  return of(p, q);
}

std::string Slope::str() const { return std::to_string(p_) + "/" + std::to_string(q_); }

bool value_less(const Slope& a, const Slope& b) {
  if (a.is_infinity()) return false;
  if (b.is_infinity()) return true;
  return static_cast<i128>(a.p()) * b.q() < static_cast<i128>(b.p()) * a.q();
}

u128 intersection(const Slope& x, const Slope& y) {
  const i128 det = static_cast<i128>(x.p()) * y.q() - static_cast<i128>(x.q()) * y.p();
  return static_cast<u128>(det < 0 ? -det : det);
}

// -------------------------------------------------------------- matrices

Slope Matrix::apply(const Slope& s) const {
  const i128 p = checked_add(static_cast<i128>(a) * s.p(), static_cast<i128>(b) * s.q());
  const i128 q = checked_add(static_cast<i128>(c) * s.p(), static_cast<i128>(d) * s.q());
  return Slope::of(p, q);
}

Matrix Matrix::operator*(const Matrix& o) const {
  const auto entry = [](i64 x1, i64 y1, i64 x2, i64 y2) {
    return narrow_i64(checked_add(static_cast<i128>(x1) * y1, static_cast<i128>(x2) * y2));
  };
  return Matrix{entry(a, o.a, b, o.c), entry(a, o.b, b, o.d), entry(c, o.a, d, o.c), entry(c, o.b, d, o.d)};
}

Matrix Matrix::inverse() const {
  const i128 dt = det();
  if (dt == 1) return Matrix{d, -b, -c, a};
  if (dt == -1) return Matrix{-d, b, c, -a};
  fail(ErrorCode::invalid_argument, "matrix is not unimodular");
}

Matrix Matrix::power(i64 n) const {
  Matrix base = n < 0 ? inverse() : *this;
  u64 e = n < 0 ? static_cast<u64>(-(n + 1)) + 1 : static_cast<u64>(n);
  Matrix out{};
  while (e) {
    if (e & 1) out = out * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return out;
}

std::string Matrix::str() const {
  return "[[" + std::to_string(a) + "," + std::to_string(b) + "],[" + std::to_string(c) + "," +
         std::to_string(d) + "]]";
}

Matrix Matrix::parse(std::string_view text) {
  std::string digits;
  std::vector<i64> values;
  for (char ch : text) {
    if (ch == '-' || ch == '+' || (ch >= '0' && ch <= '9')) {
      digits += ch;
    } else if (ch == ',' || ch == ']' || ch == '[' || ch == ' ') {
      if (!digits.empty()) values.push_back(parse_i64(digits));
      digits.clear();
    } else {
      fail(ErrorCode::parse, "unexpected character in matrix '" + std::string(text) + "'");
    }
  }
  if (!digits.empty()) values.push_back(parse_i64(digits));
  if (values.size() != 4) fail(ErrorCode::parse, "matrix must have four entries");
  Matrix m{values[0], values[1], values[2], values[3]};
  const i128 dt = m.det();
  if (dt != 1 && dt != -1) fail(ErrorCode::invalid_argument, "matrix is not unimodular");
  return m;
}

Matrix twist_matrix(const Slope& core, i64 n) {
  const i128 p = core.p(), q = core.q();
  const i128 nn = n;
  return Matrix{narrow_i64(checked_sub(1, checked_mul(nn, p * q))), narrow_i64(checked_mul(nn, p * p)),
                narrow_i64(checked_mul(-nn, q * q)), narrow_i64(checked_add(1, checked_mul(nn, p * q)))};
}

// ---------------------------------------------------------------- frames

namespace {

struct Vec {
  i128 p;
  i128 q;
};

/// Coefficients (a, b) with a p + b q = 1 for coprime p, q.
std::pair<i128, i128> bezout(i128 p, i128 q) {
  i128 old_r = p, r = q, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const i128 quot = old_r / r;
    i128 tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
    tmp = old_t - quot * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_s, old_t};
}

/// Matrix [[a, b], [-q, p]] sending the slope p/q to 1/0.
struct Frame {
  i128 p, q, a, b;

  explicit Frame(const Slope& s) : p(s.p()), q(s.q()) {
    std::tie(a, b) = bezout(p, q);
  }

  Vec to(const Slope& s) const {
    return Vec{a * s.p() + b * s.q(), p * s.q() - q * s.p()};
  }

  Slope from(const i256& u, const i256& v) const {
    const i256 P = i256(p) * u - i256(b) * v;
    const i256 Q = i256(q) * u + i256(a) * v;
    return slope256(P, Q);
  }

  static Slope slope256(i256 P, i256 Q) {
    const i256 g = gcd(P < 0 ? i256(-P) : P, Q < 0 ? i256(-Q) : Q);
    if (g > 1) {
      P /= g;
      Q /= g;
    }
    static const i256 bound = i256(1) << 62;
    if (P >= bound || P <= -bound || Q >= bound || Q <= -bound)
      fail(ErrorCode::overflow, "strip vertex does not fit in 64-bit slope coordinates");
    return Slope::of(static_cast<i128>(static_cast<long long>(P)), static_cast<i128>(static_cast<long long>(Q)));
  }
};

/// The triangle strip between x (sent to infinity) and y. Index m + 1 of the
/// arrays c, D, E refers to convergent c_m, m = -1..n.
struct Strip {
  Frame frame;
  int n = 0;
  std::vector<i128> a;
  std::vector<Vec> c;
  std::vector<i128> D;
  std::vector<i128> E;

  Strip(const Slope& x, const Slope& y, bool want_backward) : frame(x) {
    Vec yv = frame.to(y);
    if (yv.q < 0) {
      yv.p = -yv.p;
      yv.q = -yv.q;
    }
    i128 r = yv.p, s = yv.q;
    const i128 a0 = floor_div(r, s);
    a.push_back(a0);
    r -= a0 * s;
    while (r != 0) {
      const i128 t = s / r;
      a.push_back(t);
      const i128 rem = s - t * r;
      s = r;
      r = rem;
    }
    n = static_cast<int>(a.size()) - 1;

    c.resize(n + 2);
    c[0] = Vec{1, 0};
    Vec prev{0, 1};
    for (int m = 0; m <= n; ++m) {
      const Vec cur{checked_add(checked_mul(a[m], c[m].p), prev.p), checked_add(checked_mul(a[m], c[m].q), prev.q)};
      prev = c[m];
      c[m + 1] = cur;
    }

    D.resize(n + 2);
    D[0] = 0;
    D[1] = 1;
    for (int k = 0; k + 1 <= n; ++k) D[k + 2] = std::min(D[k] + a[k + 1], D[k + 1] + 1);

    if (want_backward) {
      E.resize(n + 2);
      E[n + 1] = 0;
      E[n] = 1;
      for (int k = n - 1; k >= 0; --k) E[k] = std::min(E[k + 2] + a[k + 1], E[k + 1] + 1);
    }
  }

  i128 distance() const { return D[n + 1]; }

  // A strip vertex: convergent c_m when j == 0, otherwise the interior
  // vertex c_{m-1} + j c_m of the fan pivoting at c_m.
  struct Vertex {
    int m;
    i128 j;
    bool operator==(const Vertex&) const = default;
  };

  Vertex fan_vertex(int k, i128 j) const {
    if (j == 0) return Vertex{k - 1, 0};
    if (j == a[k + 1]) return Vertex{k + 1, 0};
    return Vertex{k, j};
  }

  i128 dx(const Vertex& v) const {
    if (v.j == 0) return D[v.m + 1];
    return std::min(D[v.m] + v.j, D[v.m + 1] + 1);
  }

  i128 dy(const Vertex& v) const {
    if (v.j == 0) return E[v.m + 1];
    return std::min(E[v.m + 2] + a[v.m + 1] - v.j, E[v.m + 1] + 1);
  }

  std::pair<i256, i256> frame_vector(const Vertex& v) const {
    if (v.j == 0) return {i256(c[v.m + 1].p), i256(c[v.m + 1].q)};
    return {i256(c[v.m].p) + i256(v.j) * i256(c[v.m + 1].p), i256(c[v.m].q) + i256(v.j) * i256(c[v.m + 1].q)};
  }

  Slope original(const Vertex& v) const {
    const auto [u, w] = frame_vector(v);
    return frame.from(u, w);
  }
};

}  // namespace

u64 distance(const Slope& x, const Slope& y) {
  if (x == y) return 0;
  const Strip strip(x, y, false);
  return static_cast<u64>(strip.distance());
}

FareyPath geodesic(const Slope& x, const Slope& y) {
  FareyPath path;
  path.vertices.push_back(x);
  if (x == y) return path;
  const Strip st(x, y, true);
  const i128 total = st.distance();

  using Vertex = Strip::Vertex;
  Vertex cur{-1, 0};
  for (i128 step = 0; step < total; ++step) {
    const i128 want_dx = step + 1;
    const i128 want_dy = total - step - 1;
    std::vector<Vertex> cand;
    const auto consider = [&](const Vertex& v) {
      if (st.dx(v) == want_dx && st.dy(v) == want_dy) cand.push_back(v);
    };

    if (cur.j == 0) {
      const int m = cur.m;
      if (m >= 0) consider(Vertex{m - 1, 0});
      if (m + 1 <= st.n) consider(Vertex{m + 1, 0});
      if (m - 1 >= 0) consider(st.fan_vertex(m - 1, st.a[m] - 1));
      if (m + 1 <= st.n - 1) consider(st.fan_vertex(m + 1, 1));
      if (m >= 0 && m <= st.n - 1 && st.a[m + 1] >= 2) {
        // Interior of the fan pivoting at c_m: solve for the admissible range of j.
        const i128 alpha = st.D[m], beta = st.D[m + 1] + 1;
        const i128 gamma = st.E[m + 2] + st.a[m + 1], delta = st.E[m + 1] + 1;
        i128 lo = 1, hi = st.a[m + 1] - 1;
        bool ok = true;
        if (want_dx < beta) {
          lo = std::max(lo, want_dx - alpha);
          hi = std::min(hi, want_dx - alpha);
        } else if (want_dx == beta) {
          lo = std::max(lo, beta - alpha);
        } else {
          ok = false;
        }
        if (want_dy < delta) {
          lo = std::max(lo, gamma - want_dy);
          hi = std::min(hi, gamma - want_dy);
        } else if (want_dy == delta) {
          hi = std::min(hi, gamma - delta);
        } else {
          ok = false;
        }
        if (ok && lo <= hi) {
          std::vector<i128> js{lo, hi};
          // Original-frame denominator Q0 + j Q1 changes sign near the pole.
          const auto [p0, q0] = st.frame_vector(Vertex{m - 1, 0});
          const auto [p1, q1] = st.frame_vector(Vertex{m, 0});
          const i256 Q0 = i256(st.frame.q) * p0 + i256(st.frame.a) * q0;
          const i256 Q1 = i256(st.frame.q) * p1 + i256(st.frame.a) * q1;
          if (Q1 != 0) {
            i256 num = -Q0, den = Q1;
            if (den < 0) {
              num = -num;
              den = -den;
            }
            i256 f = num / den;
            if (num % den != 0 && num < 0) f -= 1;
            for (int d = -1; d <= 2; ++d) {
              const i256 jj = f + d;
              if (jj >= i256(lo) && jj <= i256(hi)) js.push_back(to_i128(jj));
            }
          }
          for (i128 j : js) cand.push_back(Vertex{m, j});
        }
      }
    } else {
      const int k = cur.m;
      consider(Vertex{k, 0});
      consider(st.fan_vertex(k, cur.j - 1));
      consider(st.fan_vertex(k, cur.j + 1));
    }

    if (cand.empty()) fail(ErrorCode::internal, "geodesic construction found no admissible successor");
    Vertex best = cand.front();
    Slope best_slope = st.original(best);
    for (std::size_t i = 1; i < cand.size(); ++i) {
      const Slope s = st.original(cand[i]);
      if (value_less(s, best_slope)) {
        best = cand[i];
        best_slope = s;
      }
    }
    path.vertices.push_back(best_slope);
    cur = best;
  }
  if (!(path.vertices.back() == y)) fail(ErrorCode::internal, "geodesic construction did not reach its endpoint");
  return path;
}

// ---------------------------------------------------------- twist frames

TwistFrame::TwistFrame(const Slope& core) : core_(core) {
  const auto [a, b] = bezout(core.p(), core.q());
  a_ = narrow_i64(a);
  b_ = narrow_i64(b);
}

Tau TwistFrame::coordinate(const Slope& x) const {
  i128 num = static_cast<i128>(a_) * x.p() + static_cast<i128>(b_) * x.q();
  i128 den = static_cast<i128>(core_.p()) * x.q() - static_cast<i128>(core_.q()) * x.p();
  if (den == 0) fail(ErrorCode::precondition, "curve " + x.str() + " equals the annulus core");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Tau{num, den};
}

Real Gap::value() const { return to_real(num) / to_real(den); }

u128 Gap::ceil() const {
  i256 q = num / den;
  if (q * den != num) q += 1;
  return narrow_u128(q);
}

std::string Gap::str() const {
  if (num == 0) return "0";
  const i256 g = gcd(num, den);
  const i256 n = num / g, d = den / g;
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

namespace {

constexpr i128 kSmall = static_cast<i128>(1) << 62;

bool small(i128 v) { return v < kSmall && v > -kSmall; }

}  // namespace

Gap gap_between(const Tau& x, const Tau& y) {
  i256 num = i256(x.num) * y.den - i256(y.num) * x.den;
  if (num < 0) num = -num;
  return Gap{num, i256(x.den) * y.den};
}

u128 annular_distance_between(const Tau& x, const Tau& y) {
  if (small(x.num) && small(x.den) && small(y.num) && small(y.den)) {
    i128 num = x.num * y.den - y.num * x.den;
    if (num < 0) num = -num;
    const i128 den = x.den * y.den;
    i128 q = num / den;
    if (q * den != num) ++q;
    return static_cast<u128>(q) + 1;
  }
  return gap_between(x, y).ceil() + 1;
}

Gap twist_gap(const Slope& core, const Slope& x, const Slope& y) {
  const TwistFrame f(core);
  return gap_between(f.coordinate(x), f.coordinate(y));
}

u128 annular_distance(const Slope& core, const Slope& x, const Slope& y) {
  const TwistFrame f(core);
  return annular_distance_between(f.coordinate(x), f.coordinate(y));
}

std::vector<PivotDatum> large_annuli(const Slope& x, const Slope& y, i64 k) {
  if (x == y) return {};
  if (k < 2)
    fail(ErrorCode::precondition,
         "the set of annuli with distance above " + std::to_string(k) + " is infinite under the model distance");
  const Strip st(x, y, false);
  std::vector<PivotDatum> out;
  const auto test = [&](const Strip::Vertex& v) {
    const Slope core = st.original(v);
    const Gap g = twist_gap(core, x, y);
    const u128 d = g.ceil() + 1;
    if (d > static_cast<u128>(k)) out.push_back(PivotDatum{core, g, d});
  };
  for (int m = 0; m <= st.n - 1; ++m) {
    if (k == 2 && st.a[m + 1] >= 2) {
      test(Strip::Vertex{m, 1});
    }
    test(Strip::Vertex{m, 0});
    if (k == 2 && st.a[m + 1] >= 3) {
      test(Strip::Vertex{m, st.a[m + 1] - 1});
    }
  }
  return out;
}

Slack parse_slack(std::string_view name) {
  if (name == "raw") return Slack::raw;
  if (name == "minus1") return Slack::minus1;
  if (name == "plus1") return Slack::plus1;
  fail(ErrorCode::parse, "unknown slack '" + std::string(name) + "'");
}

std::string_view slack_name(Slack s) {
  switch (s) {
    case Slack::raw: return "raw";
    case Slack::minus1: return "minus1";
    case Slack::plus1: return "plus1";
  }
  return "?";
}

Real script_s(const Slope& x, const Slope& y, i64 k, Slack slack) {
  if (k < 18) fail(ErrorCode::precondition, "the clamped projection sum requires k >= 18");
  if (x == y) return 0;
  const Real kr = static_cast<Real>(k);
  Real total = constants::bracket(static_cast<Real>(distance(x, y)), kr);
  const i64 threshold = slack == Slack::plus1 ? k - 1 : k;
  const Real delta = slack == Slack::plus1 ? 1 : (slack == Slack::minus1 ? -1 : 0);
  for (const PivotDatum& pd : large_annuli(x, y, threshold)) {
    total += constants::log2z(constants::bracket(to_real(pd.annular_distance) + delta, kr));
  }
  return total;
}

// ---------------------------------------------------------------- checks

namespace {

std::string pair_arg(const Slope& x, const Slope& y) { return x.str() + "," + y.str(); }

void require_distinct(const Slope& x, const Slope& y) {
  if (x == y) fail(ErrorCode::precondition, "the pair must consist of distinct curves");
}

}  // namespace

InequalityReport check_mainone(const Slope& x, const Slope& y, i64 k, const CheckOptions& opt) {
  if (k < 18) fail(ErrorCode::precondition, "the xi = 1 bound requires k >= 18");
  require_distinct(x, y);
  const Slack slack = opt.sound_slack ? Slack::minus1 : Slack::raw;
  const u128 i = intersection(x, y);
  const Real s = script_s(x, y, k, slack);
  const Real denom = constants::mainone_denominator(k);
  InequalityReport r;
  r.theorem = "mainone";
  r.inputs = {{"x", x.str()}, {"y", y.str()}, {"k", std::to_string(k)}};
  r.slack = std::string(slack_name(slack));
  r.set_margin((s - 1) / denom, log2_count(i), opt.tolerance);
  r.details = {{"intersection", to_decimal(i)},
               {"distance", std::to_string(distance(x, y))},
               {"script_s", format_real(s)},
               {"denominator", format_real(denom)},
               {"pivots", std::to_string(large_annuli(x, y, k).size())}};
  r.replay = "curvebound farey check --theorem mainone --k " + std::to_string(k) + " --pair " + pair_arg(x, y) +
             (opt.sound_slack ? "" : " --slack raw");
  return r;
}

InequalityReport check_igd(const Slope& x, const Slope& y, i64 k, const CheckOptions& opt) {
  if (k < 18) fail(ErrorCode::precondition, "the clamped projection sum requires k >= 18");
  require_distinct(x, y);
  const Slack slack = opt.sound_slack ? Slack::plus1 : Slack::raw;
  const u128 i = intersection(x, y);
  const Real s = script_s(x, y, k, slack);
  const Real v = constants::V(opt.surface, static_cast<Real>(k));
  InequalityReport r;
  r.theorem = "igd";
  r.inputs = {{"x", x.str()}, {"y", y.str()}, {"k", std::to_string(k)}, {"surface", opt.surface.str()}};
  r.slack = std::string(slack_name(slack));
  r.set_margin(log2_count(i), v * s + v, opt.tolerance);
  r.details = {{"intersection", to_decimal(i)}, {"script_s", format_real(s)}, {"V", format_real(v)}};
  r.replay = "curvebound farey check --theorem igd --k " + std::to_string(k) + " --pair " + pair_arg(x, y) +
             (opt.sound_slack ? "" : " --slack raw");
  return r;
}

InequalityReport check_hempel_lickorish(const Slope& x, const Slope& y, const CheckOptions& opt) {
  require_distinct(x, y);
  const u128 i = intersection(x, y);
  const Real d = static_cast<Real>(distance(x, y));
  const Real li = log2_count(i);
  const Real general_rhs = 2 * li + 2;
  const Real sharp_rhs = li + 1;
  InequalityReport r;
  r.theorem = "hl";
  r.inputs = {{"x", x.str()}, {"y", y.str()}};
  r.set_margin(d, sharp_rhs, opt.tolerance);
  const Verdict general = decide(d, general_rhs, opt.tolerance);
  if (general == Verdict::fail) r.verdict = Verdict::fail;
  r.details = {{"intersection", to_decimal(i)},
               {"distance", format_real(d)},
               {"general_rhs", format_real(general_rhs)},
               {"general_margin", format_real(general_rhs - d)},
               {"general_verdict", std::string(verdict_name(general))},
               {"sharp_rhs", format_real(sharp_rhs)},
               {"sharp_margin", format_real(sharp_rhs - d)}};
  r.replay = "curvebound farey check --theorem hl --pair " + pair_arg(x, y);
  return r;
}

InequalityReport lemma_annulus_check(const Slope& core, const Slope& x, const Slope& y, i64 n,
                                     const CheckOptions& opt) {
  if (n < 6) fail(ErrorCode::precondition, "the annulus lower bound requires n >= 6");
  const u128 d = annular_distance(core, x, y);
  if (d <= static_cast<u128>(n))
    fail(ErrorCode::precondition, "annulus " + core.str() + " has distance " + to_decimal(d) +
                                      ", not above the cutoff " + std::to_string(n));
  const u128 factor = opt.annulus == AnnulusIntersection::doubled_boundary ? 2 : 1;
  const u128 ix = intersection(x, core) * factor;
  const u128 iy = intersection(core, y) * factor;
  const Real d_eff = to_real(d) - (opt.sound_slack ? 1 : 0);
  const Real lhs = constants::log2z(d_eff) / constants::l_small(static_cast<Real>(n + 1)) + log2_count(ix) +
                   log2_count(iy);
  InequalityReport r;
  r.theorem = "lemma-annulus";
  r.inputs = {{"core", core.str()}, {"x", x.str()}, {"y", y.str()}, {"n", std::to_string(n)}};
  r.slack = opt.sound_slack ? "minus1" : "raw";
  r.set_margin(lhs, log2_count(intersection(x, y)), opt.tolerance);
  r.details = {{"annular_distance", to_decimal(d)},
               {"i_x_annulus", to_decimal(ix)},
               {"i_annulus_y", to_decimal(iy)},
               {"annulus_convention", factor == 2 ? "doubled" : "core"},
               {"intersection", to_decimal(intersection(x, y))}};
  r.replay = "curvebound farey check --theorem lemma-annulus --k " + std::to_string(n) + " --core " + core.str() +
             " --pair " + pair_arg(x, y) + (opt.sound_slack ? "" : " --slack raw") +
             (factor == 2 ? " --annulus doubled" : "");
  return r;
}

}  // namespace curvebound::farey
