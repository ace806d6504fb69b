#include "mcg.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

namespace curvebound::mcg {

namespace {

std::string trim(std::string_view t) {
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  return std::string(t);
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(sep, start), text.size());
    out.push_back(trim(text.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

const words::PuncturedSurface& surface_of(const PureMappingClass& phi) {
  if (!phi.surface()) fail(ErrorCode::internal, "multitwist without a surface");
  return *phi.surface();
}

/// Parabolic structure of a trace +-2 matrix: +-T_core^power.
struct Parabolic {
  farey::Slope core;
  i64 power;
};

std::optional<Parabolic> parabolic_of(const farey::Matrix& m) {
  const i128 tr = m.trace();
  if (tr != 2 && tr != -2) return std::nullopt;
  if (m.det() != 1) return std::nullopt;
  const i64 sign = tr == 2 ? 1 : -1;
  // M = sign * (I + n [[-pq, p^2], [-q^2, pq]]).
  const i128 nb = static_cast<i128>(sign) * m.b;
  const i128 nc = -static_cast<i128>(sign) * m.c;
  const i128 npq = -(static_cast<i128>(sign) * m.a - 1);
  if (nb == 0 && nc == 0) return std::nullopt;
  const i128 g = gcd128(nb, nc);
  const i128 n = (nb != 0 ? (nb > 0 ? 1 : -1) : (nc > 0 ? 1 : -1)) * g;
  const auto isqrt = [](i128 v) {
    i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
  };
  const i128 p2 = nb / n, q2 = nc / n;
  if (p2 < 0 || q2 < 0) return std::nullopt;
  i128 p = isqrt(p2);
  const i128 q = isqrt(q2);
  if (p * p != p2 || q * q != q2) return std::nullopt;
  if (n * p * q != npq) p = -p;
  const Parabolic out{farey::Slope::of(p, q), narrow_i64(n)};
  const farey::Matrix normalised{sign * m.a, sign * m.b, sign * m.c, sign * m.d};
  if (!(farey::twist_matrix(out.core, out.power) == normalised)) return std::nullopt;
  return out;
}

bool is_hyperbolic(const farey::Matrix& m) {
  const i128 tr = m.trace();
  return tr > 2 || tr < -2;
}

std::string word_core_id(const words::PuncturedSurface& s, const words::SimpleCurve& c) {
  return "annulus(" + words::to_string(s, c.word()) + ")";
}

}  // namespace

// ------------------------------------------------------ PureMappingClass

PureMappingClass PureMappingClass::matrix(const farey::Matrix& m) {
  const i128 dt = m.det();
  if (dt != 1 && dt != -1) fail(ErrorCode::invalid_argument, "matrix is not unimodular");
  PureMappingClass phi;
  phi.model_ = Model::xi1_matrix;
  phi.matrix_ = m;
  return phi;
}

PureMappingClass PureMappingClass::multitwist(const words::PuncturedSurface& s, std::vector<TwistComponent> twists) {
  if (twists.empty()) fail(ErrorCode::invalid_argument, "a multitwist needs at least one core");
  for (std::size_t i = 0; i < twists.size(); ++i) {
    if (twists[i].power == 0) fail(ErrorCode::invalid_argument, "multitwist powers must be nonzero");
    if (s.is_peripheral(twists[i].core.word()))
      fail(ErrorCode::invalid_argument, "twist core " + words::to_string(s, twists[i].core.word()) + " is peripheral");
    for (std::size_t j = 0; j < i; ++j) {
      if (twists[i].core == twists[j].core) fail(ErrorCode::invalid_argument, "multitwist cores must be distinct");
      if (words::geometric_intersection(s, twists[i].core.word(), twists[j].core.word()) != 0)
        fail(ErrorCode::invalid_argument, "multitwist cores must be pairwise disjoint");
    }
  }
  PureMappingClass phi;
  phi.model_ = Model::multitwist;
  phi.surface_ = s;
  phi.twists_ = std::move(twists);
  return phi;
}

PureMappingClass PureMappingClass::parse(std::string_view spec, const std::optional<words::PuncturedSurface>& s) {
  const std::string text = trim(spec);
  if (!text.empty() && text.front() == '[') return matrix(farey::Matrix::parse(text));
  if (!s) fail(ErrorCode::invalid_argument, "a multitwist spec needs a surface");
  std::vector<TwistComponent> twists;
  for (const std::string& part : split(text, ';')) {
    if (part.empty()) continue;
    const std::string open = "twist(";
    if (part.rfind(open, 0) != 0 || part.back() != ')')
      fail(ErrorCode::parse, "expected twist(core=WORD,power=P), got '" + part + "'");
    std::optional<std::string> core;
    std::optional<i64> power;
    for (const std::string& kv : split(std::string_view(part).substr(open.size(), part.size() - open.size() - 1), ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) fail(ErrorCode::parse, "expected key=value in '" + part + "'");
      const std::string key = trim(kv.substr(0, eq));
      const std::string value = trim(kv.substr(eq + 1));
      if (key == "core") {
        core = value;
      } else if (key == "power") {
        power = parse_i64(value);
      } else {
        fail(ErrorCode::parse, "unknown twist field '" + key + "'");
      }
    }
    if (!core || !power) fail(ErrorCode::parse, "twist needs both core and power: '" + part + "'");
    twists.push_back(TwistComponent{words::SimpleCurve::certify(*s, words::parse_word(*s, *core)), *power});
  }
  return multitwist(*s, std::move(twists));
}

constants::Surface PureMappingClass::constants_surface() const {
  if (model_ == Model::xi1_matrix) return constants::Surface::make(1, 1);
  return constants::Surface::make(surface_->genus(), surface_->punctures());
}

int PureMappingClass::complexity() const { return constants_surface().complexity(); }

unsigned PureMappingClass::abs_euler() const { return constants_surface().abs_euler(); }

std::string PureMappingClass::str() const {
  if (model_ == Model::xi1_matrix) return matrix_.str();
  std::string out;
  for (const TwistComponent& t : twists_) {
    if (!out.empty()) out += ";";
    out += "twist(core=" + words::to_string(*surface_, t.core.word()) + ",power=" + std::to_string(t.power) + ")";
  }
  return out;
}

Curve PureMappingClass::apply(const Curve& x, i64 n) const {
  if (model_ == Model::xi1_matrix) {
    const auto* s = std::get_if<farey::Slope>(&x);
    if (!s) fail(ErrorCode::invalid_argument, "matrix classes act on slopes");
    return matrix_.power(n).apply(*s);
  }
  const auto* w = std::get_if<words::SimpleCurve>(&x);
  if (!w) fail(ErrorCode::invalid_argument, "multitwists act on words");
  words::CyclicWord out = w->word();
  for (const TwistComponent& t : twists_) {
    out = words::dehn_twist(*surface_, t.core, narrow_i64(checked_mul(t.power, n)), out);
  }
  return words::SimpleCurve::certify(*surface_, out);
}

Curve PureMappingClass::parse_curve(std::string_view text) const {
  if (model_ == Model::xi1_matrix) return farey::Slope::parse(text);
  return words::SimpleCurve::certify(*surface_, words::parse_word(*surface_, text));
}

std::string PureMappingClass::curve_str(const Curve& x) const {
  if (const auto* s = std::get_if<farey::Slope>(&x)) return s->str();
  return words::to_string(surface_of(*this), std::get<words::SimpleCurve>(x).word());
}

u128 PureMappingClass::intersection(const Curve& x, const Curve& y) const {
  if (model_ == Model::xi1_matrix) return farey::intersection(std::get<farey::Slope>(x), std::get<farey::Slope>(y));
  return words::geometric_intersection(*surface_, std::get<words::SimpleCurve>(x).word(),
                                       std::get<words::SimpleCurve>(y).word());
}

// ------------------------------------------------------------- supports

std::vector<SupportComponent> supports(const PureMappingClass& phi) {
  std::vector<SupportComponent> out;
  if (phi.model() == Model::multitwist) {
    for (const TwistComponent& t : phi.twists()) {
      SupportComponent c;
      c.id = word_core_id(surface_of(phi), t.core);
      c.kind = chains::Kind::annular;
      c.power = t.power;
      c.word_core = t.core;
      out.push_back(std::move(c));
    }
    return out;
  }
  const farey::Matrix& m = phi.matrix_value();
  if (is_hyperbolic(m)) {
    SupportComponent c;
    c.id = "S";
    c.kind = chains::Kind::nonannular;
    out.push_back(std::move(c));
    return out;
  }
  if (const auto par = parabolic_of(m)) {
    SupportComponent c;
    c.id = "annulus(" + par->core.str() + ")";
    c.kind = chains::Kind::annular;
    c.power = par->power;
    c.slope_core = par->core;
    out.push_back(std::move(c));
    return out;
  }
  if (m.det() != 1) fail(ErrorCode::unsupported, "orientation-reversing matrix " + m.str() + " is not a mapping class here");
  const i128 tr = m.trace();
  if (tr == 2 || tr == -2)
    fail(ErrorCode::unsupported, "matrix " + m.str() + " acts trivially on slopes and has empty support");
  fail(ErrorCode::unsupported, "matrix " + m.str() + " has finite order (|trace| < 2) and is not pure");
}

std::string_view rationale_name(Rationale r) { return r == Rationale::gadre_tsai ? "gadre_tsai" : "masur_minsky"; }

IterationBound min_power_for_cutoff(const PureMappingClass& phi, i64 k) {
  if (k < 1) fail(ErrorCode::precondition, "the cutoff must be at least 1");
  IterationBound best{1, Rationale::masur_minsky};
  bool first = true;
  for (const SupportComponent& c : supports(phi)) {
    IterationBound b{};
    if (c.kind == chains::Kind::annular) {
      const i128 p = abs128(c.power);
      b = IterationBound{narrow_i64(k / p + 1), Rationale::masur_minsky};
    } else {
      const i128 chi = phi.abs_euler();
      b = IterationBound{narrow_i64(checked_add(checked_mul(200 * chi * chi, k), 1)), Rationale::gadre_tsai};
    }
    if (first || b.n_min > best.n_min) best = b;
    first = false;
  }
  return best;
}

ModelValue support_projection_model(const PureMappingClass& phi, const Curve& x, i64 n,
                                    const SupportComponent& component) {
  if (component.kind == chains::Kind::nonannular) {
    const farey::Slope& s = std::get<farey::Slope>(x);
    return ModelValue{farey::distance(s, std::get<farey::Slope>(phi.apply(x, n))), 0};
  }
  if (component.slope_core) {
    const farey::Slope& s = std::get<farey::Slope>(x);
    if (s == *component.slope_core) fail(ErrorCode::precondition, "x is disjoint from the support " + component.id);
    return ModelValue{farey::annular_distance(*component.slope_core, s, std::get<farey::Slope>(phi.apply(x, n))), 1};
  }
  const words::SimpleCurve& w = std::get<words::SimpleCurve>(x);
  if (words::geometric_intersection(surface_of(phi), w.word(), component.word_core->word()) == 0)
    fail(ErrorCode::precondition, "x is disjoint from the support " + component.id);
  const i128 twist = abs128(checked_mul(component.power, n));
  return ModelValue{static_cast<u128>(twist) + 1, 2};
}

// ------------------------------------------------------------- checkers

namespace {

struct SupportEvaluation {
  Real d_sum = 0;
  Real log_i_sum = 0;
  std::string values;
};

/// Verifies d_Z > k on every component and sums the D-weights at model
/// value + direction * slack.
SupportEvaluation evaluate_supports(const PureMappingClass& phi, const Curve& x, i64 n, i64 k, int direction,
                                     bool sound) {
  if (n == 0) fail(ErrorCode::precondition, "the identity iterate never exceeds a cutoff");
  const std::vector<SupportComponent> comps = supports(phi);
  const IterationBound bound = min_power_for_cutoff(phi, k);
  const i128 abs_n = abs128(n);
  SupportEvaluation ev;
  for (const SupportComponent& c : comps) {
    const ModelValue mv = support_projection_model(phi, x, n, c);
    const u128 low = mv.value > mv.slack ? mv.value - mv.slack : 0;
    if (low <= static_cast<u128>(k) && abs_n < bound.n_min)
      fail(ErrorCode::precondition, "cannot establish d > " + std::to_string(k) + " on " + c.id + " (model " +
                                        to_decimal(mv.value) + " +- " + to_decimal(mv.slack) + ", n below " +
                                        std::to_string(bound.n_min) + ")");
    const u128 used = !sound ? mv.value : direction < 0 ? low : mv.value + mv.slack;
    const Real dz = c.kind == chains::Kind::annular ? log2_count(used) : to_real(used);
    u128 ixz = 0;
    if (c.slope_core) {
      ixz = farey::intersection(std::get<farey::Slope>(x), *c.slope_core);
    } else if (c.word_core) {
      ixz = words::geometric_intersection(surface_of(phi), std::get<words::SimpleCurve>(x).word(), c.word_core->word());
    }
    ev.d_sum += dz;
    ev.log_i_sum += log2_count(ixz);
    if (!ev.values.empty()) ev.values += ";";
    ev.values += c.id + "=" + to_decimal(mv.value) + "~" + to_decimal(mv.slack);
  }
  return ev;
}

std::string replay_pure(const PureMappingClass& phi, const Curve& x, i64 n, i64 k, const char* which, bool sound) {
  std::string out = "curvebound mcg pure-check";
  if (phi.model() == Model::multitwist) out += " --surface " + phi.surface()->str();
  return out + " --phi '" + phi.str() + "' --x '" + phi.curve_str(x) + "' --n " + std::to_string(n) + " --k " +
         std::to_string(k) + " --which " + which + (sound ? "" : " --slack raw");
}

Fields pure_inputs(const PureMappingClass& phi, const Curve& x, i64 n, i64 k) {
  Fields f;
  if (phi.model() == Model::multitwist) f.emplace_back("surface", phi.surface()->str());
  f.emplace_back("phi", phi.str());
  f.emplace_back("x", phi.curve_str(x));
  f.emplace_back("n", std::to_string(n));
  f.emplace_back("k", std::to_string(k));
  return f;
}

}  // namespace

InequalityReport check_pure_lower(const PureMappingClass& phi, const Curve& x, i64 n, i64 k, const CheckOptions& opt) {
  if (k < 14) fail(ErrorCode::precondition, "the pure-class lower bound requires k >= 14");
  const SupportEvaluation ev = evaluate_supports(phi, x, n, k, -1, opt.sound_slack);
  const u128 i = phi.intersection(x, phi.apply(x, n));
  const Real denom = static_cast<Real>(phi.complexity()) * constants::L_big(static_cast<Real>(k + 1));
  InequalityReport r;
  r.theorem = "pure-lower";
  r.inputs = pure_inputs(phi, x, n, k);
  r.slack = opt.sound_slack ? "minus" : "raw";
  r.set_margin((ev.d_sum + 2 * ev.log_i_sum) / denom, log2_count(i), opt.tolerance);
  r.details = {{"intersection", to_decimal(i)},
               {"support_values", ev.values},
               {"d_sum", format_real(ev.d_sum)},
               {"log_i_sum", format_real(ev.log_i_sum)},
               {"denominator", format_real(denom)}};
  r.replay = replay_pure(phi, x, n, k, "lower", opt.sound_slack);
  return r;
}

InequalityReport check_pure_upper(const PureMappingClass& phi, const Curve& x, i64 n, i64 k, const CheckOptions& opt) {
  if (k < 32) fail(ErrorCode::precondition, "the pure-class upper bound requires k >= 32");
  if (phi.model() == Model::xi1_matrix && is_hyperbolic(phi.matrix_value()))
    fail(ErrorCode::unsupported, "no effective bound on proper-subsurface projections is available for this class");
  const SupportEvaluation ev = evaluate_supports(phi, x, n, k, +1, opt.sound_slack);
  const u128 i = phi.intersection(x, phi.apply(x, n));
  const constants::Coefficients co =
      constants::application_coefficients(phi.constants_surface(), k, constants::Application::pure_upper);
  InequalityReport r;
  r.theorem = "pure-upper";
  r.inputs = pure_inputs(phi, x, n, k);
  r.slack = opt.sound_slack ? "plus" : "raw";
  r.set_margin(log2_count(i) / co.V - 1, ev.d_sum + co.multiplier * ev.log_i_sum + co.additive, opt.tolerance);
  r.details = {{"intersection", to_decimal(i)},
               {"support_values", ev.values},
               {"d_sum", format_real(ev.d_sum)},
               {"log_i_sum", format_real(ev.log_i_sum)},
               {"V", format_real(co.V)},
               {"U", format_real(co.U)},
               {"P", std::to_string(co.P)},
               {"multiplier", format_real(co.multiplier)},
               {"additive", format_real(co.additive)}};
  r.replay = replay_pure(phi, x, n, k, "upper", opt.sound_slack);
  return r;
}

namespace {

InequalityReport twist_report(const std::string& x, const std::string& a, i64 n, u128 i_xa, u128 i_twisted,
                              u128 d_model) {
  if (i_xa == 0) fail(ErrorCode::precondition, "the twist core must intersect x");
  if (n == 0) fail(ErrorCode::precondition, "the twist power must be nonzero");
  InequalityReport r;
  r.theorem = "twist-identity";
  r.inputs = {{"x", x}, {"a", a}, {"n", std::to_string(n)}};
  const i256 expected = i256(static_cast<i64>(abs128(n))) * i256(to_decimal(i_xa)) * i256(to_decimal(i_xa));
  const bool exact = i256(to_decimal(i_twisted)) == expected;
  r.lhs = to_real(i_twisted);
  r.rhs = to_real(expected);
  r.margin = r.rhs - r.lhs;
  r.verdict = exact ? Verdict::pass : Verdict::fail;
  const Real residual = to_real(d_model) + 2 * log2_count(i_xa) - 1 - log2_count(i_twisted);
  r.details = {{"intersection", to_decimal(i_twisted)},
               {"expected", to_decimal(expected)},
               {"i_a_x", to_decimal(i_xa)},
               {"annular_distance", to_decimal(d_model)},
               {"distance_identity_residual", format_real(residual)}};
  return r;
}

}  // namespace

InequalityReport check_twist_identity(const farey::Slope& x, const farey::Slope& a, i64 n) {
  const u128 i_xa = farey::intersection(x, a);
  if (i_xa == 0) fail(ErrorCode::precondition, "the twist core must intersect x");
  const farey::Slope tx = farey::twist_matrix(a, n).apply(x);
  InequalityReport r =
      twist_report(x.str(), a.str(), n, i_xa, farey::intersection(x, tx), n == 0 ? 1 : farey::annular_distance(a, x, tx));
  r.replay = "curvebound mcg twist-check --core " + a.str() + " --x " + x.str() + " --n " + std::to_string(n);
  return r;
}

InequalityReport check_twist_identity(const words::PuncturedSurface& s, const words::SimpleCurve& x,
                                      const words::SimpleCurve& a, i64 n) {
  const u128 i_xa = words::geometric_intersection(s, x.word(), a.word());
  if (i_xa == 0) fail(ErrorCode::precondition, "the twist core must intersect x");
  if (n == 0) fail(ErrorCode::precondition, "the twist power must be nonzero");
  const words::CyclicWord tx = words::dehn_twist(s, a, n, x.word());
  const std::string xs = words::to_string(s, x.word()), as = words::to_string(s, a.word());
  InequalityReport r = twist_report(xs, as, n, i_xa, words::geometric_intersection(s, x.word(), tx),
                                    static_cast<u128>(abs128(n)) + 1);
  r.inputs.insert(r.inputs.begin(), {"surface", s.str()});
  r.replay = "curvebound mcg twist-check --surface " + s.str() + " --core '" + as + "' --x '" + xs + "' --n " +
             std::to_string(n);
  return r;
}

InequalityReport check_geodesic_theorems(const farey::Slope& x, const farey::Slope& y, i64 k,
                                         constants::Application which, const std::vector<i64>& picks,
                                         const CheckOptions& opt) {
  if (which == constants::Application::pure_upper)
    fail(ErrorCode::invalid_argument, "geodesic checks take the tight or endpoint family");
  const constants::Surface surface = constants::Surface::make(1, 1);
  const constants::Coefficients co = constants::application_coefficients(surface, k, which);

  InequalityReport r;
  r.theorem = which == constants::Application::tight ? "geodesic-tight" : "geodesic-endpoint";
  std::string pick_text;
  for (i64 t : picks) pick_text += (pick_text.empty() ? "" : ",") + std::to_string(t);
  r.inputs = {{"x", x.str()}, {"y", y.str()}, {"k", std::to_string(k)}, {"picks", pick_text}};
  r.replay = "curvebound mcg geodesic-check --pair " + x.str() + "," + y.str() + " --k " + std::to_string(k) +
             " --which " + std::string(constants::application_name(which)) +
             (pick_text.empty() ? "" : " --picks " + pick_text);

  const farey::FareyPath path = farey::geodesic(x, y);
  const i64 len = static_cast<i64>(path.length());
  for (std::size_t j = 0; j < picks.size(); ++j) {
    if (picks[j] < 0 || picks[j] > len)
      fail(ErrorCode::precondition, "pick " + std::to_string(picks[j]) + " lies off the geodesic of length " +
                                        std::to_string(len));
    if (j > 0 && !(picks[j - 1] + 2 < picks[j]))
      fail(ErrorCode::precondition, "picks " + std::to_string(picks[j - 1]) + " and " + std::to_string(picks[j]) +
                                        " violate the spacing d(x, v_s) + 2 < d(x, v_t)");
  }
  if (which == constants::Application::endpoint && picks.size() > 2)
    fail(ErrorCode::invalid_argument, "the endpoint family takes exactly two picks p, q");
  r.details = {{"distance", std::to_string(len)}, {"V", format_real(co.V)}, {"U", format_real(co.U)},
               {"multiplier", format_real(co.multiplier)}, {"additive", format_real(co.additive)}};
  if (len <= 2 || picks.size() < 2) {
    r.verdict = Verdict::vacuous;
    r.note = len <= 2 ? "geodesic too short for admissible picks" : "fewer than two picks";
    return r;
  }

  const auto v = [&](i64 t) { return path.vertices[static_cast<std::size_t>(t)]; };
  const Real log_xy = log2_count(farey::intersection(x, y));
  if (which == constants::Application::tight) {
    Real sum = 0;
    for (std::size_t j = 0; j + 1 < picks.size(); ++j) sum += log2_count(farey::intersection(v(picks[j]), v(picks[j + 1])));
    r.set_margin(sum / co.V, co.multiplier * log_xy + co.additive, opt.tolerance);
    r.details.emplace_back("sum_log_i", format_real(sum));
  } else {
    const Real ends = log2_count(farey::intersection(x, v(picks[1]))) + log2_count(farey::intersection(v(picks[0]), y));
    r.set_margin(log_xy / co.V - 1, co.multiplier * ends + co.additive, opt.tolerance);
    r.details.emplace_back("endpoint_log_i", format_real(ends));
  }
  r.details.emplace_back("log_i_xy", format_real(log_xy));
  return r;
}

}  // namespace curvebound::mcg
