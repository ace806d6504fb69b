#include "words.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace curvebound::words {

// ------------------------------------------------------------ surface

PuncturedSurface::PuncturedSurface(unsigned genus, unsigned punctures)
    : genus_(genus), punctures_(punctures), rank_(2 * genus + punctures - 1) {
  if (punctures == 0) fail(ErrorCode::unsupported, "closed surfaces are not supported by the word model");
  if (rank_ == 0) fail(ErrorCode::invalid_argument, "the once-punctured sphere has trivial fundamental group");
  if (rank_ > 26) fail(ErrorCode::invalid_argument, "at most 26 generators are supported");

  std::vector<Letter> order;
  for (unsigned h = 0; h < genus; ++h) {
    const Letter a = static_cast<Letter>(2 * (2 * h)), b = static_cast<Letter>(2 * (2 * h + 1));
    order.insert(order.end(), {a, b, inverse(a), inverse(b)});
  }
  for (unsigned j = 0; j + 1 < punctures; ++j) {
    const Letter x = static_cast<Letter>(2 * (2 * genus + j));
    order.insert(order.end(), {x, inverse(x)});
  }
  position_.assign(port_count(), 0);
  for (unsigned i = 0; i < order.size(); ++i) position_[order[i]] = i;

  // Boundary cycles of h -> inverse(next(h)); the word reads next(h).
  std::vector<bool> seen(port_count(), false);
  for (Letter start = 0; start < port_count(); ++start) {
    if (seen[start]) continue;
    std::vector<Letter> word;
    Letter h = start;
    while (!seen[h]) {
      seen[h] = true;
      const Letter next = order[(position_[h] + 1) % port_count()];
      word.push_back(next);
      h = inverse(next);
    }
    boundary_.push_back(word);
  }
  if (boundary_.size() != punctures) fail(ErrorCode::internal, "ribbon graph has the wrong number of boundary cycles");
}

PuncturedSurface PuncturedSurface::parse(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) fail(ErrorCode::parse, "surface must be written g,n");
  const i64 g = parse_i64(text.substr(0, comma));
  const i64 n = parse_i64(text.substr(comma + 1));
  if (g < 0 || n < 0 || g > 13 || n > 27) fail(ErrorCode::invalid_argument, "surface indices out of range");
  return PuncturedSurface(static_cast<unsigned>(g), static_cast<unsigned>(n));
}

std::string PuncturedSurface::str() const { return std::to_string(genus_) + "," + std::to_string(punctures_); }

std::string PuncturedSurface::letter_name(Letter l) const {
  std::string s(1, static_cast<char>('a' + (l >> 1)));
  if (l & 1u) s += "\xE2\x81\xBB\xC2\xB9";  // ⁻¹
  return s;
}

Letter PuncturedSurface::letter_of(std::string_view name, bool inverted) const {
  if (name.size() != 1 || name[0] < 'a' || static_cast<unsigned>(name[0] - 'a') >= rank_)
    fail(ErrorCode::parse, "unknown generator '" + std::string(name) + "' on S_" + str());
  return static_cast<Letter>(2 * (name[0] - 'a') + (inverted ? 1 : 0));
}

bool PuncturedSurface::is_peripheral(const CyclicWord& w) const {
  if (w.empty()) return false;
  const CyclicWord r = primitive_root(w).root;
  for (const auto& b : boundary_)
    if (reduce(b) == r) return true;
  return false;
}

// -------------------------------------------------------------- words

std::vector<Letter> freely_reduce(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (!out.empty() && out.back() == inverse(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

std::vector<Letter> invert(std::span<const Letter> letters) {
  std::vector<Letter> out(letters.rbegin(), letters.rend());
  for (Letter& l : out) l = inverse(l);
  return out;
}

namespace {

/// Start index of the lexicographically least rotation.
std::size_t least_rotation(const std::vector<Letter>& s) {
  const std::size_t n = s.size();
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    const Letter a = s[(i + k) % n], b = s[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

std::vector<Letter> rotated(const std::vector<Letter>& s, std::size_t start) {
  std::vector<Letter> out;
  out.reserve(s.size());
  for (std::size_t t = 0; t < s.size(); ++t) out.push_back(s[(start + t) % s.size()]);
  return out;
}

}  // namespace

CyclicWord reduce(std::span<const Letter> letters) {
  std::vector<Letter> w = freely_reduce(letters);
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo] == inverse(w[hi - 1])) {
    ++lo;
    --hi;
  }
  std::vector<Letter> core(w.begin() + static_cast<std::ptrdiff_t>(lo), w.begin() + static_cast<std::ptrdiff_t>(hi));
  CyclicWord out;
  if (core.empty()) return out;
  const std::vector<Letter> fwd = rotated(core, least_rotation(core));
  const std::vector<Letter> inv_core = invert(core);
  const std::vector<Letter> bwd = rotated(inv_core, least_rotation(inv_core));
  out.letters_ = std::min(fwd, bwd);
  return out;
}

std::vector<Letter> parse_letters(const PuncturedSurface& s, std::string_view text) {
  std::vector<Letter> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '*' || ch == '.') {
      ++i;
      continue;
    }
    if (ch < 'a' || ch > 'z') fail(ErrorCode::parse, "unexpected character in word '" + std::string(text) + "'");
    bool inverted = false;
    std::size_t next = i + 1;
    if (text.substr(next, 1) == "'") {
      inverted = true;
      next += 1;
    } else if (text.substr(next, 5) == "\xE2\x81\xBB\xC2\xB9") {
      inverted = true;
      next += 5;
    } else if (text.substr(next, 3) == "^-1") {
      inverted = true;
      next += 3;
    }
    out.push_back(s.letter_of(text.substr(i, 1), inverted));
    i = next;
  }
  return out;
}

CyclicWord parse_word(const PuncturedSurface& s, std::string_view text) { return reduce(parse_letters(s, text)); }

std::string to_string(const PuncturedSurface& s, std::span<const Letter> letters) {
  std::string out;
  for (Letter l : letters) {
    if (!out.empty()) out += ' ';
    out += s.letter_name(l);
  }
  return out;
}

std::string to_string(const PuncturedSurface& s, const CyclicWord& w) { return to_string(s, w.letters()); }

Root primitive_root(const CyclicWord& w) {
  const auto& l = w.letters();
  const std::size_t n = l.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t t = d; t < n && periodic; ++t) periodic = l[t] == l[t - d];
    if (periodic) {
      return Root{reduce(std::span<const Letter>(l.data(), d)), static_cast<unsigned>(n / d)};
    }
  }
  return Root{w, 1};
}

// --------------------------------------------------- linked pair engine

namespace {

/// Periodic letter sequence with enough unrolling for common-segment walks.
struct Line {
  std::vector<Letter> base;
  std::vector<Letter> ext;
  i64 n = 0;

  Line() = default;
  Line(std::vector<Letter> letters, std::size_t reach) : base(std::move(letters)) {
    n = static_cast<i64>(base.size());
    ext.reserve(base.size() + reach + 2);
    for (std::size_t t = 0; t < base.size() + reach + 2; ++t) ext.push_back(base[t % base.size()]);
  }
  Letter at(i64 i) const { return base[static_cast<std::size_t>(((i % n) + n) % n)]; }
};

struct Crossing {
  i64 i;      // corner of P (between letters i and i+1)
  i64 j;      // corner of Q
  i64 k;      // common segment length
  int sign;   // +1 when Q crosses P from right to left
};

bool strictly_between(const PuncturedSurface& s, Letter from, Letter to, Letter x) {
  const unsigned r = s.rank_from(from, x);
  return r > 0 && r < s.rank_from(from, to);
}

/// All crossings between lines P and Q. With `opposite`, Q is understood as
/// the reverse of a curve also paired in the same direction, so meetings in
/// a single vertex (k = 0) are skipped there to avoid double counting.
template <class F>
void for_each_crossing(const PuncturedSurface& s, const Line& P, const Line& Q, bool opposite, F&& emit) {
  const i64 limit = P.n + Q.n;
  const Letter* pe = P.ext.data();
  const Letter* qe = Q.ext.data();
  for (i64 i = 0; i < P.n; ++i) {
    const Letter pin = pe[i];
    for (i64 j = 0; j < Q.n; ++j) {
      const Letter qin = qe[j];
      if (pin == qin) continue;
      i64 k = 0;
      while (k < limit && pe[i + 1 + k] == qe[j + 1 + k]) ++k;
      if (k == limit) continue;
      if (k == 0) {
        if (opposite) continue;
        const Letter pa = inverse(pin), ya = pe[i + 1], pb = inverse(qin), yb = qe[j + 1];
        if (pa == yb || pb == ya) continue;
        const bool start_right = strictly_between(s, pa, ya, pb);
        if (start_right == strictly_between(s, pa, ya, yb)) continue;
        emit(Crossing{i, j, 0, start_right ? 1 : -1});
      } else {
        const Letter c = pe[i + 1], pa = inverse(pin), pb = inverse(qin);
        const bool p_right_start = s.rank_from(c, pb) < s.rank_from(c, pa);
        const Letter arrive = inverse(pe[i + k]);
        const bool p_right_end = s.rank_from(arrive, pe[i + k + 1]) < s.rank_from(arrive, qe[j + k + 1]);
        if (p_right_start == p_right_end) continue;
        emit(Crossing{i, j, k, p_right_start ? -1 : 1});
      }
    }
  }
}

u64 count_primitive_pair(const PuncturedSurface& s, const std::vector<Letter>& u, const std::vector<Letter>& w) {
  const std::size_t reach = u.size() + w.size() + 2;
  const Line P(u, reach), Q(w, reach), R(invert(w), reach);
  u64 count = 0;
  const auto tally = [&](const Crossing&) { ++count; };
  for_each_crossing(s, P, Q, false, tally);
  for_each_crossing(s, P, R, true, tally);
  return count;
}

u64 checked_product(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::overflow, "intersection count exceeds 64 bits");
  return r;
}

}  // namespace

u64 self_intersection(const PuncturedSurface& s, const CyclicWord& w) {
  if (w.empty()) fail(ErrorCode::invalid_argument, "empty word");
  const Root r = primitive_root(w);
  const u64 twice = count_primitive_pair(s, r.root.letters(), r.root.letters());
  if (twice % 2 != 0) fail(ErrorCode::internal, "odd linked-pair count for a self-intersection");
  const u64 m = r.power;
  return checked_product(checked_product(m, m), twice / 2) + (m - 1);
}

u64 geometric_intersection(const PuncturedSurface& s, const CyclicWord& u, const CyclicWord& w) {
  if (u.empty() || w.empty()) fail(ErrorCode::invalid_argument, "empty word");
  const Root ru = primitive_root(u), rw = primitive_root(w);
  const u64 powers = checked_product(ru.power, rw.power);
  if (ru.root == rw.root) return checked_product(powers, count_primitive_pair(s, ru.root.letters(), ru.root.letters()));
  return checked_product(powers, count_primitive_pair(s, ru.root.letters(), rw.root.letters()));
}

SimpleCurve SimpleCurve::certify(const PuncturedSurface& s, const CyclicWord& w) {
  if (w.empty()) fail(ErrorCode::invalid_argument, "the trivial word is not a curve");
  if (primitive_root(w).power != 1) fail(ErrorCode::invalid_argument, "a proper power is not a simple closed curve");
  if (self_intersection(s, w) != 0) fail(ErrorCode::invalid_argument, "word " + to_string(s, w) + " is not simple");
  return SimpleCurve(w);
}

// ---------------------------------------------------------- Dehn twist

namespace {

/// With both lines passing through the same pair of ports at the given
/// corners, whether L1 runs to the right of L2 there.
bool right_of(const PuncturedSurface& s, const Line& L1, i64 i1, const Line& L2, i64 i2) {
  const i64 limit = L1.n + L2.n;
  for (i64 k = 1; k <= limit; ++k) {
    const Letter y1 = L1.at(i1 + 1 + k), y2 = L2.at(i2 + 1 + k);
    if (y1 != y2) {
      const Letter arrive = inverse(L1.at(i1 + k));
      return s.rank_from(arrive, y1) < s.rank_from(arrive, y2);
    }
  }
  for (i64 t = 1; t <= limit; ++t) {
    const Letter x1 = L1.at(i1 - t), x2 = L2.at(i2 - t);
    if (x1 != x2) {
      const Letter c = L1.at(i1 - t + 1);
      return s.rank_from(c, inverse(x2)) < s.rank_from(c, inverse(x1));
    }
  }
  fail(ErrorCode::internal, "parallel strands of a simple curve never separate");
}

struct Event {
  int line;   // 0: the twist curve, 1: its reverse
  i64 j;
  int sign;
};

}  // namespace

CyclicWord dehn_twist(const PuncturedSurface& s, const SimpleCurve& a, i64 n, const CyclicWord& w) {
  if (w.empty()) fail(ErrorCode::invalid_argument, "empty word");
  if (n == 0) return w;
  const auto& wl = w.letters();
  const auto& al = a.word().letters();
  const std::size_t reach = 2 * (wl.size() + al.size()) + 2;
  const Line W(wl, reach);
  const Line lines[2] = {Line(al, reach), Line(invert(al), reach)};
  const i64 m = static_cast<i64>(al.size());
  const auto reverse_corner = [m](i64 j) { return ((m - 2 - j) % m + m) % m; };

  std::vector<std::vector<Event>> disk(wl.size()), band(wl.size());
  for (int li = 0; li < 2; ++li) {
    for_each_crossing(s, W, lines[li], li == 1, [&](const Crossing& c) {
      (c.k == 0 ? disk : band)[static_cast<std::size_t>(c.i)].push_back(Event{li, c.j, c.sign});
    });
  }

  std::vector<Letter> out;
  for (std::size_t i = 0; i < wl.size(); ++i) {
    out.push_back(wl[i]);
    const Letter pa = inverse(wl[i]);
    const Letter ya = W.at(static_cast<i64>(i) + 1);

    auto& d = disk[i];
    if (d.size() > 1) {
      // Order along the chord of w from pa to ya by where each crossing
      // chord meets the right-hand arc of the vertex boundary.
      struct Chord {
        Letter right_end, left_end;
        int line;
        i64 j;  // corner on the line oriented from right_end to left_end
      };
      const auto chord = [&](const Event& e) {
        const Line& L = lines[e.line];
        const Letter pb = inverse(L.at(e.j)), yb = L.at(e.j + 1);
        if (strictly_between(s, pa, ya, pb)) return Chord{pb, yb, e.line, e.j};
        return Chord{yb, pb, 1 - e.line, reverse_corner(e.j)};
      };
      std::stable_sort(d.begin(), d.end(), [&](const Event& x, const Event& y) {
        const Chord cx = chord(x), cy = chord(y);
        const unsigned rx = s.rank_from(pa, cx.right_end), ry = s.rank_from(pa, cy.right_end);
        if (rx != ry) return rx < ry;
        const unsigned lx = s.rank_from(pa, cx.left_end), ly = s.rank_from(pa, cy.left_end);
        if (lx != ly) return lx > ly;
        if (cx.line == cy.line && cx.j == cy.j) return false;
        return right_of(s, lines[cy.line], cy.j, lines[cx.line], cx.j);
      });
    }

    auto& b = band[i];
    if (b.size() > 1) {
      const Letter c = ya;
      const bool right_side = s.rank_from(c, pa) < s.rank_from(c, inverse(lines[b.front().line].at(b.front().j)));
      const auto left_of = [&](const Event& x, const Event& y) {
        const unsigned rx = s.rank_from(c, inverse(lines[x.line].at(x.j)));
        const unsigned ry = s.rank_from(c, inverse(lines[y.line].at(y.j)));
        if (rx != ry) return rx < ry;
        if (x.line == y.line && x.j == y.j) return false;
        return right_of(s, lines[y.line], y.j, lines[x.line], x.j);
      };
      if (right_side) {
        std::stable_sort(b.begin(), b.end(), left_of);
      } else {
        std::stable_sort(b.begin(), b.end(), [&](const Event& x, const Event& y) { return left_of(y, x); });
      }
    }

    for (const auto* group : {&d, &b}) {
      for (const Event& e : *group) {
        const Line& L = lines[e.line];
        const i64 power = e.sign * n;
        const i64 reps = power < 0 ? -power : power;
        for (i64 r = 0; r < reps; ++r) {
          if (power > 0) {
            for (i64 t = 1; t <= m; ++t) out.push_back(L.at(e.j + t));
          } else {
            for (i64 t = m; t >= 1; --t) out.push_back(inverse(L.at(e.j + t)));
          }
        }
      }
    }
  }
  return reduce(out);
}

// ------------------------------------------------------ slope bridge

namespace {

using Substitution = std::vector<std::vector<Letter>>;

std::vector<Letter> substitute(const Substitution& sub, const std::vector<Letter>& w) {
  std::vector<Letter> out;
  for (Letter l : w) {
    const auto& img = sub[l >> 1];
    if (l & 1u) {
      const auto inv = invert(img);
      out.insert(out.end(), inv.begin(), inv.end());
    } else {
      out.insert(out.end(), img.begin(), img.end());
    }
  }
  return freely_reduce(out);
}

// Half twists of the four-punctured sphere (Artin action on a, b, c), and
// their inverses.
Substitution half_twist(int which, bool inverse_map) {
  const Letter A = 0, B = 2, C = 4;
  Substitution sub{{A}, {B}, {C}};
  if (which == 1) {
    if (!inverse_map) {
      sub[0] = {A, B, inverse(A)};
      sub[1] = {A};
    } else {
      sub[0] = {B};
      sub[1] = {inverse(B), A, B};
    }
  } else {
    if (!inverse_map) {
      sub[1] = {B, C, inverse(B)};
      sub[2] = {B};
    } else {
      sub[1] = {C};
      sub[2] = {inverse(C), B, C};
    }
  }
  return sub;
}

std::vector<Letter> christoffel(i64 p, i64 q) {
  const Letter a = 0, b = p < 0 ? inverse(Letter{2}) : Letter{2};
  const i128 bp = p < 0 ? -static_cast<i128>(p) : p;
  const i128 len = bp + q;
  if (len > 1000000) fail(ErrorCode::invalid_argument, "slope too large for an explicit word");
  std::vector<Letter> out;
  out.reserve(static_cast<std::size_t>(len));
  for (i128 i = 0; i < len; ++i) out.push_back(((i + 1) * bp) / len > (i * bp) / len ? b : a);
  return out;
}

// Orientation of the half-twist action on slopes, fixed so that the word
// model's Dehn twist agrees with the Farey twist matrix.
constexpr int kInfinitySense = -1;
constexpr int kZeroSense = 1;

std::vector<Letter> sphere_word(const farey::Slope& slope) {
  i128 p = slope.p(), q = slope.q();
  struct Op {
    bool at_infinity;
    i128 t;
  };
  std::vector<Op> ops;
  while (p != 0 && q != 0) {
    const i128 ap = p < 0 ? -p : p, aq = q < 0 ? -q : q;
    if (ap >= aq) {
      const i128 t = p / q;
      p -= t * q;
      ops.push_back(Op{true, t});
    } else {
      const i128 t = q / p;
      q -= t * p;
      ops.push_back(Op{false, t});
    }
  }
  const Letter A = 0, B = 2, C = 4;
  std::vector<Letter> w = p == 0 ? std::vector<Letter>{A, B} : std::vector<Letter>{B, C};
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    const i128 e = it->t * (it->at_infinity ? kInfinitySense : kZeroSense);
    const Substitution sub = half_twist(it->at_infinity ? 2 : 1, e < 0);
    const i128 reps = e < 0 ? -e : e;
    for (i128 r = 0; r < reps; ++r) {
      w = substitute(sub, w);
      if (w.size() > 100000) fail(ErrorCode::invalid_argument, "slope too large for an explicit word");
    }
  }
  return w;
}

}  // namespace

SimpleCurve slope_to_word(const PuncturedSurface& s, const farey::Slope& slope) {
  if (s.genus() == 1 && s.punctures() == 1) {
    return SimpleCurve::certify(s, reduce(christoffel(slope.p(), slope.q())));
  }
  if (s.genus() == 0 && s.punctures() == 4) {
    return SimpleCurve::certify(s, reduce(sphere_word(slope)));
  }
  fail(ErrorCode::unsupported, "slopes are defined only on S_1,1 and S_0,4");
}

u64 bridge_factor(const PuncturedSurface& s) {
  if (s.genus() == 1 && s.punctures() == 1) return 1;
  if (s.genus() == 0 && s.punctures() == 4) return 2;
  fail(ErrorCode::unsupported, "slopes are defined only on S_1,1 and S_0,4");
}

i64 bridge_twist_multiplier(const PuncturedSurface& s) {
  if (s.genus() == 1 && s.punctures() == 1) return 1;
  if (s.genus() == 0 && s.punctures() == 4) return 2;
  fail(ErrorCode::unsupported, "slopes are defined only on S_1,1 and S_0,4");
}

// ---------------------------------------------------- curve catalogues

std::vector<SimpleCurve> short_simple_curves(const PuncturedSurface& s, unsigned max_length) {
  std::set<CyclicWord> found;
  const unsigned letters = s.port_count();
  std::vector<Letter> w;
  // Depth-first enumeration of freely reduced words.
  const auto extend = [&](auto&& self) -> void {
    if (!w.empty()) {
      const CyclicWord c = reduce(w);
      if (c.size() == w.size()) found.insert(c);
    }
    if (w.size() == max_length) return;
    for (Letter l = 0; l < letters; ++l) {
      if (!w.empty() && w.back() == inverse(l)) continue;
      w.push_back(l);
      self(self);
      w.pop_back();
    }
  };
  extend(extend);
  std::vector<SimpleCurve> out;
  for (const CyclicWord& c : found) {
    if (primitive_root(c).power != 1) continue;
    if (s.is_peripheral(c)) continue;
    if (self_intersection(s, c) != 0) continue;
    out.push_back(SimpleCurve::certify(s, c));
  }
  return out;
}

}  // namespace curvebound::words
