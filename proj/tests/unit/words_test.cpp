#include <doctest.h>

#include <set>

#include "farey.hpp"
#include "oracles.hpp"
#include "words.hpp"

using namespace curvebound;
using namespace curvebound::words;

namespace {

farey::Slope lift(const oracle::RawSlope& s) { return farey::Slope::of(s.p, s.q); }

std::string show(const PuncturedSurface& s, const CyclicWord& w) { return to_string(s, w); }

}  // namespace

// ------------------------------------------------------------- oracles

TEST_CASE("word intersections reproduce the Farey determinant on complexity-one surfaces") {
  const std::vector<oracle::RawSlope> v = oracle::box(5);
  for (const PuncturedSurface s : {PuncturedSurface(1, 1), PuncturedSurface(0, 4)}) {
    std::vector<SimpleCurve> curves;
    for (const auto& slope : v) curves.push_back(slope_to_word(s, lift(slope)));
    for (std::size_t i = 0; i < v.size(); ++i) {
      CHECK(self_intersection(s, curves[i].word()) == 0);
      for (std::size_t j = i; j < v.size(); ++j) {
        const u64 expected =
            bridge_factor(s) * static_cast<u64>(oracle::iabs(oracle::det(v[i], v[j])));
        REQUIRE(geometric_intersection(s, curves[i].word(), curves[j].word()) == expected);
      }
    }
  }
}

TEST_CASE("word twists reproduce the matrix twist on complexity-one surfaces") {
  const std::vector<oracle::RawSlope> v = oracle::box(3);
  for (const PuncturedSurface s : {PuncturedSurface(1, 1), PuncturedSurface(0, 4)}) {
    for (const auto& a : v)
      for (const auto& x : v) {
        if (a == x) continue;
        const SimpleCurve ca = slope_to_word(s, lift(a));
        const SimpleCurve cx = slope_to_word(s, lift(x));
        for (i64 n : {-2, -1, 1, 3}) {
          const CyclicWord twisted = dehn_twist(s, ca, n, cx.word());
          const farey::Slope image =
              farey::twist_matrix(lift(a), n * bridge_twist_multiplier(s)).apply(lift(x));
          const CyclicWord expected = slope_to_word(s, image).word();
          REQUIRE_MESSAGE(twisted == expected, show(s, twisted) << " vs " << show(s, expected));
        }
      }
  }
}

TEST_CASE("twist identity on small simple curves of larger surfaces") {
  for (const PuncturedSurface s : {PuncturedSurface(0, 5), PuncturedSurface(1, 2)}) {
    const std::vector<SimpleCurve> curves = short_simple_curves(s, 3);
    REQUIRE(!curves.empty());
    int tested = 0;
    for (std::size_t i = 0; i < curves.size() && tested < 60; ++i)
      for (std::size_t j = 0; j < curves.size() && tested < 60; ++j) {
        const u64 i_ax = geometric_intersection(s, curves[i].word(), curves[j].word());
        if (i_ax == 0) continue;
        for (i64 n : {1, -2, 3}) {
          const CyclicWord t = dehn_twist(s, curves[i], n, curves[j].word());
          CHECK(geometric_intersection(s, curves[j].word(), t) == static_cast<u64>(std::abs(n)) * i_ax * i_ax);
          CHECK(self_intersection(s, t) == 0);
        }
        ++tested;
      }
    CHECK(tested > 0);
  }
}

// ------------------------------------------------------------ examples

TEST_CASE("reduction") {
  const PuncturedSurface s(0, 4);
  CHECK(show(s, parse_word(s, "a b b' c")) == show(s, parse_word(s, "a c")));
  CHECK(parse_word(s, "b a b^-1") == parse_word(s, "a"));
  CHECK(parse_word(s, "a b a\xE2\x81\xBB\xC2\xB9") == parse_word(s, "b"));
  CHECK(parse_word(s, "a a'").empty());
  CHECK(parse_word(s, "c a b") == parse_word(s, "a b c"));
  CHECK_THROWS_AS(parse_word(s, "a d"), Error);
  CHECK_THROWS_AS(parse_word(s, "a 2"), Error);
  CHECK(primitive_root(parse_word(s, "a b a b a b")).power == 3);
}

TEST_CASE("intersection examples on the punctured torus") {
  const PuncturedSurface t(1, 1);
  const CyclicWord a = parse_word(t, "a"), b = parse_word(t, "b");
  CHECK(geometric_intersection(t, a, b) == 1);
  CHECK(geometric_intersection(t, a, a) == 0);
  CHECK(self_intersection(t, a) == 0);
  CHECK(self_intersection(t, parse_word(t, "a b a b'")) == 1);
  const SimpleCurve sb = SimpleCurve::certify(t, b);
  CHECK(geometric_intersection(t, a, dehn_twist(t, sb, 2, a)) == 2);
  CHECK(dehn_twist(t, sb, 0, a) == a);
}

TEST_CASE("slope bridge basis") {
  const PuncturedSurface t(1, 1);
  CHECK(slope_to_word(t, farey::Slope::of(0, 1)).word() == parse_word(t, "a"));
  CHECK(slope_to_word(t, farey::Slope::infinity()).word() == parse_word(t, "b"));
  const PuncturedSurface s(0, 4);
  CHECK(slope_to_word(s, farey::Slope::of(0, 1)).word() == parse_word(s, "a b"));
  CHECK(slope_to_word(s, farey::Slope::infinity()).word() == parse_word(s, "b c"));
  CHECK_THROWS_AS(slope_to_word(PuncturedSurface(0, 5), farey::Slope::of(0, 1)), Error);
  CHECK(bridge_factor(t) == 1);
  CHECK(bridge_factor(s) == 2);
}

TEST_CASE("certification and peripheral curves") {
  const PuncturedSurface t(1, 1);
  CHECK_THROWS_AS(SimpleCurve::certify(t, parse_word(t, "a b a b'")), Error);
  CHECK_THROWS_AS(SimpleCurve::certify(t, parse_word(t, "a a")), Error);
  const PuncturedSurface s(0, 4);
  for (const auto& boundary : s.boundary_words()) CHECK(s.is_peripheral(reduce(boundary)));
  CHECK_FALSE(s.is_peripheral(parse_word(s, "a b")));
  CHECK_THROWS_AS(PuncturedSurface(0, 1), Error);
  CHECK_THROWS_AS(PuncturedSurface(2, 0), Error);
  CHECK(PuncturedSurface(0, 2).rank() == 1);
}

TEST_CASE("short curve catalogue") {
  const PuncturedSurface s(0, 4);
  const std::vector<SimpleCurve> curves = short_simple_curves(s, 4);
  std::set<CyclicWord> seen;
  for (const SimpleCurve& c : curves) {
    CHECK(c.word().size() <= 4);
    CHECK(self_intersection(s, c.word()) == 0);
    CHECK_FALSE(s.is_peripheral(c.word()));
    CHECK(seen.insert(c.word()).second);
  }
  CHECK(seen.count(parse_word(s, "a b")) == 1);
  CHECK(short_simple_curves(s, 4).size() == curves.size());
}
