#include <doctest.h>

#include <cmath>
#include <functional>
#include <set>

#include "chains.hpp"
#include "farey.hpp"
#include "harness.hpp"
#include "oracles.hpp"

using namespace curvebound;
using namespace curvebound::chains;

namespace {

SubsurfaceDatum annulus(const std::string& id, u128 d, u128 ix, u128 iy) {
  SubsurfaceDatum z;
  z.id = id;
  z.kind = Kind::annular;
  z.d_xy = d;
  z.i_x = ix;
  z.i_y = iy;
  return z;
}

/// Smallest number of cliques covering a graph, by exhaustive assignment.
std::size_t minimum_clique_cover(const std::vector<OverlapItem>& items) {
  const std::size_t n = items.size();
  std::vector<int> colour(n, -1);
  std::size_t best = n;
  const auto compatible = [&](std::size_t v, int c) {
    for (std::size_t w = 0; w < v; ++w)
      if (colour[w] == c && !items[v].overlaps.count(items[w].id)) return false;
    return true;
  };
  std::function<void(std::size_t, int)> go = [&](std::size_t v, int used) {
    if (static_cast<std::size_t>(used) >= best) return;
    if (v == n) {
      best = static_cast<std::size_t>(used);
      return;
    }
    for (int c = 0; c <= used; ++c) {
      if (c == used || compatible(v, c)) {
        colour[v] = c;
        go(v + 1, std::max(used, c + 1));
      }
    }
    colour[v] = -1;
  };
  go(0, 0);
  return best;
}

bool is_clique_partition(const std::vector<OverlapItem>& items, const std::vector<std::vector<std::string>>& parts) {
  std::map<std::string, const OverlapItem*> index;
  for (const auto& it : items) index[it.id] = &it;
  std::set<std::string> covered;
  for (const auto& cls : parts)
    for (std::size_t a = 0; a < cls.size(); ++a) {
      if (!covered.insert(cls[a]).second) return false;
      for (std::size_t b = a + 1; b < cls.size(); ++b)
        if (!index.at(cls[a])->overlaps.count(cls[b])) return false;
    }
  return covered.size() == items.size();
}

double oracle_rel_lhs(const SubsurfaceDatum& q, u128 i_side, i64 n) {
  const double scale = 2 * oracle::l_small(static_cast<double>((n + 2) / 2));
  const double lq = i_side == 0 ? 0 : std::log2(static_cast<double>(i_side));
  return std::log2(static_cast<double>(q.d_xy)) / scale + lq;
}

}  // namespace

// ------------------------------------------------------------- oracles

TEST_CASE("greedy partition is a clique cover close to the optimum on small graphs") {
  harness::Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(8);
    std::vector<OverlapItem> items(n);
    for (std::size_t v = 0; v < n; ++v) items[v].id = "z" + std::to_string(v);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = v + 1; w < n; ++w)
        if (rng.below(100) < 60) {
          items[v].overlaps.insert(items[w].id);
          items[w].overlaps.insert(items[v].id);
        }
    const auto parts = partition_overlapping(items);
    REQUIRE(is_clique_partition(items, parts));
    CHECK(parts.size() >= minimum_clique_cover(items));
    CHECK(parts.size() <= n);
  }
}

TEST_CASE("certificate links satisfy the relation under an independent evaluation") {
  harness::Rng rng(99);
  const harness::CfBounds bounds{60, 8, 1000000000};
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto [x, y] = trial % 2 ? harness::sample_uniform_cf(rng, bounds)
                                  : std::make_pair(farey::Slope::infinity(), harness::sample_cf_slope(rng, bounds));
    const std::vector<SubsurfaceDatum> data = farey_dataset(x, y, 18);
    if (data.size() < 2) continue;
    const ChainCertificate cert = build_chain(data, 18, Mode::annular);
    REQUIRE(validate(cert, data).empty());
    std::map<std::string, const SubsurfaceDatum*> index;
    for (const auto& z : data) index[z.id] = &z;
    for (const Link& l : cert.links) {
      const SubsurfaceDatum& p = *index.at(l.from);
      const SubsurfaceDatum& q = *index.at(l.to);
      const u128 ip = l.side == Side::x ? p.i_x : p.i_y;
      const u128 iq = l.side == Side::x ? q.i_x : q.i_y;
      const double rhs = std::log2(static_cast<double>(ip));
      CHECK(oracle_rel_lhs(q, iq, 18) <= rhs + 1e-9 * std::max(1.0, rhs));
      ++checked;
    }
  }
  CHECK(checked > 20);
}

// ------------------------------------------------------------ examples

TEST_CASE("behrstock inequality") {
  CHECK(behrstock_validate(10, 4));
  CHECK_FALSE(behrstock_validate(10, 5));
  CHECK(behrstock_validate(9, 100));
}

TEST_CASE("relation evaluation") {
  const SubsurfaceDatum p = annulus("p", 20, 100, 1);
  const SubsurfaceDatum q = annulus("q", static_cast<u128>(1) << 38, 1, 1);
  const RelationWitness w = rel(p, q, 18, Side::x, Mode::annular);
  CHECK_FALSE(w.holds);
  CHECK(static_cast<double>(w.lhs) == doctest::Approx(38 / 2.861353).epsilon(1e-4));
  CHECK(static_cast<double>(w.rhs) == doctest::Approx(6.643856).epsilon(1e-6));

  const SubsurfaceDatum close = annulus("c", 19, 100, 1);
  CHECK(rel(p, close, 18, Side::x, Mode::annular).holds == false);
  const SubsurfaceDatum smaller = annulus("s", 19, 4, 1);
  CHECK(rel(p, smaller, 18, Side::x, Mode::annular).holds);
  CHECK(static_cast<double>(relation_scale(18, Mode::annular)) == doctest::Approx(2.861353).epsilon(1e-6));
  CHECK(static_cast<double>(relation_scale(28, Mode::mixed)) == doctest::Approx(2 * 17.229435).epsilon(1e-6));
  CHECK_THROWS_AS(relation_scale(17, Mode::annular), Error);
  CHECK_THROWS_AS(relation_scale(27, Mode::mixed), Error);
}

TEST_CASE("small chains") {
  CHECK(build_chain({}, 18, Mode::annular).size() == 0);
  CHECK(telescoped_bound(build_chain({}, 18, Mode::annular), 18) == 0);
  const std::vector<SubsurfaceDatum> one{annulus("a", 30, 5, 5)};
  const ChainCertificate c1 = build_chain(one, 18, Mode::annular);
  CHECK(c1.size() == 1);
  CHECK(c1.anchor == "a");
  CHECK(validate(c1, one).empty());

  SubsurfaceDatum a = annulus("a", 30, 1000, 1);
  SubsurfaceDatum b = annulus("b", 30, 1, 1000);
  a.cross["b"] = CrossDatum{1, 40, 5};
  b.cross["a"] = CrossDatum{40, 1, 5};
  const std::vector<SubsurfaceDatum> two{a, b};
  const ChainCertificate c2 = build_chain(two, 18, Mode::annular, std::string("a"));
  CHECK(c2.size() == 2);
  CHECK(c2.x_chain == std::vector<std::string>{"b"});
  CHECK(validate(c2, two).empty());
  CHECK_THROWS_AS(build_chain(two, 18, Mode::annular, std::string("zz")), Error);

  SubsurfaceDatum low = annulus("low", 17, 1, 1);
  CHECK_THROWS_AS(build_chain({low}, 18, Mode::annular), Error);
  SubsurfaceDatum big = annulus("S", 40, 0, 0);
  big.kind = Kind::nonannular;
  CHECK_THROWS_AS(build_chain({big}, 18, Mode::annular), Error);
  CHECK(build_chain({big}, 28, Mode::mixed).size() == 1);
}

TEST_CASE("tampered certificates are rejected") {
  const farey::Slope y = farey::Slope::of(1601, 64080);
  const std::vector<SubsurfaceDatum> data = farey_dataset(farey::Slope::infinity(), y, 18);
  ChainCertificate cert = build_chain(data, 18, Mode::annular);
  REQUIRE(validate(cert, data).empty());
  ChainCertificate swapped = cert;
  REQUIRE(swapped.y_chain.size() == 2);
  std::swap(swapped.y_chain[0], swapped.y_chain[1]);
  CHECK_FALSE(validate(swapped, data).empty());
  ChainCertificate dropped = cert;
  dropped.y_chain.pop_back();
  CHECK_FALSE(validate(dropped, data).empty());
}

TEST_CASE("three-pivot Farey example") {
  const farey::Slope x = farey::Slope::infinity();
  const farey::Slope y = farey::Slope::of(1601, 64080);
  const std::vector<SubsurfaceDatum> data = farey_dataset(x, y, 18);
  REQUIRE(data.size() == 3);
  const ChainCertificate cert = build_chain(data, 18, Mode::annular);
  CHECK(validate(cert, data).empty());
  CHECK(cert.anchor == "0/1");
  CHECK(cert.y_chain == std::vector<std::string>{"1/40", "40/1601"});
  const Real bound = telescoped_bound(cert, 18);
  CHECK(static_cast<double>(bound) == doctest::Approx(3 * std::log2(42.0) / 2.861353).epsilon(1e-5));
  CHECK(bound <= log2_count(farey::intersection(x, y)));

  auto items = overlap_items(data);
  CHECK(partition_overlapping(items).size() == 1);
  items.push_back(OverlapItem{"S", {}});
  CHECK(partition_overlapping(items).size() == 2);
}

TEST_CASE("partition examples and validation") {
  std::vector<OverlapItem> disjoint;
  for (int v = 0; v < 5; ++v) disjoint.push_back({"d" + std::to_string(v), {}});
  CHECK(partition_overlapping(disjoint).size() == 5);
  std::vector<OverlapItem> full;
  for (int v = 0; v < 5; ++v) {
    OverlapItem it{"f" + std::to_string(v), {}};
    for (int w = 0; w < 5; ++w)
      if (w != v) it.overlaps.insert("f" + std::to_string(w));
    full.push_back(it);
  }
  CHECK(partition_overlapping(full).size() == 1);
  CHECK_THROWS_AS(partition_overlapping({{"a", {"b"}}, {"b", {}}}), Error);
  CHECK_THROWS_AS(partition_overlapping({{"a", {"a"}}}), Error);
  CHECK_THROWS_AS(partition_overlapping({{"a", {}}, {"a", {}}}), Error);
}

TEST_CASE("collection JSON round trip") {
  const std::vector<SubsurfaceDatum> data = farey_dataset(farey::Slope::infinity(), farey::Slope::of(1601, 64080), 18);
  const auto j = collection_json(data);
  CHECK(j.at("schema") == kSchema);
  const std::vector<SubsurfaceDatum> back = parse_collection(j);
  REQUIRE(back.size() == data.size());
  for (std::size_t t = 0; t < data.size(); ++t) {
    CHECK(back[t].id == data[t].id);
    CHECK(back[t].d_xy == data[t].d_xy);
    CHECK(back[t].cross.size() == data[t].cross.size());
  }
  CHECK(parse_collection(j.at("subsurfaces")).size() == data.size());
  CHECK_THROWS_AS(parse_collection(nlohmann::ordered_json::parse(R"({"schema":"other/9","subsurfaces":[]})")), Error);
  CHECK_THROWS_AS(parse_collection(nlohmann::ordered_json::parse(R"([{"id":"a","kind":"annular"}])")), Error);
  CHECK_THROWS_AS(parse_collection(nlohmann::ordered_json::parse(R"([{"id":"a","kind":"ring","d_xy":1,"i_x":1,"i_y":1}])")),
                  Error);
}
