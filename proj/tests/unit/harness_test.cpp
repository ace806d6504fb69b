#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "farey.hpp"
#include "harness.hpp"

using namespace curvebound;
using namespace curvebound::harness;

namespace {

ExperimentSpec spec_for(std::string_view theorem, u64 samples, std::string_view surface = "1,1") {
  ExperimentSpec s;
  apply_setting(s, "theorem", theorem);
  apply_setting(s, "surface", surface);
  s.samples = samples;
  if (theorem == "tight") s.k = 228;
  if (theorem == "endpoint") s.k = 128;
  if (theorem == "pure-lower") s.k = 14;
  if (theorem == "pure-upper") s.k = 32;
  if (theorem == "lemma-annulus") s.k = 18;
  return s;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("independent pivot count tracks large continued-fraction coefficients") {
  Rng rng(2024);
  const CfBounds b{100, 12, 1000000000};
  int matched = 0, total = 0;
  for (int t = 0; t < 300; ++t) {
    const farey::Slope y = sample_cf_slope(rng, b);
    // coefficients of y, recomputed by the Euclidean algorithm
    std::vector<i64> cf;
    i128 p = y.p(), q = y.q();
    while (q != 0) {
      i128 a = p / q;
      if (p % q != 0 && p < 0) a -= 1;
      cf.push_back(static_cast<i64>(a));
      const i128 r = p - a * q;
      p = q;
      q = r;
    }
    i64 big = 0;
    for (std::size_t i = 1; i < cf.size(); ++i) big += cf[i] >= 18 ? 1 : 0;
    const i64 pivots = static_cast<i64>(farey::large_annuli(farey::Slope::infinity(), y, 18).size());
    CHECK(std::abs(pivots - big) <= 1);
    matched += pivots == big ? 1 : 0;
    ++total;
  }
  CHECK(matched * 10 >= total * 9);
}

TEST_CASE("rng and seeds") {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) CHECK(a.below(1000) == b.below(1000));
  Rng c(1);
  for (int i = 0; i < 1000; ++i) {
    const i64 v = c.range(-3, 3);
    CHECK(v >= -3);
    CHECK(v <= 3);
  }
  CHECK(sample_seed(42, 0) != sample_seed(42, 1));
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("samplers respect their bounds") {
  Rng rng(3);
  CfBounds unit{1, 12, 1000000000};
  for (int t = 0; t < 200; ++t) {
    const farey::Slope y = sample_cf_slope(rng, unit);
    CHECK(farey::large_annuli(farey::Slope::infinity(), y, 5).empty());
    CHECK(std::abs(y.p()) <= 2 * y.q() + 1);
  }
  CfBounds small{100, 12, 1000};
  for (int t = 0; t < 200; ++t) {
    const auto [x, y] = sample_uniform_cf(rng, small);
    CHECK(x.q() <= 1000);
    CHECK(y.q() <= 1000);
    CHECK_FALSE(x == y);
  }
  for (int t = 0; t < 50; ++t) {
    const auto [x, y] = sample_adversarial_twist(rng, CfBounds{});
    CHECK_FALSE(x == y);
    const auto [u, v] = sample_fibonacci(rng, CfBounds{});
    CHECK_FALSE(u == v);
  }
}

TEST_CASE("settings and config files") {
  ExperimentSpec s;
  apply_setting(s, "theorem", "igd");
  apply_setting(s, "samples", "17");
  apply_setting(s, "slack", "raw");
  apply_setting(s, "pair", "0/1,5/1");
  CHECK(s.theorem == Theorem::igd);
  CHECK(s.samples == 17);
  CHECK_FALSE(s.sound_slack);
  REQUIRE(s.fixed_pair.has_value());
  CHECK_THROWS_AS(apply_setting(s, "colour", "red"), Error);
  CHECK_THROWS_AS(apply_setting(s, "samples", "many"), Error);
  CHECK_THROWS_AS(apply_setting(s, "theorem", "fermat"), Error);

  const auto cfg = parse_config("# sweep\ntheorem = hl\n\nsamples=3  # short\n");
  CHECK(cfg.at("theorem") == "hl");
  CHECK(cfg.at("samples") == "3");
  CHECK_THROWS_AS(parse_config("theorem hl\n"), Error);
  CHECK_THROWS_AS(read_config("/nonexistent/config.txt"), Error);

  ExperimentSpec bad = spec_for("pure-lower", 10, "0,5");
  bad.sampler = Sampler::uniform_cf;
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK(spec_for("twist-identity", 1).effective_sampler() == Sampler::word_random);
  CHECK(spec_for("lemma-annulus", 1).effective_sampler() == Sampler::adversarial_twist);
  CHECK(spec_for("mainone", 1).effective_sampler() == Sampler::uniform_cf);
}

TEST_CASE("each theorem runs cleanly on a short sweep") {
  for (std::string_view t : {"mainone", "igd", "hl", "lemma-annulus", "tight", "endpoint", "twist-identity",
                             "pure-lower", "pure-upper"}) {
    const RunResult r = run(spec_for(t, 60));
    CHECK_MESSAGE(r.summary.fail == 0, t);
    CHECK_MESSAGE(r.summary.pass > 0, t);
    CHECK(r.samples.size() == 60);
  }
  for (std::string_view s : {"0,4", "0,5", "1,2"}) {
    CHECK(run(spec_for("twist-identity", 40, s)).summary.fail == 0);
    CHECK(run(spec_for("pure-lower", 40, s)).summary.fail == 0);
    CHECK(run(spec_for("pure-upper", 40, s)).summary.fail == 0);
  }
}

TEST_CASE("worker count does not change the reports") {
  ExperimentSpec s = spec_for("mainone", 300);
  s.workers = 1;
  const std::string one = render_reports([&] {
    std::vector<InequalityReport> out;
    for (const auto& r : run(s).samples) out.push_back(r.report);
    return out;
  }(), Format::json);
  s.workers = 4;
  const RunResult many = run(s);
  std::vector<InequalityReport> reports;
  for (std::size_t i = 0; i < many.samples.size(); ++i) {
    CHECK(many.samples[i].index == i);
    reports.push_back(many.samples[i].report);
  }
  CHECK(render_reports(reports, Format::json) == one);
}

TEST_CASE("a fixed pair reproduces the direct check") {
  ExperimentSpec s = spec_for("mainone", 1);
  apply_setting(s, "pair", "1/0,1601/64080");
  const RunResult r = run(s);
  REQUIRE(r.samples.size() == 1);
  InequalityReport direct = farey::check_mainone(farey::Slope::infinity(), farey::Slope::of(1601, 64080), 18);
  InequalityReport sampled = r.samples[0].report;
  CHECK(sampled.replay == direct.replay);
  CHECK(sampled.lhs == direct.lhs);
  CHECK(sampled.rhs == direct.rhs);
  CHECK(sampled.verdict == direct.verdict);
}

TEST_CASE("report outputs") {
  const RunResult r = run(spec_for("hl", 25));
  std::vector<InequalityReport> reports;
  for (const auto& s : r.samples) reports.push_back(s.report);

  const auto dir = std::filesystem::temp_directory_path() / "curvebound_harness_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  emit_report(reports, Format::json, dir / "r.json");
  CHECK(read_reports_json(dir / "r.json") == reports);
  emit_report({reports.front()}, Format::json, dir / "one.json");
  const auto one = nlohmann::ordered_json::parse(slurp(dir / "one.json"));
  CHECK(one.is_array());
  CHECK(one.size() == 1);

  emit_report(reports, Format::csv, dir / "r.csv");
  std::istringstream csv(slurp(dir / "r.csv"));
  std::string line;
  std::size_t rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == reports.size() + 1);
  CHECK_THROWS_AS(emit_report({}, Format::json, dir / "empty.json"), Error);

  ExperimentSpec s = spec_for("hl", 25);
  s.out_dir = dir / "out";
  write_outputs(s, r);
  CHECK(std::filesystem::exists(dir / "out" / "summary.json"));
  CHECK(std::filesystem::exists(dir / "out" / "reports.json"));
  CHECK(std::filesystem::exists(dir / "out" / "reports.csv"));
  const auto summary = nlohmann::ordered_json::parse(slurp(dir / "out" / "summary.json"));
  CHECK(summary.at("pass") == std::to_string(r.summary.pass));
  std::filesystem::remove_all(dir);
}
