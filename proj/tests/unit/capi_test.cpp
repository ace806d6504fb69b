// Exercises the shared library strictly through its public C header.

#include <doctest.h>

#include <algorithm>
#include <cstring>
#include <string>

#include <json.hpp>

#include "curvebound/curvebound.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  cvb_free_string(s);
  return out;
}

cvb_slope slope(const char* text) {
  cvb_slope s{};
  REQUIRE(cvb_slope_parse(text, &s) == CVB_OK);
  return s;
}

}  // namespace

TEST_CASE("status reporting") {
  cvb_slope s{};
  CHECK(cvb_slope_parse("1/x", &s) == CVB_PARSE);
  CHECK(std::strlen(cvb_last_error()) > 0);
  CHECK(std::string(cvb_status_name(CVB_DICHOTOMY)) == "dichotomy");
  CHECK(std::string(cvb_version()).size() > 0);
  CHECK(cvb_slope_parse(nullptr, &s) == CVB_INVALID_ARGUMENT);
  cvb_free_string(nullptr);
  cvb_report_free(nullptr);
  cvb_word_free(nullptr);
  cvb_psurface_free(nullptr);
  cvb_experiment_free(nullptr);
}

TEST_CASE("typed constants") {
  double v = 0;
  REQUIRE(cvb_l_small(10, &v) == CVB_OK);
  CHECK(v == doctest::Approx(1.430677).epsilon(1e-6));
  REQUIRE(cvb_L_big(15, &v) == CVB_OK);
  CHECK(v == doctest::Approx(17.229435).epsilon(1e-6));
  REQUIRE(cvb_U(cvb_surface{1, 1}, 28, 2, &v) == CVB_OK);
  CHECK(v == doctest::Approx(36.458870).epsilon(1e-6));
  REQUIRE(cvb_mainone_denominator(18, &v) == CVB_OK);
  CHECK(v == doctest::Approx(3.861353).epsilon(1e-6));
  REQUIRE(cvb_V(cvb_surface{1, 1}, 18, &v) == CVB_OK);
  CHECK(v == doctest::Approx(6.63054848e20).epsilon(1e-12));
  CHECK(cvb_l_small(6, &v) == CVB_INVALID_ARGUMENT);
  CHECK(cvb_mainone_denominator(17, &v) == CVB_PRECONDITION);

  char* out = nullptr;
  REQUIRE(cvb_coefficients_json(cvb_surface{1, 1}, 228, "tight", 2, &out) == CVB_OK);
  const auto j = nlohmann::json::parse(take(out));
  CHECK(std::stod(j.at("multiplier").get<std::string>()) == doctest::Approx(297.546).epsilon(1e-5));
  REQUIRE(cvb_constant_plot_svg("L", 15, 60, &out) == CVB_OK);
  CHECK(take(out).find("<svg") != std::string::npos);
}

TEST_CASE("Farey calls") {
  char* out = nullptr;
  REQUIRE(cvb_intersection(slope("1/0"), slope("1601/64080"), &out) == CVB_OK);
  CHECK(take(out) == "64080");
  uint64_t d = 0;
  REQUIRE(cvb_distance(slope("0/1"), slope("2/5"), &d) == CVB_OK);
  CHECK(d == 2);
  REQUIRE(cvb_annular_distance(slope("1/0"), slope("0/1"), slope("9/1"), &out) == CVB_OK);
  CHECK(take(out) == "10");
  cvb_slope t{};
  REQUIRE(cvb_twist_matrix_apply(slope("1/0"), 3, slope("0/1"), &t) == CVB_OK);
  REQUIRE(cvb_intersection(t, slope("0/1"), &out) == CVB_OK);
  CHECK(take(out) == "3");
  REQUIRE(cvb_slope_format(t, &out) == CVB_OK);
  CHECK(take(out).find("/1") != std::string::npos);
  REQUIRE(cvb_large_annuli_json(slope("1/0"), slope("1601/64080"), 18, &out) == CVB_OK);
  CHECK(nlohmann::json::parse(take(out)).at("pivots").size() == 3);
  double s = 0;
  REQUIRE(cvb_script_s(slope("0/1"), slope("1000000/1"), 18, "raw", &s) == CVB_OK);
  CHECK(s == doctest::Approx(19.93157).epsilon(1e-6));
  CHECK(cvb_script_s(slope("0/1"), slope("5/1"), 18, "sideways", &s) == CVB_PARSE);
}

TEST_CASE("reports through handles") {
  cvb_farey_options opt = cvb_farey_options_default();
  cvb_report* r = nullptr;
  REQUIRE(cvb_farey_check("mainone", slope("0/1"), slope("1000000/1"), 18, &opt, &r) == CVB_OK);
  CHECK(cvb_report_verdict(r) == CVB_PASS);
  CHECK(cvb_report_margin(r) == doctest::Approx(15.03).epsilon(1e-3));
  CHECK(cvb_report_lhs(r) < cvb_report_rhs(r));
  char* out = nullptr;
  REQUIRE(cvb_report_field(r, "intersection", &out) == CVB_OK);
  CHECK(take(out) == "1000000");
  REQUIRE(cvb_report_field(r, "no-such-key", &out) == CVB_OK);
  CHECK(take(out).empty());
  REQUIRE(cvb_report_json(r, &out) == CVB_OK);
  CHECK(nlohmann::json::parse(take(out)).at("theorem") == "mainone");
  cvb_report_free(r);

  CHECK(cvb_farey_check("fermat", slope("0/1"), slope("5/1"), 18, &opt, &r) == CVB_PARSE);
  CHECK(cvb_farey_check("mainone", slope("0/1"), slope("0/1"), 18, &opt, &r) == CVB_PRECONDITION);
  REQUIRE(cvb_lemma_annulus_check(slope("1/0"), slope("0/1"), slope("100/1"), 6, &opt, &r) == CVB_OK);
  CHECK(cvb_report_verdict(r) == CVB_PASS);
  cvb_report_free(r);
}

TEST_CASE("chains through JSON") {
  char* data = nullptr;
  REQUIRE(cvb_chains_farey_dataset_json(slope("1/0"), slope("1601/64080"), 18, &data) == CVB_OK);
  const std::string collection = take(data);
  char* cert = nullptr;
  char* part = nullptr;
  REQUIRE(cvb_chains_run_json(collection.c_str(), 18, "annular", nullptr, &cert, &part) == CVB_OK);
  const auto c = nlohmann::json::parse(take(cert));
  CHECK(c.at("anchor") == "0/1");
  CHECK(c.contains("telescoped_bound"));
  CHECK(nlohmann::json::parse(take(part)).at("count") == 1);
  CHECK(cvb_chains_run_json("{", 18, "annular", nullptr, &cert, nullptr) == CVB_PARSE);
  CHECK(cvb_chains_run_json(collection.c_str(), 18, "annular", "nope", &cert, nullptr) == CVB_INVALID_ARGUMENT);
  int pass = 0;
  REQUIRE(cvb_behrstock_validate(10, 5, &pass) == CVB_OK);
  CHECK(pass == 0);
}

TEST_CASE("words through handles") {
  cvb_psurface* s = nullptr;
  REQUIRE(cvb_psurface_new(1, 1, &s) == CVB_OK);
  cvb_word* a = nullptr;
  cvb_word* b = nullptr;
  REQUIRE(cvb_word_parse(s, "a", &a) == CVB_OK);
  REQUIRE(cvb_word_parse(s, "b", &b) == CVB_OK);
  uint64_t i = 0;
  REQUIRE(cvb_word_intersection(s, a, b, &i) == CVB_OK);
  CHECK(i == 1);
  cvb_word* t = nullptr;
  REQUIRE(cvb_word_twist(s, b, 2, a, &t) == CVB_OK);
  REQUIRE(cvb_word_intersection(s, a, t, &i) == CVB_OK);
  CHECK(i == 2);
  cvb_word* from_slope = nullptr;
  REQUIRE(cvb_word_from_slope(s, slope("0/1"), &from_slope) == CVB_OK);
  CHECK(cvb_word_equal(from_slope, a) == 1);
  CHECK(cvb_word_length(t) > 1);
  cvb_word* loop = nullptr;
  REQUIRE(cvb_word_parse(s, "a b a b'", &loop) == CVB_OK);
  REQUIRE(cvb_word_self_intersection(s, loop, &i) == CVB_OK);
  CHECK(i == 1);
  char* out = nullptr;
  REQUIRE(cvb_short_simple_curves_json(s, 3, &out) == CVB_OK);
  CHECK(nlohmann::json::parse(take(out)).size() > 0);
  CHECK(cvb_word_parse(s, "a z", &loop) != CVB_OK);
  for (cvb_word* w : {a, b, t, from_slope, loop}) cvb_word_free(w);
  cvb_psurface_free(s);
  CHECK(cvb_psurface_new(0, 1, &s) == CVB_INVALID_ARGUMENT);
}

TEST_CASE("mapping classes") {
  cvb_report* r = nullptr;
  REQUIRE(cvb_mcg_pure_check(nullptr, "[[1,1],[0,1]]", "0/1", 100, 14, "lower", 1, &r) == CVB_OK);
  CHECK(cvb_report_verdict(r) == CVB_PASS);
  cvb_report_free(r);
  const cvb_surface five{0, 5};
  REQUIRE(cvb_mcg_pure_check(&five, "twist(core=a b,power=1);twist(core=a b c,power=1)", "a b a' d", 40, 32, "upper", 1,
                             &r) == CVB_OK);
  CHECK(cvb_report_verdict(r) == CVB_PASS);
  cvb_report_free(r);
  REQUIRE(cvb_mcg_twist_check(nullptr, "1/0", "0/1", 5, &r) == CVB_OK);
  CHECK(cvb_report_lhs(r) == 5);
  cvb_report_free(r);
  const int64_t picks[] = {0, 3};
  REQUIRE(cvb_mcg_geodesic_check(slope("0/1"), slope("6257501/313000150"), 228, "tight", picks, 2, &r) == CVB_OK);
  CHECK(cvb_report_verdict(r) == CVB_PASS);
  cvb_report_free(r);
  char* out = nullptr;
  REQUIRE(cvb_mcg_supports_json(nullptr, "[[2,1],[1,1]]", 14, &out) == CVB_OK);
  CHECK(take(out).find("2801") != std::string::npos);
  CHECK(cvb_mcg_pure_check(nullptr, "[[2,1],[1,1]]", "0/1", 3000, 32, "upper", 1, &r) == CVB_UNSUPPORTED);
}

TEST_CASE("experiments") {
  cvb_experiment* e = nullptr;
  REQUIRE(cvb_experiment_new(&e) == CVB_OK);
  REQUIRE(cvb_experiment_set(e, "theorem", "hl") == CVB_OK);
  REQUIRE(cvb_experiment_set(e, "samples", "12") == CVB_OK);
  CHECK(cvb_experiment_set(e, "volume", "11") == CVB_PARSE);
  char* out = nullptr;
  CHECK(cvb_experiment_summary_json(e, &out) == CVB_PRECONDITION);
  uint64_t failures = 99;
  REQUIRE(cvb_experiment_run(e, &failures) == CVB_OK);
  CHECK(failures == 0);
  REQUIRE(cvb_experiment_summary_json(e, &out) == CVB_OK);
  CHECK(nlohmann::json::parse(take(out)).at("pass") == "12");
  REQUIRE(cvb_experiment_reports(e, "csv", &out) == CVB_OK);
  const std::string csv = take(out);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
  REQUIRE(cvb_experiment_reports(e, "json", &out) == CVB_OK);
  CHECK(nlohmann::json::parse(take(out)).size() == 12);
  CHECK(cvb_experiment_load_config(e, "/nonexistent/config") == CVB_IO);
  cvb_experiment_free(e);
}
