#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "constants.hpp"
#include "oracles.hpp"

using namespace curvebound;
using namespace curvebound::constants;

TEST_CASE("l and L agree with a natural-log evaluation on an integer grid") {
  for (int p = 7; p <= 5000; p += 7) CHECK(static_cast<double>(l_small(p)) == doctest::Approx(oracle::l_small(p)).epsilon(1e-12));
  for (int p = 15; p <= 1000; p += 3) CHECK(static_cast<double>(L_big(p)) == doctest::Approx(oracle::L_big(p)).epsilon(1e-12));
}

TEST_CASE("derived constants agree with the oracle formulas") {
  const Surface torus = Surface::make(1, 1);
  for (i64 k = 18; k <= 400; ++k)
    CHECK(static_cast<double>(mainone_denominator(k)) == doctest::Approx(oracle::mainone_denominator(k)).epsilon(1e-12));
  for (i64 k = 28; k <= 400; ++k)
    for (u64 P : {2u, 3u, 16u})
      CHECK(static_cast<double>(U(torus, k, P)) == doctest::Approx(oracle::U(k, static_cast<double>(P))).epsilon(1e-12));
}

TEST_CASE("frozen regression values") {
  const Surface torus = Surface::make(1, 1);
  CHECK(static_cast<double>(l_small(10)) == doctest::Approx(1.430677).epsilon(1e-6));
  CHECK(static_cast<double>(l_small(7)) == doctest::Approx(2.807355).epsilon(1e-6));
  CHECK(static_cast<double>(L_big(15)) == doctest::Approx(17.229435).epsilon(1e-6));
  CHECK(static_cast<double>(L_big(16)) == doctest::Approx(10.094876).epsilon(1e-6));
  CHECK(static_cast<double>(U(torus, 28, 2)) == doctest::Approx(36.458870).epsilon(1e-6));
  CHECK(static_cast<double>(mainone_denominator(18)) == doctest::Approx(3.861353).epsilon(1e-6));
  CHECK(static_cast<double>(mainone_denominator(28)) == doctest::Approx(3.352183).epsilon(1e-6));
  // within one unit in the last place of a 64-bit significand
  CHECK(std::fabs(V(torus, 18) - 663054848000000000000.0L) <= std::ldexp(663054848000000000000.0L, -63));
  CHECK(std::fabs(V(torus, 28) - 758550528000000000000.0L) <= std::ldexp(758550528000000000000.0L, -63));
}

TEST_CASE("bracket and log2z") {
  CHECK(bracket(5, 18) == 0);
  CHECK(bracket(19, 18) == 19);
  CHECK(bracket(18, 18) == 0);
  for (int m = 0; m < 40; ++m) {
    CHECK(bracket(m, 18) <= m);
    CHECK(bracket(bracket(m, 18), 18) == bracket(m, 18));
  }
  CHECK(log2z(0) == 0);
  CHECK(log2z(1) == 0);
  CHECK(log2z(8) == 3);
  CHECK_THROWS_AS(log2z(-1), Error);
}

TEST_CASE("domain checks") {
  CHECK_THROWS_AS(l_small(6), Error);
  CHECK_THROWS_AS(L_big(14), Error);
  CHECK_THROWS_AS(U(Surface::make(1, 1), 27, 2), Error);
  CHECK_THROWS_AS(U(Surface::make(1, 1), 28, 1), Error);
  CHECK_THROWS_AS(mainone_denominator(17), Error);
  CHECK_THROWS_AS(Surface::make(0, 3), Error);
  CHECK_THROWS_AS(application_coefficients(Surface::make(1, 1), 227, Application::tight), Error);
  CHECK_THROWS_AS(application_coefficients(Surface::make(1, 1), 127, Application::endpoint), Error);
  CHECK_THROWS_AS(application_coefficients(Surface::make(1, 1), 31, Application::pure_upper), Error);
}

TEST_CASE("monotonicity and limits on integer grids") {
  for (int p = 7; p < 1000000; p += (p < 1000 ? 1 : 997)) {
    CHECK(l_small(p + 1) < l_small(p));
    CHECK(l_small(p) > 1);
  }
  for (int p = 15; p < 1000000; p += (p < 1000 ? 1 : 997)) {
    CHECK(L_big(p + 1) < L_big(p));
    CHECK(L_big(p) > 2);
    CHECK(l_small(p) <= L_big(p));
  }
  CHECK(std::abs(static_cast<double>(l_small(1000000)) - 1) < 1e-3);
  CHECK(std::abs(static_cast<double>(L_big(1000000)) - 2) < 1e-3);
  for (i64 n = 18; n <= 5000; ++n) CHECK(l_small(n + 1) <= 2 * l_small(half_index(n)));
  for (i64 k = 28; k <= 5000; ++k) CHECK(L_big(k + 1) <= 2 * L_big(half_index(k)));
  for (i64 k = 18; k < 2000; ++k) CHECK(mainone_denominator(k) > 3);
  const Surface s = Surface::make(1, 2);
  for (int k = 1; k < 500; ++k) CHECK(V(s, k) < V(s, k + 1));
  for (u64 P = 2; P < 40; ++P) CHECK(U(s, 40, P) < U(s, 40, P + 1));
}

TEST_CASE("partition constant bounds") {
  CHECK(p_bounds(Surface::make(2, 0)).chromatic_bound == 32);
  CHECK(p_bounds(Surface::make(1, 2)).chromatic_bound == 16);
  const PBounds torus = p_bounds(Surface::make(1, 1));
  REQUIRE(torus.minimal_known.has_value());
  CHECK(*torus.minimal_known == 2);
  CHECK(torus.upper == std::min(torus.xi_bound, torus.chromatic_bound));
}

TEST_CASE("application coefficients") {
  const Surface torus = Surface::make(1, 1);
  const Coefficients tight = application_coefficients(torus, 228, Application::tight, 2);
  CHECK(static_cast<double>(tight.multiplier) == doctest::Approx(297.546).epsilon(1e-5));
  CHECK(static_cast<double>(tight.additive) == doctest::Approx(16.952).epsilon(1e-4));
  CHECK(tight.shifted_cutoff == 28);
  const Coefficients endpoint = application_coefficients(torus, 128, Application::endpoint, 2);
  CHECK(static_cast<double>(endpoint.multiplier) == doctest::Approx(166.669).epsilon(1e-5));
  const Coefficients pure = application_coefficients(torus, 32, Application::pure_upper);
  CHECK(pure.P == P_upper(torus));
  CHECK(static_cast<double>(pure.multiplier) ==
        doctest::Approx(2.0 * 32 * oracle::U(28, static_cast<double>(pure.P)) / 28).epsilon(1e-9));
}

TEST_CASE("plots are deterministic and well formed") {
  const std::string a = constant_plot_svg(PlotFunction::l_small, 7, 200);
  CHECK(a == constant_plot_svg(PlotFunction::l_small, 7, 200));
  CHECK(a.find("<svg") != std::string::npos);
  CHECK(a.find("</svg>") != std::string::npos);
  CHECK_THROWS_AS(constant_plot_svg(PlotFunction::L_big, 10, 200), Error);
  CHECK_THROWS_AS(constant_plot_svg(PlotFunction::l_small, 50, 40), Error);

  const auto path = std::filesystem::temp_directory_path() / "curvebound_plot_test.svg";
  emit_constant_plot(PlotFunction::L_big, 15, 200, path);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == constant_plot_svg(PlotFunction::L_big, 15, 200));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(emit_constant_plot(PlotFunction::L_big, 15, 200, "/nonexistent-dir/x.svg"), Error);
}
