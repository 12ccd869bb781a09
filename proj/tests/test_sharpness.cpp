#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "besselcert/sharpness.hpp"
#include "oracles.hpp"

using namespace besselcert;
constexpr double pi = std::numbers::pi;

TEST_CASE("closed-form constants") {
  CHECK(alpha_T1(-0.5) == 0.1);  // 8 * 1/2 * 5/2 = 10 exactly in doubles
  CHECK(alpha_T1(-0.75) == doctest::Approx(2.0 / 9.0).epsilon(1e-15));
  CHECK(alpha_T1(0.0) == doctest::Approx(1.0 / 24.0).epsilon(1e-15));
  CHECK(beta_T2(-0.5) == 0.1);

  // Blow-up toward the order guard.
  CHECK(beta_T2(-0.99) ==
        doctest::Approx(1.0 / (8.0 * 0.01 * 2.01)).epsilon(1e-13));

  // The two operations share one closed form.
  for (double p = -0.99; p <= 1.5; p += 0.03) {
    CHECK(alpha_T1(p) == beta_T2(p));
  }
}

TEST_CASE("upper oscillatory constant at order -1/2 has the trig closed form") {
  BetaT1Result b = beta_T1(-0.5, 1e-12);
  const double want = (8.0 * pi - 24.0) / (pi * pi * pi - 2.0 * pi * pi);
  CHECK(std::abs(b.value - want) <= 1e-10);
  CHECK(b.value > alpha_T1(-0.5));  // nonempty sandwich
  CHECK(std::abs(b.zero.zero - pi / 2) <= 1e-12);
}

TEST_CASE("upper constant exceeds the lower constant across the range") {
  for (double p = -0.98; p <= -0.5 + 1e-12; p += 0.02) {
    BetaT1Result b = beta_T1(p, 1e-12);
    CHECK(b.value > alpha_T1(p));
  }
}

TEST_CASE("endpoint-limit provenance agrees with the closed formula") {
  for (double p : {-0.9, -0.6}) {
    BetaT1Result b = beta_T1(p, 1e-12);
    const double j = b.zero.zero;
    const double limit = eval_F(p, j * (1.0 - 1e-4)).value;
    CHECK(std::abs(limit - b.value) <= 1e-6);
  }
}

TEST_CASE("F against the elementary form at order -1/2") {
  for (double x : {0.1, 0.5, 1.0, 1.5}) {
    // long double: the numerator cancels ~6 digits at the small end, which
    // would otherwise dominate the comparison.
    const long double lx = x;
    const long double sinc = std::sin(lx) / lx;
    const double want = static_cast<double>(
        (2.0L + std::cos(lx) - 3.0L * sinc) / (lx * lx * (1.0L - sinc)));
    ValueWithError f = eval_F(-0.5, x);
    CHECK(f.value == doctest::Approx(want).epsilon(1e-12));
    CHECK(std::abs(f.value - want) <= f.err + 1e-13);
  }
}

TEST_CASE("G against the elementary form at order -1/2") {
  for (double x : {0.1, 1.0, 5.0, 20.0, 40.0}) {
    const double s = std::sinh(x) / x;
    const double want =
        (2.0 + std::cosh(x) - 3.0 * s) / (x * x * (s - 1.0));
    ValueWithError g = eval_G(-0.5, x);
    CHECK(g.value == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("cancelled sharp numerator matches the direct difference") {
  // At moderate x the direct difference still has most of its digits; the
  // series must agree there (it exists for the small-x regime).
  for (double p : {-0.9, -0.5, -0.2}) {
    for (double x : {0.5, 1.0, 1.5}) {
      RatioParts parts = eval_ratio_parts(Kind::Oscillatory, p, x);
      const double direct =
          parts.numerator.value - alpha_T1(p) * parts.denominator.value;
      ValueWithError series = eval_sharp_numerator(Kind::Oscillatory, p, x);
      CHECK(series.value == doctest::Approx(direct).epsilon(1e-9));

      RatioParts mparts = eval_ratio_parts(Kind::Modified, p, x);
      const double mdirect =
          beta_T2(p) * mparts.denominator.value - mparts.numerator.value;
      ValueWithError mseries = eval_sharp_numerator(Kind::Modified, p, x);
      CHECK(mseries.value == doctest::Approx(mdirect).epsilon(1e-9));
    }
  }
}

TEST_CASE("sharp numerator keeps relative accuracy at tiny x") {
  // F - alpha ~ (phi_3/b2) x^2: halving x must scale the numerator by ~x^6.
  const double p = -0.5;
  ValueWithError a = eval_sharp_numerator(Kind::Oscillatory, p, 1e-3);
  ValueWithError b = eval_sharp_numerator(Kind::Oscillatory, p, 5e-4);
  CHECK(a.value > 0.0);
  CHECK(b.value > 0.0);
  CHECK(a.value / b.value == doctest::Approx(64.0).epsilon(1e-4));
  CHECK(a.err < 1e-13 * a.value);
}

TEST_CASE("limit confirmation by extrapolation") {
  LimitsReport t1 = confirm_limits_T1(-0.5, 1e-12);
  CHECK(t1.convergent);
  CHECK(std::abs(t1.near_zero_extrapolated - 0.1) <= 1e-8);
  CHECK(std::abs(t1.far_extrapolated - t1.far_target) <= 1e-6);

  LimitsReport t2 = confirm_limits_T2(-0.5, 40.0, 1e-12);
  CHECK(t2.convergent);
  CHECK(std::abs(t2.near_zero_extrapolated - 0.1) <= 1e-8);
  CHECK(t2.tail_monotone);
  CHECK(t2.asym_rel_diff <= 1e-2);

  LimitsReport t2p0 = confirm_limits_T2(0.0, 40.0, 1e-12);
  CHECK(std::abs(t2p0.near_zero_extrapolated - 1.0 / 24.0) <= 1e-8);
  CHECK(t2p0.tail_monotone);
}

TEST_CASE("asymptotic route reproduces G at large arguments") {
  for (double p : {-0.5, -0.2, 0.0}) {
    const double g = eval_G(p, 40.0).value;
    const double ga = eval_G_asymptotic(p, 40.0, 3);
    CHECK(std::abs(g - ga) / g <= 1e-2);
  }
}

TEST_CASE("extrapolation helper is exact on quadratics") {
  const std::array<double, 3> u = {1e-2, 1e-3, 1e-4};
  std::array<double, 3> v{};
  for (int i = 0; i < 3; ++i) v[i] = 7.0 - 3.0 * u[i] + 11.0 * u[i] * u[i];
  CHECK(extrapolate_to_zero(u, v) == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("best-constant pairs") {
  BestConstantPair t2 = best_constants_T2(-0.5);
  CHECK(t2.alpha == 0.0);
  CHECK(t2.beta == 0.1);

  BestConstantPair t1 = best_constants_T1(-0.5, 1e-12);
  CHECK(t1.alpha == 0.1);
  CHECK(t1.beta > t1.alpha);
}
