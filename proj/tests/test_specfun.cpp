#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pstddm/specfun.hpp"

using namespace pstddm;

TEST_CASE("j0 values") {
  CHECK(bessel_j0(0.0) == 1.0);
  CHECK(std::abs(bessel_j0(2.404825557695773)) < 1e-10);
  CHECK(bessel_j0(1.0) == doctest::Approx(0.765197686557967).epsilon(1e-14));
  CHECK(bessel_j0(-3.0) == bessel_j0(3.0));
}

TEST_CASE("j0 first zero by bisection on the series oracle") {
  double a = 2.0;
  double b = 3.0;
  for (int it = 0; it < 60; ++it) {
    const double m = 0.5 * (a + b);
    const double fa = static_cast<double>(oracle::series(a).j0.real());
    const double fm = static_cast<double>(oracle::series(m).j0.real());
    if ((fa < 0) == (fm < 0)) a = m; else b = m;
  }
  CHECK(a == doctest::Approx(2.404825557695773).epsilon(1e-14));
  CHECK(std::abs(bessel_j0(a)) < 1e-12);
}

TEST_CASE("y0, j1, y1 values") {
  CHECK(bessel_y0(1.0) == doctest::Approx(0.088256964215677).epsilon(1e-12));
  CHECK(bessel_y0(2.0) == doctest::Approx(0.510375672649745).epsilon(1e-12));
  CHECK(bessel_y0(1e-8) < -10.0);
  CHECK(bessel_j1(0.0) == 0.0);
  CHECK(bessel_j1(1.0) == doctest::Approx(0.440050585744934).epsilon(1e-12));
  CHECK(bessel_y1(1.0) == doctest::Approx(-0.781212821300289).epsilon(1e-12));
  CHECK(bessel_j1(-1.0) == -bessel_j1(1.0));
}

TEST_CASE("y0 and y1 reject nonpositive arguments") {
  CHECK_THROWS_AS(bessel_y0(0.0), std::domain_error);
  CHECK_THROWS_AS(bessel_y0(-1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_y1(0.0), std::domain_error);
}

TEST_CASE("real functions match the series oracle on (0, 50]") {
  double worst = 0.0;
  for (int n = 1; n <= 500; ++n) {
    const double x = 0.1 * n;
    const oracle::Series s = oracle::series(x);
    worst = std::max(worst, std::abs(bessel_j0(x) - static_cast<double>(s.j0.real())));
    worst = std::max(worst, std::abs(bessel_j1(x) - static_cast<double>(s.j1.real())));
    worst = std::max(worst, std::abs(bessel_y0(x) - static_cast<double>(s.y0.real())));
    worst = std::max(worst, std::abs(bessel_y1(x) - static_cast<double>(s.y1.real())));
  }
  for (double x : {1e-6, 1e-3, 0.03, 0.5}) {
    const oracle::Series s = oracle::series(x);
    worst = std::max(worst, std::abs(bessel_j0(x) - static_cast<double>(s.j0.real())));
    worst = std::max(worst, std::abs(bessel_j1(x) - static_cast<double>(s.j1.real())));
    worst = std::max(worst, std::abs(bessel_y0(x) - static_cast<double>(s.y0.real())));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("Wronskian") {
  for (double x : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
    const double w = bessel_j0(x) * bessel_y1(x) - bessel_j1(x) * bessel_y0(x);
    const double ref = -2.0 / (kPi * x);
    CHECK(std::abs(w - ref) <= 1e-8 * std::abs(ref));
  }
}

TEST_CASE("hankel0 on reals") {
  CHECK(hankel0_first({1.0, 0.0}) == cplx(bessel_j0(1.0), bessel_y0(1.0)));
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const double x = 0.1 + (50.0 - 0.1) * n / 999.0;
    worst = std::max(worst, std::abs(hankel0_first({x, 0.0}) - cplx(bessel_j0(x), bessel_y0(x))));
  }
  CHECK(worst <= 1e-10);
  CHECK_THROWS_AS(hankel0_first({0.0, 0.0}), std::domain_error);
}

TEST_CASE("hankel0 decays up the imaginary axis") {
  CHECK(std::abs(hankel0_first({0.0, 5.0})) < std::abs(hankel0_first({0.0, 1.0})));
}

TEST_CASE("hankel functions match the complex series oracle") {
  const cplx z(2.0, 2.0);
  const cplx ref = oracle::hankel0(z);
  CHECK(std::abs(hankel0_first(z) - ref) <= 1e-12 * std::abs(ref));

  double worst0 = 0.0;
  double worst1 = 0.0;
  for (double r : {1e-6, 1e-3, 0.3, 1.0, 4.0, 9.0, 10.9, 11.1, 15.0, 30.0, 60.0}) {
    for (double th : {0.0, 0.3, 0.8, 1.2, 1.5707963267948966, 2.0, 2.7, 3.141592653589793}) {
      const cplx w = std::polar(r, th);
      const cplx zz(w.real(), std::max(0.0, w.imag()));
      const cplx h0 = oracle::hankel0(zz);
      const cplx h1 = oracle::hankel1(zz);
      worst0 = std::max(worst0, std::abs(hankel0_first(zz) - h0) / std::abs(h0));
      worst1 = std::max(worst1, std::abs(hankel1_first(zz) - h1) / std::abs(h1));
    }
  }
  CHECK(worst0 <= 1e-8);
  CHECK(worst1 <= 1e-8);
}

TEST_CASE("hankel0 imaginary part is continuous along rays") {
  for (double th : {0.1, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
    const cplx dir = std::polar(1.0, th);
    double prev = hankel0_first(0.1 * dir).imag();
    double worst = 0.0;
    for (double r = 0.11; r <= 100.0; r += 0.01) {
      const double cur = hankel0_first(r * dir).imag();
      // Allow the smooth variation over one step; a seam would show as an excess jump.
      const double slope =
          std::max(std::abs(hankel1_first(r * dir)), std::abs(hankel1_first((r - 0.01) * dir))) * 0.01;
      worst = std::max(worst, std::abs(cur - prev) - slope);
      prev = cur;
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("hankel0 seam agreement at the switchover radius") {
  for (double th : {0.2, 0.9, 1.6, 2.4, 3.0}) {
    const cplx in = std::polar(10.999999, th);
    const cplx out = std::polar(11.000001, th);
    CHECK(std::abs(hankel0_first(in) - hankel0_first(out)) < 1e-6 * std::abs(hankel0_first(in)) + 1e-6);
  }
}

TEST_CASE("branch_sqrt") {
  CHECK(branch_sqrt({4.0, 0.0}) == cplx(2.0, 0.0));
  const cplx w = branch_sqrt({0.0, 2.0});
  CHECK(std::abs(w - cplx(1.0, 1.0)) < 1e-15);
  CHECK(branch_sqrt({-4.0, 0.0}) == cplx(0.0, 2.0));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  int done = 0;
  while (done < 1000) {
    const cplx z(u(rng), u(rng));
    if (std::abs(z) > 100.0) continue;
    ++done;
    const cplx s = branch_sqrt(z);
    CHECK(s.real() >= 0.0);
    CHECK(std::abs(s * s - z) <= 1e-14 * std::abs(z));
  }
}
