#include "pstddm/specfun.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace pstddm {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kTwoOverPi = 2.0 / kPi;
constexpr double kSwitchRadius = 11.0;

// J_0(x) and J_1(x) for x > 0 plus the two Neumann sums needed by Y_0 and Y_1,
// all from one backward recurrence normalized by J_0 + 2 sum J_2k = 1.
struct MillerResult {
  double j0;
  double j1;
  double s0;  // sum_{k>=1} (-1)^k J_2k / k
  double s1;  // sum_{k>=1} (-1)^k (J_{2k-1} - J_{2k+1}) / k
};

MillerResult miller(double x) {
  int m = 2 * static_cast<int>((1.2 * x + 40.0) / 2.0);
  constexpr double kBig = 1e250;
  double jp1 = 0.0;  // J_{n+1}
  double jn = 1e-300;  // J_n, n = m
  double norm = 0.0;
  double s0 = 0.0;
  double s1 = 0.0;
  double j0 = 0.0;
  double j1 = 0.0;
  // Values J_{n}, J_{n+1}, J_{n+2} are needed for s1 at odd indices.
  double jp2 = 0.0;
  for (int n = m; n >= 0; --n) {
    // jn currently holds J_n (unnormalized), jp1 = J_{n+1}, jp2 = J_{n+2}.
    if (n % 2 == 0) {
      if (n > 0) {
        norm += 2.0 * jn;
        const int k = n / 2;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        s0 += sign * jn / k;
      } else {
        norm += jn;
      }
    } else {
      // n = 2k-1 contributes (-1)^k (J_{2k-1} - J_{2k+1}) / k
      const int k = (n + 1) / 2;
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      s1 += sign * (jn - jp2) / k;
    }
    if (n == 1) j1 = jn;
    if (n == 0) j0 = jn;
    if (n > 0) {
      const double jm1 = (2.0 * n / x) * jn - jp1;
      jp2 = jp1;
      jp1 = jn;
      jn = jm1;
      if (std::abs(jn) > kBig) {
        jn /= kBig;
        jp1 /= kBig;
        jp2 /= kBig;
        norm /= kBig;
        s0 /= kBig;
        s1 /= kBig;
        j1 /= kBig;
      }
    }
  }
  return {j0 / norm, j1 / norm, s0 / norm, s1 / norm};
}

// Power series of J_0 for small |x|.
double j0_series(double x) {
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 30; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double j1_series(double x) {
  const double q = -0.25 * x * x;
  double term = 0.5 * x;
  double sum = term;
  for (int k = 1; k < 30; ++k) {
    term *= q / (static_cast<double>(k) * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

using lcplx = std::complex<long double>;

// Ascending series of H_0^(1) and H_1^(1) for moderate |z| in extended precision.
void hankel_series(cplx zd, cplx* h0, cplx* h1) {
  const lcplx z(zd.real(), zd.imag());
  const lcplx half = z / 2.0L;
  const lcplx q = -half * half;
  const long double gamma = 0.57721566490153286060651209008240243L;
  const long double pi = 3.14159265358979323846264338327950288L;
  const lcplx logterm = std::log(half) + gamma;

  // Order 0.
  lcplx term0 = 1.0L;
  lcplx j0 = 1.0L;
  lcplx sum0 = 0.0L;
  // Order 1: term1_k = (-1)^k (z/2)^{2k+1} / (k! (k+1)!)
  lcplx term1 = half;
  lcplx j1 = half;
  long double hk = 0.0L;  // harmonic number H_k
  lcplx sum1 = (2.0L * 0.0L + 1.0L) * term1;  // (H_k + H_{k+1}) term1 at k = 0
  for (int k = 1; k < 200; ++k) {
    const long double kk = static_cast<long double>(k);
    term0 *= q / (kk * kk);
    term1 *= q / (kk * (kk + 1.0L));
    hk += 1.0L / kk;
    j0 += term0;
    j1 += term1;
    sum0 += hk * term0;
    sum1 += (2.0L * hk + 1.0L / (kk + 1.0L)) * term1;
    if (std::abs(term0) < 1e-22L * (1.0L + std::abs(j0)) &&
        std::abs(term1) < 1e-22L * (1.0L + std::abs(j1)) && kk * kk > std::abs(q)) {
      break;
    }
  }
  // Y_0 = (2/pi)[(log(z/2)+gamma) J_0 - sum H_k (-z^2/4)^k/(k!)^2]
  const lcplx y0 = (2.0L / pi) * (logterm * j0 - sum0);
  // Y_1 = -2/(pi z) + (2/pi) log(z/2) J_1 - (1/pi) sum (psi(k+1)+psi(k+2)) term1_k
  // with psi(k+1) + psi(k+2) = -2 gamma + H_k + H_{k+1}.
  const lcplx y1 = -2.0L / (pi * z) + (2.0L / pi) * logterm * j1 - (1.0L / pi) * sum1;
  const lcplx i(0.0L, 1.0L);
  const lcplx r0 = j0 + i * y0;
  const lcplx r1 = j1 + i * y1;
  *h0 = cplx(static_cast<double>(r0.real()), static_cast<double>(r0.imag()));
  *h1 = cplx(static_cast<double>(r1.real()), static_cast<double>(r1.imag()));
}

// Hankel asymptotic expansion for large |z|, order nu in {0, 1}.
cplx hankel_asymptotic(cplx z, int nu) {
  const double mu = 4.0 * nu * nu;
  const cplx i(0.0, 1.0);
  cplx sum = 1.0;
  cplx term = 1.0;
  double best = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const cplx next = term * i * (mu - odd * odd) / (8.0 * k) / z;
    if (std::abs(next) > best) break;
    best = std::abs(next);
    term = next;
    sum += term;
    if (best < 1e-17 * std::abs(sum)) break;
  }
  const double phase = (2.0 * nu + 1.0) * kPi / 4.0;
  return std::sqrt(kTwoOverPi / z) * std::exp(i * (z - phase)) * sum;
}

cplx clean(cplx w) {
  double re = w.real();
  double im = w.imag();
  if (re == 0.0) re = 0.0;
  if (im == 0.0) im = 0.0;
  return {re, im};
}

void hankel_pair(cplx z, cplx* h0, cplx* h1) {
  if (z == cplx(0.0, 0.0)) throw std::domain_error("hankel: singular at z = 0");
  if (z.imag() < 0.0) throw std::domain_error("hankel: requires Im z >= 0");
  if (z.imag() == 0.0 && z.real() > 0.0) {
    const double x = z.real();
    *h0 = {bessel_j0(x), bessel_y0(x)};
    *h1 = {bessel_j1(x), bessel_y1(x)};
    return;
  }
  if (std::abs(z) < kSwitchRadius) {
    hankel_series(z, h0, h1);
  } else {
    *h0 = hankel_asymptotic(z, 0);
    *h1 = hankel_asymptotic(z, 1);
  }
  *h0 = clean(*h0);
  *h1 = clean(*h1);
}

}  // namespace

double bessel_j0(double x) {
  const double ax = std::abs(x);
  if (ax < 1.0) return j0_series(ax);
  return miller(ax).j0;
}

double bessel_j1(double x) {
  const double ax = std::abs(x);
  const double v = ax < 1.0 ? j1_series(ax) : miller(ax).j1;
  return x < 0.0 ? -v : v;
}

double bessel_y0(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_y0: argument must be positive");
  const MillerResult r = miller(x);
  return kTwoOverPi * ((std::log(x / 2.0) + kEulerGamma) * r.j0 - 2.0 * r.s0);
}

double bessel_y1(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_y1: argument must be positive");
  const MillerResult r = miller(x);
  return kTwoOverPi * (-r.j0 / x + (std::log(x / 2.0) + kEulerGamma) * r.j1 + r.s1);
}

cplx hankel0_first(cplx z) {
  cplx h0;
  cplx h1;
  hankel_pair(z, &h0, &h1);
  return h0;
}

cplx hankel1_first(cplx z) {
  cplx h0;
  cplx h1;
  hankel_pair(z, &h0, &h1);
  return h1;
}

cplx branch_sqrt(cplx z) {
  if (z.imag() == 0.0) {
    if (z.real() >= 0.0) return {std::sqrt(z.real()), 0.0};
    return {0.0, std::sqrt(-z.real())};
  }
  return std::sqrt(z);
}

}  // namespace pstddm
