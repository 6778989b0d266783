#include "pstddm/benchmark.hpp"

#include <cmath>

#include "pstddm/specfun.hpp"

namespace pstddm {

namespace {

constexpr double kOrigin = 1e-12;

double v_of(double r) { return -r * r * r * (r * r * r + 3.0 * r * r - 12.0 * r + 9.0); }
double dv_of(double r) { return -(6.0 * std::pow(r, 5) + 15.0 * std::pow(r, 4) - 48.0 * r * r * r + 27.0 * r * r); }
// v'' + v'/r
double lap_v(double r) { return -(36.0 * std::pow(r, 4) + 75.0 * r * r * r - 192.0 * r * r + 81.0 * r); }

}  // namespace

cplx exact_solution(Point x, double k) {
  const double r = std::hypot(x.x1, x.x2);
  if (r <= kOrigin) return 0.0;
  const cplx h0 = hankel0_first(k * r);
  return r < 1.0 ? v_of(r) * h0 : -h0;
}

std::array<cplx, 2> exact_gradient(Point x, double k) {
  const double r = std::hypot(x.x1, x.x2);
  if (r <= kOrigin) return {cplx(0.0), cplx(0.0)};
  const cplx h0 = hankel0_first(k * r);
  const cplx h1 = hankel1_first(k * r);
  // d/dr H0(kr) = -k H1(kr)
  const cplx du = r < 1.0 ? dv_of(r) * h0 - k * v_of(r) * h1 : k * h1;
  return {du * (x.x1 / r), du * (x.x2 / r)};
}

cplx source_term(Point x, double k) {
  const double r = std::hypot(x.x1, x.x2);
  if (r >= 1.0 || r <= kOrigin) return 0.0;
  const cplx h0 = hankel0_first(k * r);
  const cplx h1 = hankel1_first(k * r);
  return h0 * lap_v(r) - 2.0 * k * dv_of(r) * h1;
}

}  // namespace pstddm
