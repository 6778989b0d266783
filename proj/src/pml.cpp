#include "pstddm/pml.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pstddm/specfun.hpp"

namespace pstddm {

namespace {

double ramp_u(double t, const AxisProfile& p) { return (t - p.l) / (p.l_bar - p.l); }

double hat_prime(double t, const AxisProfile& p) {
  const double a = p.l_bar - p.l;
  const double u = ramp_u(t, p);
  return p.gamma0 * 30.0 * u * u * (1.0 - u) * (1.0 - u) / a;
}

double hat_second(double t, const AxisProfile& p) {
  const double a = p.l_bar - p.l;
  const double u = ramp_u(t, p);
  return p.gamma0 * 60.0 * u * (1.0 - u) * (1.0 - 2.0 * u) / (a * a);
}

double hat_value(double t, const AxisProfile& p) {
  const double u = ramp_u(t, p);
  return p.gamma0 * u * u * u * (10.0 - 15.0 * u + 6.0 * u * u);
}

}  // namespace

double AxisProfile::sigma_hat(double t) const {
  if (t < l || t > l_bar) throw std::domain_error("sigma_hat: argument outside [l, l_bar]");
  return hat_value(t, *this);
}

double AxisProfile::sigma(double t) const {
  const double a = std::abs(t);
  if (a <= l) return 0.0;
  if (a >= l_bar) return gamma0;
  return hat_value(a, *this) + (a - l) * hat_prime(a, *this);
}

double AxisProfile::sigma_prime(double t) const {
  const double a = std::abs(t);
  if (a <= l || a >= l_bar) return 0.0;
  const double v = 2.0 * hat_prime(a, *this) + (a - l) * hat_second(a, *this);
  return t < 0.0 ? -v : v;
}

double AxisProfile::integral(double t) const {
  const double a = std::abs(t);
  double v = 0.0;
  if (a <= l) {
    v = 0.0;
  } else if (a < l_bar) {
    v = (a - l) * hat_value(a, *this);
  } else {
    v = (l_bar - l) * gamma0 + gamma0 * (a - l_bar);
  }
  return t < 0.0 ? -v : v;
}

AxisProfile PmlProfile::axis(Axis a) const {
  const int j = a == Axis::X1 ? 0 : 1;
  return {l[j], l_bar[j], gamma0};
}

void PmlProfile::validate() const {
  if (!(gamma0 > 0.0)) throw ConfigError("pml: gamma0 must be positive");
  for (int j = 0; j < 2; ++j) {
    if (!(l[j] > 0.0) || !(d[j] > 0.0)) throw ConfigError("pml: l and d must be positive");
    if (!(l_bar[j] > l[j])) {
      std::ostringstream os;
      os << "pml: l_bar" << j + 1 << " must exceed l" << j + 1;
      throw ConfigError(os.str());
    }
  }
}

double sigma_hat(double t, Axis axis, const PmlProfile& p) { return p.axis(axis).sigma_hat(t); }
double sigma(double t, Axis axis, const PmlProfile& p) { return p.axis(axis).sigma(t); }

cplx stretch_1d(double x, Axis axis, const PmlProfile& p) { return {x, p.axis(axis).integral(x)}; }

double Stretch1D::shifted(double x) const {
  if (x > hi) return x - hi + prof.l;
  if (x < lo) return x - lo - prof.l;
  return 0.0;
}

double Stretch1D::sigma(double x) const { return prof.sigma(shifted(x)); }
double Stretch1D::sigma_prime(double x) const { return prof.sigma_prime(shifted(x)); }
cplx Stretch1D::stretched(double x) const { return {x, prof.integral(shifted(x))}; }

StretchCoefficients Stretching::at(Point x) const {
  const cplx a1 = s1.alpha(x.x1);
  const cplx a2 = s2.alpha(x.x2);
  return {a2 / a1, a1 / a2, a1 * a2};
}

namespace {

void check_index(int idx, const Partition1D& part, const char* what) {
  if (idx < 1 || idx > part.n - 1) {
    std::ostringstream os;
    os << what << " index " << idx << " out of range 1.." << part.n - 1;
    throw std::out_of_range(os.str());
  }
}

}  // namespace

Stretching make_stretching(const StretchSelector& sel, const PmlProfile& p, const Partition1D& layers,
                           const Partition1D& blocks) {
  Stretching s;
  s.s1 = {-p.l[0], p.l[0], p.axis(Axis::X1)};
  s.s2 = {-p.l[1], p.l[1], p.axis(Axis::X2)};
  if (sel.kind == StretchSelector::Kind::Global) return s;
  check_index(sel.layer, layers, "layer");
  s.s2.lo = layers.zeta(sel.layer);
  s.s2.hi = layers.zeta(sel.layer + 2);
  if (sel.kind == StretchSelector::Kind::BlockLocal) {
    check_index(sel.block, blocks, "block");
    s.s1.lo = blocks.zeta(sel.block);
    s.s1.hi = blocks.zeta(sel.block + 2);
  }
  return s;
}

cplx local_stretch_x2(double x2, int layer_i, const Partition1D& layers, const PmlProfile& p) {
  check_index(layer_i, layers, "layer");
  const Stretch1D s{layers.zeta(layer_i), layers.zeta(layer_i + 2), p.axis(Axis::X2)};
  return s.stretched(x2);
}

cplx local_stretch_x1(double x1, int block_j, const Partition1D& blocks, const PmlProfile& p) {
  check_index(block_j, blocks, "block");
  const Stretch1D s{blocks.zeta(block_j), blocks.zeta(block_j + 2), p.axis(Axis::X1)};
  return s.stretched(x1);
}

StretchCoefficients coefficients_at(Point x, const StretchSelector& sel, const PmlProfile& p,
                                    const Partition1D& layers, const Partition1D& blocks) {
  return make_stretching(sel, p, layers, blocks).at(x);
}

cplx complex_distance(const std::array<cplx, 2>& xt, const std::array<cplx, 2>& yt) {
  const cplx a = xt[0] - yt[0];
  const cplx b = xt[1] - yt[1];
  return branch_sqrt(a * a + b * b);
}

namespace {

double band_integral(const AxisProfile& a, double from, double to) { return a.integral(to) - a.integral(from); }

bool same(double x, double y) { return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)}); }

}  // namespace

AssumptionReport validate_H1(const PmlProfile& p) {
  AssumptionReport r;
  const AxisProfile a1 = p.axis(Axis::X1);
  const AxisProfile a2 = p.axis(Axis::X2);
  const double s1 = band_integral(a1, p.l[0], p.l[0] + p.d[1]);
  const double s2 = band_integral(a2, p.l[1], p.l[1] + p.d[1]);
  r.sigma_bar = s2;
  if (!same(s1, s2)) {
    r.failures.push_back("H1: int_{l1}^{l1+d2} sigma1 != int_{l2}^{l2+d2} sigma2");
  }
  const double outer = band_integral(a1, p.l[0] + p.d[1], p.l[0] + p.d[0]);
  if (outer < r.sigma_bar * (1.0 - 1e-12)) {
    r.failures.push_back("H1: int_{l1+d2}^{l1+d1} sigma1 < sigma_bar");
  }
  if (p.l[0] > p.l[1]) r.failures.push_back("H1: l1 > l2");
  if (!same(p.d[0], 2.0 * p.d[1])) r.failures.push_back("H1: d1 != 2 d2");
  for (int j = 0; j < 2; ++j) {
    if (p.l_bar[j] > p.l[j] + p.d[1]) {
      r.warnings.push_back("H1: l_bar exceeds l + d2, ramp truncated before saturation");
    }
  }
  r.ok = r.failures.empty();
  return r;
}

AssumptionReport validate_H2(const PmlProfile& p, double d) {
  AssumptionReport r;
  const AxisProfile a1 = p.axis(Axis::X1);
  const AxisProfile a2 = p.axis(Axis::X2);
  r.sigma_bar = band_integral(a2, p.l[1], p.l[1] + 0.5 * d);
  const double lim = r.sigma_bar * (1.0 - 1e-12);
  const AxisProfile* axes[2] = {&a1, &a2};
  const char* names[2] = {"sigma1", "sigma2"};
  for (int j = 0; j < 2; ++j) {
    const double l = p.l[j];
    if (band_integral(*axes[j], l, l + 0.5 * d) < lim) {
      r.failures.push_back(std::string("H2: int_l^{l+d/2} ") + names[j] + " < sigma_bar");
    }
    if (band_integral(*axes[j], l + 0.5 * d, l + d) < lim) {
      r.failures.push_back(std::string("H2: int_{l+d/2}^{l+d} ") + names[j] + " < sigma_bar");
    }
  }
  r.ok = r.failures.empty();
  return r;
}

}  // namespace pstddm
