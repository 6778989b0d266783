#pragma once

#include <array>
#include <string>
#include <vector>

#include "pstddm/partition.hpp"
#include "pstddm/types.hpp"

namespace pstddm {

// Absorbing profile along one axis: sigma = 0 on |t| <= l, quintic ramp on l < |t| < l_bar,
// gamma0 beyond l_bar.
struct AxisProfile {
  double l = 1.1;
  double l_bar = 1.18;
  double gamma0 = 10.0;

  [[nodiscard]] double sigma_hat(double t) const;  // requires l <= t <= l_bar
  [[nodiscard]] double sigma(double t) const;
  [[nodiscard]] double sigma_prime(double t) const;
  // S(t) = int_0^t sigma, odd in t.
  [[nodiscard]] double integral(double t) const;
};

struct PmlProfile {
  std::array<double, 2> l{1.1, 1.1};
  std::array<double, 2> l_bar{1.18, 1.18};
  std::array<double, 2> d{0.2, 0.1};
  double gamma0 = 10.0;

  [[nodiscard]] AxisProfile axis(Axis a) const;
  [[nodiscard]] Rect inner_box() const { return {-l[0], l[0], -l[1], l[1]}; }
  [[nodiscard]] Rect outer_box() const { return {-l[0] - d[0], l[0] + d[0], -l[1] - d[1], l[1] + d[1]}; }
  // Throws ConfigError unless l < l_bar and gamma0 > 0 on both axes.
  void validate() const;
};

double sigma_hat(double t, Axis axis, const PmlProfile& p);
double sigma(double t, Axis axis, const PmlProfile& p);
cplx stretch_1d(double x, Axis axis, const PmlProfile& p);

// Stretching along one axis that is the identity on [lo, hi] and continues with the
// global ramp shifted so that the ramp starts at lo (below) and hi (above).
struct Stretch1D {
  double lo = -1.0;
  double hi = 1.0;
  AxisProfile prof;

  [[nodiscard]] double shifted(double x) const;  // argument fed to the global profile
  [[nodiscard]] double sigma(double x) const;
  [[nodiscard]] double sigma_prime(double x) const;
  [[nodiscard]] cplx alpha(double x) const { return {1.0, sigma(x)}; }
  [[nodiscard]] cplx alpha_prime(double x) const { return {0.0, sigma_prime(x)}; }
  [[nodiscard]] cplx stretched(double x) const;
};

struct StretchCoefficients {
  cplx a11;
  cplx a22;
  cplx jac;
};

struct StretchSelector {
  enum class Kind { Global, LayerLocal, BlockLocal };
  Kind kind = Kind::Global;
  int layer = 0;  // i, 1-based
  int block = 0;  // j, 1-based

  static StretchSelector global() { return {}; }
  static StretchSelector layer_local(int i) { return {Kind::LayerLocal, i, 0}; }
  static StretchSelector block_local(int i, int j) { return {Kind::BlockLocal, i, j}; }
};

// Tensor-product stretching; the coefficient fields A = diag(a2/a1, a1/a2), J = a1 a2.
struct Stretching {
  Stretch1D s1;
  Stretch1D s2;

  [[nodiscard]] StretchCoefficients at(Point x) const;
  [[nodiscard]] std::array<cplx, 2> stretched(Point x) const {
    return {s1.stretched(x.x1), s2.stretched(x.x2)};
  }
};

// layers partitions x2, blocks partitions x1. Layer and block indices run 1..n-1.
Stretching make_stretching(const StretchSelector& sel, const PmlProfile& p, const Partition1D& layers,
                           const Partition1D& blocks);

cplx local_stretch_x2(double x2, int layer_i, const Partition1D& layers, const PmlProfile& p);
cplx local_stretch_x1(double x1, int block_j, const Partition1D& blocks, const PmlProfile& p);

StretchCoefficients coefficients_at(Point x, const StretchSelector& sel, const PmlProfile& p,
                                    const Partition1D& layers, const Partition1D& blocks);

cplx complex_distance(const std::array<cplx, 2>& xt, const std::array<cplx, 2>& yt);

struct AssumptionReport {
  double sigma_bar = 0.0;
  bool ok = true;
  std::vector<std::string> failures;
  std::vector<std::string> warnings;
};

// H1: int_{l1}^{l1+d2} sigma1 = int_{l2}^{l2+d2} sigma2 =: sigma_bar,
//     int_{l1+d2}^{l1+d1} sigma1 >= sigma_bar, l1 <= l2, d1 = 2 d2.
AssumptionReport validate_H1(const PmlProfile& p);
// H2 with a single width d: sigma_bar = int_{l2}^{l2+d/2} sigma2 and, on both axes,
// int_l^{l+d/2} sigma >= sigma_bar, int_{l+d/2}^{l+d} sigma >= sigma_bar.
AssumptionReport validate_H2(const PmlProfile& p, double d);

}  // namespace pstddm
