#pragma once

#include <vector>

#include "pstddm/benchmark.hpp"
#include "pstddm/fem.hpp"
#include "pstddm/sweep.hpp"

namespace testutil {

using namespace pstddm;

// Small benchmark setup: global system on B_L with the layer interfaces of every N in ns aligned.
struct Setup {
  PmlProfile p;
  double k = 0.0;
  StructuredGrid grid;
  Stretching global;
  FeSystem sys;
};

inline Setup make_setup(double k_over_2pi, double q, const std::vector<int>& ns, double gamma0 = 2.0) {
  Setup s;
  s.p.gamma0 = gamma0;
  s.k = 2.0 * kPi * k_over_2pi;
  std::vector<double> sy{-s.p.l[1], s.p.l[1]};
  for (int n : ns) {
    for (double z : Partition1D(n, s.p.l[1]).interfaces()) sy.push_back(z);
  }
  s.grid = build_grid(s.p.outer_box(), s.k, q, {-s.p.l[0], s.p.l[0]}, sy);
  s.global = make_stretching(StretchSelector::global(), s.p, Partition1D(1, 1.1), Partition1D(1, 1.1));
  s.sys = assemble_matrix(s.grid, s.global, s.k);
  return s;
}

inline ComplexField direct(const FeSystem& sys, const ComplexField& b) {
  return sys.from_dofs(factorize(sys.matrix)->solve(sys.to_dofs(b)));
}

inline double max_abs(const ComplexField& u) {
  double m = 0.0;
  for (const auto& v : u.values) m = std::max(m, std::abs(v));
  return m;
}

inline double rel_max_diff(const ComplexField& a, const ComplexField& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) d = std::max(d, std::abs(a.values[i] - b.values[i]));
  return d / std::max(max_abs(b), 1e-300);
}

// Smooth random-phase density supported in a rectangle.
inline Density bump(const Rect& r, double phase) {
  return [r, phase](Point x) -> cplx {
    if (!r.contains(x)) return 0.0;
    const double a = (x.x1 - r.x1_min) / r.width();
    const double b = (x.x2 - r.x2_min) / r.height();
    return std::sin(kPi * a) * std::sin(kPi * b) * std::exp(cplx(0.0, phase * (a + 2 * b)));
  };
}

}  // namespace testutil
