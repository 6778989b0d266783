#include "pstddm/fem.hpp"

#include <cmath>
#include <stdexcept>

namespace pstddm {

namespace {

constexpr double kG2 = 0.21132486540518711775;  // 0.5 - 0.5/sqrt(3)
const double kGauss2[2] = {kG2, 1.0 - kG2};
const double kWeight2[2] = {0.5, 0.5};
const double kGauss3[3] = {0.5 - 0.5 * std::sqrt(0.6), 0.5, 0.5 + 0.5 * std::sqrt(0.6)};
const double kWeight3[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

// Bilinear shape functions on the unit square, local node a = ix + 2 iy.
struct Shape {
  double phi[4];
  double dxi[4];
  double deta[4];
};

Shape shape(double xi, double eta) {
  Shape s;
  const double gx[2] = {1.0 - xi, xi};
  const double gy[2] = {1.0 - eta, eta};
  const double dgx[2] = {-1.0, 1.0};
  for (int a = 0; a < 4; ++a) {
    const int ax = a & 1;
    const int ay = a >> 1;
    s.phi[a] = gx[ax] * gy[ay];
    s.dxi[a] = dgx[ax] * gy[ay];
    s.deta[a] = gx[ax] * dgx[ay];
  }
  return s;
}

int element_node(const StructuredGrid& g, int ex, int ey, int a) { return g.index(ex + (a & 1), ey + (a >> 1)); }

bool element_in(const StructuredGrid& g, int ex, int ey, const Rect& r) {
  const double cx = g.x(ex) + 0.5 * g.hx;
  const double cy = g.y(ey) + 0.5 * g.hy;
  return cx > r.x1_min && cx < r.x1_max && cy > r.x2_min && cy < r.x2_max;
}

template <typename F>
void for_each_element(const StructuredGrid& g, F&& fn) {
  for (int ey = 0; ey + 1 < g.ny; ++ey) {
    for (int ex = 0; ex + 1 < g.nx; ++ex) fn(ex, ey);
  }
}

}  // namespace

std::pair<double, double> beta_eval(double t, const CutoffSpec& c) {
  double v = 1.0;
  double dv = 0.0;
  if (t >= c.band_hi()) {
    v = 0.0;
  } else if (t > c.band_lo()) {
    const double half = 0.5 * c.delta;
    const double s = (t - c.band_lo()) / half;
    v = 1.0 + s * s * s * s - 2.0 * s * s;
    dv = (4.0 * s * s * s - 4.0 * s) / half;
  }
  if (!c.plus) {
    v = 1.0 - v;
    dv = -dv;
  }
  return {v, dv};
}

std::array<std::array<cplx, 4>, 4> element_matrix(const Stretching& s, double k, double x0, double y0, double hx,
                                                  double hy) {
  std::array<std::array<cplx, 4>, 4> ke{};
  const double area = hx * hy;
  const double k2 = k * k;
  for (int qy = 0; qy < 2; ++qy) {
    for (int qx = 0; qx < 2; ++qx) {
      const Shape sh = shape(kGauss2[qx], kGauss2[qy]);
      const StretchCoefficients c = s.at({x0 + kGauss2[qx] * hx, y0 + kGauss2[qy] * hy});
      const double w = kWeight2[qx] * kWeight2[qy] * area;
      for (int a = 0; a < 4; ++a) {
        for (int b = a; b < 4; ++b) {
          const double gxx = (sh.dxi[a] / hx) * (sh.dxi[b] / hx);
          const double gyy = (sh.deta[a] / hy) * (sh.deta[b] / hy);
          const double mm = sh.phi[a] * sh.phi[b];
          ke[a][b] += w * (c.a11 * gxx + c.a22 * gyy - k2 * c.jac * mm);
        }
      }
    }
  }
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < a; ++b) ke[a][b] = ke[b][a];
  }
  return ke;
}

FeSystem assemble_matrix(const StructuredGrid& grid, const Stretching& s, double k) {
  if (grid.nx < 3 || grid.ny < 3) throw ConfigError("assemble: grid has no interior nodes");
  FeSystem sys;
  sys.grid = grid;
  sys.stretching = s;
  sys.k = k;
  const int mx = grid.nx - 2;
  const int my = grid.ny - 2;
  const int n = mx * my;
  auto dof = [&](int ix, int iy) { return (iy - 1) * mx + (ix - 1); };
  auto interior = [&](int ix, int iy) { return ix > 0 && iy > 0 && ix < grid.nx - 1 && iy < grid.ny - 1; };

  CsrMatrix& m = sys.matrix;
  m.n = n;
  m.row_ptr.assign(n + 1, 0);
  std::vector<int> slots(static_cast<std::size_t>(n) * 9, -1);
  for (int iy = 1; iy < grid.ny - 1; ++iy) {
    for (int ix = 1; ix < grid.nx - 1; ++ix) {
      const int r = dof(ix, iy);
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (!interior(ix + dx, iy + dy)) continue;
          slots[static_cast<std::size_t>(r) * 9 + (dy + 1) * 3 + (dx + 1)] = static_cast<int>(m.col.size());
          m.col.push_back(dof(ix + dx, iy + dy));
        }
      }
      m.row_ptr[r + 1] = static_cast<int>(m.col.size());
    }
  }
  m.val.assign(m.col.size(), cplx(0.0, 0.0));

  for_each_element(grid, [&](int ex, int ey) {
    const auto ke = element_matrix(s, k, grid.x(ex), grid.y(ey), grid.hx, grid.hy);
    for (int a = 0; a < 4; ++a) {
      const int ax = ex + (a & 1);
      const int ay = ey + (a >> 1);
      if (!interior(ax, ay)) continue;
      const int r = dof(ax, ay);
      for (int b = 0; b < 4; ++b) {
        const int bx = ex + (b & 1);
        const int by = ey + (b >> 1);
        if (!interior(bx, by)) continue;
        const int slot = slots[static_cast<std::size_t>(r) * 9 + (by - ay + 1) * 3 + (bx - ax + 1)];
        m.val[slot] += ke[a][b];
      }
    }
  });
  return sys;
}

CVector FeSystem::to_dofs(const ComplexField& u) const {
  if (!same_lattice(u.grid, grid) || u.grid.off_x != grid.off_x || u.grid.off_y != grid.off_y ||
      u.grid.nx != grid.nx || u.grid.ny != grid.ny) {
    throw std::invalid_argument("to_dofs: field lives on a different grid");
  }
  CVector x(dofs());
  const int mx = grid.nx - 2;
  for (int iy = 1; iy < grid.ny - 1; ++iy) {
    for (int ix = 1; ix < grid.nx - 1; ++ix) x[(iy - 1) * mx + (ix - 1)] = u.at(ix, iy);
  }
  return x;
}

ComplexField FeSystem::from_dofs(const CVector& x) const {
  if (static_cast<int>(x.size()) != dofs()) throw std::invalid_argument("from_dofs: size mismatch");
  ComplexField u(grid);
  const int mx = grid.nx - 2;
  for (int iy = 1; iy < grid.ny - 1; ++iy) {
    for (int ix = 1; ix < grid.nx - 1; ++ix) u.at(ix, iy) = x[(iy - 1) * mx + (ix - 1)];
  }
  return u;
}

ComplexField FeSystem::apply(const ComplexField& u) const { return from_dofs(matrix.multiply(to_dofs(u))); }

ComplexField assemble_volume_load(const StructuredGrid& grid, const Stretching& s, const Density& f,
                                  const PointFilter& keep) {
  ComplexField out(grid);
  const double area = grid.hx * grid.hy;
  for_each_element(grid, [&](int ex, int ey) {
    for (int qy = 0; qy < 2; ++qy) {
      for (int qx = 0; qx < 2; ++qx) {
        const Point p{grid.x(ex) + kGauss2[qx] * grid.hx, grid.y(ey) + kGauss2[qy] * grid.hy};
        if (keep && !keep(p)) continue;
        const cplx fv = f(p);
        if (fv == cplx(0.0, 0.0)) continue;
        const Shape sh = shape(kGauss2[qx], kGauss2[qy]);
        const cplx v = -kWeight2[qx] * kWeight2[qy] * area * s.at(p).jac * fv;
        for (int a = 0; a < 4; ++a) out.values[element_node(grid, ex, ey, a)] += v * sh.phi[a];
      }
    }
  });
  return out;
}

ComplexField assemble_volume_load(const StructuredGrid& grid, const Stretching& s, const Density& f,
                                  const Rect& support) {
  return assemble_volume_load(grid, s, f, [support](Point p) { return support.contains(p); });
}

ComplexField assemble_transfer_load(const FeSystem& sys, const ComplexField& u_prev, const CutoffSpec& cutoff,
                                    const Density& f_next, const PointFilter& keep) {
  const StructuredGrid& grid = sys.grid;
  if (!nested(u_prev.grid, grid) || !nested(grid, u_prev.grid)) {
    throw ConfigError("transfer load: field and system grids differ");
  }
  const Rect r = grid.rect();
  const double lo = cutoff.axis == Axis::X2 ? r.x2_min : r.x1_min;
  const double hi = cutoff.axis == Axis::X2 ? r.x2_max : r.x1_max;
  if (cutoff.band_lo() < lo || cutoff.band_hi() > hi) {
    throw ConfigError("transfer load: cutoff band not covered by the field's grid");
  }
  ComplexField out(grid);
  const double area = grid.hx * grid.hy;
  for_each_element(grid, [&](int ex, int ey) {
    cplx ue[4];
    for (int a = 0; a < 4; ++a) ue[a] = u_prev.values[element_node(grid, ex, ey, a)];
    for (int qy = 0; qy < 2; ++qy) {
      for (int qx = 0; qx < 2; ++qx) {
        const Point p{grid.x(ex) + kGauss2[qx] * grid.hx, grid.y(ey) + kGauss2[qy] * grid.hy};
        const auto [bv, bd] = beta_eval(cutoff.axis == Axis::X2 ? p.x2 : p.x1, cutoff);
        const bool with_f = f_next && (!keep || keep(p));
        if (bd == 0.0 && (!with_f || bv == 0.0)) continue;
        const Shape sh = shape(kGauss2[qx], kGauss2[qy]);
        const StretchCoefficients c = sys.stretching.at(p);
        cplx u = 0.0;
        cplx ux = 0.0;
        cplx uy = 0.0;
        for (int a = 0; a < 4; ++a) {
          u += ue[a] * sh.phi[a];
          ux += ue[a] * sh.dxi[a] / grid.hx;
          uy += ue[a] * sh.deta[a] / grid.hy;
        }
        const double gbx = cutoff.axis == Axis::X1 ? bd : 0.0;
        const double gby = cutoff.axis == Axis::X2 ? bd : 0.0;
        // A u grad(beta) and A grad(u) . grad(beta)
        const cplx aub_x = c.a11 * u * gbx;
        const cplx aub_y = c.a22 * u * gby;
        const cplx agub = c.a11 * ux * gbx + c.a22 * uy * gby;
        const cplx fterm = with_f ? c.jac * f_next(p) * bv : cplx(0.0, 0.0);
        const double w = kWeight2[qx] * kWeight2[qy] * area;
        for (int a = 0; a < 4; ++a) {
          const double px = sh.dxi[a] / grid.hx;
          const double py = sh.deta[a] / grid.hy;
          out.values[element_node(grid, ex, ey, a)] +=
              w * (-(aub_x * px + aub_y * py) + (agub - fterm) * sh.phi[a]);
        }
      }
    }
  });
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      if (grid.on_boundary(ix, iy)) out.at(ix, iy) = 0.0;
    }
  }
  return out;
}

ComplexField commutator_transfer_load(const FeSystem& sys, const ComplexField& u_prev, const CutoffSpec& cutoff,
                                      const ComplexField* f_next_load) {
  const StructuredGrid& g = sys.grid;
  const CVector u = sys.to_dofs(u_prev);
  const int mx = g.nx - 2;
  const int n = sys.dofs();
  std::vector<double> beta(n);
  for (int iy = 1; iy < g.ny - 1; ++iy) {
    for (int ix = 1; ix < g.nx - 1; ++ix) {
      const Point p = g.node(ix, iy);
      beta[(iy - 1) * mx + (ix - 1)] = beta_eval(cutoff.axis == Axis::X2 ? p.x2 : p.x1, cutoff).first;
    }
  }
  const CsrMatrix& m = sys.matrix;
  CVector t(n, cplx(0.0, 0.0));
  for (int r = 0; r < n; ++r) {
    cplx s = 0.0;
    for (int p = m.row_ptr[r]; p < m.row_ptr[r + 1]; ++p) {
      const double db = beta[r] - beta[m.col[p]];
      if (db != 0.0) s += db * m.val[p] * u[m.col[p]];
    }
    t[r] = s;
  }
  if (f_next_load != nullptr) {
    const CVector f = sys.to_dofs(*f_next_load);
    for (int r = 0; r < n; ++r) {
      if (beta[r] != 1.0) t[r] += (1.0 - beta[r]) * f[r];
    }
  }
  return sys.from_dofs(t);
}

ComplexField interpolate(const StructuredGrid& grid, const Density& f) {
  ComplexField u(grid);
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) u.at(ix, iy) = f(grid.node(ix, iy));
  }
  return u;
}

namespace {

// Sum over elements in region of int |grad(u_h) - g|^2, g given at points (may be null).
double seminorm_sq(const ComplexField& u, const GradientFn* g, const Rect& region, int order) {
  const StructuredGrid& grid = u.grid;
  const double* pts = order == 2 ? kGauss2 : kGauss3;
  const double* wts = order == 2 ? kWeight2 : kWeight3;
  double total = 0.0;
  for_each_element(grid, [&](int ex, int ey) {
    if (!element_in(grid, ex, ey, region)) return;
    cplx ue[4];
    for (int a = 0; a < 4; ++a) ue[a] = u.values[element_node(grid, ex, ey, a)];
    for (int qy = 0; qy < order; ++qy) {
      for (int qx = 0; qx < order; ++qx) {
        const Shape sh = shape(pts[qx], pts[qy]);
        cplx ux = 0.0;
        cplx uy = 0.0;
        for (int a = 0; a < 4; ++a) {
          ux += ue[a] * sh.dxi[a] / grid.hx;
          uy += ue[a] * sh.deta[a] / grid.hy;
        }
        if (g != nullptr) {
          const auto ge = (*g)({grid.x(ex) + pts[qx] * grid.hx, grid.y(ey) + pts[qy] * grid.hy});
          ux -= ge[0];
          uy -= ge[1];
        }
        total += wts[qx] * wts[qy] * grid.hx * grid.hy * (std::norm(ux) + std::norm(uy));
      }
    }
  });
  return total;
}

double exact_seminorm_sq(const StructuredGrid& grid, const GradientFn& g, const Rect& region) {
  double total = 0.0;
  for_each_element(grid, [&](int ex, int ey) {
    if (!element_in(grid, ex, ey, region)) return;
    for (int qy = 0; qy < 3; ++qy) {
      for (int qx = 0; qx < 3; ++qx) {
        const auto ge = g({grid.x(ex) + kGauss3[qx] * grid.hx, grid.y(ey) + kGauss3[qy] * grid.hy});
        total += kWeight3[qx] * kWeight3[qy] * grid.hx * grid.hy * (std::norm(ge[0]) + std::norm(ge[1]));
      }
    }
  });
  return total;
}

}  // namespace

double h1_seminorm(const ComplexField& u, const Rect& region) { return std::sqrt(seminorm_sq(u, nullptr, region, 2)); }

double h1_relative_difference(const ComplexField& u, const ComplexField& w, const Rect& region) {
  if (!nested(u.grid, w.grid) || !nested(w.grid, u.grid)) {
    throw std::invalid_argument("h1_relative_difference: fields on different grids");
  }
  ComplexField d = u;
  for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= w.values[i];
  const double den = h1_seminorm(w, region);
  if (den == 0.0) throw std::domain_error("h1_relative_difference: zero reference seminorm");
  return h1_seminorm(d, region) / den;
}

double h1_seminorm_error(const ComplexField& u_h, const Density& u_exact, const Rect& region) {
  return h1_relative_difference(u_h, interpolate(u_h.grid, u_exact), region);
}

double h1_true_error(const ComplexField& u_h, const GradientFn& grad_exact, const Rect& region) {
  const double den = exact_seminorm_sq(u_h.grid, grad_exact, region);
  if (den == 0.0) throw std::domain_error("h1_true_error: zero reference seminorm");
  return std::sqrt(seminorm_sq(u_h, &grad_exact, region, 3) / den);
}

double h1_interpolation_error(const StructuredGrid& grid, const Density& u_exact, const GradientFn& grad_exact,
                              const Rect& region) {
  return h1_true_error(interpolate(grid, u_exact), grad_exact, region);
}

}  // namespace pstddm
