#include "pstddm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pstddm {

namespace {

int line_index(double t, double base, double h, int off, int n, const char* axis) {
  const double g = (t - base) / h;
  const double r = std::round(g);
  if (std::abs(g - r) > 1e-9) {
    std::ostringstream os;
    os << "grid: coordinate " << t << " is not on an " << axis << " grid line (h = " << h << ")";
    throw ConfigError(os.str());
  }
  const int local = static_cast<int>(r) - off;
  if (local < 0 || local >= n) {
    std::ostringstream os;
    os << "grid: coordinate " << t << " outside the " << axis << " range";
    throw ConfigError(os.str());
  }
  return local;
}

bool aligned(double s, double lo, double extent, int cells) {
  const double g = (s - lo) / extent * cells;
  return std::abs(g - std::round(g)) <= 1e-9 * std::max(1.0, std::abs(g));
}

int cells_for(double lo, double hi, double k, double q, const std::vector<double>& snaps, const char* axis) {
  const double extent = hi - lo;
  const double lambda = 2.0 * kPi / k;
  const int n0 = std::max(1, static_cast<int>(std::ceil(q * extent / lambda - 1e-9)));
  for (int n = n0; n <= 4 * n0; ++n) {
    bool ok = true;
    for (double s : snaps) {
      if (s < lo - 1e-12 || s > hi + 1e-12) continue;
      if (!aligned(s, lo, extent, n)) {
        ok = false;
        break;
      }
    }
    if (ok) return n;
  }
  std::ostringstream os;
  os << "grid: cannot align the " << axis << " snap points within 4x the requested resolution (" << n0
     << " cells)";
  throw ConfigError(os.str());
}

}  // namespace

int StructuredGrid::line_x(double t) const { return line_index(t, base_x, hx, off_x, nx, "x1"); }
int StructuredGrid::line_y(double t) const { return line_index(t, base_y, hy, off_y, ny, "x2"); }

StructuredGrid StructuredGrid::sub(int ix0, int ix1, int iy0, int iy1) const {
  if (ix0 < 0 || iy0 < 0 || ix1 >= nx || iy1 >= ny || ix1 <= ix0 || iy1 <= iy0) {
    throw ConfigError("grid: invalid subgrid range");
  }
  StructuredGrid g = *this;
  g.off_x = off_x + ix0;
  g.off_y = off_y + iy0;
  g.nx = ix1 - ix0 + 1;
  g.ny = iy1 - iy0 + 1;
  return g;
}

StructuredGrid StructuredGrid::sub(const Rect& r) const {
  const Rect own = rect();
  const double a = std::max(r.x1_min, own.x1_min);
  const double b = std::min(r.x1_max, own.x1_max);
  const double c = std::max(r.x2_min, own.x2_min);
  const double d = std::min(r.x2_max, own.x2_max);
  return sub(line_x(a), line_x(b), line_y(c), line_y(d));
}

bool same_lattice(const StructuredGrid& a, const StructuredGrid& b) {
  return a.base_x == b.base_x && a.base_y == b.base_y && a.hx == b.hx && a.hy == b.hy;
}

bool nested(const StructuredGrid& sub, const StructuredGrid& super) {
  return same_lattice(sub, super) && sub.off_x >= super.off_x && sub.off_y >= super.off_y &&
         sub.off_x + sub.nx <= super.off_x + super.nx && sub.off_y + sub.ny <= super.off_y + super.ny;
}

StructuredGrid build_grid(const Rect& rect, double k, double q, const std::vector<double>& snap_x,
                          const std::vector<double>& snap_y) {
  if (!(q >= 4.0)) throw ConfigError("grid: mesh density q must be at least 4");
  if (!(rect.width() > 0.0) || !(rect.height() > 0.0)) throw ConfigError("grid: degenerate rectangle");
  if (!(k > 0.0)) throw ConfigError("grid: wavenumber must be positive");
  const int cx = cells_for(rect.x1_min, rect.x1_max, k, q, snap_x, "x1");
  const int cy = cells_for(rect.x2_min, rect.x2_max, k, q, snap_y, "x2");
  StructuredGrid g;
  g.base_x = rect.x1_min;
  g.base_y = rect.x2_min;
  g.hx = rect.width() / cx;
  g.hy = rect.height() / cy;
  g.nx = cx + 1;
  g.ny = cy + 1;
  return g;
}

ComplexField::ComplexField(const StructuredGrid& g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
  if (static_cast<int>(values.size()) != g.size()) throw std::invalid_argument("field: size mismatch");
}

ComplexField restrict_field(const ComplexField& u, const StructuredGrid& subgrid) {
  if (!nested(subgrid, u.grid)) throw ConfigError("restrict_field: grids are not nested");
  ComplexField out(subgrid);
  const int dx = subgrid.off_x - u.grid.off_x;
  const int dy = subgrid.off_y - u.grid.off_y;
  for (int iy = 0; iy < subgrid.ny; ++iy) {
    for (int ix = 0; ix < subgrid.nx; ++ix) out.at(ix, iy) = u.at(ix + dx, iy + dy);
  }
  return out;
}

ComplexField extend_by_zero(const ComplexField& u, const StructuredGrid& supergrid) {
  ComplexField out(supergrid);
  accumulate(out, u);
  return out;
}

void accumulate(ComplexField& acc, const ComplexField& u, cplx scale) {
  if (!nested(u.grid, acc.grid)) throw ConfigError("accumulate: grids are not nested");
  const int dx = u.grid.off_x - acc.grid.off_x;
  const int dy = u.grid.off_y - acc.grid.off_y;
  for (int iy = 0; iy < u.grid.ny; ++iy) {
    for (int ix = 0; ix < u.grid.nx; ++ix) acc.at(ix + dx, iy + dy) += scale * u.at(ix, iy);
  }
}

ComplexField transplant(const ComplexField& u, const StructuredGrid& target) {
  if (!same_lattice(u.grid, target)) throw ConfigError("transplant: grids are on different lattices");
  ComplexField out(target);
  const int dx = target.off_x - u.grid.off_x;
  const int dy = target.off_y - u.grid.off_y;
  const int x0 = std::max(0, -dx);
  const int x1 = std::min(target.nx, u.grid.nx - dx);
  const int y0 = std::max(0, -dy);
  const int y1 = std::min(target.ny, u.grid.ny - dy);
  for (int iy = y0; iy < y1; ++iy) {
    for (int ix = x0; ix < x1; ++ix) out.at(ix, iy) = u.at(ix + dx, iy + dy);
  }
  return out;
}

}  // namespace pstddm
