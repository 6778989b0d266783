#pragma once

#include <vector>

#include "pstddm/types.hpp"

namespace pstddm {

// Uniform node lattice. Nodes of every subgrid are nodes of one global lattice with origin
// (base_x, base_y); local node (ix, iy) sits at global lattice index (off_x + ix, off_y + iy).
struct StructuredGrid {
  double base_x = 0.0;
  double base_y = 0.0;
  double hx = 1.0;
  double hy = 1.0;
  int off_x = 0;
  int off_y = 0;
  int nx = 2;
  int ny = 2;

  [[nodiscard]] double x(int ix) const { return base_x + (off_x + ix) * hx; }
  [[nodiscard]] double y(int iy) const { return base_y + (off_y + iy) * hy; }
  [[nodiscard]] Point node(int ix, int iy) const { return {x(ix), y(iy)}; }
  [[nodiscard]] int index(int ix, int iy) const { return iy * nx + ix; }
  [[nodiscard]] int size() const { return nx * ny; }
  [[nodiscard]] bool on_boundary(int ix, int iy) const {
    return ix == 0 || iy == 0 || ix == nx - 1 || iy == ny - 1;
  }
  [[nodiscard]] Rect rect() const { return {x(0), x(nx - 1), y(0), y(ny - 1)}; }

  // Lattice line index of a coordinate; throws ConfigError if it is not on a grid line.
  [[nodiscard]] int line_x(double t) const;
  [[nodiscard]] int line_y(double t) const;

  // Subgrid spanning local node ranges [ix0, ix1] x [iy0, iy1].
  [[nodiscard]] StructuredGrid sub(int ix0, int ix1, int iy0, int iy1) const;
  // Subgrid whose corners are the given (aligned) rectangle, clipped to this grid.
  [[nodiscard]] StructuredGrid sub(const Rect& r) const;
};

bool same_lattice(const StructuredGrid& a, const StructuredGrid& b);
// True when every node of sub is a node of super.
bool nested(const StructuredGrid& sub, const StructuredGrid& super);

// Cells per axis: the smallest n >= ceil(q * extent / lambda) for which every snap point lies on a
// grid line; searched up to four times the requested resolution, otherwise ConfigError.
StructuredGrid build_grid(const Rect& rect, double k, double q, const std::vector<double>& snap_x,
                          const std::vector<double>& snap_y);

// Nodal values over a grid; Dirichlet boundary nodes hold zeros after solves.
struct ComplexField {
  StructuredGrid grid;
  std::vector<cplx> values;

  ComplexField() = default;
  explicit ComplexField(const StructuredGrid& g) : grid(g), values(g.size(), cplx(0.0, 0.0)) {}
  ComplexField(const StructuredGrid& g, std::vector<cplx> v);

  cplx& at(int ix, int iy) { return values[grid.index(ix, iy)]; }
  [[nodiscard]] const cplx& at(int ix, int iy) const { return values[grid.index(ix, iy)]; }
};

ComplexField restrict_field(const ComplexField& u, const StructuredGrid& subgrid);
ComplexField extend_by_zero(const ComplexField& u, const StructuredGrid& supergrid);
// Values of u at the lattice nodes shared with target, zero elsewhere.
ComplexField transplant(const ComplexField& u, const StructuredGrid& target);
// Adds u (defined on a nested subgrid) into acc.
void accumulate(ComplexField& acc, const ComplexField& u, cplx scale = 1.0);

}  // namespace pstddm
