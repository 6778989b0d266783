#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "pstddm/grid.hpp"
#include "pstddm/pml.hpp"
#include "pstddm/sparse.hpp"

namespace pstddm {

using Density = std::function<cplx(Point)>;
using PointFilter = std::function<bool(Point)>;

// Q1 system on the interior nodes of a grid (Dirichlet rows and columns eliminated).
struct FeSystem {
  StructuredGrid grid;
  Stretching stretching;
  double k = 0.0;
  CsrMatrix matrix;

  [[nodiscard]] int dofs() const { return (grid.nx - 2) * (grid.ny - 2); }
  // Interior-node vector <-> nodal vector with zero boundary values.
  [[nodiscard]] CVector to_dofs(const ComplexField& u) const;
  [[nodiscard]] ComplexField from_dofs(const CVector& x) const;
  // Nodal M u (rows of boundary nodes are zero).
  [[nodiscard]] ComplexField apply(const ComplexField& u) const;
};

// Matrix of (A grad u, grad v) - k^2 (J u, v) with 2x2 Gauss quadrature per element.
FeSystem assemble_matrix(const StructuredGrid& grid, const Stretching& s, double k);

// Element matrix of one rectangle; exposed for tests.
std::array<std::array<cplx, 4>, 4> element_matrix(const Stretching& s, double k, double x0, double y0, double hx,
                                                  double hy);

// Nodal vector of -(J f, psi) over quadrature points accepted by the filter (default: all).
ComplexField assemble_volume_load(const StructuredGrid& grid, const Stretching& s, const Density& f,
                                  const PointFilter& keep = {});
ComplexField assemble_volume_load(const StructuredGrid& grid, const Stretching& s, const Density& f,
                                  const Rect& support);

// Cutoff pair beta^+ (1 below zeta + delta/4, 0 above zeta + 3 delta/4) and beta^- = 1 - beta^+.
struct CutoffSpec {
  double zeta = 0.0;
  double delta = 1.0;
  bool plus = true;
  Axis axis = Axis::X2;

  [[nodiscard]] double band_lo() const { return zeta + 0.25 * delta; }
  [[nodiscard]] double band_hi() const { return zeta + 0.75 * delta; }
};

std::pair<double, double> beta_eval(double t, const CutoffSpec& c);

enum class TransferForm {
  // Discrete commutator: rows t of sum_b (beta_t - beta_b) M_tb u_b; exact at the discrete level.
  Commutator,
  // Three-term weak identity evaluated with 2x2 Gauss quadrature.
  Quadrature,
};

// Transferred source functional in the source-load convention (+<J f, psi>):
//   psi -> -(A u grad(beta), grad psi) + (A grad u . grad(beta), psi) - <J f_next, beta psi>.
// u_prev lives on the grid of sys. The f_next term is omitted when f_next is empty.
ComplexField assemble_transfer_load(const FeSystem& sys, const ComplexField& u_prev, const CutoffSpec& cutoff,
                                    const Density& f_next = {}, const PointFilter& keep = {});

// Discrete counterpart: (I - B) F_next + [B, M] u_prev with B = diag(beta at nodes).
ComplexField commutator_transfer_load(const FeSystem& sys, const ComplexField& u_prev, const CutoffSpec& cutoff,
                                      const ComplexField* f_next_load = nullptr);

using GradientFn = std::function<std::array<cplx, 2>(Point)>;

// |u_h - I_h u|_1 / |I_h u|_1 over the (grid-aligned) region.
double h1_seminorm_error(const ComplexField& u_h, const Density& u_exact, const Rect& region);
// |u_h - u|_1 / |u|_1 with the exact gradient, 3x3 Gauss per element.
double h1_true_error(const ComplexField& u_h, const GradientFn& grad_exact, const Rect& region);
// |I_h u - u|_1 / |u|_1.
double h1_interpolation_error(const StructuredGrid& grid, const Density& u_exact, const GradientFn& grad_exact,
                              const Rect& region);
// |u - w|_1 / |w|_1 for two fields on the same grid.
double h1_relative_difference(const ComplexField& u, const ComplexField& w, const Rect& region);
double h1_seminorm(const ComplexField& u, const Rect& region);

ComplexField interpolate(const StructuredGrid& grid, const Density& f);

}  // namespace pstddm
