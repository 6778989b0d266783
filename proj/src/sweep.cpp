#include "pstddm/sweep.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace pstddm {

namespace {

double coord(const StructuredGrid& g, int ix, int iy, Axis axis) { return axis == Axis::X2 ? g.y(iy) : g.x(ix); }

void check_slabs(const SweepSpec& spec, const std::vector<ComplexField>& loads) {
  if (spec.solver == nullptr) throw std::invalid_argument("sweep: no subproblem solver");
  if (spec.part.n < 2) throw ConfigError("sweep: at least two slabs are required");
  if (spec.solver->count() != spec.part.n - 1) throw ConfigError("sweep: solver count does not match the partition");
  if (static_cast<int>(loads.size()) != spec.part.n + 1) throw std::invalid_argument("sweep: expected n + 1 loads");
}

ComplexField transfer(const SweepSpec& spec, const FeSystem& sys, const ComplexField& u, const CutoffSpec& c,
                      const ComplexField* f_next) {
  if (spec.form == TransferForm::Commutator) return commutator_transfer_load(sys, u, c, f_next);
  ComplexField t = assemble_transfer_load(sys, u, c);
  if (f_next != nullptr) accumulate(t, commutator_transfer_load(sys, ComplexField(sys.grid), c, f_next));
  return t;
}

ComplexField solve_at(SubproblemSolver& solver, int s, const ComplexField& rhs) {
  try {
    return solver.solve(s, rhs);
  } catch (const SingularMatrixError& e) {
    std::ostringstream os;
    os << "subproblem " << s << ": " << e.what();
    throw SingularMatrixError(os.str(), e.pivot());
  }
}

}  // namespace

LayerPartition build_partition(int N, const PmlProfile& p, const StructuredGrid& grid, double d) {
  if (N < 1) throw ConfigError("partition: N must be at least 1");
  if (!(d > 0.0) || d > p.d[1] + 1e-12) throw ConfigError("partition: subdomain PML width must lie in (0, d2]");
  LayerPartition part;
  part.zeta = Partition1D(N, p.l[1]);
  part.d = d;
  part.inner = p.inner_box();
  part.outer = p.outer_box();
  for (double z : part.zeta.interfaces()) (void)grid.line_y(z);
  for (int s = 1; s + 1 <= N; ++s) {
    const Rect r{part.outer.x1_min, part.outer.x1_max, part.zeta.zeta(s) - d, part.zeta.zeta(s + 2) + d};
    (void)grid.line_y(r.x2_min);
    (void)grid.line_y(r.x2_max);
    part.subdomains.push_back(r);
  }
  return part;
}

LayerPartition build_partition(int N, const PmlProfile& p, const StructuredGrid& grid) {
  return build_partition(N, p, grid, p.d[1]);
}

DirectSubproblemSolver::DirectSubproblemSolver(std::vector<StructuredGrid> grids, std::vector<Stretching> stretch,
                                               double k)
    : grids_(std::move(grids)), stretch_(std::move(stretch)), k_(k) {
  if (grids_.size() != stretch_.size()) throw std::invalid_argument("subproblems: grid and stretching counts differ");
}

const FeSystem& DirectSubproblemSolver::system(int s) {
  auto it = systems_.find(s);
  if (it == systems_.end()) {
    it = systems_.emplace(s, assemble_matrix(grids_.at(s - 1), stretch_.at(s - 1), k_)).first;
  }
  return it->second;
}

ComplexField DirectSubproblemSolver::solve(int s, const ComplexField& rhs) {
  const FeSystem& sys = system(s);
  auto it = lu_.find(s);
  if (it == lu_.end()) {
    it = lu_.emplace(s, factorize(sys.matrix)).first;
    ++factorizations_;
  }
  return sys.from_dofs(it->second->solve(sys.to_dofs(rhs)));
}

void DirectSubproblemSolver::factorize_all() {
  for (int s = 1; s <= count(); ++s) {
    if (lu_.count(s) == 0) {
      lu_.emplace(s, factorize(system(s).matrix));
      ++factorizations_;
    }
  }
}

DirectLayerSolver::DirectLayerSolver(const StructuredGrid& grid, const LayerPartition& part, const PmlProfile& p,
                                     double k, const Partition1D& blocks) {
  k_ = k;
  for (int s = 1; s <= static_cast<int>(part.subdomains.size()); ++s) {
    grids_.push_back(grid.sub(part.subdomain(s)));
    stretch_.push_back(make_stretching(StretchSelector::layer_local(s), p, part.zeta, blocks));
  }
}

cplx value_at_lattice(const ComplexField& u, int gx, int gy) {
  const int ix = gx - u.grid.off_x;
  const int iy = gy - u.grid.off_y;
  if (ix < 0 || iy < 0 || ix >= u.grid.nx || iy >= u.grid.ny) return 0.0;
  return u.at(ix, iy);
}

std::vector<ComplexField> split_by_owner(const ComplexField& load, const Partition1D& part, Axis axis) {
  const StructuredGrid& g = load.grid;
  std::vector<ComplexField> out(part.n + 1, ComplexField(g));
  out[0] = ComplexField();
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const cplx v = load.at(ix, iy);
      if (v != cplx(0.0, 0.0)) out[part.owner(coord(g, ix, iy, axis))].at(ix, iy) = v;
    }
  }
  return out;
}

std::vector<ComplexField> split_volume_load(const StructuredGrid& grid, const Stretching& s, const Density& f,
                                            const Partition1D& part, Axis axis) {
  std::vector<ComplexField> out(part.n + 1);
  for (int i = 1; i <= part.n; ++i) {
    ComplexField fi = assemble_volume_load(grid, s, f, [&part, axis, i](Point p) {
      return part.owner(axis == Axis::X2 ? p.x2 : p.x1) == i;
    });
    for (cplx& v : fi.values) v = -v;
    out[i] = std::move(fi);
  }
  return out;
}

SweepResult sweep_up(const SweepSpec& spec, const std::vector<ComplexField>& loads) {
  check_slabs(spec, loads);
  const int n = spec.part.n;
  SweepResult res;
  res.fields.resize(n + 1);
  ComplexField g = loads[1];
  for (int i = 1; i <= n - 1; ++i) {
    const FeSystem& sys = spec.solver->system(i);
    const ComplexField f_next = transplant(loads[i + 1], sys.grid);
    ComplexField rhs = transplant(g, sys.grid);
    accumulate(rhs, f_next);
    res.fields[i] = solve_at(*spec.solver, i, rhs);
    if (i <= n - 2) {
      const CutoffSpec c{spec.part.zeta(i + 1), spec.part.delta, true, spec.axis};
      g = transfer(spec, sys, res.fields[i], c, &f_next);
      res.transfers.push_back({i + 1, c, g});
    }
  }
  return res;
}

SweepResult sweep_down(const SweepSpec& spec, const std::vector<ComplexField>& loads) {
  check_slabs(spec, loads);
  const int n = spec.part.n;
  SweepResult res;
  res.fields.resize(n + 1);
  ComplexField g = loads[n];
  for (int i = n; i >= 2; --i) {
    const FeSystem& sys = spec.solver->system(i - 1);
    ComplexField rhs = transplant(g, sys.grid);
    if (i == 2) accumulate(rhs, transplant(loads[1], sys.grid));
    res.fields[i] = solve_at(*spec.solver, i - 1, rhs);
    if (i >= 3) {
      const CutoffSpec c{spec.part.zeta(i - 1), spec.part.delta, false, spec.axis};
      g = transfer(spec, sys, res.fields[i], c, nullptr);
      accumulate(g, transplant(loads[i - 1], sys.grid));
      res.transfers.push_back({i - 1, c, g});
    }
  }
  return res;
}

ComplexField combine(const SweepSpec& spec, const SweepResult& up, const SweepResult& down) {
  const int n = spec.part.n;
  const StructuredGrid& g = spec.domain;
  ComplexField out(g);
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const int i = spec.part.owner(coord(g, ix, iy, spec.axis));
      const int gx = g.off_x + ix;
      const int gy = g.off_y + iy;
      cplx v = 0.0;
      if (i >= 2) v += value_at_lattice(up.fields[i - 1], gx, gy);
      if (i <= n - 1) v += value_at_lattice(down.fields[i + 1], gx, gy);
      out.at(ix, iy) = -v;
    }
  }
  return out;
}

ComplexField pstddm_pass(const SweepSpec& spec, const std::vector<ComplexField>& loads) {
  const SweepResult up = sweep_up(spec, loads);
  const SweepResult down = sweep_down(spec, loads);
  return combine(spec, up, down);
}

}  // namespace pstddm
