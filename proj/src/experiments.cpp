#include "pstddm/experiments.hpp"

#include <algorithm>
#include <chrono>

#include "pstddm/benchmark.hpp"
#include "pstddm/blocks.hpp"
#include "pstddm/precond.hpp"
#include "pstddm/sweep.hpp"

namespace pstddm {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void add_slab_snaps(std::vector<double>& snaps, const Partition1D& part, double d) {
  for (double z : part.interfaces()) {
    snaps.push_back(z);
    snaps.push_back(z - d);
    snaps.push_back(z + d);
  }
}

ExperimentRecord base_record(const ExperimentConfig& c) {
  ExperimentRecord r;
  r.mode = c.mode;
  r.k = c.k();
  r.q = c.q;
  r.gamma0 = c.gamma0;
  return r;
}

}  // namespace

Density Problem::source() const {
  const double kk = k();
  return [kk](Point x) { return source_term(x, kk); };
}

double Problem::e_i() const {
  const double kk = k();
  return h1_interpolation_error(
      grid, [kk](Point x) { return exact_solution(x, kk); }, [kk](Point x) { return exact_gradient(x, kk); },
      profile.inner_box());
}

double Problem::error(const ComplexField& u) const {
  const double kk = k();
  return h1_true_error(u, [kk](Point x) { return exact_gradient(x, kk); }, profile.inner_box());
}

ComplexField Problem::solve_direct() const {
  return system.from_dofs(factorize(system.matrix)->solve(system.to_dofs(load)));
}

std::vector<ComplexField> Problem::layer_loads(int N) const {
  return split_volume_load(grid, stretching, source(), Partition1D(N, profile.l[1]));
}

Problem make_problem(const ExperimentConfig& c) {
  Problem pr;
  pr.config = c;
  pr.profile = c.profile();
  const PmlProfile& p = pr.profile;
  const bool blocks = c.mode == "pstddm-blocks";
  std::vector<double> sx{-p.l[0], p.l[0]};
  std::vector<double> sy{-p.l[1], p.l[1]};
  if (c.mode != "fe") add_slab_snaps(sy, Partition1D(c.N, p.l[1]), p.d[1]);
  if (blocks) add_slab_snaps(sx, Partition1D(c.N1, p.l[0]), p.d[0]);
  const Rect outer = p.outer_box();
  const auto inside = [](std::vector<double>& v, double lo, double hi) {
    v.erase(std::remove_if(v.begin(), v.end(), [&](double t) { return t < lo - 1e-12 || t > hi + 1e-12; }), v.end());
  };
  inside(sx, outer.x1_min, outer.x1_max);
  inside(sy, outer.x2_min, outer.x2_max);
  pr.grid = build_grid(outer, c.k(), c.q, sx, sy);
  pr.stretching = make_stretching(StretchSelector::global(), p, Partition1D(1, p.l[1]), Partition1D(1, p.l[0]));
  pr.system = assemble_matrix(pr.grid, pr.stretching, c.k());
  pr.load = assemble_volume_load(pr.grid, pr.stretching, pr.source());
  return pr;
}

ExperimentOutput run_fe_baseline(const ExperimentConfig& c) {
  const auto t0 = Clock::now();
  ExperimentOutput out;
  out.warnings = c.validate();
  const Problem pr = make_problem(c);
  out.dofs = pr.system.dofs();
  out.record = base_record(c);
  out.record.e_i = pr.e_i();
  out.record.e_f = pr.error(pr.solve_direct());
  out.record.wall_ms = elapsed_ms(t0);
  return out;
}

ExperimentOutput run_pstddm(const ExperimentConfig& c) {
  const auto t0 = Clock::now();
  ExperimentOutput out;
  out.warnings = c.validate();
  if (c.mode != "pstddm-layers" && c.mode != "pstddm-blocks") throw ConfigError("run_pstddm: wrong mode");
  const Problem pr = make_problem(c);
  out.dofs = pr.system.dofs();
  out.record = base_record(c);
  out.record.N = c.N;
  const ComplexField u_fe = pr.solve_direct();
  out.record.e_i = pr.e_i();
  out.record.e_f = pr.error(u_fe);
  ComplexField v;
  if (c.N == 1) {
    v = u_fe;
  } else if (c.mode == "pstddm-layers") {
    const LayerPartition part = build_partition(c.N, pr.profile, pr.grid);
    DirectLayerSolver solver(pr.grid, part, pr.profile, pr.k());
    const SweepSpec spec{Axis::X2, part.zeta, pr.grid, &solver, c.transfer_form()};
    v = pstddm_pass(spec, pr.layer_loads(c.N));
  } else {
    const BlockPartition part = build_block_partition(c.N, c.N1, pr.profile, pr.grid);
    v = recursive_solve(pr.grid, part, pr.profile, pr.k(), pr.layer_loads(c.N), c.transfer_form());
  }
  if (c.mode == "pstddm-blocks") out.record.N1 = c.N1;
  out.record.e_s = pr.error(v);
  out.record.wall_ms = elapsed_ms(t0);
  return out;
}

ExperimentOutput run_gmres_study(const ExperimentConfig& c) {
  const auto t0 = Clock::now();
  ExperimentOutput out;
  out.warnings = c.validate();
  const Problem pr = make_problem(c);
  out.dofs = pr.system.dofs();
  out.record = base_record(c);
  out.record.N = c.N;
  const CVector b = pr.system.to_dofs(pr.load);
  const LinearOp op = [&pr](const CVector& x) { return pr.system.matrix.multiply(x); };
  const GmresOptions opts{c.tol, c.restart, c.maxit};
  const GmresResult plain = gmres(op, [](const CVector& x) { return x; }, b, opts);
  PreconditionerContext ctx(pr.system, pr.profile, c.N, c.transfer_form());
  const GmresResult pre = gmres(op, ctx.as_operator(), b, opts);
  out.record.iters_plain = plain.iterations;
  out.record.iters_precond = pre.iterations;
  out.residuals_plain = plain.residual_history;
  out.residuals_precond = pre.residual_history;
  out.converged_plain = plain.converged;
  out.converged_precond = pre.converged;
  out.record.e_i = pr.e_i();
  out.record.e_s = pr.error(pr.system.from_dofs(pre.x));
  out.record.wall_ms = elapsed_ms(t0);
  return out;
}

ExperimentOutput run_experiment(const ExperimentConfig& c) {
  c.validate();
  if (c.mode == "fe") return run_fe_baseline(c);
  if (c.mode == "gmres-study") return run_gmres_study(c);
  return run_pstddm(c);
}

}  // namespace pstddm
