#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pstddm/benchmark.hpp"
#include "pstddm/blocks.hpp"
#include "pstddm/config.hpp"
#include "pstddm/experiments.hpp"
#include "pstddm/precond.hpp"
#include "pstddm/specfun.hpp"
#include "pstddm/sweep.hpp"

using namespace pstddm;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ExperimentConfig desk(const std::string& mode) {
  ExperimentConfig c;
  c.mode = mode;
  c.k_over_2pi = 2.0;
  c.q = 16.0;
  c.N = 4;
  c.gamma0 = 2.0;
  return c;
}

ExperimentConfig blocks_desk() {
  ExperimentConfig c = desk("pstddm-blocks");
  c.N = 3;
  c.N1 = 3;
  c.d = {0.2, 0.2};
  c.l_bar = {1.26, 1.26};
  return c;
}

// Benchmark problem on a grid aligned with the layer interfaces of every N in ns.
Problem aligned_problem(const ExperimentConfig& c, const std::vector<int>& ns) {
  ExperimentConfig fe = c;
  fe.mode = "fe";
  Problem pr = make_problem(fe);
  const PmlProfile& p = pr.profile;
  std::vector<double> sy{-p.l[1], p.l[1]};
  for (int n : ns) {
    for (double z : Partition1D(n, p.l[1]).interfaces()) sy.push_back(z);
  }
  pr.grid = build_grid(p.outer_box(), c.k(), c.q, {-p.l[0], p.l[0]}, sy);
  pr.system = assemble_matrix(pr.grid, pr.stretching, c.k());
  pr.load = assemble_volume_load(pr.grid, pr.stretching, pr.source());
  return pr;
}

ComplexField layer_solution(const Problem& pr, int N, const Density& f) {
  const LayerPartition part = build_partition(N, pr.profile, pr.grid);
  DirectLayerSolver solver(pr.grid, part, pr.profile, pr.k());
  const SweepSpec spec{Axis::X2, part.zeta, pr.grid, &solver};
  return pstddm_pass(spec, split_volume_load(pr.grid, pr.stretching, f, part.zeta));
}

double rel_vec(const CVector& a, const CVector& b) {
  CVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return norm2(d) / std::max(norm2(b), 1e-300);
}

double rel_field(const ComplexField& a, const ComplexField& b) { return rel_vec(a.values, b.values); }

// 1. Special functions against the multiprecision series.
Outcome special_functions() {
  double err = 0.0;
  double wr = 0.0;
  for (int i = 1; i <= 250; ++i) {
    const double x = 50.0 * i / 250.0 - 0.1 * std::sin(i);
    const oracle::Series s = oracle::series(x);
    const double ref[4] = {oracle::to_cd(s.j0).real(), oracle::to_cd(s.j1).real(), oracle::to_cd(s.y0).real(),
                           oracle::to_cd(s.y1).real()};
    const double got[4] = {bessel_j0(x), bessel_j1(x), bessel_y0(x), bessel_y1(x)};
    for (int f = 0; f < 4; ++f) err = std::max(err, std::abs(got[f] - ref[f]));
    const double w = got[1] * got[2] - got[0] * got[3];
    wr = std::max(wr, std::abs(w - 2.0 / (kPi * x)) / (2.0 / (kPi * x)));
  }
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  double sq = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const cplx z(u(rng), i % 7 == 0 ? 0.0 : u(rng));
    const cplx r = branch_sqrt(z);
    sq = std::max(sq, std::abs(r * r - z) / std::abs(z));
  }
  return {err <= 1e-10 && wr <= 1e-8 && sq <= 1e-14,
          fmt("max abs err %.2e (tol 1e-10), Wronskian rel %.2e (tol 1e-8), sqrt rel %.2e (tol 1e-14)", err, wr, sq)};
}

// u = c sin(m1 pi s1) sin(m2 pi s2) on B_L (s = scaled coordinate), a mode near the wave scale.
// Source (div(A grad u) + k^2 J u) / J.
struct Manufactured {
  Rect box;
  double k;
  Stretching s;
  double m1 = 12.0;
  double m2 = 14.0;

  [[nodiscard]] double p1(Point x) const { return m1 * kPi * (x.x1 - box.x1_min) / box.width(); }
  [[nodiscard]] double p2(Point x) const { return m2 * kPi * (x.x2 - box.x2_min) / box.height(); }
  [[nodiscard]] double w1() const { return m1 * kPi / box.width(); }
  [[nodiscard]] double w2() const { return m2 * kPi / box.height(); }

  [[nodiscard]] cplx u(Point x) const { return cplx(1.0, 0.5) * std::sin(p1(x)) * std::sin(p2(x)); }
  [[nodiscard]] std::array<cplx, 2> grad(Point x) const {
    const cplx c(1.0, 0.5);
    return {c * w1() * std::cos(p1(x)) * std::sin(p2(x)), c * w2() * std::sin(p1(x)) * std::cos(p2(x))};
  }
  [[nodiscard]] cplx f(Point x) const {
    const cplx a1 = s.s1.alpha(x.x1);
    const cplx a2 = s.s2.alpha(x.x2);
    const cplx d1 = s.s1.alpha_prime(x.x1);
    const cplx d2 = s.s2.alpha_prime(x.x2);
    const auto [ux, uy] = grad(x);
    const cplx uxx = -w1() * w1() * u(x);
    const cplx uyy = -w2() * w2() * u(x);
    // d1 (a2/a1 u_x1) + d2 (a1/a2 u_x2)
    const cplx div = a2 / a1 * uxx - a2 * d1 / (a1 * a1) * ux + a1 / a2 * uyy - a1 * d2 / (a2 * a2) * uy;
    return (div + k * k * a1 * a2 * u(x)) / (a1 * a2);
  }
};

// 2. Q1 convergence on a manufactured Dirichlet problem with the PML coefficients.
Outcome fe_convergence() {
  const ExperimentConfig c = desk("fe");
  const PmlProfile p = c.profile();
  Manufactured m{p.outer_box(), c.k(),
                 make_stretching(StretchSelector::global(), p, Partition1D(1, 1.1), Partition1D(1, 1.1))};
  std::vector<double> errs;
  for (double q : {16.0, 32.0, 64.0, 128.0}) {
    const StructuredGrid g = build_grid(m.box, m.k, q, {-1.1, 1.1}, {-1.1, 1.1});
    const FeSystem sys = assemble_matrix(g, m.s, m.k);
    const ComplexField b = assemble_volume_load(g, m.s, [&m](Point x) { return m.f(x); });
    const ComplexField uh = sys.from_dofs(factorize(sys.matrix)->solve(sys.to_dofs(b)));
    errs.push_back(h1_true_error(uh, [&m](Point x) { return m.grad(x); }, m.box));
  }
  bool ok = true;
  std::string ratios;
  for (std::size_t i = 1; i < errs.size(); ++i) {
    const double r = errs[i - 1] / errs[i];
    ok = ok && r >= 1.7 && r <= 2.3;
    ratios += fmt(" %.3f", r);
  }
  return {ok, "errors" + fmt(" %.3e %.3e %.3e %.3e", errs[0], errs[1], errs[2], errs[3]) + ", ratios" + ratios +
                  " (band [1.7, 2.3])"};
}

// 3. Global FE error against the analytic solution as gamma0 grows.
Outcome pml_decay() {
  std::vector<double> e;
  for (double g0 : {5.0, 10.0, 20.0}) {
    ExperimentConfig c = desk("fe");
    c.gamma0 = g0;
    e.push_back(*run_fe_baseline(c).record.e_f);
  }
  // Nonincreasing up to a 2% plateau allowance.
  const bool ok = e[1] <= 1.02 * e[0] && e[2] <= 1.02 * e[1];
  return {ok, fmt("e_f(gamma0 = 5, 10, 20) = %.4f, %.4f, %.4f (nonincreasing, 2%% plateau slack)", e[0], e[1], e[2])};
}

// 4. Layer PSTDDM against the FE solution on the same grid.
Outcome layer_parity() {
  const ExperimentRecord r = run_pstddm(desk("pstddm-layers")).record;
  const double gap = std::abs(*r.e_s - *r.e_f) / *r.e_f;
  return {gap <= 0.05, fmt("e_f %.5f, e_s %.5f, |e_s - e_f|/e_f = %.4f (tol 0.05)", *r.e_f, *r.e_s, gap)};
}

// 5. e_s across N on one grid.
Outcome n_independence() {
  const Problem pr = aligned_problem(desk("pstddm-layers"), {2, 4, 8});
  std::vector<double> es;
  for (int N : {2, 4, 8}) es.push_back(pr.error(layer_solution(pr, N, pr.source())));
  const double lo = *std::min_element(es.begin(), es.end());
  const double hi = *std::max_element(es.begin(), es.end());
  const double spread = (hi - lo) / lo;
  return {spread < 0.10, fmt("e_s(N = 2, 4, 8) = %.5f, %.5f, %.5f, spread %.4f (tol 0.10)", es[0], es[1], es[2], spread)};
}

// Nodal values of a field on an exact refinement, taken at the coarse nodes.
ComplexField coarsen(const ComplexField& fine, const StructuredGrid& coarse) {
  ComplexField out(coarse);
  for (int iy = 0; iy < coarse.ny; ++iy) {
    for (int ix = 0; ix < coarse.nx; ++ix) out.at(ix, iy) = fine.at(2 * ix, 2 * iy);
  }
  return out;
}

// 6. Source in the bottom layer: swept field above zeta_4 versus the direct FE solve.
Outcome transfer_equivalence() {
  const ExperimentConfig c = desk("pstddm-layers");
  const Problem pr = aligned_problem(c, {4});
  const Partition1D layers(4, pr.profile.l[1]);
  const double k = pr.k();
  const Density f = [k, layers](Point x) { return layers.owner(x.x2) == 1 ? source_term(x, k) : cplx(0.0); };
  const ComplexField b = assemble_volume_load(pr.grid, pr.stretching, f);
  const ComplexField uh = pr.system.from_dofs(factorize(pr.system.matrix)->solve(pr.system.to_dofs(b)));
  const ComplexField v = layer_solution(pr, 4, f);
  const Rect above{-pr.profile.l[0], pr.profile.l[0], layers.zeta(4), layers.zeta(5)};
  const double diff = h1_relative_difference(v, uh, above);

  StructuredGrid fine = pr.grid;
  fine.hx *= 0.5;
  fine.hy *= 0.5;
  fine.nx = 2 * fine.nx - 1;
  fine.ny = 2 * fine.ny - 1;
  const FeSystem fsys = assemble_matrix(fine, pr.stretching, k);
  const ComplexField fb = assemble_volume_load(fine, pr.stretching, f);
  const ComplexField uf = fsys.from_dofs(factorize(fsys.matrix)->solve(fsys.to_dofs(fb)));
  const double disc = h1_relative_difference(uh, coarsen(uf, pr.grid), above);
  return {diff <= 3.0 * disc,
          fmt("|v - u_h|/|u_h| above zeta_4 = %.3e, FE discretization error %.3e, bound 3x = %.3e", diff, disc,
              3.0 * disc)};
}

// 7. Block PSTDDM against the FE solution; one block per layer is the layer solver.
Outcome block_parity() {
  const ExperimentConfig c = blocks_desk();
  c.validate();
  const Problem pr = make_problem(c);
  const ComplexField uh = pr.solve_direct();
  const double ef = pr.error(uh);
  const auto loads = pr.layer_loads(c.N);
  const BlockPartition part = build_block_partition(c.N, c.N1, pr.profile, pr.grid);
  const ComplexField ub = recursive_solve(pr.grid, part, pr.profile, pr.k(), loads);
  const double diff = h1_relative_difference(ub, uh, pr.profile.inner_box());

  const BlockPartition one = build_block_partition(c.N, 1, pr.profile, pr.grid);
  const ComplexField u1 = recursive_solve(pr.grid, one, pr.profile, pr.k(), loads);
  DirectLayerSolver solver(pr.grid, one.layers, pr.profile, pr.k());
  const ComplexField vl = pstddm_pass(SweepSpec{Axis::X2, one.layers.zeta, pr.grid, &solver}, loads);
  const bool same = u1.values == vl.values;
  return {diff <= 0.10 * ef && same,
          fmt("e_f %.5f, |u_check - u_h|/|u_h| = %.3e = %.4f e_f (tol 0.10 e_f), N1=1 identical: %s", ef, diff,
              diff / ef, same ? "yes" : "no")};
}

// 8. Right-preconditioned GMRES with one pass per application.
Outcome preconditioner() {
  ExperimentConfig c = desk("gmres-study");
  c.maxit = 3000;
  const ExperimentOutput out = run_gmres_study(c);
  const Problem pr = make_problem(c);
  PreconditionerContext exact(pr.system, pr.profile, 1);
  const GmresResult one = gmres([&pr](const CVector& x) { return pr.system.matrix.multiply(x); },
                                exact.as_operator(), pr.system.to_dofs(pr.load), {c.tol, c.restart, c.maxit});
  const int plain = *out.record.iters_plain;
  const int pre = *out.record.iters_precond;
  const bool ok = out.converged_precond && pre < plain && one.converged && one.iterations == 1;
  return {ok, fmt("preconditioned %d its (converged: %s), plain %d its (converged: %s), N=1 context %d its", pre,
                  out.converged_precond ? "yes" : "no", plain, out.converged_plain ? "yes" : "no", one.iterations)};
}

// 9. Linearity, zero fixed points, exact symmetry and transfer locality.
Outcome algebraic() {
  ExperimentConfig c = desk("pstddm-layers");
  c.k_over_2pi = 1.0;
  c.q = 12.0;
  const Problem pr = make_problem(c);
  const int N = 4;
  const LayerPartition part = build_partition(N, pr.profile, pr.grid);
  DirectLayerSolver solver(pr.grid, part, pr.profile, pr.k());
  const SweepSpec spec{Axis::X2, part.zeta, pr.grid, &solver};

  std::mt19937 rng(5);
  std::normal_distribution<double> g;
  const auto random_loads = [&]() {
    ComplexField r(pr.grid);
    for (int iy = 1; iy + 1 < pr.grid.ny; ++iy) {
      for (int ix = 1; ix + 1 < pr.grid.nx; ++ix) r.at(ix, iy) = {g(rng), g(rng)};
    }
    return r;
  };
  const ComplexField r1 = random_loads();
  const ComplexField r2 = random_loads();
  const cplx a(0.4, -1.7);
  const cplx bb(-1.1, 0.3);
  ComplexField r12(pr.grid);
  accumulate(r12, r1, a);
  accumulate(r12, r2, bb);
  const auto pass = [&](const ComplexField& r) { return pstddm_pass(spec, split_by_owner(r, part.zeta, Axis::X2)); };
  const ComplexField v1 = pass(r1);
  const ComplexField v2 = pass(r2);
  ComplexField lin(pr.grid);
  accumulate(lin, v1, a);
  accumulate(lin, v2, bb);
  double lin_err = rel_field(pass(r12), lin);

  const SweepResult up1 = sweep_up(spec, split_by_owner(r1, part.zeta, Axis::X2));
  const SweepResult up2 = sweep_up(spec, split_by_owner(r2, part.zeta, Axis::X2));
  const SweepResult up12 = sweep_up(spec, split_by_owner(r12, part.zeta, Axis::X2));
  for (int i = 1; i < N; ++i) {
    ComplexField l(up1.fields[i].grid);
    accumulate(l, up1.fields[i], a);
    accumulate(l, up2.fields[i], bb);
    lin_err = std::max(lin_err, rel_field(up12.fields[i], l));
  }

  PreconditionerContext ctx(pr.system, pr.profile, N);
  const CVector p1 = ctx.apply(pr.system.to_dofs(r1));
  const CVector p2 = ctx.apply(pr.system.to_dofs(r2));
  CVector pl(p1.size());
  for (std::size_t i = 0; i < pl.size(); ++i) pl[i] = a * p1[i] + bb * p2[i];
  lin_err = std::max(lin_err, rel_vec(ctx.apply(pr.system.to_dofs(r12)), pl));

  bool zero = true;
  const std::vector<ComplexField> zeros(N + 1, ComplexField(pr.grid));
  const SweepResult zu = sweep_up(spec, zeros);
  const SweepResult zd = sweep_down(spec, zeros);
  for (int i = 1; i < N; ++i) zero = zero && norm2(zu.fields[i].values) == 0.0;
  for (int i = 2; i <= N; ++i) zero = zero && norm2(zd.fields[i].values) == 0.0;
  zero = zero && norm2(combine(spec, zu, zd).values) == 0.0;
  zero = zero && norm2(ctx.apply(CVector(pr.system.dofs(), 0.0))) == 0.0;

  int matrices = 0;
  bool symmetric = pr.system.matrix.is_symmetric();
  ++matrices;
  for (int s = 1; s < N; ++s, ++matrices) symmetric = symmetric && solver.system(s).matrix.is_symmetric();
  const ExperimentConfig bc = blocks_desk();
  const Problem bp = make_problem(bc);
  const BlockPartition bpart = build_block_partition(bc.N, bc.N1, bp.profile, bp.grid);
  for (int i = 1; i < bc.N; ++i) {
    for (int j = 1; j < bc.N1; ++j, ++matrices) {
      const StructuredGrid gij = bp.grid.sub(bpart.block(i, j));
      const Stretching sij =
          make_stretching(StretchSelector::block_local(i, j), bp.profile, bpart.layers.zeta, bpart.blocks);
      symmetric = symmetric && assemble_matrix(gij, sij, bp.k()).matrix.is_symmetric();
    }
  }

  double leak = 0.0;
  const auto check_local = [&leak](const TransferState& t, const Partition1D& part1, Axis axis) {
    const double lo = part1.zeta(t.target);
    const double hi = part1.zeta(t.target + 1);
    double scale = 0.0;
    double out = 0.0;
    const StructuredGrid& gg = t.load.grid;
    for (int iy = 0; iy < gg.ny; ++iy) {
      for (int ix = 0; ix < gg.nx; ++ix) {
        const double v = std::abs(t.load.at(ix, iy));
        const double tt = axis == Axis::X2 ? gg.y(iy) : gg.x(ix);
        scale = std::max(scale, v);
        if (tt < lo - 1e-12 || tt > hi + 1e-12) out = std::max(out, v);
      }
    }
    if (scale > 0.0) leak = std::max(leak, out / scale);
  };
  const auto src = pr.layer_loads(N);
  for (const auto& t : sweep_up(spec, src).transfers) check_local(t, part.zeta, Axis::X2);
  for (const auto& t : sweep_down(spec, src).transfers) check_local(t, part.zeta, Axis::X2);
  BlockLayerSolver bsolver(bp.grid, bpart, bp.profile, bp.k());
  const ComplexField layer_rhs = transplant(bp.layer_loads(bc.N)[2], bsolver.horizontal_spec(1).domain);
  for (const auto& t : bsolver.sweep_plus(1, layer_rhs).transfers) check_local(t, bpart.blocks, Axis::X1);
  for (const auto& t : bsolver.sweep_minus(1, layer_rhs).transfers) check_local(t, bpart.blocks, Axis::X1);

  const bool ok = lin_err <= 1e-10 && zero && symmetric && leak <= 1e-13;
  return {ok, fmt("linearity %.2e (tol 1e-10), zero fixed points %s, %d matrices symmetric: %s, transfer leak %.2e (tol 1e-13)",
                  lin_err, zero ? "exact" : "broken", matrices, symmetric ? "yes" : "no", leak)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--known-failures" && i + 1 < argc) {
      std::string list = argv[++i];
      std::size_t pos = 0;
      while (pos < list.size()) {
        const std::size_t next = list.find(',', pos);
        known.insert(std::stoi(list.substr(pos, next - pos)));
        pos = next == std::string::npos ? list.size() : next + 1;
      }
    }
  }

  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "special functions", 5.0, special_functions},
      {2, "FE convergence", 60.0, fe_convergence},
      {3, "PML truncation decay", 120.0, pml_decay},
      {4, "layer PSTDDM parity", 120.0, layer_parity},
      {5, "N-independence", 240.0, n_independence},
      {6, "source-transfer equivalence", 60.0, transfer_equivalence},
      {7, "block PSTDDM parity", 240.0, block_parity},
      {8, "preconditioner", 120.0, preconditioner},
      {9, "algebraic properties", 60.0, algebraic},
  };

  int unexpected = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = o.ok && in_time;
    const bool expected = known.count(c.id) > 0;
    if (!pass && !expected) ++unexpected;
    std::printf("[%s] %d %s: %s; %.1f s (limit %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                secs, c.limit_s, !pass && expected ? " [known failure]" : "");
    std::fflush(stdout);
  }
  return unexpected == 0 ? 0 : 1;
}
