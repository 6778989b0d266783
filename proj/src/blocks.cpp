#include "pstddm/blocks.hpp"

#include <cmath>

namespace pstddm {

Rect BlockPartition::block(int i, int j) const {
  const Rect& layer = layers.subdomain(i);
  return {blocks.zeta(j) - d, blocks.zeta(j + 2) + d, layer.x2_min, layer.x2_max};
}

BlockPartition build_block_partition(int N, int N1, const PmlProfile& p, const StructuredGrid& grid) {
  if (N1 < 1) throw ConfigError("blocks: N1 must be at least 1");
  if (std::abs(p.l[0] - p.l[1]) > 1e-12 || std::abs(p.d[0] - p.d[1]) > 1e-12) {
    throw ConfigError("blocks: block mode requires l1 = l2 and d1 = d2");
  }
  const AssumptionReport h2 = validate_H2(p, p.d[0]);
  if (!h2.ok) throw ConfigError("blocks: H2 violated: " + h2.failures.front());
  BlockPartition part;
  part.d = p.d[0];
  part.layers = build_partition(N, p, grid, part.d);
  part.blocks = Partition1D(N1, p.l[0]);
  for (double z : part.blocks.interfaces()) (void)grid.line_x(z);
  return part;
}

BlockLayerSolver::BlockLayerSolver(const StructuredGrid& grid, const BlockPartition& part, const PmlProfile& p,
                                   double k, TransferForm form)
    : part_(part), profile_(p), k_(k), form_(form), layers_(grid, part.layers, p, k, part.blocks) {}

DirectSubproblemSolver& BlockLayerSolver::blocks_of(int s) {
  auto it = block_solvers_.find(s);
  if (it == block_solvers_.end()) {
    const StructuredGrid& lg = layers_.grid(s);
    std::vector<StructuredGrid> grids;
    std::vector<Stretching> stretch;
    for (int j = 1; j < part_.N1(); ++j) {
      grids.push_back(lg.sub(part_.block(s, j)));
      stretch.push_back(
          make_stretching(StretchSelector::block_local(s, j), profile_, part_.layers.zeta, part_.blocks));
    }
    it = block_solvers_.emplace(s, std::make_unique<DirectSubproblemSolver>(grids, stretch, k_)).first;
  }
  return *it->second;
}

SweepSpec BlockLayerSolver::horizontal_spec(int s) {
  return SweepSpec{Axis::X1, part_.blocks, layers_.grid(s), &blocks_of(s), form_};
}

SweepResult BlockLayerSolver::sweep_plus(int s, const ComplexField& rhs) {
  const SweepSpec spec = horizontal_spec(s);
  return sweep_up(spec, split_by_owner(rhs, part_.blocks, Axis::X1));
}

SweepResult BlockLayerSolver::sweep_minus(int s, const ComplexField& rhs) {
  const SweepSpec spec = horizontal_spec(s);
  return sweep_down(spec, split_by_owner(rhs, part_.blocks, Axis::X1));
}

ComplexField BlockLayerSolver::solve(int s, const ComplexField& rhs) {
  if (part_.N1() == 1) return layers_.solve(s, rhs);
  const SweepSpec spec = horizontal_spec(s);
  const auto loads = split_by_owner(rhs, part_.blocks, Axis::X1);
  return assemble_layer_field(spec, sweep_up(spec, loads), sweep_down(spec, loads));
}

int BlockLayerSolver::factorizations() const {
  int n = layers_.factorizations();
  for (const auto& [s, b] : block_solvers_) n += b->factorizations();
  return n;
}

ComplexField assemble_layer_field(const SweepSpec& horizontal, const SweepResult& plus, const SweepResult& minus) {
  ComplexField u = combine(horizontal, plus, minus);
  for (cplx& v : u.values) v = -v;
  return u;
}

ComplexField recursive_solve(const StructuredGrid& grid, const BlockPartition& part, const PmlProfile& p, double k,
                             const std::vector<ComplexField>& loads, TransferForm form) {
  BlockLayerSolver solver(grid, part, p, k, form);
  const SweepSpec spec{Axis::X2, part.layers.zeta, grid, &solver, form};
  return pstddm_pass(spec, loads);
}

}  // namespace pstddm
