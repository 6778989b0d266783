#pragma once

#include <map>
#include <memory>

#include "pstddm/sweep.hpp"

namespace pstddm {

// Layers along x2 and blocks along x1 with a single PML width d for every local subproblem.
struct BlockPartition {
  LayerPartition layers;
  Partition1D blocks;
  double d = 0.2;

  [[nodiscard]] int N() const { return layers.N(); }
  [[nodiscard]] int N1() const { return blocks.n; }
  // Omega_{i,j}^pml = (xi_j - d, xi_{j+2} + d) x (zeta_i - d, zeta_{i+2} + d).
  [[nodiscard]] Rect block(int i, int j) const;
};

// Requires l1 = l2 and d1 = d2 = d, H2 satisfied and all interfaces on grid lines; ConfigError otherwise.
BlockPartition build_block_partition(int N, int N1, const PmlProfile& p, const StructuredGrid& grid);

// Layer subproblem solver that replaces each direct solve by a horizontal sweep over blocks.
// The assembled layer matrices are still used for the vertical transfers.
class BlockLayerSolver : public SubproblemSolver {
 public:
  BlockLayerSolver(const StructuredGrid& grid, const BlockPartition& part, const PmlProfile& p, double k,
                   TransferForm form = TransferForm::Commutator);

  [[nodiscard]] int count() const override { return layers_.count(); }
  [[nodiscard]] const FeSystem& system(int s) override { return layers_.system(s); }
  // Layer-s field u_check with M_s u_check ~ rhs; N1 = 1 solves M_s directly.
  ComplexField solve(int s, const ComplexField& rhs) override;

  // Horizontal sweeps for layer s on a layer rhs (x1 ownership split).
  SweepResult sweep_plus(int s, const ComplexField& rhs);
  SweepResult sweep_minus(int s, const ComplexField& rhs);
  [[nodiscard]] SweepSpec horizontal_spec(int s);

  [[nodiscard]] int factorizations() const;

 private:
  DirectSubproblemSolver& blocks_of(int s);

  BlockPartition part_;
  PmlProfile profile_;
  double k_;
  TransferForm form_;
  DirectLayerSolver layers_;
  std::map<int, std::unique_ptr<DirectSubproblemSolver>> block_solvers_;
};

// Piecewise strip assembly u_{i,j-1}^+ + u_{i,j+1}^- over the layer grid (endpoints take one term).
ComplexField assemble_layer_field(const SweepSpec& horizontal, const SweepResult& plus, const SweepResult& minus);

// Two-level solve: vertical sweeps whose layer solves are horizontal block sweeps.
// loads are the layer loads on the global grid (index 0 unused).
ComplexField recursive_solve(const StructuredGrid& grid, const BlockPartition& part, const PmlProfile& p, double k,
                             const std::vector<ComplexField>& loads, TransferForm form = TransferForm::Commutator);

}  // namespace pstddm
