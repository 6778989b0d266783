#pragma once

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "pstddm/fem.hpp"
#include "pstddm/partition.hpp"
#include "pstddm/pml.hpp"
#include "pstddm/sparse.hpp"

namespace pstddm {

// Layers along x2 over the inner box plus the overlapping PML subdomains
// Omega_s^pml = (x1 range of B_L) x (zeta_s - d, zeta_{s+2} + d), s = 1..N-1.
struct LayerPartition {
  Partition1D zeta;
  double d = 0.1;  // subdomain PML width along x2
  Rect inner;      // B_l
  Rect outer;      // B_L
  std::vector<Rect> subdomains;  // index s - 1

  [[nodiscard]] int N() const { return zeta.n; }
  [[nodiscard]] const Rect& subdomain(int s) const { return subdomains.at(s - 1); }
};

// N >= 1; N = 1 carries no subdomains (callers fall back to the global solve).
// Throws ConfigError if any interface or subdomain edge misses the grid lines.
LayerPartition build_partition(int N, const PmlProfile& p, const StructuredGrid& grid, double d);
LayerPartition build_partition(int N, const PmlProfile& p, const StructuredGrid& grid);

// Solves the s-th overlapping subproblem for a right-hand side given on its grid.
class SubproblemSolver {
 public:
  virtual ~SubproblemSolver() = default;
  [[nodiscard]] virtual int count() const = 0;
  [[nodiscard]] virtual const FeSystem& system(int s) = 0;
  virtual ComplexField solve(int s, const ComplexField& rhs) = 0;
};

// Sparse LU per subproblem on its own grid and stretching, factorized on first use.
class DirectSubproblemSolver : public SubproblemSolver {
 public:
  DirectSubproblemSolver(std::vector<StructuredGrid> grids, std::vector<Stretching> stretch, double k);

  [[nodiscard]] int count() const override { return static_cast<int>(grids_.size()); }
  [[nodiscard]] const FeSystem& system(int s) override;
  ComplexField solve(int s, const ComplexField& rhs) override;

  void factorize_all();
  [[nodiscard]] int factorizations() const { return factorizations_; }
  [[nodiscard]] const StructuredGrid& grid(int s) const { return grids_.at(s - 1); }

 protected:
  DirectSubproblemSolver() = default;
  std::vector<StructuredGrid> grids_;
  std::vector<Stretching> stretch_;
  double k_ = 0.0;

 private:
  std::map<int, FeSystem> systems_;
  std::map<int, std::shared_ptr<const LuFactorization>> lu_;
  int factorizations_ = 0;
};

// Layer subproblems Omega_s^pml with LayerLocal(s) coefficients. Up-step s and down-step s + 1
// solve the same subproblem, so both sweeps share one factorization per layer subproblem.
class DirectLayerSolver : public DirectSubproblemSolver {
 public:
  DirectLayerSolver(const StructuredGrid& grid, const LayerPartition& part, const PmlProfile& p, double k,
                    const Partition1D& blocks = Partition1D(1, 1.0));
};

// One sweep along an axis over slabs of a partition. Slab loads and fields are nodal
// fields; slab loads live on `domain`, subproblem fields on their own subgrids.
struct SweepSpec {
  Axis axis = Axis::X2;
  Partition1D part;
  StructuredGrid domain;
  SubproblemSolver* solver = nullptr;
  TransferForm form = TransferForm::Commutator;
};

struct TransferState {
  int target = 0;        // slab receiving the transferred source
  CutoffSpec cutoff;
  ComplexField load;     // on the producing subproblem's grid
};

struct SweepResult {
  // fields[i] for i in the sweep's range (index 0 unused); each on its subproblem grid.
  std::vector<ComplexField> fields;
  std::vector<TransferState> transfers;
};

// Slab ownership split of a nodal load on `domain` (index 0 unused).
std::vector<ComplexField> split_by_owner(const ComplexField& load, const Partition1D& part, Axis axis);
// F_i = +<J f 1_{layer i}, psi>, quadrature points assigned by half-open ownership (index 0 unused).
std::vector<ComplexField> split_volume_load(const StructuredGrid& grid, const Stretching& s, const Density& f,
                                            const Partition1D& part, Axis axis = Axis::X2);

// Upward sweep: fields[i] = u_i^+ on subproblem i, i = 1..n-1.
SweepResult sweep_up(const SweepSpec& spec, const std::vector<ComplexField>& loads);
// Downward sweep: fields[i] = u_i^- on subproblem i-1, i = 2..n.
SweepResult sweep_down(const SweepSpec& spec, const std::vector<ComplexField>& loads);
// v = -(u_{i-1}^+ + u_{i+1}^-) on each slab, nodal field on spec.domain.
ComplexField combine(const SweepSpec& spec, const SweepResult& up, const SweepResult& down);

// Both sweeps and the combination; requires n >= 2.
ComplexField pstddm_pass(const SweepSpec& spec, const std::vector<ComplexField>& loads);

// Value of a field at a lattice node given by global indices; zero outside its grid.
cplx value_at_lattice(const ComplexField& u, int gx, int gy);

}  // namespace pstddm
