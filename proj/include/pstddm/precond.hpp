#pragma once

#include <cstdint>
#include <memory>

#include "pstddm/sweep.hpp"

namespace pstddm {

// One layer PSTDDM pass as an approximate inverse of the global truncated PML system.
class PreconditionerContext {
 public:
  // N = 1 keeps an exact factorization of the global matrix instead of layer subproblems.
  PreconditionerContext(const FeSystem& global, const PmlProfile& p, int N,
                        TransferForm form = TransferForm::Commutator);

  // Correction for a residual on the interior dofs of the global system; linear, apply(0) = 0.
  [[nodiscard]] CVector apply(const CVector& r);
  [[nodiscard]] LinearOp as_operator();

  [[nodiscard]] int N() const { return part_.N(); }
  [[nodiscard]] int factorizations() const;
  [[nodiscard]] std::uint64_t fingerprint() const { return fingerprint_; }
  // Throws ConfigError when (grid, profile, k, N) differs from the context's.
  void check(const FeSystem& global, const PmlProfile& p, int N) const;

 private:
  const FeSystem* global_;
  LayerPartition part_;
  TransferForm form_;
  std::unique_ptr<DirectLayerSolver> layers_;
  std::shared_ptr<const LuFactorization> exact_;
  std::uint64_t fingerprint_;
};

std::uint64_t config_fingerprint(const StructuredGrid& grid, const PmlProfile& p, double k, int N);

}  // namespace pstddm
