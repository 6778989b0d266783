#include "pstddm/precond.hpp"

#include <stdexcept>

namespace pstddm {

namespace {

// FNV-1a over the raw bytes of each field.
struct Hasher {
  std::uint64_t h = 1469598103934665603ULL;
  template <typename T>
  void add(const T& v) {
    const auto* p = reinterpret_cast<const unsigned char*>(&v);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      h ^= p[i];
      h *= 1099511628211ULL;
    }
  }
};

}  // namespace

std::uint64_t config_fingerprint(const StructuredGrid& grid, const PmlProfile& p, double k, int N) {
  Hasher h;
  h.add(grid.base_x), h.add(grid.base_y), h.add(grid.hx), h.add(grid.hy);
  h.add(grid.off_x), h.add(grid.off_y), h.add(grid.nx), h.add(grid.ny);
  for (int a = 0; a < 2; ++a) h.add(p.l[a]), h.add(p.l_bar[a]), h.add(p.d[a]);
  h.add(p.gamma0), h.add(k), h.add(N);
  return h.h;
}

PreconditionerContext::PreconditionerContext(const FeSystem& global, const PmlProfile& p, int N, TransferForm form)
    : global_(&global),
      part_(build_partition(N, p, global.grid)),
      form_(form),
      fingerprint_(config_fingerprint(global.grid, p, global.k, N)) {
  if (N == 1) {
    exact_ = factorize(global.matrix);
  } else {
    layers_ = std::make_unique<DirectLayerSolver>(global.grid, part_, p, global.k);
    layers_->factorize_all();
  }
}

int PreconditionerContext::factorizations() const { return layers_ ? layers_->factorizations() : 1; }

void PreconditionerContext::check(const FeSystem& global, const PmlProfile& p, int N) const {
  if (config_fingerprint(global.grid, p, global.k, N) != fingerprint_) {
    throw ConfigError("preconditioner: context was built for a different configuration");
  }
}

CVector PreconditionerContext::apply(const CVector& r) {
  if (static_cast<int>(r.size()) != global_->dofs()) throw std::invalid_argument("preconditioner: size mismatch");
  if (exact_) return exact_->solve(r);
  const ComplexField rf = global_->from_dofs(r);
  const SweepSpec spec{Axis::X2, part_.zeta, global_->grid, layers_.get(), form_};
  // The pass returns an approximation of -M^{-1} r for slab loads split from r.
  CVector z = global_->to_dofs(pstddm_pass(spec, split_by_owner(rf, part_.zeta, Axis::X2)));
  for (cplx& v : z) v = -v;
  return z;
}

LinearOp PreconditionerContext::as_operator() {
  return [this](const CVector& r) { return apply(r); };
}

}  // namespace pstddm
