#pragma once

#include <vector>

namespace pstddm {

// Uniform split of [-l, l] into n slabs along one axis: zeta_i = -l + (i-1) * delta, i = 1..n+1.
struct Partition1D {
  int n = 1;
  double l = 1.0;
  double delta = 2.0;

  Partition1D() = default;
  Partition1D(int count, double half_width);

  // 1-based interface coordinate; zeta(1) = -l, zeta(n+1) = l.
  [[nodiscard]] double zeta(int i) const;

  // Slab owning coordinate t: slab i owns [zeta_i, zeta_{i+1}); slab 1 also owns t < zeta_1,
  // slab n owns everything >= zeta_n.
  [[nodiscard]] int owner(double t) const;

  [[nodiscard]] std::vector<double> interfaces() const;
};

}  // namespace pstddm
