#include "pstddm/partition.hpp"

#include <cmath>

#include "pstddm/types.hpp"

namespace pstddm {

Partition1D::Partition1D(int count, double half_width) : n(count), l(half_width) {
  if (count < 1) throw ConfigError("partition: slab count must be at least 1");
  if (!(half_width > 0.0)) throw ConfigError("partition: half width must be positive");
  delta = 2.0 * half_width / count;
}

double Partition1D::zeta(int i) const {
  if (i == n + 1) return l;
  return -l + (i - 1) * delta;
}

int Partition1D::owner(double t) const {
  // Tolerance keeps grid nodes that sit on an interface with the upper slab.
  const double tol = 1e-9 * delta;
  int i = static_cast<int>(std::floor((t + l + tol) / delta)) + 1;
  if (i < 1) i = 1;
  if (i > n) i = n;
  return i;
}

std::vector<double> Partition1D::interfaces() const {
  std::vector<double> z;
  for (int i = 1; i <= n + 1; ++i) z.push_back(zeta(i));
  return z;
}

}  // namespace pstddm
