#pragma once

#include <array>

#include "pstddm/types.hpp"

namespace pstddm {

// u = v(r) H0(kr) for r < 1 with v = -r^3 (r^3 + 3r^2 - 12r + 9), u = -H0(kr) for r >= 1.
cplx exact_solution(Point x, double k);
std::array<cplx, 2> exact_gradient(Point x, double k);
// f = Delta u + k^2 u; zero for r >= 1.
cplx source_term(Point x, double k);

}  // namespace pstddm
