#pragma once

#include "pstddm/types.hpp"

namespace pstddm {

// Bessel functions of the first and second kind, orders 0 and 1.
// y0/y1 throw std::domain_error for x <= 0.
double bessel_j0(double x);
double bessel_j1(double x);
double bessel_y0(double x);
double bessel_y1(double x);

// Hankel functions of the first kind for Im z >= 0; z == 0 throws std::domain_error.
cplx hankel0_first(cplx z);
cplx hankel1_first(cplx z);

// Square root with Re w >= 0; on the negative real axis returns i*sqrt(|z|).
cplx branch_sqrt(cplx z);

}  // namespace pstddm
