#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "pstddm/types.hpp"

namespace pstddm {

using CVector = std::vector<cplx>;

// Compressed sparse row storage with sorted column indices.
struct CsrMatrix {
  int n = 0;
  std::vector<int> row_ptr{0};
  std::vector<int> col;
  CVector val;

  [[nodiscard]] CVector multiply(const CVector& x) const;
  void multiply_into(const CVector& x, CVector& y) const;
  [[nodiscard]] cplx entry(int r, int c) const;
  [[nodiscard]] double norm_inf() const;
  // Exact entrywise check M == M^T (no conjugation).
  [[nodiscard]] bool is_symmetric() const;

  static CsrMatrix identity(int n);
  static CsrMatrix diagonal(const CVector& d);
  // Builds from (row, col, value) triplets; duplicates are summed in input order.
  static CsrMatrix from_triplets(int n, const std::vector<int>& rows, const std::vector<int>& cols,
                                 const CVector& vals);
};

// Sparse LU with a fill-reducing column ordering. Reusable and immutable after construction.
class LuFactorization {
 public:
  explicit LuFactorization(const CsrMatrix& m);
  ~LuFactorization();
  LuFactorization(const LuFactorization&) = delete;
  LuFactorization& operator=(const LuFactorization&) = delete;

  [[nodiscard]] CVector solve(const CVector& b) const;
  [[nodiscard]] int size() const { return n_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int n_;
};

std::shared_ptr<const LuFactorization> factorize(const CsrMatrix& m);
CVector solve(const LuFactorization& f, const CVector& b);

using LinearOp = std::function<CVector(const CVector&)>;

struct GmresResult {
  CVector x;
  int iterations = 0;
  bool converged = false;
  bool breakdown = false;
  std::vector<double> residual_history;  // relative residual, entry 0 is the initial residual
};

struct GmresOptions {
  double tol = 1e-6;
  int restart = 50;
  int maxit = 1000;
};

// Right-preconditioned restarted GMRES on A x = b starting from x = 0.
GmresResult gmres(const LinearOp& apply_operator, const LinearOp& apply_precond, const CVector& b,
                  const GmresOptions& opts = {});

double norm2(const CVector& v);

}  // namespace pstddm
