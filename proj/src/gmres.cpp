#include <cmath>

#include "pstddm/sparse.hpp"

namespace pstddm {

namespace {

cplx dot(const CVector& a, const CVector& b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

void axpy(cplx a, const CVector& x, CVector& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

// Givens rotation zeroing b in (a, b).
void givens(cplx a, cplx b, double& c, cplx& s) {
  const double na = std::abs(a);
  const double nb = std::abs(b);
  if (nb == 0.0) {
    c = 1.0;
    s = 0.0;
    return;
  }
  if (na == 0.0) {
    c = 0.0;
    s = std::conj(b) / nb;
    return;
  }
  const double r = std::hypot(na, nb);
  c = na / r;
  s = (a / na) * std::conj(b) / r;
}

}  // namespace

GmresResult gmres(const LinearOp& apply_operator, const LinearOp& apply_precond, const CVector& b,
                  const GmresOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("gmres: tol must be positive");
  if (opts.restart < 1) throw std::invalid_argument("gmres: restart must be at least 1");
  const std::size_t n = b.size();
  GmresResult res;
  res.x.assign(n, cplx(0.0, 0.0));
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    res.converged = true;
    res.residual_history.push_back(0.0);
    return res;
  }
  const int m = opts.restart;
  auto precond = [&](const CVector& v) { return apply_precond ? apply_precond(v) : v; };

  CVector r = b;
  double beta = bnorm;
  res.residual_history.push_back(1.0);
  while (true) {
    std::vector<CVector> v;
    std::vector<CVector> z;
    std::vector<std::vector<cplx>> h(m + 1, std::vector<cplx>(m, cplx(0.0, 0.0)));
    std::vector<double> cs(m, 0.0);
    std::vector<cplx> sn(m, 0.0);
    std::vector<cplx> g(m + 1, 0.0);
    g[0] = beta;
    v.emplace_back(n);
    for (std::size_t i = 0; i < n; ++i) v[0][i] = r[i] / beta;

    int j = 0;
    bool stop = false;
    for (; j < m && res.iterations < opts.maxit; ++j) {
      z.push_back(precond(v[j]));
      CVector w = apply_operator(z[j]);
      const double wnorm = norm2(w);
      for (int i = 0; i <= j; ++i) {
        h[i][j] = dot(v[i], w);
        axpy(-h[i][j], v[i], w);
      }
      const double hn = norm2(w);
      h[j + 1][j] = hn;
      for (int i = 0; i < j; ++i) {
        const cplx t = cs[i] * h[i][j] + sn[i] * h[i + 1][j];
        h[i + 1][j] = -std::conj(sn[i]) * h[i][j] + cs[i] * h[i + 1][j];
        h[i][j] = t;
      }
      givens(h[j][j], h[j + 1][j], cs[j], sn[j]);
      h[j][j] = cs[j] * h[j][j] + sn[j] * h[j + 1][j];
      h[j + 1][j] = 0.0;
      g[j + 1] = -std::conj(sn[j]) * g[j];
      g[j] = cs[j] * g[j];
      ++res.iterations;
      const double rel = std::abs(g[j + 1]) / bnorm;
      res.residual_history.push_back(rel);
      if (rel <= opts.tol) {
        res.converged = true;
        stop = true;
        ++j;
        break;
      }
      if (hn < 1e-14 * std::max(1.0, wnorm)) {
        res.breakdown = true;
        stop = true;
        ++j;
        break;
      }
      v.emplace_back(n);
      for (std::size_t i = 0; i < n; ++i) v[j + 1][i] = w[i] / hn;
    }
    // Back substitution on the j x j triangular system.
    std::vector<cplx> y(j, 0.0);
    for (int i = j - 1; i >= 0; --i) {
      cplx s = g[i];
      for (int k = i + 1; k < j; ++k) s -= h[i][k] * y[k];
      y[i] = s / h[i][i];
    }
    for (int i = 0; i < j; ++i) axpy(y[i], z[i], res.x);

    if (res.breakdown) {
      // A happy breakdown solves the system exactly; report it only if the true residual disagrees.
      CVector ax = apply_operator(res.x);
      double rn = 0.0;
      for (std::size_t i = 0; i < n; ++i) rn += std::norm(b[i] - ax[i]);
      rn = std::sqrt(rn) / bnorm;
      res.residual_history.back() = rn;
      if (rn <= opts.tol) {
        res.converged = true;
        res.breakdown = false;
      }
      return res;
    }
    if (stop || res.iterations >= opts.maxit) return res;
    CVector ax = apply_operator(res.x);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ax[i];
    beta = norm2(r);
    if (beta / bnorm <= opts.tol) {
      res.converged = true;
      return res;
    }
  }
}

}  // namespace pstddm
