#include "pstddm/sparse.hpp"

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace pstddm {

CVector CsrMatrix::multiply(const CVector& x) const {
  CVector y(n);
  multiply_into(x, y);
  return y;
}

void CsrMatrix::multiply_into(const CVector& x, CVector& y) const {
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("csr multiply: dimension mismatch");
  y.assign(n, cplx(0.0, 0.0));
  for (int r = 0; r < n; ++r) {
    cplx s = 0.0;
    for (int p = row_ptr[r]; p < row_ptr[r + 1]; ++p) s += val[p] * x[col[p]];
    y[r] = s;
  }
}

cplx CsrMatrix::entry(int r, int c) const {
  const auto first = col.begin() + row_ptr[r];
  const auto last = col.begin() + row_ptr[r + 1];
  const auto it = std::lower_bound(first, last, c);
  if (it == last || *it != c) return 0.0;
  return val[it - col.begin()];
}

double CsrMatrix::norm_inf() const {
  double best = 0.0;
  for (int r = 0; r < n; ++r) {
    double s = 0.0;
    for (int p = row_ptr[r]; p < row_ptr[r + 1]; ++p) s += std::abs(val[p]);
    best = std::max(best, s);
  }
  return best;
}

bool CsrMatrix::is_symmetric() const {
  for (int r = 0; r < n; ++r) {
    for (int p = row_ptr[r]; p < row_ptr[r + 1]; ++p) {
      const int c = col[p];
      const auto first = col.begin() + row_ptr[c];
      const auto last = col.begin() + row_ptr[c + 1];
      const auto it = std::lower_bound(first, last, r);
      if (it == last || *it != r) return false;
      if (val[it - col.begin()] != val[p]) return false;
    }
  }
  return true;
}

CsrMatrix CsrMatrix::identity(int n) { return diagonal(CVector(n, cplx(1.0, 0.0))); }

CsrMatrix CsrMatrix::diagonal(const CVector& d) {
  CsrMatrix m;
  m.n = static_cast<int>(d.size());
  m.row_ptr.resize(m.n + 1);
  std::iota(m.row_ptr.begin(), m.row_ptr.end(), 0);
  m.col.resize(m.n);
  std::iota(m.col.begin(), m.col.end(), 0);
  m.val = d;
  return m;
}

CsrMatrix CsrMatrix::from_triplets(int n, const std::vector<int>& rows, const std::vector<int>& cols,
                                   const CVector& vals) {
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rows[a] != rows[b] ? rows[a] < rows[b] : cols[a] < cols[b];
  });
  CsrMatrix m;
  m.n = n;
  m.row_ptr.assign(n + 1, 0);
  int last_r = -1;
  int last_c = -1;
  for (std::size_t t : order) {
    if (rows[t] < 0 || rows[t] >= n || cols[t] < 0 || cols[t] >= n) {
      throw std::out_of_range("csr: triplet index out of range");
    }
    if (rows[t] == last_r && cols[t] == last_c) {
      m.val.back() += vals[t];
      continue;
    }
    m.col.push_back(cols[t]);
    m.val.push_back(vals[t]);
    m.row_ptr[rows[t] + 1]++;
    last_r = rows[t];
    last_c = cols[t];
  }
  for (int r = 0; r < n; ++r) m.row_ptr[r + 1] += m.row_ptr[r];
  return m;
}

struct LuFactorization::Impl {
  Eigen::SparseMatrix<cplx, Eigen::ColMajor, int> a;
  Eigen::SparseLU<Eigen::SparseMatrix<cplx, Eigen::ColMajor, int>, Eigen::COLAMDOrdering<int>> lu;
};

LuFactorization::LuFactorization(const CsrMatrix& m) : impl_(std::make_unique<Impl>()), n_(m.n) {
  std::vector<Eigen::Triplet<cplx, int>> t;
  t.reserve(m.val.size());
  for (int r = 0; r < m.n; ++r) {
    for (int p = m.row_ptr[r]; p < m.row_ptr[r + 1]; ++p) t.emplace_back(r, m.col[p], m.val[p]);
  }
  impl_->a.resize(m.n, m.n);
  impl_->a.setFromTriplets(t.begin(), t.end());
  impl_->a.makeCompressed();
  impl_->lu.setPivotThreshold(1.0);
  impl_->lu.compute(impl_->a);
  if (impl_->lu.info() != Eigen::Success) {
    const std::string msg = impl_->lu.lastErrorMessage();
    long pivot = -1;
    const auto pos = msg.find_last_not_of("0123456789");
    if (pos != std::string::npos && pos + 1 < msg.size()) pivot = std::stol(msg.substr(pos + 1)) - 1;
    std::ostringstream os;
    os << "factorize: singular matrix";
    if (pivot >= 0) os << ", zero pivot at index " << pivot;
    throw SingularMatrixError(os.str(), pivot);
  }
}

LuFactorization::~LuFactorization() = default;

CVector LuFactorization::solve(const CVector& b) const {
  if (static_cast<int>(b.size()) != n_) throw std::invalid_argument("solve: dimension mismatch");
  Eigen::Map<const Eigen::VectorXcd> rhs(b.data(), n_);
  Eigen::VectorXcd x = impl_->lu.solve(rhs);
  return CVector(x.data(), x.data() + n_);
}

std::shared_ptr<const LuFactorization> factorize(const CsrMatrix& m) {
  return std::make_shared<const LuFactorization>(m);
}

CVector solve(const LuFactorization& f, const CVector& b) { return f.solve(b); }

double norm2(const CVector& v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace pstddm
