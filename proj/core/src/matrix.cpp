#include "skt/matrix.hpp"

#include <sstream>
#include <stdexcept>

#include "skt/errors.hpp"

namespace skt {

Vector zero_vector(int n) { return Vector(static_cast<std::size_t>(n)); }

Vector unit_vector(int n, int index) {
  Vector v(static_cast<std::size_t>(n));
  v[static_cast<std::size_t>(index)] = 1;
  return v;
}

bool is_zero(std::span<const Rational> v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

namespace {
void require_same_size(std::size_t a, std::size_t b) {
  if (a != b)
    throw DimensionError("vector length mismatch: " + std::to_string(a) + " vs " +
                         std::to_string(b));
}
}  // namespace

Vector add(std::span<const Rational> a, std::span<const Rational> b) {
  require_same_size(a.size(), b.size());
  Vector r(a.begin(), a.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vector subtract(std::span<const Rational> a, std::span<const Rational> b) {
  require_same_size(a.size(), b.size());
  Vector r(a.begin(), a.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vector scale(const Rational& s, std::span<const Rational> v) {
  Vector r(v.begin(), v.end());
  for (auto& x : r) x *= s;
  return r;
}

void axpy(Vector& a, const Rational& s, std::span<const Rational> b) {
  require_same_size(a.size(), b.size());
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!b[i].is_zero()) a[i] += s * b[i];
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  require_same_size(a.size(), b.size());
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

std::string format_vector(std::span<const Rational> v, const std::string& symbol) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    Rational c = v[i];
    if (c.sign() < 0) {
      os << "-";
      c = -c;
    } else if (!first) {
      os << "+";
    }
    if (c != Rational(1)) os << c.str();
    os << symbol << (i + 1);
    first = false;
  }
  return first ? "0" : os.str();
}

RatMatrix::RatMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
}

RatMatrix RatMatrix::identity(int n) {
  RatMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<Vector>& rows, int cols) {
  RatMatrix m(static_cast<int>(rows.size()), cols);
  for (int r = 0; r < m.rows(); ++r) {
    require_same_size(rows[static_cast<std::size_t>(r)].size(), static_cast<std::size_t>(cols));
    for (int c = 0; c < cols; ++c) m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }
  return m;
}

RatMatrix RatMatrix::diagonal(std::span<const Rational> d) {
  const int n = static_cast<int>(d.size());
  RatMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

Vector RatMatrix::row(int r) const {
  return Vector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

Vector RatMatrix::column(int c) const {
  Vector v(static_cast<std::size_t>(rows_));
  for (int r = 0; r < rows_; ++r) v[static_cast<std::size_t>(r)] = (*this)(r, c);
  return v;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool RatMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = r + 1; c < cols_; ++c)
      if ((*this)(r, c) != (*this)(c, r)) return false;
  return true;
}

bool RatMatrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

Vector RatMatrix::apply(std::span<const Rational> v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw DimensionError("matrix-vector size mismatch: " + std::to_string(cols_) + " columns vs " +
                         std::to_string(v.size()));
  Vector out(static_cast<std::size_t>(rows_));
  for (int c = 0; c < cols_; ++c) {
    const auto& x = v[static_cast<std::size_t>(c)];
    if (x.is_zero()) continue;
    for (int r = 0; r < rows_; ++r) {
      const auto& a = (*this)(r, c);
      if (!a.is_zero()) out[static_cast<std::size_t>(r)] += a * x;
    }
  }
  return out;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product size mismatch");
  RatMatrix p(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const auto& x = a(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const auto& y = b(k, j);
        if (!y.is_zero()) p(i, j) += x * y;
      }
    }
  return p;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sum size mismatch");
  RatMatrix s = a;
  for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] += b.data_[i];
  return s;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw DimensionError("matrix difference size mismatch");
  RatMatrix s = a;
  for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] -= b.data_[i];
  return s;
}

RatMatrix operator*(const Rational& s, const RatMatrix& m) {
  RatMatrix r = m;
  for (auto& x : r.data_) x *= s;
  return r;
}

RatMatrix RatMatrix::operator-() const {
  RatMatrix r = *this;
  for (auto& x : r.data_) x = -x;
  return r;
}

RatMatrix rref(const RatMatrix& m, std::vector<int>* pivots) {
  RatMatrix a = m;
  std::vector<int> piv;
  int lead_row = 0;
  for (int c = 0; c < a.cols() && lead_row < a.rows(); ++c) {
    int p = -1;
    for (int r = lead_row; r < a.rows(); ++r)
      if (!a(r, c).is_zero()) {
        p = r;
        break;
      }
    if (p < 0) continue;
    if (p != lead_row)
      for (int k = 0; k < a.cols(); ++k) std::swap(a(p, k), a(lead_row, k));
    const Rational inv = Rational(1) / a(lead_row, c);
    for (int k = c; k < a.cols(); ++k) a(lead_row, k) *= inv;
    for (int r = 0; r < a.rows(); ++r) {
      if (r == lead_row || a(r, c).is_zero()) continue;
      const Rational f = a(r, c);
      for (int k = c; k < a.cols(); ++k)
        if (!a(lead_row, k).is_zero()) a(r, k) -= f * a(lead_row, k);
    }
    piv.push_back(c);
    ++lead_row;
  }
  RatMatrix out(lead_row, a.cols());
  for (int r = 0; r < lead_row; ++r)
    for (int k = 0; k < a.cols(); ++k) out(r, k) = a(r, k);
  if (pivots) *pivots = std::move(piv);
  return out;
}

int rank(const RatMatrix& m) { return rref(m).rows(); }

Rational determinant(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionError("determinant needs a square matrix");
  const int n = m.rows();
  RatMatrix a = m;
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r)
      if (!a(r, c).is_zero()) {
        p = r;
        break;
      }
    if (p < 0) return Rational(0);
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (int r = c + 1; r < n; ++r) {
      if (a(r, c).is_zero()) continue;
      const Rational f = a(r, c) / a(c, c);
      for (int j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

std::vector<Rational> leading_principal_minors(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionError("leading principal minors need a square matrix");
  std::vector<Rational> minors;
  for (int k = 1; k <= m.rows(); ++k) {
    RatMatrix sub(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub(i, j) = m(i, j);
    minors.push_back(determinant(sub));
  }
  return minors;
}

bool is_positive_definite(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionError("positive definiteness needs a square matrix");
  if (!m.is_symmetric()) throw std::invalid_argument("positive definiteness needs a symmetric matrix");
  for (const auto& minor : leading_principal_minors(m))
    if (minor.sign() <= 0) return false;
  return true;
}
std::optional<Vector> solve(const RatMatrix& m, std::span<const Rational> b) {
  if (static_cast<int>(b.size()) != m.rows()) throw DimensionError("solve: rhs size mismatch");
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[static_cast<std::size_t>(r)];
  }
  std::vector<int> piv;
  const RatMatrix red = rref(aug, &piv);
  Vector x(static_cast<std::size_t>(m.cols()));
  for (int r = 0; r < red.rows(); ++r) {
    const int c = piv[static_cast<std::size_t>(r)];
    if (c == m.cols()) return std::nullopt;
    x[static_cast<std::size_t>(c)] = red(r, m.cols());
  }
  return x;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionError("inverse needs a square matrix");
  const int n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  std::vector<int> piv;
  const RatMatrix red = rref(aug, &piv);
  if (red.rows() < n || piv[static_cast<std::size_t>(n - 1)] != n - 1) return std::nullopt;
  RatMatrix inv(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) inv(r, c) = red(r, n + c);
  return inv;
}

}  // namespace skt
