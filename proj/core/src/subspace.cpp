#include "skt/subspace.hpp"

#include "skt/errors.hpp"

namespace skt {

Subspace::Subspace(int ambient_dim) : ambient_dim_(ambient_dim), basis_(0, ambient_dim) {}

Subspace Subspace::from_rows(const RatMatrix& rows) {
  Subspace s;
  s.ambient_dim_ = rows.cols();
  s.basis_ = rref(rows, &s.pivots_);
  return s;
}

Subspace Subspace::span(int ambient_dim, const std::vector<Vector>& vectors) {
  if (vectors.empty()) return Subspace(ambient_dim);
  return from_rows(RatMatrix::from_rows(vectors, ambient_dim));
}

Subspace Subspace::whole(int ambient_dim) { return from_rows(RatMatrix::identity(ambient_dim)); }

Subspace Subspace::coordinate(int ambient_dim, const std::vector<int>& indices) {
  std::vector<Vector> vs;
  for (int i : indices) {
    if (i < 0 || i >= ambient_dim) throw DimensionError("coordinate index out of range");
    vs.push_back(unit_vector(ambient_dim, i));
  }
  return span(ambient_dim, vs);
}

std::vector<Vector> Subspace::basis_vectors() const {
  std::vector<Vector> out;
  for (int r = 0; r < dim(); ++r) out.push_back(basis_.row(r));
  return out;
}

std::optional<Vector> Subspace::coordinates(std::span<const Rational> v) const {
  if (static_cast<int>(v.size()) != ambient_dim_) throw DimensionError("subspace coordinates: size mismatch");
  // In reduced echelon form the coefficient of row r is the pivot entry of v.
  Vector coeffs(static_cast<std::size_t>(dim()));
  Vector rebuilt = zero_vector(ambient_dim_);
  for (int r = 0; r < dim(); ++r) {
    coeffs[static_cast<std::size_t>(r)] = v[static_cast<std::size_t>(pivots_[static_cast<std::size_t>(r)])];
    axpy(rebuilt, coeffs[static_cast<std::size_t>(r)], basis_.row(r));
  }
  for (std::size_t i = 0; i < v.size(); ++i)
    if (rebuilt[i] != v[i]) return std::nullopt;
  return coeffs;
}

bool Subspace::contains(std::span<const Rational> v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw DimensionError("subspace containment: ambient mismatch");
  for (int r = 0; r < other.dim(); ++r)
    if (!contains(other.basis_.row(r))) return false;
  return true;
}

Subspace kernel(const RatMatrix& m) {
  std::vector<int> piv;
  const RatMatrix red = rref(m, &piv);
  const int n = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (int c : piv) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Vector> basis;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    Vector v = unit_vector(n, free);
    for (int r = 0; r < red.rows(); ++r) v[static_cast<std::size_t>(piv[static_cast<std::size_t>(r)])] = -red(r, free);
    basis.push_back(std::move(v));
  }
  return Subspace::span(n, basis);
}

Subspace orth_complement(const Subspace& s, const RatMatrix& gram) {
  if (!gram.is_square() || gram.rows() != s.ambient_dim())
    throw DimensionError("orth_complement: metric is " + std::to_string(gram.rows()) + "x" +
                         std::to_string(gram.cols()) + ", subspace ambient dimension " +
                         std::to_string(s.ambient_dim()));
  if (s.is_zero()) return Subspace::whole(s.ambient_dim());
  return kernel(s.basis() * gram);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("intersect: ambient mismatch");
  const int n = a.ambient_dim();
  if (a.is_zero() || b.is_zero()) return Subspace(n);
  // x in a ∩ b  <=>  x is annihilated by both annihilators.
  const Subspace ann_a = kernel(a.basis());
  const Subspace ann_b = kernel(b.basis());
  std::vector<Vector> rows = ann_a.basis_vectors();
  for (auto& v : ann_b.basis_vectors()) rows.push_back(std::move(v));
  if (rows.empty()) return Subspace::whole(n);
  return kernel(RatMatrix::from_rows(rows, n));
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("sum: ambient mismatch");
  std::vector<Vector> rows = a.basis_vectors();
  for (auto& v : b.basis_vectors()) rows.push_back(std::move(v));
  return Subspace::span(a.ambient_dim(), rows);
}

Subspace image(const RatMatrix& m, const Subspace& s) {
  std::vector<Vector> rows;
  for (int r = 0; r < s.dim(); ++r) rows.push_back(m.apply(s.basis().row(r)));
  return Subspace::span(m.rows(), rows);
}

Vector orthogonal_projection(std::span<const Rational> v, const Subspace& s, const RatMatrix& gram) {
  const int n = s.ambient_dim();
  if (static_cast<int>(v.size()) != n || gram.rows() != n)
    throw DimensionError("orthogonal_projection: size mismatch");
  if (s.is_zero()) return zero_vector(n);
  const RatMatrix& b = s.basis();
  const RatMatrix bg = b * gram;
  const RatMatrix gram_s = bg * b.transpose();
  const Vector rhs = bg.apply(v);
  const auto coeffs = solve(gram_s, rhs);
  if (!coeffs) throw InternalInconsistency("orthogonal_projection: singular restricted Gram matrix");
  Vector out = zero_vector(n);
  for (int r = 0; r < s.dim(); ++r) axpy(out, (*coeffs)[static_cast<std::size_t>(r)], b.row(r));
  return out;
}

}  // namespace skt
