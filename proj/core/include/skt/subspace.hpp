#pragma once

#include <vector>

#include "skt/matrix.hpp"

namespace skt {

/// A linear subspace of Q^n stored as the nonzero rows of its reduced row
/// echelon basis. The representation is canonical, so two subspaces are equal
/// exactly when their bases compare equal.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(int ambient_dim);  // zero subspace

  static Subspace span(int ambient_dim, const std::vector<Vector>& vectors);
  static Subspace from_rows(const RatMatrix& rows);
  static Subspace whole(int ambient_dim);
  static Subspace coordinate(int ambient_dim, const std::vector<int>& indices);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  const RatMatrix& basis() const { return basis_; }
  Vector basis_vector(int i) const { return basis_.row(i); }
  std::vector<Vector> basis_vectors() const;
  const std::vector<int>& pivots() const { return pivots_; }

  bool contains(std::span<const Rational> v) const;
  bool contains(const Subspace& other) const;

  /// Coefficients of v in the stored basis; nullopt if v is not in the span.
  std::optional<Vector> coordinates(std::span<const Rational> v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_;
  }

 private:
  int ambient_dim_ = 0;
  RatMatrix basis_;
  std::vector<int> pivots_;
};

/// Null space of m as a subspace of Q^{m.cols()}.
Subspace kernel(const RatMatrix& m);

/// {x : g(x, s) = 0 for all s in S}. Throws DimensionError on mismatch.
Subspace orth_complement(const Subspace& s, const RatMatrix& gram);

Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);

/// Image of every basis vector of s under m.
Subspace image(const RatMatrix& m, const Subspace& s);

/// Orthogonal projection of v onto s with respect to the inner product gram.
Vector orthogonal_projection(std::span<const Rational> v, const Subspace& s, const RatMatrix& gram);

}  // namespace skt
