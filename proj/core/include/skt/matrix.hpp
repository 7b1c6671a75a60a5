#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skt/rational.hpp"

namespace skt {

using Vector = std::vector<Rational>;

Vector zero_vector(int n);
Vector unit_vector(int n, int index);
bool is_zero(std::span<const Rational> v);
Vector add(std::span<const Rational> a, std::span<const Rational> b);
Vector subtract(std::span<const Rational> a, std::span<const Rational> b);
Vector scale(const Rational& s, std::span<const Rational> v);
/// a += s * b
void axpy(Vector& a, const Rational& s, std::span<const Rational> b);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);
/// Renders a vector as a combination of named basis vectors, e.g. "2e5+e7".
std::string format_vector(std::span<const Rational> v, const std::string& symbol = "e");

/// Dense exact matrix, row-major. Matrices act on column vectors.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols);

  static RatMatrix identity(int n);
  static RatMatrix from_rows(const std::vector<Vector>& rows, int cols);
  static RatMatrix diagonal(std::span<const Rational> d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(int r, int c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  const Rational& operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r * cols_ + c)];
  }

  Vector row(int r) const;
  Vector column(int c) const;
  RatMatrix transpose() const;
  bool is_symmetric() const;
  bool is_zero() const;

  Vector apply(std::span<const Rational> v) const;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator*(const Rational& s, const RatMatrix& m);
  RatMatrix operator-() const;
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form. `pivots` receives the pivot column of each
/// nonzero row; zero rows are dropped from the result.
RatMatrix rref(const RatMatrix& m, std::vector<int>* pivots = nullptr);
int rank(const RatMatrix& m);

/// Exact Sylvester test: all leading principal minors positive.
/// Throws DimensionError for non-square input and std::invalid_argument for
/// non-symmetric input.
bool is_positive_definite(const RatMatrix& m);

Rational determinant(const RatMatrix& m);

/// Leading principal minors, in order.
std::vector<Rational> leading_principal_minors(const RatMatrix& m);

/// Solves m * x = b; nullopt when inconsistent. Free variables are set to 0.
std::optional<Vector> solve(const RatMatrix& m, std::span<const Rational> b);

std::optional<RatMatrix> inverse(const RatMatrix& m);

}  // namespace skt
