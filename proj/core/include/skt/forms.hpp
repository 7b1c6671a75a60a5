#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "skt/matrix.hpp"

namespace skt {

/// Degree-k alternating form on Q^n, stored by its coefficients on strictly
/// increasing index tuples. Zero coefficients are never stored.
class AlternatingForm {
 public:
  using Tuple = std::vector<int>;

  AlternatingForm() = default;
  AlternatingForm(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::map<Tuple, Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Sets the value on an arbitrary tuple of distinct indices (sign of the
  /// sorting permutation applied). Throws std::invalid_argument on repeats.
  void set(Tuple indices, const Rational& value);
  void add(Tuple indices, const Rational& value);
  /// Value on basis vectors in the given order; 0 on repeated indices.
  Rational get(Tuple indices) const;

  /// Multilinear evaluation on arbitrary vectors.
  Rational evaluate(std::span<const Vector> vectors) const;

  /// Sum of squares of the stored coefficients.
  Rational norm_squared() const;

  /// Forms on Q^m pushed to Q^n via index map (index i of this form becomes
  /// index_map[i]).
  AlternatingForm reindexed(int new_dim, std::span<const int> index_map) const;

  /// "-e^{123}+5/2e^{3,4,8}" style rendering with 1-based labels.
  std::string str(const std::string& symbol = "e") const;

  AlternatingForm& operator+=(const AlternatingForm& o);
  AlternatingForm& operator-=(const AlternatingForm& o);
  friend AlternatingForm operator+(AlternatingForm a, const AlternatingForm& b) { return a += b; }
  friend AlternatingForm operator-(AlternatingForm a, const AlternatingForm& b) { return a -= b; }
  friend AlternatingForm operator*(const Rational& s, const AlternatingForm& f);
  AlternatingForm operator-() const { return Rational(-1) * *this; }
  friend bool operator==(const AlternatingForm&, const AlternatingForm&) = default;

  /// Builds a form from {tuple (1-based), coefficient} literals.
  static AlternatingForm from_terms(int dim, int degree, const std::vector<std::pair<Tuple, Rational>>& one_based);

 private:
  void check_compatible(const AlternatingForm& o) const;

  int dim_ = 0;
  int degree_ = 0;
  std::map<Tuple, Rational> coeffs_;
};

/// Sign of the permutation sorting `indices`; 0 if an index repeats.
int sort_with_sign(std::vector<int>& indices);

AlternatingForm wedge(const AlternatingForm& a, const AlternatingForm& b);

/// The 1-form x -> v . x (coefficients in the dual basis).
AlternatingForm covector(std::span<const Rational> v);

/// All strictly increasing k-tuples from {0..n-1}, in lexicographic order.
std::vector<std::vector<int>> increasing_tuples(int n, int k);

}  // namespace skt
