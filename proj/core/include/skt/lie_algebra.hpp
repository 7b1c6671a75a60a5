#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "skt/matrix.hpp"
#include "skt/subspace.hpp"

namespace skt {

/// One structure constant c^k_{ij}: [e_i, e_j] contains coeff * e_k.
struct BracketTerm {
  int k;
  Rational coeff;
  friend bool operator==(const BracketTerm&, const BracketTerm&) = default;
};

/// Finite-dimensional Lie algebra over Q given by structure constants in a
/// fixed basis e_0..e_{n-1}. Only pairs i < j are stored, so antisymmetry is
/// structural. Indices are 0-based in the API; files and reports use 1-based
/// labels.
class LieAlgebra {
 public:
  using BracketMap = std::map<std::pair<int, int>, std::vector<BracketTerm>>;

  LieAlgebra() = default;
  explicit LieAlgebra(int dim);

  int dim() const { return dim_; }

  /// Adds coeff * e_k to [e_i, e_j]. Accepts i > j (the sign is flipped);
  /// throws DimensionError for out-of-range indices and std::invalid_argument for i == j.
  void add_term(int i, int j, int k, const Rational& coeff);
  /// Replaces [e_i, e_j] with the given vector (i != j).
  void set_bracket(int i, int j, std::span<const Rational> value);

  const BracketMap& brackets() const { return brackets_; }
  bool is_abelian() const { return brackets_.empty(); }

  /// c^k_{ij} for arbitrary ordered i, j.
  Rational structure_constant(int i, int j, int k) const;
  Vector basis_bracket(int i, int j) const;
  /// Bilinear extension [x, y].
  Vector bracket(std::span<const Rational> x, std::span<const Rational> y) const;
  /// Matrix of ad(x) (columns are [x, e_j]).
  RatMatrix ad(std::span<const Rational> x) const;

  /// The same algebra in the basis whose i-th vector is row i of `basis`
  /// (must be invertible).
  LieAlgebra change_basis(const RatMatrix& basis) const;

  /// The subalgebra spanned by the rows of `basis`, expressed in that basis.
  /// Throws PreconditionError if the span is not closed under the bracket.
  LieAlgebra restrict_to(const RatMatrix& basis) const;

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.dim_ == b.dim_ && a.brackets_ == b.brackets_;
  }

 private:
  void check_index(int i) const;

  int dim_ = 0;
  BracketMap brackets_;
};

struct JacobiViolation {
  int i, j, k;  // 0-based, i < j < k
  Vector defect;
};

struct JacobiReport {
  bool ok = true;
  std::vector<JacobiViolation> violations;
};

/// Checks [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] = 0 for all i<j<k
/// and lists every violating triple with its defect.
JacobiReport jacobi_check(const LieAlgebra& algebra);

/// Descending central series g_0 = g, g_{i} = [g, g_{i-1}] until it reaches
/// zero or stabilizes.
std::vector<Subspace> central_series(const LieAlgebra& algebra);

/// Least k with g_k = 0, or nullopt when the series stabilizes at a nonzero
/// subspace.
std::optional<int> nilpotency_step(const LieAlgebra& algebra);

Subspace center(const LieAlgebra& algebra);
Subspace derived(const LieAlgebra& algebra);

/// [e_a, s] in S for every basis vector e_a and every basis vector s of S.
bool is_ideal(const LieAlgebra& algebra, const Subspace& s);

/// Direct sum: the second algebra's basis follows the first's.
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);

}  // namespace skt
