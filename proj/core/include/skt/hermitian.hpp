#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skt/lie_algebra.hpp"
#include "skt/matrix.hpp"

namespace skt {

class AlternatingForm;

/// Endomorphism J of an even-dimensional space. J^2 = -Id is checked by
/// check_almost_complex, not enforced at construction.
class ComplexStructure {
 public:
  ComplexStructure() = default;
  explicit ComplexStructure(RatMatrix j);

  /// J(e_a) = e_b and J(e_b) = -e_a for each pair (a, b), 0-based.
  static ComplexStructure from_pairs(int dim, const std::vector<std::pair<int, int>>& pairs);

  int dim() const { return j_.rows(); }
  const RatMatrix& matrix() const { return j_; }
  Vector apply(std::span<const Rational> v) const { return j_.apply(v); }

  /// The pairs (a, b) with J e_a = e_b if J is of that shape, else nullopt.
  /// Pairs are listed in order of their smallest index.
  std::optional<std::vector<std::pair<int, int>>> as_pairs() const;

  friend bool operator==(const ComplexStructure&, const ComplexStructure&) = default;

 private:
  RatMatrix j_;
};

/// Symmetric positive-definite inner product; validated on construction.
class Metric {
 public:
  Metric() = default;
  /// Throws ValidationError when gram is not symmetric or not positive definite.
  explicit Metric(RatMatrix gram);
  static Metric identity(int dim);

  int dim() const { return g_.rows(); }
  const RatMatrix& matrix() const { return g_; }
  bool is_identity() const { return g_ == RatMatrix::identity(dim()); }
  Rational inner(std::span<const Rational> x, std::span<const Rational> y) const;

  friend bool operator==(const Metric&, const Metric&) = default;

 private:
  RatMatrix g_;
};

struct Verdict {
  bool ok = true;
  std::string witness;  // empty when ok
};

struct ValidityFlags {
  bool jacobi = false;
  bool j_square = false;
  bool integrable = false;
  bool compatible = false;
  bool all() const { return jacobi && j_square && integrable && compatible; }
  friend bool operator==(const ValidityFlags&, const ValidityFlags&) = default;
};

/// (g, J, <,>) together with which of the four Hermitian axioms hold.
/// `name` and `provenance` are descriptive metadata and do not take part in
/// equality.
struct HermitianTriple {
  LieAlgebra algebra;
  ComplexStructure J;
  Metric g;
  ValidityFlags flags;
  std::string name;
  std::vector<std::pair<std::string, std::string>> provenance;

  int dim() const { return algebra.dim(); }
  bool valid() const { return flags.all(); }

  /// Runs all four checks and records the flags. Throws DimensionError when
  /// the pieces disagree on dimension; never throws on a failed axiom.
  static HermitianTriple make(LieAlgebra algebra, ComplexStructure J, Metric g);

  friend bool operator==(const HermitianTriple& a, const HermitianTriple& b) {
    return a.algebra == b.algebra && a.J == b.J && a.g == b.g;
  }
};

Verdict check_almost_complex(const ComplexStructure& J);

struct NijenhuisFailure {
  int i, j;  // 0-based, i < j
  Vector value;
};
struct NijenhuisReport {
  bool ok = true;
  std::vector<NijenhuisFailure> failures;
};

/// N(e_i,e_j) = [Je_i,Je_j] - [e_i,e_j] - J[Je_i,e_j] - J[e_i,Je_j] over i < j.
NijenhuisReport nijenhuis_check(const LieAlgebra& algebra, const ComplexStructure& J);

/// J^T g J = g.
Verdict check_compatibility(const ComplexStructure& J, const Metric& g);

/// omega(x, y) = g(Jx, y). Throws PreconditionError for an incompatible pair.
AlternatingForm fundamental_form(const ComplexStructure& J, const Metric& g);

struct AbelianReport {
  bool abelian = true;
  std::optional<std::pair<int, int>> witness;  // 0-based basis pair
};

/// [Je_i, Je_j] = [e_i, e_j] for all i < j.
AbelianReport is_abelian_J(const LieAlgebra& algebra, const ComplexStructure& J);

/// Throws ValidationError naming the first failed axiom and its witness.
void require_valid(const HermitianTriple& triple);

/// J S ⊆ S.
bool is_J_invariant(const ComplexStructure& J, const Subspace& s);

}  // namespace skt
