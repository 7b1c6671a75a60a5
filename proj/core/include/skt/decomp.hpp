#pragma once

#include <string>
#include <utility>
#include <vector>

#include "skt/forms.hpp"
#include "skt/hermitian.hpp"

namespace skt {

/// Every nonzero c^k_{ij} has i < k and j < k.
bool adapted_triangular_check(const LieAlgebra& algebra);

/// Data of a J-invariant codimension-2 ideal n = span{e1, e2}^perp, with
/// e1 = e_first, e2 = e_second = J e1. A, B and X are written in the basis
/// of n given by the rows of `embedding`.
struct Codim2Data {
  int first = 0;   // ambient index of e1
  int second = 0;  // ambient index of e2 = J e1
  Subspace n_space;
  RatMatrix embedding;  // rows: basis of n in ambient coordinates
  LieAlgebra n;
  ComplexStructure J_n;
  Metric g_n;
  RatMatrix A, B;  // ad(e1), ad(e2) restricted to n
  Vector X;        // [e1, e2], projected onto n

  int n_dim() const { return n.dim(); }
};

/// Throws PreconditionError when {e_a, e_b} is not a J-invariant plane, when
/// its orthogonal complement is not an ideal, or when [e_a, e_b] leaves n.
Codim2Data split_codim2(const HermitianTriple& triple, std::pair<int, int> complement);

/// Basis (e1, e2, n-basis) of the ambient space, as rows.
RatMatrix adapted_basis(const Codim2Data& data, int ambient_dim);

/// The Lie algebra rebuilt from (A, B, X, bracket of n) in the adapted basis.
LieAlgebra reassemble(const Codim2Data& data);

/// [D(x), y] + [x, D(y)] = D([x, y]) on all basis pairs.
bool is_derivation(const LieAlgebra& algebra, const RatMatrix& D);

/// e^1 ^ theta(A)alpha + e^2 ^ theta(B)alpha - alpha(X) e^{12} + d_n alpha,
/// as a 2-form on the adapted basis, for a 1-form alpha on n.
AlternatingForm derivative_decomposition(const Codim2Data& data, const AlternatingForm& alpha);

/// Triple on a J-invariant ideal, in the ideal's echelon basis. Throws
/// PreconditionError if s is not J-invariant or not an ideal.
HermitianTriple restrict_hermitian(const HermitianTriple& triple, const Subspace& s);

struct VZSplit {
  Subspace v;
  Subspace z;
};

VZSplit vz_split(const HermitianTriple& triple);

struct InvariantCheck {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct InvariantReport {
  std::vector<InvariantCheck> checks;
  bool all_ok() const;
  int failures() const;
};

/// Lemma-level identities for data split off an SKT triple: the
/// integrability relation [J_n, A] = J_n [B, J_n], A_z = B_z = 0,
/// A_v = B_v = 0 and X in z. Failures are recorded as falsification events.
InvariantReport proof_invariants(const Codim2Data& data, const HermitianTriple& triple);

/// Complement pairs {a, b} (a < b, J e_a = +-e_b) whose orthogonal complement
/// is an ideal containing [e_a, e_b].
std::vector<std::pair<int, int>> codim2_complements(const HermitianTriple& triple);

/// Structural consequences of the SKT condition, checked on an SKT triple:
/// center J-invariant; [Y, JY] = 0 iff Y central on basis vectors and
/// pairwise sums; every available codim-2 restriction SKT together with its
/// proof invariants; nilpotency step at most 2. Failures are recorded as
/// falsification events. Throws PreconditionError if the triple is not SKT.
InvariantReport theorem_invariants(const HermitianTriple& triple);

}  // namespace skt
