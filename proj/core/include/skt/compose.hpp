#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skt/hermitian.hpp"

namespace skt {

/// Inputs to the two-factor construction. Unset choices default to
/// default_direction() of the factor.
struct CompositionSpec {
  HermitianTriple left;
  HermitianTriple right;
  std::optional<Vector> x_choice;
  std::optional<Vector> y_choice;
  Rational r{1};
  Rational s{1};
};

/// z ∩ [n,n]^perp of a triple.
Subspace center_derived_complement(const HermitianTriple& triple);

/// Last echelon basis row of z ∩ [n,n]^perp. Throws PreconditionError when
/// the intersection is zero.
Vector default_direction(const HermitianTriple& triple);

/// Builds n1 ⊕ n2 ⊕ span{Z, W} with [Z, W] = r x + s y, JZ = W, and
/// {Z, W} orthonormal and orthogonal to both factors. Basis order: left,
/// right, Z, W. Every precondition failure is a PreconditionError naming it.
/// The output is re-verified (SKT, 2-step, dim z > dim [g,g]).
HermitianTriple compose(const CompositionSpec& spec);

enum class CertificateStatus { certified, decomposable, inconclusive };

std::string to_string(CertificateStatus status);

struct IrreducibilityCertificate {
  CertificateStatus status = CertificateStatus::inconclusive;
  Vector left_projection;   // of [Z, JZ] onto the left factor
  Vector right_projection;  // of [Z, JZ] onto the right factor
  std::pair<bool, bool> factor_flags{false, false};
};

/// Case analysis of the irreducibility argument: nonzero projections of
/// [Z, JZ] onto both factors plus irreducible factors (caller-asserted flags)
/// certify irreducibility. Throws PreconditionError when the composed triple
/// does not have the shape of compose(spec).
IrreducibilityCertificate certify_irreducible(const HermitianTriple& composed, const CompositionSpec& spec,
                                              std::pair<bool, bool> factor_flags);

/// Predicted abelian-ness of the composed J: both factor J abelian.
bool abelian_J_propagation(const CompositionSpec& spec);

/// Dimensions reachable as d_0 + sum (d_i + 2) with d_i seed dimensions,
/// up to and including `limit`.
std::vector<int> reachable_dimensions(const std::vector<int>& seed_dims, int limit);

/// Greedy plan: start from the first seed from which target_dim is
/// reachable, then keep composing the accumulator (left) with the largest
/// seed that leaves a reachable remainder, ties broken by list order.
/// Throws PreconditionError when target_dim is unreachable.
HermitianTriple iterate_compose(const std::vector<HermitianTriple>& seeds, int target_dim);

}  // namespace skt
