#pragma once

#include <vector>

#include "skt/forms.hpp"
#include "skt/hermitian.hpp"

namespace skt {

/// Torsion 3-form of the Bismut connection,
///   c(U,Y,Z) = -<[JU,JY],Z> - <[JY,JZ],U> - <[JZ,JU],Y>,
/// on every increasing basis triple. The raw overload does not validate its
/// inputs; the triple overload requires a valid triple.
AlternatingForm torsion_three_form(const LieAlgebra& algebra, const ComplexStructure& J, const Metric& g);
AlternatingForm torsion_three_form(const HermitianTriple& triple);

/// Chevalley-Eilenberg differential, normalized by d(alpha)(x,y) = -alpha([x,y]):
///   d(phi)(x_0..x_k) = sum_{i<j} (-1)^{i+j} phi([x_i,x_j], x_0..^i..^j..x_k).
AlternatingForm ce_differential(const LieAlgebra& algebra, const AlternatingForm& phi);

/// dc evaluated term by term from the explicit 18-term expansion in the
/// bracket, J and the metric, on every increasing basis 4-tuple. Independent
/// of ce_differential.
AlternatingForm dc_direct(const LieAlgebra& algebra, const ComplexStructure& J, const Metric& g);
AlternatingForm dc_direct(const HermitianTriple& triple);

struct SktVerdict {
  bool is_skt = false;
  AlternatingForm c;
  AlternatingForm dc;
  std::vector<std::vector<int>> failing_tuples;  // 0-based increasing 4-tuples
  Rational dc_norm_squared;
};

/// Computes c and dc by both routes and compares them. Throws
/// PreconditionError for an invalid triple and InternalInconsistency if the
/// two dc routes disagree.
SktVerdict is_skt(const HermitianTriple& triple);

/// theta(A)phi = -(phi(A.,...,.) + ... + phi(.,...,A.)).
AlternatingForm theta_action(const RatMatrix& A, const AlternatingForm& phi);

}  // namespace skt
