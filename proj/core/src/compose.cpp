#include "skt/compose.hpp"

#include <algorithm>
#include <set>

#include "skt/bismut.hpp"
#include "skt/errors.hpp"
#include "skt/falsification.hpp"

namespace skt {

namespace {

std::string describe(const HermitianTriple& t) { return t.name.empty() ? "unnamed factor" : "'" + t.name + "'"; }

void check_factor(const HermitianTriple& t, const char* side) {
  const std::string who = std::string(side) + " factor " + describe(t);
  if (!t.valid()) throw PreconditionError("factor SKT", who + " is not a valid Hermitian triple");
  if (!is_skt(t).is_skt) throw PreconditionError("factor SKT", who + " is not SKT");
  const auto step = nilpotency_step(t.algebra);
  if (!step || *step > 2) throw PreconditionError("factor 2-step or abelian", who + " is not at most 2-step nilpotent");
  const int dz = center(t.algebra).dim(), dd = derived(t.algebra).dim();
  if (dz <= dd)
    throw PreconditionError("dim center > dim derived", who + " has dim z = " + std::to_string(dz) +
                                                            ", dim [n,n] = " + std::to_string(dd));
}

Vector choice(const std::optional<Vector>& given, const HermitianTriple& t, const char* which) {
  const Subspace allowed = center_derived_complement(t);
  if (!given) return default_direction(t);
  if (static_cast<int>(given->size()) != t.dim())
    throw DimensionError(std::string(which) + " has length " + std::to_string(given->size()) + ", factor dimension " +
                         std::to_string(t.dim()));
  if (is_zero(*given)) throw PreconditionError(std::string(which) + " in z ∩ [n,n]^perp", "choice is zero");
  if (!allowed.contains(*given))
    throw PreconditionError(std::string(which) + " in z ∩ [n,n]^perp", format_vector(*given) + " lies outside");
  return *given;
}

std::string one_based_vector(const Vector& v) { return format_vector(v); }

}  // namespace

Subspace center_derived_complement(const HermitianTriple& t) {
  return intersect(center(t.algebra), orth_complement(derived(t.algebra), t.g.matrix()));
}

Vector default_direction(const HermitianTriple& t) {
  const Subspace s = center_derived_complement(t);
  if (s.is_zero())
    throw PreconditionError("dim center > dim derived", describe(t) + " has z ∩ [n,n]^perp = 0");
  return s.basis_vector(s.dim() - 1);
}

HermitianTriple compose(const CompositionSpec& spec) {
  check_factor(spec.left, "left");
  check_factor(spec.right, "right");
  if (spec.r.is_zero()) throw PreconditionError("r nonzero", "r = 0");
  if (spec.s.is_zero()) throw PreconditionError("s nonzero", "s = 0");
  const Vector x = choice(spec.x_choice, spec.left, "x");
  const Vector y = choice(spec.y_choice, spec.right, "y");

  const int n1 = spec.left.dim(), n2 = spec.right.dim(), n = n1 + n2 + 2;
  const int zi = n1 + n2, wi = zi + 1;
  LieAlgebra sum = direct_sum(spec.left.algebra, spec.right.algebra);
  LieAlgebra algebra(n);
  for (const auto& [ij, terms] : sum.brackets())
    for (const auto& t : terms) algebra.add_term(ij.first, ij.second, t.k, t.coeff);
  for (int k = 0; k < n1; ++k)
    if (!x[static_cast<std::size_t>(k)].is_zero()) algebra.add_term(zi, wi, k, spec.r * x[static_cast<std::size_t>(k)]);
  for (int k = 0; k < n2; ++k)
    if (!y[static_cast<std::size_t>(k)].is_zero())
      algebra.add_term(zi, wi, n1 + k, spec.s * y[static_cast<std::size_t>(k)]);

  RatMatrix J(n, n), g(n, n);
  for (int r = 0; r < n1; ++r)
    for (int c = 0; c < n1; ++c) {
      J(r, c) = spec.left.J.matrix()(r, c);
      g(r, c) = spec.left.g.matrix()(r, c);
    }
  for (int r = 0; r < n2; ++r)
    for (int c = 0; c < n2; ++c) {
      J(n1 + r, n1 + c) = spec.right.J.matrix()(r, c);
      g(n1 + r, n1 + c) = spec.right.g.matrix()(r, c);
    }
  J(wi, zi) = 1;
  J(zi, wi) = -1;
  g(zi, zi) = 1;
  g(wi, wi) = 1;

  HermitianTriple out = HermitianTriple::make(std::move(algebra), ComplexStructure(std::move(J)), Metric(std::move(g)));
  const std::string ln = spec.left.name.empty() ? "left" : spec.left.name;
  const std::string rn = spec.right.name.empty() ? "right" : spec.right.name;
  out.name = "compose(" + ln + "," + rn + ")";
  out.provenance = {{"construction", "two-factor composition"},
                    {"left", ln},
                    {"right", rn},
                    {"x", one_based_vector(x)},
                    {"y", one_based_vector(y)},
                    {"r", spec.r.str()},
                    {"s", spec.s.str()}};

  // re-verify rather than trust the construction
  std::string problem;
  if (!out.valid()) {
    problem = "composed triple is not a valid Hermitian triple";
  } else if (!is_skt(out).is_skt) {
    problem = "composed triple is not SKT";
  } else {
    const auto step = nilpotency_step(out.algebra);
    if (!step || *step != 2)
      problem = "composed triple is not 2-step";
    else if (center(out.algebra).dim() <= derived(out.algebra).dim())
      problem = "composed triple has dim z <= dim [g,g]";
  }
  if (!problem.empty()) {
    falsification::record("composition yields 2-step SKT with dim z > dim [g,g]", out.name + ": " + problem);
    throw InternalInconsistency(problem + " (" + out.name + ")");
  }
  return out;
}

std::string to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::certified:
      return "certified";
    case CertificateStatus::decomposable:
      return "decomposable";
    case CertificateStatus::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

IrreducibilityCertificate certify_irreducible(const HermitianTriple& composed, const CompositionSpec& spec,
                                              std::pair<bool, bool> factor_flags) {
  const int n1 = spec.left.dim(), n2 = spec.right.dim(), n = n1 + n2 + 2;
  if (composed.dim() != n)
    throw PreconditionError("composed matches spec", "dimension " + std::to_string(composed.dim()) + ", expected " +
                                                         std::to_string(n));
  std::vector<Vector> left_rows, right_rows;
  for (int i = 0; i < n1; ++i) left_rows.push_back(unit_vector(n, i));
  for (int i = 0; i < n2; ++i) right_rows.push_back(unit_vector(n, n1 + i));
  const RatMatrix lb = RatMatrix::from_rows(left_rows, n), rb = RatMatrix::from_rows(right_rows, n);
  auto block_matches = [&](const RatMatrix& basis, const HermitianTriple& factor) {
    return is_ideal(composed.algebra, Subspace::from_rows(basis)) && composed.algebra.restrict_to(basis) == factor.algebra;
  };
  if (!block_matches(lb, spec.left) || !block_matches(rb, spec.right))
    throw PreconditionError("composed matches spec", "factor blocks differ from the spec's factors");

  IrreducibilityCertificate cert;
  cert.factor_flags = factor_flags;
  const int zi = n - 2;
  const Vector z = unit_vector(n, zi);
  const Vector bracket = composed.algebra.bracket(z, composed.J.apply(z));
  cert.left_projection.assign(bracket.begin(), bracket.begin() + n1);
  cert.right_projection.assign(bracket.begin() + n1, bracket.begin() + n1 + n2);
  if (is_zero(cert.left_projection) || is_zero(cert.right_projection))
    cert.status = CertificateStatus::decomposable;
  else if (!factor_flags.first || !factor_flags.second)
    cert.status = CertificateStatus::inconclusive;
  else
    cert.status = CertificateStatus::certified;
  return cert;
}

bool abelian_J_propagation(const CompositionSpec& spec) {
  return is_abelian_J(spec.left.algebra, spec.left.J).abelian && is_abelian_J(spec.right.algebra, spec.right.J).abelian;
}

std::vector<int> reachable_dimensions(const std::vector<int>& seed_dims, int limit) {
  // increments reachable as sums of (d + 2)
  std::vector<bool> inc(static_cast<std::size_t>(std::max(limit, 0) + 1), false);
  if (limit >= 0) inc[0] = true;
  for (int t = 1; t <= limit; ++t)
    for (int d : seed_dims)
      if (d + 2 <= t && inc[static_cast<std::size_t>(t - d - 2)]) inc[static_cast<std::size_t>(t)] = true;
  std::set<int> out;
  for (int d0 : seed_dims)
    for (int t = 0; d0 + t <= limit; ++t)
      if (inc[static_cast<std::size_t>(t)]) out.insert(d0 + t);
  return {out.begin(), out.end()};
}

HermitianTriple iterate_compose(const std::vector<HermitianTriple>& seeds, int target_dim) {
  if (seeds.empty()) throw PreconditionError("seeds given", "no seeds");
  for (const auto& s : seeds) check_factor(s, "seed");
  std::vector<int> dims;
  for (const auto& s : seeds) dims.push_back(s.dim());

  std::vector<bool> inc(static_cast<std::size_t>(std::max(target_dim, 0) + 1), false);
  if (target_dim >= 0) inc[0] = true;
  for (int t = 1; t <= target_dim; ++t)
    for (int d : dims)
      if (d + 2 <= t && inc[static_cast<std::size_t>(t - d - 2)]) inc[static_cast<std::size_t>(t)] = true;
  auto reachable_increment = [&](int t) { return t >= 0 && t <= target_dim && inc[static_cast<std::size_t>(t)]; };

  std::optional<std::size_t> start;
  for (std::size_t i = 0; i < seeds.size() && !start; ++i)
    if (reachable_increment(target_dim - dims[i])) start = i;
  if (!start) {
    std::string list;
    for (int d : reachable_dimensions(dims, target_dim)) list += (list.empty() ? "" : ", ") + std::to_string(d);
    throw PreconditionError("target dimension reachable", "dimension " + std::to_string(target_dim) +
                                                              " cannot be reached; reachable up to it: {" + list + "}");
  }

  HermitianTriple acc = seeds[*start];
  std::string plan = acc.name.empty() ? "seed" : acc.name;
  while (acc.dim() < target_dim) {
    const int remainder = target_dim - acc.dim();
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      if (!reachable_increment(remainder - dims[i] - 2)) continue;
      if (!pick || dims[i] > dims[*pick]) pick = i;
    }
    if (!pick) throw InternalInconsistency("iterate_compose: no seed keeps the remainder reachable");
    CompositionSpec spec;
    spec.left = acc;
    spec.right = seeds[*pick];
    acc = compose(spec);
    plan = "compose(" + plan + "," + (seeds[*pick].name.empty() ? "seed" : seeds[*pick].name) + ")";
    acc.name = plan;
  }
  if (acc.dim() != target_dim) throw InternalInconsistency("iterate_compose overshot the target dimension");
  acc.provenance.insert(acc.provenance.begin(), {"plan", plan});
  return acc;
}

}  // namespace skt
