#include "skt/hermitian.hpp"

#include <set>

#include "skt/errors.hpp"
#include "skt/forms.hpp"

namespace skt {

namespace {
std::string label(int i) { return "e" + std::to_string(i + 1); }
}  // namespace

ComplexStructure::ComplexStructure(RatMatrix j) : j_(std::move(j)) {
  if (!j_.is_square()) throw DimensionError("complex structure must be a square matrix");
}

ComplexStructure ComplexStructure::from_pairs(int dim, const std::vector<std::pair<int, int>>& pairs) {
  RatMatrix j(dim, dim);
  std::set<int> seen;
  for (const auto& [a, b] : pairs) {
    if (a < 0 || a >= dim || b < 0 || b >= dim)
      throw DimensionError("complex structure pair index outside 1.." + std::to_string(dim));
    if (a == b || !seen.insert(a).second || !seen.insert(b).second)
      throw InputError("complex structure pairs must cover each index exactly once; repeated index " +
                       std::to_string((seen.count(a) ? b : a) + 1));
    j(b, a) = 1;
    j(a, b) = -1;
  }
  if (static_cast<int>(seen.size()) != dim)
    throw InputError("complex structure pairs cover " + std::to_string(seen.size()) + " of " +
                     std::to_string(dim) + " indices");
  return ComplexStructure(std::move(j));
}

std::optional<std::vector<std::pair<int, int>>> ComplexStructure::as_pairs() const {
  const int n = dim();
  std::vector<std::pair<int, int>> pairs;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int a = 0; a < n; ++a) {
    if (used[static_cast<std::size_t>(a)]) continue;
    const Vector col = j_.column(a);
    int target = -1;
    for (int r = 0; r < n; ++r) {
      if (col[static_cast<std::size_t>(r)].is_zero()) continue;
      if (target >= 0) return std::nullopt;
      target = r;
    }
    if (target < 0 || target == a || used[static_cast<std::size_t>(target)]) return std::nullopt;
    const Rational& s = col[static_cast<std::size_t>(target)];
    if (s == Rational(1)) {
      pairs.emplace_back(a, target);
    } else if (s == Rational(-1)) {
      pairs.emplace_back(target, a);
    } else {
      return std::nullopt;
    }
    used[static_cast<std::size_t>(a)] = used[static_cast<std::size_t>(target)] = true;
  }
  const auto p = pairs;
  if (from_pairs(n, p).matrix() != j_) return std::nullopt;
  return pairs;
}

Metric::Metric(RatMatrix gram) : g_(std::move(gram)) {
  if (!g_.is_square()) throw DimensionError("metric must be a square matrix");
  for (int r = 0; r < g_.rows(); ++r)
    for (int c = r + 1; c < g_.cols(); ++c)
      if (g_(r, c) != g_(c, r))
        throw ValidationError("metric not symmetric", "entry (" + std::to_string(r + 1) + "," +
                                                          std::to_string(c + 1) + ") = " + g_(r, c).str() +
                                                          " but (" + std::to_string(c + 1) + "," +
                                                          std::to_string(r + 1) + ") = " + g_(c, r).str());
  const auto minors = leading_principal_minors(g_);
  for (std::size_t k = 0; k < minors.size(); ++k)
    if (minors[k].sign() <= 0)
      throw ValidationError("metric not positive definite",
                            "leading principal minor of order " + std::to_string(k + 1) + " is " + minors[k].str());
}

Metric Metric::identity(int dim) { return Metric(RatMatrix::identity(dim)); }

Rational Metric::inner(std::span<const Rational> x, std::span<const Rational> y) const {
  return dot(x, g_.apply(y));
}

Verdict check_almost_complex(const ComplexStructure& J) {
  const int n = J.dim();
  if (n % 2 != 0) throw DimensionError("almost complex structure needs even dimension, got " + std::to_string(n));
  const RatMatrix sq = J.matrix() * J.matrix();
  const RatMatrix minus_id = -RatMatrix::identity(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (sq(r, c) != minus_id(r, c))
        return {false, "(J^2)(" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ") = " + sq(r, c).str() +
                           ", expected " + minus_id(r, c).str()};
  return {};
}

NijenhuisReport nijenhuis_check(const LieAlgebra& algebra, const ComplexStructure& J) {
  const int n = algebra.dim();
  if (J.dim() != n)
    throw DimensionError("nijenhuis_check: J is " + std::to_string(J.dim()) + "-dimensional, algebra " +
                         std::to_string(n));
  std::vector<Vector> e, je;
  for (int i = 0; i < n; ++i) {
    e.push_back(unit_vector(n, i));
    je.push_back(J.matrix().column(i));
  }
  NijenhuisReport report;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vector v = algebra.bracket(je[static_cast<std::size_t>(i)], je[static_cast<std::size_t>(j)]);
      v = subtract(v, algebra.basis_bracket(i, j));
      v = subtract(v, J.apply(algebra.bracket(je[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(j)])));
      v = subtract(v, J.apply(algebra.bracket(e[static_cast<std::size_t>(i)], je[static_cast<std::size_t>(j)])));
      if (!is_zero(v)) {
        report.ok = false;
        report.failures.push_back({i, j, std::move(v)});
      }
    }
  return report;
}

Verdict check_compatibility(const ComplexStructure& J, const Metric& g) {
  if (J.dim() != g.dim())
    throw DimensionError("check_compatibility: J is " + std::to_string(J.dim()) + "-dimensional, metric " +
                         std::to_string(g.dim()));
  const RatMatrix lhs = J.matrix().transpose() * g.matrix() * J.matrix();
  for (int r = 0; r < g.dim(); ++r)
    for (int c = 0; c < g.dim(); ++c)
      if (lhs(r, c) != g.matrix()(r, c))
        return {false, "g(J" + label(r) + ", J" + label(c) + ") = " + lhs(r, c).str() + " but g(" + label(r) +
                           ", " + label(c) + ") = " + g.matrix()(r, c).str()};
  return {};
}

AlternatingForm fundamental_form(const ComplexStructure& J, const Metric& g) {
  const auto compat = check_compatibility(J, g);
  if (!compat.ok) throw PreconditionError("compatible pair", compat.witness);
  const int n = g.dim();
  // omega(e_i, e_j) = (J^T g)_{ij}
  const RatMatrix w = J.matrix().transpose() * g.matrix();
  AlternatingForm omega(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) omega.set({i, j}, w(i, j));
  return omega;
}

AbelianReport is_abelian_J(const LieAlgebra& algebra, const ComplexStructure& J) {
  const int n = algebra.dim();
  if (J.dim() != n) throw DimensionError("is_abelian_J: dimension mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (algebra.bracket(J.matrix().column(i), J.matrix().column(j)) != algebra.basis_bracket(i, j))
        return {false, std::pair{i, j}};
  return {};
}

bool is_J_invariant(const ComplexStructure& J, const Subspace& s) {
  for (int r = 0; r < s.dim(); ++r)
    if (!s.contains(J.apply(s.basis().row(r)))) return false;
  return true;
}

HermitianTriple HermitianTriple::make(LieAlgebra algebra, ComplexStructure J, Metric g) {
  if (J.dim() != algebra.dim() || g.dim() != algebra.dim())
    throw DimensionError("Hermitian triple pieces disagree on dimension: algebra " + std::to_string(algebra.dim()) +
                         ", J " + std::to_string(J.dim()) + ", metric " + std::to_string(g.dim()));
  HermitianTriple t;
  t.flags.jacobi = jacobi_check(algebra).ok;
  t.flags.j_square = algebra.dim() % 2 == 0 && check_almost_complex(J).ok;
  t.flags.integrable = t.flags.jacobi && t.flags.j_square && nijenhuis_check(algebra, J).ok;
  t.flags.compatible = check_compatibility(J, g).ok;
  t.algebra = std::move(algebra);
  t.J = std::move(J);
  t.g = std::move(g);
  return t;
}

void require_valid(const HermitianTriple& t) {
  const auto jac = jacobi_check(t.algebra);
  if (!jac.ok) {
    const auto& v = jac.violations.front();
    throw ValidationError("Jacobi identity violated",
                          "triple (" + std::to_string(v.i + 1) + "," + std::to_string(v.j + 1) + "," +
                              std::to_string(v.k + 1) + ") has defect " + format_vector(v.defect));
  }
  if (t.dim() % 2 != 0)
    throw ValidationError("J^2 = -Id impossible", "odd dimension " + std::to_string(t.dim()));
  const auto sq = check_almost_complex(t.J);
  if (!sq.ok) throw ValidationError("J^2 != -Id", sq.witness);
  const auto nij = nijenhuis_check(t.algebra, t.J);
  if (!nij.ok) {
    const auto& f = nij.failures.front();
    throw ValidationError("J not integrable", "N(" + label(f.i) + "," + label(f.j) + ") = " + format_vector(f.value));
  }
  const auto compat = check_compatibility(t.J, t.g);
  if (!compat.ok) throw ValidationError("metric not J-compatible", compat.witness);
}

}  // namespace skt
