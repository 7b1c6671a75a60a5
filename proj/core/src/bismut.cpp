#include "skt/bismut.hpp"

#include <sstream>

#include "skt/errors.hpp"
#include "skt/falsification.hpp"

namespace skt {

namespace {

void check_dims(const LieAlgebra& algebra, const ComplexStructure& J, const Metric& g) {
  if (J.dim() != algebra.dim() || g.dim() != algebra.dim())
    throw DimensionError("algebra, J and metric dimensions differ");
}

void require_triple(const HermitianTriple& t) {
  if (t.valid()) return;
  try {
    require_valid(t);
  } catch (const ValidationError& e) {
    throw PreconditionError("valid Hermitian triple", e.what());
  }
  throw PreconditionError("valid Hermitian triple", "validity flags were not set by HermitianTriple::make");
}

using Table = std::vector<std::vector<Vector>>;

Table table(int n) { return Table(static_cast<std::size_t>(n), std::vector<Vector>(static_cast<std::size_t>(n))); }

const Vector& at(const Table& t, int i, int j) { return t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

}  // namespace

AlternatingForm torsion_three_form(const LieAlgebra& algebra, const ComplexStructure& J, const Metric& g) {
  check_dims(algebra, J, g);
  const int n = algebra.dim();
  std::vector<Vector> je;
  for (int i = 0; i < n; ++i) je.push_back(J.matrix().column(i));
  // gjj[i][j] = g([Je_i, Je_j], .) as a row of coefficients
  Table gjj = table(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) gjj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          g.matrix().apply(algebra.bracket(je[static_cast<std::size_t>(i)], je[static_cast<std::size_t>(j)]));
      else
        gjj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = zero_vector(n);
  AlternatingForm c(n, 3);
  for (const auto& t : increasing_tuples(n, 3)) {
    const int u = t[0], y = t[1], z = t[2];
    Rational v = -at(gjj, u, y)[static_cast<std::size_t>(z)];
    v -= at(gjj, y, z)[static_cast<std::size_t>(u)];
    v -= at(gjj, z, u)[static_cast<std::size_t>(y)];
    if (!v.is_zero()) c.set(t, v);
  }
  return c;
}

AlternatingForm torsion_three_form(const HermitianTriple& triple) {
  require_triple(triple);
  return torsion_three_form(triple.algebra, triple.J, triple.g);
}

AlternatingForm ce_differential(const LieAlgebra& algebra, const AlternatingForm& phi) {
  const int n = algebra.dim();
  if (phi.dim() != n)
    throw DimensionError("ce_differential: form on dimension " + std::to_string(phi.dim()) + ", algebra " +
                         std::to_string(n));
  const int k = phi.degree();
  AlternatingForm out(n, k + 1);
  if (phi.is_zero() || algebra.is_abelian()) return out;
  for (const auto& t : increasing_tuples(n, k + 1)) {
    Rational total;
    for (int i = 0; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        const auto& terms_it = algebra.brackets().find({t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(j)]});
        if (terms_it == algebra.brackets().end()) continue;
        std::vector<int> slots{0};
        for (int r = 0; r <= k; ++r)
          if (r != i && r != j) slots.push_back(t[static_cast<std::size_t>(r)]);
        Rational inner;
        for (const auto& term : terms_it->second) {
          slots[0] = term.k;
          const Rational v = phi.get(slots);
          if (!v.is_zero()) inner += term.coeff * v;
        }
        if (inner.is_zero()) continue;
        if ((i + j) % 2 == 0)
          total += inner;
        else
          total -= inner;
      }
    if (!total.is_zero()) out.set(t, total);
  }
  return out;
}

AlternatingForm dc_direct(const LieAlgebra& algebra, const ComplexStructure& J, const Metric& g) {
  check_dims(algebra, J, g);
  const int n = algebra.dim();
  std::vector<Vector> e, je;
  for (int i = 0; i < n; ++i) {
    e.push_back(unit_vector(n, i));
    je.push_back(J.matrix().column(i));
  }
  Table br = table(n), jbr = table(n), jj = table(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      br[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = algebra.basis_bracket(i, j);
      jbr[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = J.apply(at(br, i, j));
      jj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          algebra.bracket(je[static_cast<std::size_t>(i)], je[static_cast<std::size_t>(j)]);
    }
  auto ip = [&g](const Vector& x, const Vector& y) { return g.inner(x, y); };

  // One line of the expansion for the bracketed pair (x1, x2) and the
  // remaining pair (r1, r2):
  //   <[J[x1,x2], J r1], r2> + <[J r1, J r2], [x1,x2]> + <[J r2, J[x1,x2]], r1>
  auto line = [&](int x1, int x2, int r1, int r2) {
    const Vector& jb = at(jbr, x1, x2);
    if (is_zero(jb)) return Rational(0);
    Rational s = ip(algebra.bracket(jb, je[static_cast<std::size_t>(r1)]), e[static_cast<std::size_t>(r2)]);
    s += ip(at(jj, r1, r2), at(br, x1, x2));
    s += ip(algebra.bracket(je[static_cast<std::size_t>(r2)], jb), e[static_cast<std::size_t>(r1)]);
    return s;
  };

  AlternatingForm dc(n, 4);
  for (const auto& t : increasing_tuples(n, 4)) {
    const int w = t[0], u = t[1], y = t[2], z = t[3];
    Rational v = line(w, u, y, z);
    v -= line(w, y, u, z);
    v += line(w, z, u, y);
    v += line(u, y, w, z);
    v -= line(u, z, w, y);
    v += line(y, z, w, u);
    if (!v.is_zero()) dc.set(t, v);
  }
  return dc;
}

AlternatingForm dc_direct(const HermitianTriple& triple) {
  require_triple(triple);
  return dc_direct(triple.algebra, triple.J, triple.g);
}

SktVerdict is_skt(const HermitianTriple& triple) {
  require_triple(triple);
  SktVerdict v;
  v.c = torsion_three_form(triple.algebra, triple.J, triple.g);
  v.dc = dc_direct(triple.algebra, triple.J, triple.g);
  const AlternatingForm dc_ce = ce_differential(triple.algebra, v.c);
  if (v.dc != dc_ce) {
    std::ostringstream os;
    os << "dc routes disagree on '" << triple.name << "': direct " << v.dc.str() << " vs Chevalley-Eilenberg "
       << dc_ce.str();
    throw InternalInconsistency(os.str());
  }
  v.is_skt = v.dc.is_zero();
  for (const auto& [t, c] : v.dc.coeffs()) v.failing_tuples.push_back(t);
  v.dc_norm_squared = v.dc.norm_squared();
  if (v.is_skt) {
    const auto step = nilpotency_step(triple.algebra);
    if (step && *step > 2)
      falsification::record("SKT nilpotent implies at most 2-step",
                            "'" + triple.name + "' verified SKT with nilpotency step " + std::to_string(*step));
  }
  return v;
}

AlternatingForm theta_action(const RatMatrix& A, const AlternatingForm& phi) {
  const int n = phi.dim();
  if (!A.is_square() || A.rows() != n)
    throw DimensionError("theta_action: matrix is " + std::to_string(A.rows()) + "x" + std::to_string(A.cols()) +
                         ", form lives in dimension " + std::to_string(n));
  AlternatingForm out(n, phi.degree());
  for (const auto& t : increasing_tuples(n, phi.degree())) {
    Rational total;
    for (std::size_t s = 0; s < t.size(); ++s)
      for (int m = 0; m < n; ++m) {
        const Rational& a = A(m, t[s]);
        if (a.is_zero()) continue;
        std::vector<int> slots = t;
        slots[s] = m;
        const Rational v = phi.get(slots);
        if (!v.is_zero()) total -= a * v;
      }
    if (!total.is_zero()) out.set(t, total);
  }
  return out;
}

}  // namespace skt
