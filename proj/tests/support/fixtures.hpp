#pragma once

// Hand-built triples used across the unit tests. Built with the LieAlgebra
// API directly (1-based literals converted here) so the catalog parser is
// not on the path.

#include <initializer_list>
#include <tuple>

#include "skt/bismut.hpp"
#include "skt/hermitian.hpp"

namespace fx {

using skt::Rational;

struct Term {
  int i, j, k;
  Rational c;
};

inline skt::LieAlgebra algebra(int dim, std::initializer_list<Term> terms) {
  skt::LieAlgebra l(dim);
  for (const auto& t : terms) l.add_term(t.i - 1, t.j - 1, t.k - 1, t.c);
  return l;
}

inline skt::ComplexStructure consecutive_J(int dim) {
  std::vector<std::pair<int, int>> p;
  for (int a = 0; a < dim; a += 2) p.emplace_back(a, a + 1);
  return skt::ComplexStructure::from_pairs(dim, p);
}

inline skt::HermitianTriple triple(skt::LieAlgebra l, const skt::RatMatrix& g) {
  const int n = l.dim();
  return skt::HermitianTriple::make(std::move(l), consecutive_J(n), skt::Metric(g));
}

inline skt::HermitianTriple triple(skt::LieAlgebra l) {
  const int n = l.dim();
  return triple(std::move(l), skt::RatMatrix::identity(n));
}

inline skt::RatMatrix diag(std::initializer_list<Rational> d) {
  std::vector<Rational> v(d);
  return skt::RatMatrix::diagonal(v);
}

inline skt::LieAlgebra n4() { return algebra(4, {{1, 2, 3, 1}}); }
inline skt::LieAlgebra n6() { return algebra(6, {{1, 2, 5, 1}, {1, 4, 5, -1}, {2, 3, 5, 1}, {3, 4, 5, 1}}); }
inline skt::LieAlgebra n8() {
  return algebra(8, {{1, 2, 5, 2}, {1, 2, 7, 1}, {1, 4, 5, -1}, {3, 4, 5, 1}, {3, 4, 7, -1}, {1, 3, 6, 1}});
}
inline skt::LieAlgebra n6_nonabelian() {
  return algebra(6, {{1, 2, 5, 1}, {1, 4, 5, 1}, {3, 4, 5, 1}, {1, 3, 6, -1}});
}
inline skt::LieAlgebra filiform4() { return algebra(4, {{1, 2, 3, 1}, {1, 3, 4, 1}}); }

/// 3-step 6-dim algebra (de^4 = e^{12}, de^5 = e^{23}, de^6 = e^{14} - e^{35})
/// with an integrable J pairing e1/e3, e2/e6, e5/e4. Negative control for
/// the metric search.
inline skt::HermitianTriple three_step6() {
  auto l = algebra(6, {{1, 2, 4, -1}, {2, 3, 5, -1}, {1, 4, 6, -1}, {3, 5, 6, 1}});
  auto J = skt::ComplexStructure::from_pairs(6, {{0, 2}, {1, 5}, {4, 3}});
  auto t = skt::HermitianTriple::make(std::move(l), std::move(J), skt::Metric::identity(6));
  t.name = "three_step6";
  return t;
}

/// 1-based literal form.
inline skt::AlternatingForm form(int dim, int degree,
                                 std::initializer_list<std::pair<std::vector<int>, Rational>> terms) {
  return skt::AlternatingForm::from_terms(dim, degree, std::vector(terms));
}

inline skt::Vector vec(int dim, std::initializer_list<std::pair<int, Rational>> entries) {
  skt::Vector v = skt::zero_vector(dim);
  for (const auto& [i, c] : entries) v[static_cast<std::size_t>(i - 1)] = c;
  return v;
}

}  // namespace fx
