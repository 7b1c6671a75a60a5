#include "skt/lie_algebra.hpp"

#include <algorithm>
#include <stdexcept>

#include "skt/errors.hpp"

namespace skt {

LieAlgebra::LieAlgebra(int dim) : dim_(dim) {
  if (dim < 0) throw DimensionError("negative Lie algebra dimension");
}

void LieAlgebra::check_index(int i) const {
  if (i < 0 || i >= dim_)
    throw DimensionError("basis index " + std::to_string(i + 1) + " outside 1.." + std::to_string(dim_));
}

void LieAlgebra::add_term(int i, int j, int k, const Rational& coeff) {
  check_index(i);
  check_index(j);
  check_index(k);
  if (i == j) throw std::invalid_argument("bracket of a basis vector with itself is zero by antisymmetry");
  Rational c = coeff;
  if (i > j) {
    std::swap(i, j);
    c = -c;
  }
  if (c.is_zero()) return;
  auto& terms = brackets_[{i, j}];
  auto it = std::find_if(terms.begin(), terms.end(), [k](const BracketTerm& t) { return t.k == k; });
  if (it == terms.end()) {
    terms.push_back({k, c});
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.k < b.k; });
  } else {
    it->coeff += c;
    if (it->coeff.is_zero()) terms.erase(it);
  }
  if (terms.empty()) brackets_.erase({i, j});
}

void LieAlgebra::set_bracket(int i, int j, std::span<const Rational> value) {
  check_index(i);
  check_index(j);
  if (static_cast<int>(value.size()) != dim_) throw DimensionError("set_bracket: vector size mismatch");
  if (i == j) throw std::invalid_argument("bracket of a basis vector with itself is zero by antisymmetry");
  const bool flip = i > j;
  if (flip) std::swap(i, j);
  brackets_.erase({i, j});
  for (int k = 0; k < dim_; ++k) {
    const auto& c = value[static_cast<std::size_t>(k)];
    if (!c.is_zero()) add_term(i, j, k, flip ? -c : c);
  }
}

Rational LieAlgebra::structure_constant(int i, int j, int k) const {
  if (i == j) return Rational(0);
  const bool flip = i > j;
  const auto it = brackets_.find(flip ? std::pair{j, i} : std::pair{i, j});
  if (it == brackets_.end()) return Rational(0);
  for (const auto& t : it->second)
    if (t.k == k) return flip ? -t.coeff : t.coeff;
  return Rational(0);
}

Vector LieAlgebra::basis_bracket(int i, int j) const {
  check_index(i);
  check_index(j);
  Vector v = zero_vector(dim_);
  if (i == j) return v;
  const bool flip = i > j;
  const auto it = brackets_.find(flip ? std::pair{j, i} : std::pair{i, j});
  if (it == brackets_.end()) return v;
  for (const auto& t : it->second) v[static_cast<std::size_t>(t.k)] = flip ? -t.coeff : t.coeff;
  return v;
}

Vector LieAlgebra::bracket(std::span<const Rational> x, std::span<const Rational> y) const {
  if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_)
    throw DimensionError("bracket: expected vectors of length " + std::to_string(dim_));
  Vector out = zero_vector(dim_);
  for (const auto& [ij, terms] : brackets_) {
    const auto [i, j] = ij;
    const auto& xi = x[static_cast<std::size_t>(i)];
    const auto& xj = x[static_cast<std::size_t>(j)];
    const auto& yi = y[static_cast<std::size_t>(i)];
    const auto& yj = y[static_cast<std::size_t>(j)];
    if ((xi.is_zero() || yj.is_zero()) && (xj.is_zero() || yi.is_zero())) continue;
    const Rational w = xi * yj - xj * yi;
    if (w.is_zero()) continue;
    for (const auto& t : terms) out[static_cast<std::size_t>(t.k)] += w * t.coeff;
  }
  return out;
}

RatMatrix LieAlgebra::ad(std::span<const Rational> x) const {
  RatMatrix m(dim_, dim_);
  for (int j = 0; j < dim_; ++j) {
    const Vector col = bracket(x, unit_vector(dim_, j));
    for (int i = 0; i < dim_; ++i) m(i, j) = col[static_cast<std::size_t>(i)];
  }
  return m;
}

LieAlgebra LieAlgebra::restrict_to(const RatMatrix& basis) const {
  if (basis.cols() != dim_) throw DimensionError("restrict_to: basis vectors have wrong length");
  const int m = basis.rows();
  if (rank(basis) != m) throw std::invalid_argument("restrict_to: basis rows are linearly dependent");
  const RatMatrix bt = basis.transpose();
  LieAlgebra out(m);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      const Vector v = bracket(basis.row(a), basis.row(b));
      if (skt::is_zero(v)) continue;
      const auto coeffs = solve(bt, v);
      if (!coeffs)
        throw PreconditionError("subalgebra",
                                "bracket of basis vectors " + std::to_string(a + 1) + ", " +
                                    std::to_string(b + 1) + " leaves the span: " + format_vector(v));
      out.set_bracket(a, b, *coeffs);
    }
  return out;
}

LieAlgebra LieAlgebra::change_basis(const RatMatrix& basis) const {
  if (basis.rows() != dim_) throw DimensionError("change_basis: need a square invertible basis matrix");
  return restrict_to(basis);
}

JacobiReport jacobi_check(const LieAlgebra& algebra) {
  JacobiReport report;
  const int n = algebra.dim();
  std::vector<std::vector<Vector>> table(static_cast<std::size_t>(n), std::vector<Vector>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = algebra.basis_bracket(i, j);
  auto e = [n](int i) { return unit_vector(n, i); };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Vector s = algebra.bracket(e(i), table[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
        s = add(s, algebra.bracket(e(j), table[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]));
        s = add(s, algebra.bracket(e(k), table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
        if (!is_zero(s)) {
          report.ok = false;
          report.violations.push_back({i, j, k, std::move(s)});
        }
      }
  return report;
}

std::vector<Subspace> central_series(const LieAlgebra& algebra) {
  const int n = algebra.dim();
  std::vector<Subspace> series{Subspace::whole(n)};
  while (!series.back().is_zero()) {
    std::vector<Vector> gens;
    const Subspace& prev = series.back();
    for (int a = 0; a < n; ++a)
      for (int r = 0; r < prev.dim(); ++r) {
        Vector v = algebra.bracket(unit_vector(n, a), prev.basis().row(r));
        if (!is_zero(v)) gens.push_back(std::move(v));
      }
    Subspace next = Subspace::span(n, gens);
    if (next == prev) break;  // stabilized at a nonzero term
    series.push_back(std::move(next));
  }
  return series;
}

std::optional<int> nilpotency_step(const LieAlgebra& algebra) {
  const auto series = central_series(algebra);
  if (!series.back().is_zero()) return std::nullopt;
  return static_cast<int>(series.size()) - 1;
}

Subspace center(const LieAlgebra& algebra) {
  const int n = algebra.dim();
  // Row (a, k) of the stacked adjoint: z -> ([z, e_a])_k.
  RatMatrix stacked(n * n, n);
  for (int a = 0; a < n; ++a)
    for (int m = 0; m < n; ++m) {
      if (m == a) continue;
      for (int k = 0; k < n; ++k) stacked(a * n + k, m) = algebra.structure_constant(m, a, k);
    }
  return kernel(stacked);
}

Subspace derived(const LieAlgebra& algebra) {
  std::vector<Vector> gens;
  for (const auto& [ij, terms] : algebra.brackets()) gens.push_back(algebra.basis_bracket(ij.first, ij.second));
  return Subspace::span(algebra.dim(), gens);
}

bool is_ideal(const LieAlgebra& algebra, const Subspace& s) {
  if (s.ambient_dim() != algebra.dim())
    throw DimensionError("is_ideal: subspace lives in dimension " + std::to_string(s.ambient_dim()) +
                         ", algebra has dimension " + std::to_string(algebra.dim()));
  const int n = algebra.dim();
  for (int a = 0; a < n; ++a)
    for (int r = 0; r < s.dim(); ++r)
      if (!s.contains(algebra.bracket(unit_vector(n, a), s.basis().row(r)))) return false;
  return true;
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  LieAlgebra out(a.dim() + b.dim());
  for (const auto& [ij, terms] : a.brackets())
    for (const auto& t : terms) out.add_term(ij.first, ij.second, t.k, t.coeff);
  for (const auto& [ij, terms] : b.brackets())
    for (const auto& t : terms) out.add_term(ij.first + a.dim(), ij.second + a.dim(), t.k + a.dim(), t.coeff);
  return out;
}

}  // namespace skt
