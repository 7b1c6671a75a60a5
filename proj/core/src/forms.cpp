#include "skt/forms.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "skt/errors.hpp"

namespace skt {

int sort_with_sign(std::vector<int>& idx) {
  int sign = 1;
  // Insertion sort counts transpositions; tuples here have length <= 5.
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return sign;
}

AlternatingForm::AlternatingForm(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim < 0 || degree < 0) throw DimensionError("negative form dimension or degree");
}

void AlternatingForm::set(Tuple indices, const Rational& value) {
  if (static_cast<int>(indices.size()) != degree_) throw DimensionError("form tuple has wrong length");
  for (int i : indices)
    if (i < 0 || i >= dim_) throw DimensionError("form index out of range");
  const int s = sort_with_sign(indices);
  if (s == 0) throw std::invalid_argument("alternating form tuple with repeated index");
  const Rational v = s > 0 ? value : -value;
  if (v.is_zero())
    coeffs_.erase(indices);
  else
    coeffs_[indices] = v;
}

void AlternatingForm::add(Tuple indices, const Rational& value) {
  if (value.is_zero()) return;
  const int s = sort_with_sign(indices);
  if (s == 0) throw std::invalid_argument("alternating form tuple with repeated index");
  auto it = coeffs_.find(indices);
  const Rational v = s > 0 ? value : -value;
  if (it == coeffs_.end()) {
    set(indices, v);
  } else {
    it->second += v;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

Rational AlternatingForm::get(Tuple indices) const {
  const int s = sort_with_sign(indices);
  if (s == 0) return Rational(0);
  const auto it = coeffs_.find(indices);
  if (it == coeffs_.end()) return Rational(0);
  return s > 0 ? it->second : -it->second;
}

namespace {

// Determinant of the k x k matrix M(a, b) = vectors[a][tuple[b]].
Rational minor_det(std::span<const Vector> vectors, const std::vector<int>& tuple) {
  const int k = static_cast<int>(tuple.size());
  RatMatrix m(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) m(a, b) = vectors[static_cast<std::size_t>(a)][static_cast<std::size_t>(tuple[static_cast<std::size_t>(b)])];
  return determinant(m);
}

}  // namespace

Rational AlternatingForm::evaluate(std::span<const Vector> vectors) const {
  if (static_cast<int>(vectors.size()) != degree_) throw DimensionError("evaluate: wrong number of arguments");
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != dim_) throw DimensionError("evaluate: argument has wrong length");
  Rational total;
  for (const auto& [tuple, c] : coeffs_) {
    const Rational d = minor_det(vectors, tuple);
    if (!d.is_zero()) total += c * d;
  }
  return total;
}

Rational AlternatingForm::norm_squared() const {
  Rational s;
  for (const auto& [t, c] : coeffs_) s += c * c;
  return s;
}

AlternatingForm AlternatingForm::reindexed(int new_dim, std::span<const int> index_map) const {
  if (static_cast<int>(index_map.size()) != dim_) throw DimensionError("reindexed: map has wrong length");
  AlternatingForm out(new_dim, degree_);
  for (const auto& [t, c] : coeffs_) {
    Tuple mapped;
    for (int i : t) mapped.push_back(index_map[static_cast<std::size_t>(i)]);
    out.add(mapped, c);
  }
  return out;
}

std::string AlternatingForm::str(const std::string& symbol) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  const bool separators = dim_ >= 10;
  for (const auto& [t, c] : coeffs_) {
    Rational a = c;
    if (a.sign() < 0) {
      os << "-";
      a = -a;
    } else if (!first) {
      os << "+";
    }
    if (a != Rational(1)) os << a.str();
    os << symbol << "^{";
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (separators && i > 0) os << ",";
      os << t[i] + 1;
    }
    os << "}";
    first = false;
  }
  return os.str();
}

void AlternatingForm::check_compatible(const AlternatingForm& o) const {
  if (dim_ != o.dim_ || degree_ != o.degree_) throw DimensionError("forms of different dimension or degree");
}

AlternatingForm& AlternatingForm::operator+=(const AlternatingForm& o) {
  check_compatible(o);
  for (const auto& [t, c] : o.coeffs_) add(t, c);
  return *this;
}

AlternatingForm& AlternatingForm::operator-=(const AlternatingForm& o) {
  check_compatible(o);
  for (const auto& [t, c] : o.coeffs_) add(t, -c);
  return *this;
}

AlternatingForm operator*(const Rational& s, const AlternatingForm& f) {
  AlternatingForm out(f.dim_, f.degree_);
  if (s.is_zero()) return out;
  for (const auto& [t, c] : f.coeffs_) out.coeffs_[t] = s * c;
  return out;
}

AlternatingForm AlternatingForm::from_terms(int dim, int degree,
                                            const std::vector<std::pair<Tuple, Rational>>& one_based) {
  AlternatingForm f(dim, degree);
  for (const auto& [t, c] : one_based) {
    Tuple z;
    for (int i : t) z.push_back(i - 1);
    f.add(z, c);
  }
  return f;
}

AlternatingForm wedge(const AlternatingForm& a, const AlternatingForm& b) {
  if (a.dim() != b.dim()) throw DimensionError("wedge: forms on different spaces");
  AlternatingForm out(a.dim(), a.degree() + b.degree());
  for (const auto& [ta, ca] : a.coeffs())
    for (const auto& [tb, cb] : b.coeffs()) {
      std::vector<int> t = ta;
      t.insert(t.end(), tb.begin(), tb.end());
      std::vector<int> sorted = t;
      const int s = sort_with_sign(sorted);
      if (s == 0) continue;
      out.add(t, ca * cb);
    }
  return out;
}

AlternatingForm covector(std::span<const Rational> v) {
  AlternatingForm f(static_cast<int>(v.size()), 1);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) f.set({static_cast<int>(i)}, v[i]);
  return f;
}

std::vector<std::vector<int>> increasing_tuples(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k > n || k < 0) return out;
  std::vector<int> t(static_cast<std::size_t>(k));
  std::iota(t.begin(), t.end(), 0);
  while (true) {
    out.push_back(t);
    int i = k - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++t[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) t[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

}  // namespace skt
