#include "float_model.hpp"

namespace skt::detail {

std::vector<double> dense_brackets(const LieAlgebra& algebra) {
  const auto n = static_cast<std::size_t>(algebra.dim());
  std::vector<double> mu(n * n * n, 0.0);
  for (const auto& [ij, terms] : algebra.brackets()) {
    const auto i = static_cast<std::size_t>(ij.first);
    const auto j = static_cast<std::size_t>(ij.second);
    for (const auto& t : terms) {
      const auto k = static_cast<std::size_t>(t.k);
      const double c = t.coeff.to_double();
      mu[(k * n + i) * n + j] += c;
      mu[(k * n + j) * n + i] -= c;
    }
  }
  return mu;
}

std::vector<double> to_doubles(const RatMatrix& m) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m.rows() * m.cols()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out.push_back(m(r, c).to_double());
  return out;
}

std::vector<std::array<int, 4>> four_tuples(int n) {
  std::vector<std::array<int, 4>> out;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) out.push_back({a, b, c, d});
  return out;
}

}  // namespace skt::detail
