#pragma once

// Floating-point mirror of the torsion/dc pipeline used by the metric search.
// Tensors are dense row-major: mu[k*n*n + a*n + b] = coefficient of e_k in
// [e_a, e_b].

#include <array>
#include <cstddef>
#include <vector>

#include "skt/hermitian.hpp"

namespace skt::detail {

inline bool exactly_zero(double x) { return x == 0.0; }

std::vector<double> dense_brackets(const LieAlgebra& algebra);
std::vector<double> to_doubles(const RatMatrix& m);

/// Every increasing 4-tuple of 0..n-1, in lexicographic order.
std::vector<std::array<int, 4>> four_tuples(int n);

/// dc on each increasing 4-tuple for bracket mu, complex structure J and
/// metric g (all n x n row-major), following the bismut formulas.
template <class T>
void dc_coefficients(int n, const std::vector<T>& mu, const std::vector<double>& J, const std::vector<double>& g,
                     const std::vector<std::array<int, 4>>& tuples, std::vector<T>& out) {
  const std::size_t N = static_cast<std::size_t>(n);
  auto at = [N](std::size_t k, std::size_t a, std::size_t b) { return (k * N + a) * N + b; };
  // tmp[c,p,b] = sum_q mu[c,p,q] J[q,b]; nu[c,a,b] = sum_p J[p,a] tmp[c,p,b]
  std::vector<T> tmp(N * N * N), nu(N * N * N), lam(N * N * N), c(N * N * N);
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = 0; q < N; ++q) {
        const T& m = mu[at(k, p, q)];
        if (exactly_zero(m)) continue;
        for (std::size_t b = 0; b < N; ++b) {
          const double j = J[q * N + b];
          if (j != 0.0) tmp[at(k, p, b)] += j * m;
        }
      }
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t a = 0; a < N; ++a) {
        const double j = J[p * N + a];
        if (j == 0.0) continue;
        for (std::size_t b = 0; b < N; ++b) nu[at(k, a, b)] += j * tmp[at(k, p, b)];
      }
  // lam[k,a,b] = <e_k, [Je_a, Je_b]>
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t m = 0; m < N; ++m) {
      const double gk = g[k * N + m];
      if (gk == 0.0) continue;
      for (std::size_t ab = 0; ab < N * N; ++ab) lam[k * N * N + ab] += gk * nu[m * N * N + ab];
    }
  for (std::size_t u = 0; u < N; ++u)
    for (std::size_t y = 0; y < N; ++y)
      for (std::size_t z = 0; z < N; ++z)
        c[at(u, y, z)] = -(lam[at(z, u, y)] + lam[at(u, y, z)] + lam[at(y, z, u)]);

  static constexpr int pairs[6][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2},
                                      {1, 2, 0, 3}, {1, 3, 0, 2}, {2, 3, 0, 1}};
  static constexpr double signs[6] = {-1.0, 1.0, -1.0, -1.0, 1.0, -1.0};
  out.assign(tuples.size(), T{});
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    const auto& x = tuples[t];
    T acc{};
    for (int p = 0; p < 6; ++p) {
      const auto i = static_cast<std::size_t>(x[static_cast<std::size_t>(pairs[p][0])]);
      const auto j = static_cast<std::size_t>(x[static_cast<std::size_t>(pairs[p][1])]);
      const auto r0 = static_cast<std::size_t>(x[static_cast<std::size_t>(pairs[p][2])]);
      const auto r1 = static_cast<std::size_t>(x[static_cast<std::size_t>(pairs[p][3])]);
      T term{};
      for (std::size_t k = 0; k < N; ++k) term += mu[at(k, i, j)] * c[at(k, r0, r1)];
      acc += signs[p] * term;
    }
    out[t] = acc;
  }
}

}  // namespace skt::detail
