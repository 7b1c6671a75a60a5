#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "skt/hermitian.hpp"

namespace skt {

/// Dense square matrix of doubles, row-major.
struct FloatMatrix {
  int n = 0;
  std::vector<double> data;

  FloatMatrix() = default;
  explicit FloatMatrix(int size) : n(size), data(static_cast<std::size_t>(size) * static_cast<std::size_t>(size)) {}
  static FloatMatrix identity(int size);
  static FloatMatrix from_rational(const RatMatrix& m);

  double& operator()(int r, int c) { return data[static_cast<std::size_t>(r * n + c)]; }
  double operator()(int r, int c) const { return data[static_cast<std::size_t>(r * n + c)]; }
};

/// Sum of dc(e_i,e_j,e_k,e_l)^2 over increasing 4-tuples in the given basis,
/// for a floating-point metric. Throws ValidationError when g is not
/// symmetric positive definite or not J-compatible (relative tolerance 1e-9).
double skt_residual(const LieAlgebra& algebra, const ComplexStructure& J, const FloatMatrix& g);

/// The metrics g = S^T g0 S with S in the commutant of J, coordinatized by an
/// orthonormal (Frobenius) basis C_1..C_m of the commutant: S = sum p_i C_i.
class MetricParameterization {
 public:
  /// Throws PreconditionError unless (J, g0) is a compatible pair.
  MetricParameterization(const LieAlgebra& algebra, const ComplexStructure& J, const Metric& g0);
  ~MetricParameterization();
  MetricParameterization(MetricParameterization&&) noexcept;
  MetricParameterization& operator=(MetricParameterization&&) noexcept;

  int dim() const;
  int num_params() const;
  /// Parameters of S = Id.
  std::vector<double> identity_params() const;
  FloatMatrix factor(const std::vector<double>& params) const;
  FloatMatrix metric(const std::vector<double>& params) const;
  /// skt_residual(metric(params)), without revalidating the metric.
  double residual(const std::vector<double>& params) const;
  /// Analytic gradient of residual(). Throws PreconditionError when S is
  /// numerically singular.
  std::vector<double> gradient(const std::vector<double>& params) const;

  struct Impl;
  const Impl& impl() const { return *impl_; }

 private:
  std::unique_ptr<Impl> impl_;
};

/// Gradient of the residual in the identity-based parameterization
/// (g0 = Id), at the given commutant coordinates.
std::vector<double> residual_gradient(const LieAlgebra& algebra, const ComplexStructure& J,
                                      const std::vector<double>& params);

struct SearchConfig {
  int starts = 20;
  int max_iters = 5000;
  double tol = 1e-10;
  /// Admissible region: cond(S) <= max_condition. Steps leaving it are
  /// rejected and the damping is raised; a penalty keeps iterates off the
  /// boundary.
  double max_condition = 10.0;
  double initial_damping = 1e-3;
  double perturbation = 0.3;
  std::uint64_t rng_seed = 0;
  /// 0 = SKT_THREADS, else hardware concurrency.
  int threads = 0;
};

struct StartRecord {
  std::uint64_t seed = 0;
  double residual = 0.0;   // skt_residual of the normalized metric
  double objective = 0.0;  // penalized objective at termination
  int iterations = 0;
  double condition = 0.0;  // cond(S) at termination
};

struct SearchResult {
  FloatMatrix best_metric;  // normalized to trace = dim
  double best_residual = 0.0;
  bool converged = false;
  std::vector<StartRecord> per_start;  // sorted by (residual, seed)
  SearchConfig config;
  std::optional<int> nilpotency_step;
  /// Set when the exact re-verification ran (converged on a step >= 3 input).
  std::optional<bool> exact_recheck_skt;
};

/// Multi-start Levenberg-Marquardt minimization over g = S^T g0 S, g0 the
/// triple's metric. The objective is |dc(g)|^2 / tr(g)^2 in the fixed
/// basis, plus a wall term that is zero while the singular values of S stay
/// within a band narrower than max_condition. Throws PreconditionError for
/// an invalid triple and InputError for a bad config.
SearchResult search_metric(const HermitianTriple& triple, const SearchConfig& config);
/// Same with g0 = identity, which must be J-compatible.
SearchResult search_metric(const LieAlgebra& algebra, const ComplexStructure& J, const SearchConfig& config);

}  // namespace skt
