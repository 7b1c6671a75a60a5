#include "skt/search.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

#include "float_model.hpp"
#include "skt/bismut.hpp"
#include "skt/errors.hpp"
#include "skt/falsification.hpp"

namespace skt {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

FloatMatrix FloatMatrix::identity(int size) {
  FloatMatrix m(size);
  for (int i = 0; i < size; ++i) m(i, i) = 1.0;
  return m;
}

FloatMatrix FloatMatrix::from_rational(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionError("FloatMatrix needs a square matrix");
  FloatMatrix out(m.rows());
  out.data = detail::to_doubles(m);
  return out;
}

namespace {

Mat to_eigen(const std::vector<double>& v, int n) {
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(v.data(), n, n);
}

std::vector<double> from_eigen(const Mat& m) {
  std::vector<double> out(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out[static_cast<std::size_t>(r * m.cols() + c)] = m(r, c);
  return out;
}

double condition_number(const Mat& s) {
  Eigen::JacobiSVD<Mat> svd(s);
  const auto& sv = svd.singularValues();
  const double lo = sv(sv.size() - 1);
  return lo > 0.0 ? sv(0) / lo : std::numeric_limits<double>::infinity();
}

void check_metric(const Mat& g, const Mat& J) {
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw ValidationError("invalid metric", "not symmetric");
  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success) throw ValidationError("invalid metric", "not positive definite");
  if ((J.transpose() * g * J - g).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw ValidationError("invalid metric", "not J-compatible");
}

std::size_t threads_for(int requested, int jobs) {
  long t = requested;
  if (t <= 0) {
    if (const char* env = std::getenv("SKT_THREADS")) t = std::strtol(env, nullptr, 10);
  }
  if (t <= 0) t = static_cast<long>(std::thread::hardware_concurrency());
  return static_cast<std::size_t>(std::clamp<long>(t, 1, std::max(1, jobs)));
}

}  // namespace

struct MetricParameterization::Impl {
  int n = 0;
  std::vector<double> mu;
  Mat g0;
  std::vector<std::array<int, 4>> tuples;
  Mat B;  // column k*n+c: dc coefficients of the metric E_kc
  std::vector<Mat> basis;

  Mat factor(const std::vector<double>& p) const {
    Mat s = Mat::Zero(n, n);
    for (std::size_t i = 0; i < basis.size(); ++i) s += p[i] * basis[i];
    return s;
  }

  Vec dc_of_metric(const Mat& g) const {
    Vec flat(n * n);
    for (int k = 0; k < n; ++k)
      for (int c = 0; c < n; ++c) flat(k * n + c) = g(k, c);
    return B * flat;
  }

  double residual(const Mat& g) const { return dc_of_metric(g).squaredNorm(); }

  // dc(g) / tr(g) for g = S^T g0 S, and its Jacobian.
  void fixed_residuals(const Mat& s, Vec& r, Mat* jac) const {
    const Mat gs = g0 * s;
    const Mat g = s.transpose() * gs;
    const double tr = g.trace();
    const Vec dc = dc_of_metric(g);
    r = dc / tr;
    if (!jac) return;
    jac->resize(r.size(), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const Mat half = basis[i].transpose() * gs;
      const Mat dg = half + half.transpose();
      const double dtr = dg.trace();
      jac->col(static_cast<Eigen::Index>(i)) = (dc_of_metric(dg) * tr - dc * dtr) / (tr * tr);
    }
  }
};

MetricParameterization::MetricParameterization(const LieAlgebra& algebra, const ComplexStructure& J,
                                               const Metric& g0)
    : impl_(std::make_unique<Impl>()) {
  const auto compat = check_compatibility(J, g0);
  if (!compat.ok) throw PreconditionError("compatible pair", compat.witness);
  Impl& m = *impl_;
  const int n = algebra.dim();
  m.n = n;
  m.mu = detail::dense_brackets(algebra);
  m.g0 = to_eigen(detail::to_doubles(g0.matrix()), n);
  m.tuples = detail::four_tuples(n);

  const std::vector<double> jd = detail::to_doubles(J.matrix());
  m.B.resize(static_cast<Eigen::Index>(m.tuples.size()), n * n);
  std::vector<double> e(static_cast<std::size_t>(n * n), 0.0), dc;
  for (int kc = 0; kc < n * n; ++kc) {
    e[static_cast<std::size_t>(kc)] = 1.0;
    detail::dc_coefficients(n, m.mu, jd, e, m.tuples, dc);
    for (std::size_t t = 0; t < dc.size(); ++t) m.B(static_cast<Eigen::Index>(t), kc) = dc[t];
    e[static_cast<std::size_t>(kc)] = 0.0;
  }

  // Exact kernel of X -> JX - XJ, orthonormalized in the Frobenius product.
  RatMatrix op(n * n, n * n);
  const RatMatrix& j = J.matrix();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        // (JX)_{ab} = sum_c J_ac X_cb ; (XJ)_{ab} = sum_c X_ac J_cb
        op(a * n + b, c * n + b) += j(a, c);
        op(a * n + b, a * n + c) -= j(c, b);
      }
  const Subspace commutant = kernel(op);
  std::vector<Vec> done;
  for (int r = 0; r < commutant.dim(); ++r) {
    Vec v(n * n);
    const Vector row = commutant.basis_vector(r);
    for (int i = 0; i < n * n; ++i) v(i) = row[static_cast<std::size_t>(i)].to_double();
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : done) v -= u.dot(v) * u;
    v.normalize();
    done.push_back(v);
    Mat c(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) c(a, b) = v(a * n + b);
    m.basis.push_back(c);
  }
}

MetricParameterization::~MetricParameterization() = default;
MetricParameterization::MetricParameterization(MetricParameterization&&) noexcept = default;
MetricParameterization& MetricParameterization::operator=(MetricParameterization&&) noexcept = default;

int MetricParameterization::dim() const { return impl_->n; }
int MetricParameterization::num_params() const { return static_cast<int>(impl_->basis.size()); }

std::vector<double> MetricParameterization::identity_params() const {
  std::vector<double> p;
  for (const auto& c : impl_->basis) p.push_back(c.trace());
  return p;
}

FloatMatrix MetricParameterization::factor(const std::vector<double>& params) const {
  if (params.size() != impl_->basis.size())
    throw DimensionError("expected " + std::to_string(impl_->basis.size()) + " parameters, got " +
                         std::to_string(params.size()));
  FloatMatrix out(impl_->n);
  out.data = from_eigen(impl_->factor(params));
  return out;
}

FloatMatrix MetricParameterization::metric(const std::vector<double>& params) const {
  const FloatMatrix s = factor(params);
  const Mat S = to_eigen(s.data, s.n);
  FloatMatrix out(impl_->n);
  out.data = from_eigen(S.transpose() * impl_->g0 * S);
  return out;
}

double MetricParameterization::residual(const std::vector<double>& params) const {
  const FloatMatrix g = metric(params);
  return impl_->residual(to_eigen(g.data, g.n));
}

std::vector<double> MetricParameterization::gradient(const std::vector<double>& params) const {
  const Impl& m = *impl_;
  const FloatMatrix s = factor(params);
  const Mat S = to_eigen(s.data, s.n);
  if (condition_number(S) > 1e12) throw PreconditionError("params in domain", "S is numerically singular");
  const Mat g = S.transpose() * m.g0 * S;
  const Vec dc = m.dc_of_metric(g);
  const Vec flat = 2.0 * (m.B.transpose() * dc);
  Mat G(m.n, m.n);
  for (int k = 0; k < m.n; ++k)
    for (int c = 0; c < m.n; ++c) G(k, c) = flat(k * m.n + c);
  // dR/dS = g0 S (G + G^T)
  const Mat dS = m.g0 * S * (G + G.transpose());
  std::vector<double> out;
  for (const auto& c : m.basis) out.push_back(c.cwiseProduct(dS).sum());
  return out;
}

double skt_residual(const LieAlgebra& algebra, const ComplexStructure& J, const FloatMatrix& g) {
  const int n = algebra.dim();
  if (J.dim() != n || g.n != n)
    throw DimensionError("skt_residual: algebra " + std::to_string(n) + ", J " + std::to_string(J.dim()) +
                         ", metric " + std::to_string(g.n));
  const std::vector<double> jd = detail::to_doubles(J.matrix());
  check_metric(to_eigen(g.data, n), to_eigen(jd, n));
  std::vector<double> dc;
  detail::dc_coefficients(n, detail::dense_brackets(algebra), jd, g.data, detail::four_tuples(n), dc);
  double sum = 0.0;
  for (double x : dc) sum += x * x;
  return sum;
}

std::vector<double> residual_gradient(const LieAlgebra& algebra, const ComplexStructure& J,
                                      const std::vector<double>& params) {
  return MetricParameterization(algebra, J, Metric::identity(algebra.dim())).gradient(params);
}

namespace {

struct StartOutcome {
  StartRecord record;
  Mat S;
  Mat g;
};

constexpr double kSoftMargin = 1.25;
constexpr double kWallWeight = 10.0;
constexpr int kWindow = 100;

StartOutcome run_start(const MetricParameterization::Impl& m, const SearchConfig& cfg, std::uint64_t seed) {
  const int n = m.n;
  const auto np = static_cast<Eigen::Index>(m.basis.size());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat noise(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) noise(a, b) = gauss(rng);

  Vec base(np), proj(np);
  for (Eigen::Index i = 0; i < np; ++i) {
    base(i) = m.basis[static_cast<std::size_t>(i)].trace();
    proj(i) = m.basis[static_cast<std::size_t>(i)].cwiseProduct(noise).sum();
  }
  auto to_matrix = [&](const Vec& p) {
    Mat s = Mat::Zero(n, n);
    for (Eigen::Index i = 0; i < np; ++i) s += p(i) * m.basis[static_cast<std::size_t>(i)];
    return s;
  };
  // Start inside the admissible region: shrink the perturbation if needed.
  double amp = cfg.perturbation;
  Vec p = base + amp * proj;
  for (int k = 0; k < 30 && condition_number(to_matrix(p)) > cfg.max_condition; ++k) {
    amp *= 0.5;
    p = base + amp * proj;
  }
  const double det_sign = to_matrix(p).determinant() > 0.0 ? 1.0 : -1.0;
  const double target_norm = std::sqrt(static_cast<double>(n));

  // Residual rows plus one wall row that grows once the singular values of S
  // spread beyond a soft bound inside max_condition:
  //   wall = w * sum_i h(log s_i - mean log s),  h(x) = max(0, |x| - a)^2.
  const double half_width = 0.5 * std::log(cfg.max_condition / kSoftMargin);
  auto evaluate = [&](const Mat& s, Vec& r, Mat* jac) {
    Vec base_r;
    Mat base_j;
    m.fixed_residuals(s, base_r, jac ? &base_j : nullptr);
    Eigen::JacobiSVD<Mat> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vec logs = svd.singularValues().array().log().matrix();
    const double mean = logs.mean();
    double wall = 0.0;
    Vec hprime = Vec::Zero(n);
    for (int i = 0; i < n; ++i) {
      const double x = logs(i) - mean;
      const double over = std::abs(x) - half_width;
      if (over <= 0.0) continue;
      wall += over * over;
      hprime(i) = 2.0 * over * (x > 0.0 ? 1.0 : -1.0);
    }
    r.resize(base_r.size() + 1);
    r.head(base_r.size()) = base_r;
    r(base_r.size()) = kWallWeight * wall;
    if (!jac) return;
    jac->resize(r.size(), np);
    jac->topRows(base_r.size()) = base_j;
    const Mat& U = svd.matrixU();
    const Mat& V = svd.matrixV();
    const double hsum = hprime.sum();
    for (Eigen::Index k = 0; k < np; ++k) {
      const Mat& c = m.basis[static_cast<std::size_t>(k)];
      double d = 0.0;
      if (hsum != 0.0 || wall > 0.0) {
        Vec dlog(n);
        for (int i = 0; i < n; ++i) dlog(i) = U.col(i).dot(c * V.col(i)) / svd.singularValues()(i);
        d = hprime.dot(dlog) - hsum * dlog.mean();
      }
      (*jac)(base_r.size(), k) = kWallWeight * d;
    }
  };

  Vec r;
  Mat jac;
  evaluate(to_matrix(p), r, &jac);
  double q = r.squaredNorm();
  double lambda = cfg.initial_damping;
  int iters = 0;
  int slow = 0;
  double window_start = q;
  while (iters < cfg.max_iters && q > 1e-32) {
    ++iters;
    const Mat A = jac.transpose() * jac;
    const Vec grad = jac.transpose() * r;
    const double floor = 1e-9 * std::max(A.diagonal().maxCoeff(), 1e-300);
    bool accepted = false;
    while (lambda < 1e12) {
      Mat lhs = A;
      for (Eigen::Index i = 0; i < np; ++i) lhs(i, i) += lambda * std::max(A(i, i), floor);
      const Vec step = lhs.ldlt().solve(-grad);
      Vec trial = p + step;
      trial *= target_norm / trial.norm();
      const Mat st = to_matrix(trial);
      if (st.determinant() * det_sign > 0.0 && condition_number(st) <= cfg.max_condition) {
        Vec rt;
        evaluate(st, rt, nullptr);
        const double qt = rt.squaredNorm();
        if (qt < q) {
          slow = (q - qt) <= 1e-12 * q ? slow + 1 : 0;
          p = trial;
          q = qt;
          lambda = std::max(lambda / 3.0, 1e-15);
          accepted = true;
          break;
        }
      }
      lambda *= 4.0;
    }
    if (!accepted || slow >= 10) break;
    // windowed stagnation test: negligible progress over the last 100 steps
    if (iters % kWindow == 0) {
      if (window_start - q <= 1e-9 * window_start) break;
      window_start = q;
    }
    evaluate(to_matrix(p), r, &jac);
  }

  StartOutcome out;
  out.S = to_matrix(p);
  Mat g = out.S.transpose() * m.g0 * out.S;
  g *= static_cast<double>(n) / g.trace();
  out.g = g;
  out.record.seed = seed;
  out.record.objective = q;
  out.record.residual = m.residual(g);
  out.record.iterations = iters;
  out.record.condition = condition_number(out.S);
  return out;
}

// Rational approximation of S projected onto the commutant, then the exact
// pipeline. Returns the SKT verdict of the rounded metric.
bool exact_recheck(const HermitianTriple& triple, const Mat& S) {
  const int n = triple.dim();
  RatMatrix s(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) s(a, b) = Rational::approximate(S(a, b), 1000000);
  const RatMatrix& j = triple.J.matrix();
  s = Rational(1, 2) * (s - j * s * j);
  try {
    Metric g(s.transpose() * triple.g.matrix() * s);
    HermitianTriple t = HermitianTriple::make(triple.algebra, triple.J, std::move(g));
    if (!t.valid()) return false;
    return is_skt(t).is_skt;
  } catch (const ValidationError&) {
    return false;
  }
}

}  // namespace

SearchResult search_metric(const HermitianTriple& triple, const SearchConfig& config) {
  if (!triple.valid()) {
    try {
      require_valid(triple);
    } catch (const ValidationError& e) {
      throw PreconditionError("valid Hermitian triple", e.what());
    }
    throw PreconditionError("valid Hermitian triple", "validity flags were not set by HermitianTriple::make");
  }
  if (config.starts < 1) throw InputError("search: starts must be >= 1");
  if (config.max_iters < 1) throw InputError("search: max_iters must be >= 1");
  if (!(config.tol > 0.0)) throw InputError("search: tol must be > 0");
  if (!(config.max_condition > 1.0)) throw InputError("search: max_condition must be > 1");

  const MetricParameterization param(triple.algebra, triple.J, triple.g);
  const auto& m = param.impl();
  const auto count = static_cast<std::size_t>(config.starts);
  std::vector<StartOutcome> outcomes(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++)
      outcomes[i] = run_start(m, config, config.rng_seed + static_cast<std::uint64_t>(i));
  };
  const std::size_t nthreads = threads_for(config.threads, config.starts);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::sort(outcomes.begin(), outcomes.end(), [](const StartOutcome& a, const StartOutcome& b) {
    if (a.record.residual != b.record.residual) return a.record.residual < b.record.residual;
    return a.record.seed < b.record.seed;
  });

  SearchResult result;
  result.config = config;
  for (const auto& o : outcomes) result.per_start.push_back(o.record);
  const StartOutcome& best = outcomes.front();
  result.best_metric = FloatMatrix(m.n);
  result.best_metric.data = from_eigen(best.g);
  result.best_residual = best.record.residual;
  result.converged = result.best_residual < config.tol;
  result.nilpotency_step = nilpotency_step(triple.algebra);

  if (result.converged && result.nilpotency_step && *result.nilpotency_step >= 3) {
    result.exact_recheck_skt = exact_recheck(triple, best.S);
    if (*result.exact_recheck_skt) {
      std::ostringstream ctx;
      ctx << "search on " << (triple.name.empty() ? "<unnamed>" : triple.name) << " (step "
          << *result.nilpotency_step << ", seed " << best.record.seed
          << ") converged to a metric whose rational rounding is exactly SKT";
      falsification::record("SKT nilpotent implies step <= 2", ctx.str());
    }
  }
  return result;
}

SearchResult search_metric(const LieAlgebra& algebra, const ComplexStructure& J, const SearchConfig& config) {
  return search_metric(HermitianTriple::make(algebra, J, Metric::identity(algebra.dim())), config);
}

}  // namespace skt
