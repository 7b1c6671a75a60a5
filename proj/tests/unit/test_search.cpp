#include <algorithm>
#include <cmath>
#include <random>

#include "../support/fixtures.hpp"
#include "../support/random_triples.hpp"
#include "doctest.h"
#include "skt/catalog.hpp"
#include "skt/compose.hpp"
#include "skt/errors.hpp"
#include "skt/search.hpp"

using skt::FloatMatrix;
using skt::MetricParameterization;
using skt::SearchConfig;

namespace {

skt::HermitianTriple composed12() {
  skt::CompositionSpec s;
  s.left = skt::catalog::get("n4_abelian").triple;
  s.right = skt::catalog::get("n6_abelian").triple;
  return skt::compose(s);
}

std::vector<double> random_params(const MetricParameterization& p, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 0.3);
  auto x = p.identity_params();
  for (auto& v : x) v += gauss(rng);
  return x;
}

double fd_relative_error(const MetricParameterization& p, const std::vector<double>& x) {
  const auto g = p.gradient(x);
  const double h = 1e-6;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto a = x, b = x;
    a[i] += h;
    b[i] -= h;
    const double fd = (p.residual(a) - p.residual(b)) / (2 * h);
    num += (g[i] - fd) * (g[i] - fd);
    den += fd * fd;
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

}  // namespace

TEST_CASE("residual vanishes on SKT and abelian inputs") {
  const auto n4 = skt::catalog::get("n4_abelian").triple;
  CHECK(skt::skt_residual(n4.algebra, n4.J, FloatMatrix::identity(4)) < 1e-28);
  FloatMatrix g = FloatMatrix::identity(6);
  g(0, 0) = g(1, 1) = 3.0;
  g(2, 4) = g(4, 2) = g(3, 5) = g(5, 3) = 0.5;
  CHECK(skt::skt_residual(skt::LieAlgebra(6), fx::consecutive_J(6), g) == 0.0);
}

TEST_CASE("float residual agrees with the exact dc norm") {
  fx::RandomTriples gen(17);
  fx::RandomTripleOptions o;
  o.v_pairs = 2;
  o.z_pairs = 2;
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = gen.next(o);
    const double exact = skt::is_skt(t).dc_norm_squared.to_double();
    const double approx = skt::skt_residual(t.algebra, t.J, FloatMatrix::from_rational(t.g.matrix()));
    CHECK(std::abs(approx - exact) <= 1e-12 * std::max(exact, 1e-300));
  }
  const auto n8 = fx::triple(fx::n8());
  CHECK(skt::skt_residual(n8.algebra, n8.J, FloatMatrix::identity(8)) ==
        doctest::Approx(skt::is_skt(n8).dc_norm_squared.to_double()).epsilon(1e-12));
}

TEST_CASE("residual scales quadratically") {
  const auto t = fx::three_step6();
  FloatMatrix g = FloatMatrix::identity(6);
  g(0, 0) = g(2, 2) = 2.0;
  FloatMatrix g2 = g;
  for (auto& x : g2.data) x *= 2.0;
  const double r = skt::skt_residual(t.algebra, t.J, g);
  CHECK(r > 0.0);
  CHECK(skt::skt_residual(t.algebra, t.J, g2) == doctest::Approx(4.0 * r).epsilon(1e-12));
}

TEST_CASE("invalid float metrics are rejected") {
  const auto t = fx::three_step6();
  FloatMatrix g = FloatMatrix::identity(6);
  g(0, 1) = 0.5;
  CHECK_THROWS_AS(skt::skt_residual(t.algebra, t.J, g), skt::ValidationError);
  g = FloatMatrix::identity(6);
  g(0, 0) = 2.0;  // J pairs e1 with e3
  CHECK_THROWS_WITH_AS(skt::skt_residual(t.algebra, t.J, g), "invalid metric: not J-compatible",
                       skt::ValidationError);
  g = FloatMatrix::identity(6);
  g(0, 0) = g(2, 2) = -1.0;
  CHECK_THROWS_WITH_AS(skt::skt_residual(t.algebra, t.J, g), "invalid metric: not positive definite",
                       skt::ValidationError);
}

TEST_CASE("parameterization covers the commutant") {
  const auto t = fx::three_step6();
  const MetricParameterization p(t.algebra, t.J, t.g);
  CHECK(p.num_params() == 18);  // gl(3, C) as a real space
  const auto id = p.identity_params();
  const auto g = p.metric(id);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) CHECK(g(r, c) == doctest::Approx(r == c ? 1.0 : 0.0));
  std::mt19937_64 rng(3);
  const auto x = random_params(p, rng);
  CHECK_NOTHROW(skt::skt_residual(t.algebra, t.J, p.metric(x)));
  CHECK(p.residual(x) == doctest::Approx(skt::skt_residual(t.algebra, t.J, p.metric(x))).epsilon(1e-12));
}

TEST_CASE("gradient matches central differences") {
  std::mt19937_64 rng(11);
  for (const auto& t : {fx::three_step6(), composed12(), fx::triple(fx::n8())}) {
    const MetricParameterization p(t.algebra, t.J, t.g);
    for (int k = 0; k < 10; ++k) {
      const auto x = random_params(p, rng);
      CHECK(fd_relative_error(p, x) < 1e-4);
    }
  }
}

TEST_CASE("gradient identities") {
  const auto t = fx::three_step6();
  const MetricParameterization p(t.algebra, t.J, t.g);
  std::mt19937_64 rng(5);
  const auto x = random_params(p, rng);
  const auto g = p.gradient(x);
  double euler = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) euler += g[i] * x[i];
  // residual is homogeneous of degree 4 in S
  CHECK(euler == doctest::Approx(4.0 * p.residual(x)).epsilon(1e-10));

  const auto c = composed12();
  const MetricParameterization q(c.algebra, c.J, c.g);
  double norm = 0.0;
  for (double v : q.gradient(q.identity_params())) norm += v * v;
  CHECK(std::sqrt(norm) < 1e-8);

  const auto n4 = skt::catalog::get("n4_abelian").triple;
  auto id = skt::MetricParameterization(n4.algebra, n4.J, n4.g).identity_params();
  for (double v : skt::residual_gradient(n4.algebra, n4.J, id)) CHECK(std::abs(v) < 1e-8);
}

TEST_CASE("search recovers SKT metrics") {
  SearchConfig cfg;
  cfg.starts = 4;
  const auto n4 = skt::search_metric(skt::catalog::get("n4_abelian").triple, cfg);
  CHECK(n4.converged);
  CHECK(n4.best_residual < 1e-10);
  const auto c = skt::search_metric(composed12(), cfg);
  CHECK(c.converged);
  REQUIRE(c.per_start.size() == 4);
  for (const auto& s : c.per_start) CHECK(s.residual < 1e-10);
  CHECK_FALSE(c.exact_recheck_skt.has_value());
  double tr = 0.0;
  for (int i = 0; i < 12; ++i) tr += c.best_metric(i, i);
  CHECK(tr == doctest::Approx(12.0));
  const auto ct = composed12();
  CHECK_NOTHROW(skt::skt_residual(ct.algebra, ct.J, c.best_metric));
}

TEST_CASE("search on a 3-step algebra stays away from zero") {
  const auto t = fx::three_step6();
  REQUIRE(t.valid());
  REQUIRE(skt::nilpotency_step(t.algebra) == 3);
  SearchConfig cfg;
  cfg.starts = 3;
  const auto r = skt::search_metric(t, cfg);
  CHECK_FALSE(r.converged);
  for (const auto& s : r.per_start) CHECK(s.residual > 1e-4);
  CHECK(r.nilpotency_step == 3);
  CHECK_FALSE(r.exact_recheck_skt.has_value());

  // the verdict does not depend on the scale of the starting metric
  auto scaled = skt::HermitianTriple::make(t.algebra, t.J, skt::Metric(skt::Rational(2) * skt::RatMatrix::identity(6)));
  const auto r2 = skt::search_metric(scaled, cfg);
  CHECK_FALSE(r2.converged);
  CHECK(r2.best_residual == doctest::Approx(r.best_residual).epsilon(1e-6));
}

TEST_CASE("search is deterministic and thread-count independent") {
  const auto t = fx::three_step6();
  SearchConfig cfg;
  cfg.starts = 4;
  cfg.rng_seed = 42;
  cfg.threads = 1;
  const auto a = skt::search_metric(t, cfg);
  cfg.threads = 3;
  const auto b = skt::search_metric(t, cfg);
  REQUIRE(a.per_start.size() == b.per_start.size());
  for (std::size_t i = 0; i < a.per_start.size(); ++i) {
    CHECK(a.per_start[i].seed == b.per_start[i].seed);
    CHECK(a.per_start[i].residual == b.per_start[i].residual);
    CHECK(a.per_start[i].iterations == b.per_start[i].iterations);
  }
  CHECK(a.best_metric.data == b.best_metric.data);
  for (std::size_t i = 1; i < a.per_start.size(); ++i) CHECK(a.per_start[i - 1].residual <= a.per_start[i].residual);
  std::vector<std::uint64_t> seeds;
  for (const auto& s : a.per_start) seeds.push_back(s.seed);
  std::sort(seeds.begin(), seeds.end());
  CHECK(seeds == std::vector<std::uint64_t>{42, 43, 44, 45});
}

TEST_CASE("search preconditions") {
  SearchConfig cfg;
  cfg.starts = 0;
  CHECK_THROWS_AS(skt::search_metric(fx::three_step6(), cfg), skt::InputError);
  cfg = {};
  cfg.tol = 0.0;
  CHECK_THROWS_AS(skt::search_metric(fx::three_step6(), cfg), skt::InputError);
  auto bad = skt::HermitianTriple::make(fx::n8(), skt::ComplexStructure::from_pairs(8, {{0, 2}, {1, 3}, {4, 5}, {6, 7}}),
                                        skt::Metric::identity(8));
  REQUIRE_FALSE(bad.flags.integrable);
  CHECK_THROWS_AS(skt::search_metric(bad, SearchConfig{}), skt::PreconditionError);
}
