#include <benchmark/benchmark.h>

#include "skt/bismut.hpp"
#include "skt/catalog.hpp"
#include "skt/compose.hpp"
#include "skt/search.hpp"

namespace {

skt::HermitianTriple composed(const char* a, const char* b) {
  skt::CompositionSpec s;
  s.left = skt::catalog::get(a).triple;
  s.right = skt::catalog::get(b).triple;
  return skt::compose(s);
}

void BM_IsSkt(benchmark::State& state, const char* name) {
  const auto& t = skt::catalog::get(name).triple;
  for (auto _ : state) benchmark::DoNotOptimize(skt::is_skt(t));
}
BENCHMARK_CAPTURE(BM_IsSkt, n6_abelian, "n6_abelian");
BENCHMARK_CAPTURE(BM_IsSkt, n12_nonabelian, "n12_nonabelian");

void BM_Compose(benchmark::State& state) {
  skt::CompositionSpec s;
  s.left = skt::catalog::get("n4_abelian").triple;
  s.right = skt::catalog::get("n8_nonabelian").triple;
  for (auto _ : state) benchmark::DoNotOptimize(skt::compose(s));
}
BENCHMARK(BM_Compose);

void BM_IterateTo(benchmark::State& state) {
  const std::vector<skt::HermitianTriple> seeds{skt::catalog::get("n4_abelian").triple};
  for (auto _ : state) benchmark::DoNotOptimize(skt::iterate_compose(seeds, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_IterateTo)->Arg(10)->Arg(16)->Arg(22);

void BM_FloatResidual(benchmark::State& state) {
  const auto t = composed("n4_abelian", "n6_abelian");
  const skt::MetricParameterization p(t.algebra, t.J, t.g);
  const auto x = p.identity_params();
  for (auto _ : state) benchmark::DoNotOptimize(p.residual(x));
}
BENCHMARK(BM_FloatResidual);

void BM_Gradient(benchmark::State& state) {
  const auto t = composed("n4_abelian", "n6_abelian");
  const skt::MetricParameterization p(t.algebra, t.J, t.g);
  const auto x = p.identity_params();
  for (auto _ : state) benchmark::DoNotOptimize(p.gradient(x));
}
BENCHMARK(BM_Gradient);

void BM_SearchComposed12(benchmark::State& state) {
  const auto t = composed("n4_abelian", "n6_abelian");
  skt::SearchConfig cfg;
  cfg.starts = 2;
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(skt::search_metric(t, cfg));
}
BENCHMARK(BM_SearchComposed12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
