#include "qc/rewriter.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_Interpret(benchmark::State& st) {
  auto c = qc::random_word(static_cast<int>(st.range(0)), 100, 1);
  for (auto _ : st) benchmark::DoNotOptimize(qc::interpret(c));
}
BENCHMARK(BM_Interpret)->DenseRange(1, 4);

void BM_Tableau(benchmark::State& st) {
  auto c = qc::random_word(static_cast<int>(st.range(0)), 1000, 2);
  for (auto _ : st) benchmark::DoNotOptimize(qc::tableau_of(c));
}
BENCHMARK(BM_Tableau)->RangeMultiplier(2)->Range(2, 32);

void BM_Synthesize(benchmark::State& st) {
  auto t = qc::tableau_of(qc::random_word(static_cast<int>(st.range(0)), 500, 3));
  for (auto _ : st) benchmark::DoNotOptimize(qc::synthesize(t));
}
BENCHMARK(BM_Synthesize)->RangeMultiplier(2)->Range(2, 32);

void BM_Normalize(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  auto c = qc::random_word(n, 10 * n, 4);
  qc::normalize(c);  // warm caches
  for (auto _ : st) benchmark::DoNotOptimize(qc::normalize(c));
}
BENCHMARK(BM_Normalize)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_DeriveRelations(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(qc::enumerate_rules());
}
BENCHMARK(BM_DeriveRelations)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
