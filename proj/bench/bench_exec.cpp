// Serial reference (1 worker) against the OpenMP path on the parallel kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "gpi/build.hpp"
#include "gpi/centrad.hpp"
#include "gpi/codeq.hpp"
#include "gpi/corpus.hpp"
#include "gpi/coprime.hpp"
#include "gpi/exec.hpp"

using namespace gpi;

namespace {

void BM_CodeEquivalence(benchmark::State& st) {
  exec::set_workers(int(st.range(0)));
  std::mt19937_64 rng(7);
  FpMatrix A(2, 3, int(st.range(1)));
  for (int& x : A.a) x = int(rng() % 2);
  Perm s = perm_identity(A.cols);
  std::shuffle(s.begin(), s.end(), rng);
  FpMatrix B = permute_columns(A, s);
  for (auto _ : st) benchmark::DoNotOptimize(code_equivalence(A, B));
  exec::set_workers(1);
}

void BM_CoprimeIso(benchmark::State& st) {
  exec::set_workers(int(st.range(0)));
  CayleyTable G = build_group("semidirect(q=2,l=1,p=3,k=3,action=[[2,0,0],[0,2,0],[0,0,1]])");
  CayleyTable H = relabel_group(G, 3);
  for (auto _ : st) benchmark::DoNotOptimize(iso_HAE(G, H));
  exec::set_workers(1);
}

void BM_CentradCoset(benchmark::State& st) {
  exec::set_workers(int(st.range(0)));
  CayleyTable G = build_group("central_ext(Q=alt(5),A=[2],cocycle=lift(sl2(5)))");
  CayleyTable H = relabel_group(G, 3);
  for (auto _ : st) benchmark::DoNotOptimize(aut_coset_centrad(G, H));
  exec::set_workers(1);
}

void BM_OracleExpectations(benchmark::State& st) {
  exec::set_workers(int(st.range(0)));
  Corpus c = coprime_corpus(1, 60, 3);
  for (auto _ : st) {
    oracle_expectations(c, 256);
    benchmark::DoNotOptimize(c.pairs.data());
  }
  exec::set_workers(1);
}

}  // namespace

BENCHMARK(BM_CodeEquivalence)->ArgsProduct({{1, 2, 4}, {8, 12}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoprimeIso)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CentradCoset)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleExpectations)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
