#include <benchmark/benchmark.h>

#include <random>

#include "ratdg/ce_harrison.hpp"
#include "ratdg/rank_kernels.hpp"

using namespace ratdg;

namespace {

// Sparse random matrix with small integer entries and a planted rank defect.
Matrix random_matrix(int n, unsigned seed) {
  std::mt19937 r(seed);
  std::uniform_int_distribution<int> val(-3, 3), pos(0, n - 1);
  Matrix m(n, n);
  for (int j = 0; j < n; ++j) {
    std::vector<std::pair<int, Q>> t;
    for (int k = 0; k < 6; ++k) t.emplace_back(pos(r), val(r));
    m.col[j] = from_terms(t);
  }
  for (int j = n - n / 8; j < n; ++j) m.col[j] = add(m.col[j - 1], m.col[j - 2]);
  return m;
}

// Differential blocks of the CE complex of the Heisenberg algebra.
std::vector<Matrix> ce_blocks(int P) {
  GradedVectorSpace sp;
  sp.add("a", 0);
  sp.add("b", 0);
  sp.add("c", 0);
  Dgla h(sp, {{{0, 1}, unit_vec(2)}}, std::vector<Vec>(3), {1, 1, 2});
  CEAlgebra ce = chevalley_eilenberg(h);
  auto t = ce.cdga.truncation(P);
  ChainComplex cx = ce.cdga.complex(t);
  std::vector<Matrix> out;
  for (int n : t.space.occupied_degrees()) out.push_back(cx.block(n));
  return out;
}

void BM_RankSerial(benchmark::State& s) {
  Matrix m = random_matrix(static_cast<int>(s.range(0)), 7);
  for (auto _ : s) benchmark::DoNotOptimize(rank_serial(m));
}
void BM_RankParallel(benchmark::State& s) {
  Matrix m = random_matrix(static_cast<int>(s.range(0)), 7);
  for (auto _ : s) benchmark::DoNotOptimize(rank_parallel(m));
}
BENCHMARK(BM_RankSerial)->Arg(100)->Arg(300)->Arg(600);
BENCHMARK(BM_RankParallel)->Arg(100)->Arg(300)->Arg(600);

void BM_BlocksSerial(benchmark::State& s) {
  auto blocks = ce_blocks(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(block_ranks_serial(blocks));
}
void BM_BlocksParallel(benchmark::State& s) {
  auto blocks = ce_blocks(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(block_ranks_parallel(blocks));
}
BENCHMARK(BM_BlocksSerial)->Arg(6)->Arg(8);
BENCHMARK(BM_BlocksParallel)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
