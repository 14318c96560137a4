#include <benchmark/benchmark.h>

#include <random>

#include "liequot/phi.hpp"

using namespace liequot;

namespace {

const lie::LieClass A1 = lie::LieClass::make(lie::XType::A1, 1);

void BM_FieldMul(benchmark::State& state) {
  const auto f = ff::make_field(2, static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  std::vector<ff::Code> xs(1024);
  for (auto& x : xs) x = rng() % f->order();
  ff::Code acc = 1;
  for (auto _ : state) {
    for (auto x : xs) acc = f->mul(acc, x ? x : 1);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
}
BENCHMARK(BM_FieldMul)->Arg(4)->Arg(8)->Arg(16)->Arg(20);

void BM_MatrixMul(benchmark::State& state) {
  const auto f = ff::make_field(static_cast<std::uint64_t>(state.range(0)), 1);
  std::mt19937_64 rng(2);
  std::vector<ff::Code> a(64), b(64);
  for (auto& x : a) x = rng() % f->order();
  for (auto& x : b) x = rng() % f->order();
  const auto ma = matgrp::Matrix::from_codes(f, 8, a);
  const auto mb = matgrp::Matrix::from_codes(f, 8, b);
  for (auto _ : state) benchmark::DoNotOptimize(ma * mb);
}
BENCHMARK(BM_MatrixMul)->Arg(3)->Arg(251);

void BM_Closure(benchmark::State& state) {
  const auto q = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lie::build_id_group(A1, q).order());
}
BENCHMARK(BM_Closure)->Arg(7)->Arg(13)->Arg(27)->Unit(benchmark::kMillisecond);

void BM_CountHurwitz(benchmark::State& state) {
  const auto q = static_cast<std::uint64_t>(state.range(0));
  const phi::Target t(A1, q);
  const auto p = fp::parse_presentation("<x,y | x^2, y^3, (x*y)^7>");
  for (auto _ : state) benchmark::DoNotOptimize(phi::compute_record(p, t).n_phi);
}
BENCHMARK(BM_CountHurwitz)->Arg(7)->Arg(13)->Arg(27)->Unit(benchmark::kMillisecond);

void BM_CountFree(benchmark::State& state) {
  const auto q = static_cast<std::uint64_t>(state.range(0));
  const phi::Target t(A1, q);
  const auto p = fp::parse_presentation("<a,b | >");
  for (auto _ : state) benchmark::DoNotOptimize(phi::compute_record(p, t).n_phi);
}
BENCHMARK(BM_CountFree)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
