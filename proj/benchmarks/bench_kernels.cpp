#include <benchmark/benchmark.h>

#include "reclab/ramsey.hpp"
#include "reclab/returnset.hpp"
#include "reclab/witness.hpp"

using namespace reclab;

namespace {

TorusScalar rat(std::int64_t n, std::int64_t d) {
  return TorusScalar::rational(make_rat(n, d));
}
SystemPoint pt(std::vector<TorusScalar> c) { return SystemPoint::torus(std::move(c)); }

void BM_generate_sg(benchmark::State& state) {
  std::vector<std::int64_t> terms;
  std::int64_t v = 1;
  for (int i = 0; i < state.range(0); ++i) terms.push_back(v += 2 * i + 1);
  auto p = SequenceSpec::explicit_terms(terms);
  for (auto _ : state) {
    auto w = generate_sg(p, 2);
    benchmark::DoNotOptimize(w);
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}
BENCHMARK(BM_generate_sg)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

void BM_generate_fs(benchmark::State& state) {
  std::vector<std::int64_t> terms;
  for (int i = 0; i < state.range(0); ++i) terms.push_back(3 * i + 1);
  auto p = SequenceSpec::explicit_terms(terms);
  for (auto _ : state) {
    auto w = generate_fs(p);
    benchmark::DoNotOptimize(w);
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}
BENCHMARK(BM_generate_fs)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

void BM_return_set_rational(benchmark::State& state) {
  auto sys = SystemSpec::weyl_affine(2, rat(1, 4));
  auto origin = pt({rat(0, 1), rat(0, 1)});
  auto ball = Neighborhood::ball(origin, make_rat(1, 10));
  std::int64_t hi = state.range(0);
  for (auto _ : state) {
    auto rs = return_set(sys, origin, ball, 0, hi);
    benchmark::DoNotOptimize(rs);
  }
  state.SetItemsProcessed(state.iterations() * (hi + 1));
}
BENCHMARK(BM_return_set_rational)->Arg(10000)->Arg(100000)->Arg(1000000);

void BM_return_set_fixed(benchmark::State& state) {
  auto sys = SystemSpec::weyl_affine(2, TorusScalar::from_cf(parse_cf("sqrt2m1")));
  auto x = pt({rat(0, 1), rat(0, 1)});
  auto ball = Neighborhood::ball(pt({rat(0, 1), rat(1, 2)}), make_rat(1, 10));
  std::int64_t hi = state.range(0);
  for (auto _ : state) {
    auto rs = return_set(sys, x, ball, 1, hi);
    benchmark::DoNotOptimize(rs);
  }
  state.SetItemsProcessed(state.iterations() * hi);
}
BENCHMARK(BM_return_set_fixed)->Arg(10000)->Arg(100000)->Arg(1000000);

void BM_fs_witness_search(benchmark::State& state) {
  auto rot = SystemSpec::rotation(TorusScalar::from_cf(parse_cf("golden")));
  auto origin = pt({rat(0, 1)});
  std::int64_t hi = state.range(0);
  auto target =
      return_set(rot, origin, Neighborhood::ball(origin, make_rat(3, 20)), 1, hi)
          .definite;
  SearchBudget b;
  b.lo = 1;
  b.hi = hi;
  for (auto _ : state) {
    auto res = find_fs_witness(target, 3, b);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_fs_witness_search)->Arg(1000)->Arg(10000);

void BM_exhaustive_separation(benchmark::State& state) {
  // no witness exists: the search sweeps every candidate pair
  auto rot = SystemSpec::rotation(TorusScalar::from_cf(parse_cf("golden")));
  auto x = pt({rat(0, 1)});
  auto y = pt({rat(1, 2)});
  std::int64_t hi = state.range(0);
  SearchBudget b;
  b.lo = 1;
  b.hi = hi;
  for (auto _ : state) {
    auto res = rp_witness(rot, x, y, 1, make_rat(1, 10), b);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_exhaustive_separation)->Arg(10000)->Arg(100000);

void BM_triple_search_flagship(benchmark::State& state) {
  auto p = make_super_lacunary(3, 3, static_cast<int>(state.range(0)));
  std::int64_t hi = 1;
  for (int i = 0; i <= state.range(0); ++i) hi *= 3;
  auto lw = partition_sg2(p, 1, hi);
  for (auto _ : state) {
    auto res = find_monochromatic_triple(lw);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_triple_search_flagship)->Arg(10)->Arg(12)->Arg(14);

}  // namespace

BENCHMARK_MAIN();
