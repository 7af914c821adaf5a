#include <benchmark/benchmark.h>

#include <random>

#include "sortnet/digraph.hpp"
#include "sortnet/oracle.hpp"
#include "sortnet/random_instances.hpp"
#include "sortnet/rspp_t1.hpp"
#include "sortnet/treewidth.hpp"

namespace {

sortnet::Digraph random_graph(int n, int edges, unsigned seed) {
  std::mt19937 rng(seed);
  sortnet::Digraph d(n);
  int added = 0;
  while (added < edges) {
    int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
    if (u != v && d.add_edge(u, v)) ++added;
  }
  return d;
}

void BM_transitive_closure(benchmark::State& state) {
  auto d = random_graph(static_cast<int>(state.range(0)), static_cast<int>(3 * state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(sortnet::transitive_closure(d));
}
BENCHMARK(BM_transitive_closure)->Arg(64)->Arg(128)->Arg(256);

void BM_oracle_small_rspp(benchmark::State& state) {
  std::mt19937 rng(2);
  sortnet::RandomInstanceSpec spec;
  spec.vertices = 6;
  spec.edges = 8;
  spec.commodities = 3;
  spec.variant = sortnet::Variant::RSPP;
  spec.target = 1;
  auto instance = sortnet::random_instance(rng, spec);
  for (auto _ : state) benchmark::DoNotOptimize(sortnet::solve_exact(instance));
}
BENCHMARK(BM_oracle_small_rspp);

void BM_target1_solver(benchmark::State& state) {
  std::mt19937 rng(3);
  sortnet::RandomInstanceSpec spec;
  spec.vertices = static_cast<int>(state.range(0));
  spec.edges = 2 * spec.vertices;
  spec.commodities = spec.vertices / 2;
  spec.variant = sortnet::Variant::RSPP;
  spec.target = 1;
  auto instance = sortnet::random_instance(rng, spec);
  for (auto _ : state) benchmark::DoNotOptimize(sortnet::solve_rspp_target1(instance));
}
BENCHMARK(BM_target1_solver)->Arg(16)->Arg(32)->Arg(64);

void BM_validator(benchmark::State& state) {
  std::mt19937 rng(4);
  sortnet::RandomInstanceSpec spec;
  spec.vertices = static_cast<int>(state.range(0));
  spec.edges = 2 * spec.vertices;
  spec.commodities = 4;
  spec.variant = sortnet::Variant::RSPP;
  spec.target = 3;
  auto instance = sortnet::random_instance(rng, spec);
  for (auto _ : state)
    benchmark::DoNotOptimize(sortnet::validate_solution(instance, instance.graph));
}
BENCHMARK(BM_validator)->Arg(32)->Arg(128);

void BM_twdp_bounded(benchmark::State& state) {
  std::mt19937 rng(5);
  auto instance = sortnet::random_bounded_instance(rng, 8, 3, sortnet::Variant::RSPP_PL, 2, 3, 3);
  auto td = sortnet::build_nice_tree_decomposition(instance.graph);
  for (auto _ : state) benchmark::DoNotOptimize(sortnet::solve_twdp(instance, td));
}
BENCHMARK(BM_twdp_bounded);

}  // namespace

BENCHMARK_MAIN();
