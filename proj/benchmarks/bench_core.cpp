#include <benchmark/benchmark.h>

#include "sqc/checks.hpp"
#include "sqc/dini.hpp"
#include "sqc/expr.hpp"
#include "sqc/minimize.hpp"
#include "sqc/modulus.hpp"

using namespace sqc;

namespace {

SampleSpec bench_spec() {
  SampleSpec s;
  s.n_random = 200;
  s.grid_per_axis = 9;
  s.t_grid = 7;
  return s;
}

void BM_expr_parse(benchmark::State& state) {
  for (auto _ : state) {
    auto ast = expr::parse("(x1-1)^2*(x1-3)^2 - 9 + sin(x1)/2", 1);
    benchmark::DoNotOptimize(ast);
  }
}
BENCHMARK(BM_expr_parse);

void BM_expr_eval(benchmark::State& state) {
  auto ast = expr::parse("(x1-1)^2*(x1-3)^2 - 9 + sin(x1)/2", 1);
  Vec p{1.7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(expr::eval_ast(ast, p));
    p[0] += 1e-9;
  }
}
BENCHMARK(BM_expr_eval);

void BM_dini_estimate(benchmark::State& state) {
  auto f = catalog_entry("example1_g");
  Vec x{1.3}, a{1.0};
  for (auto _ : state) benchmark::DoNotOptimize(dini(f, x, a));
}
BENCHMARK(BM_dini_estimate);

void BM_check_definition(benchmark::State& state) {
  auto f = catalog_entry("sq_norm");
  auto q = make_query(f, {-0.7}, {0.9}, 0.375);
  for (auto _ : state) benchmark::DoNotOptimize(check_definition(f, q, 2.0));
}
BENCHMARK(BM_check_definition);

void BM_run_suite_definition(benchmark::State& state) {
  auto f = catalog_entry("sq_norm");
  for (auto _ : state) {
    auto suite = run_suite(f, {Condition::Definition}, 2.0, bench_spec());
    benchmark::DoNotOptimize(suite.total_failed());
  }
}
BENCHMARK(BM_run_suite_definition);

void BM_modulus_definition(benchmark::State& state) {
  auto f = catalog_entry("sq_norm");
  for (auto _ : state) benchmark::DoNotOptimize(modulus_definition(f, bench_spec()));
}
BENCHMARK(BM_modulus_definition);

void BM_minimize_segment(benchmark::State& state) {
  auto f = catalog_entry("sq_norm");
  auto seg = restrict_to_segment(f, {-1.0}, {0.8});
  for (auto _ : state) benchmark::DoNotOptimize(minimize_segment(seg, 1e-6));
}
BENCHMARK(BM_minimize_segment);

}  // namespace

BENCHMARK_MAIN();
