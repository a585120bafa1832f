#include <benchmark/benchmark.h>

#include "parabarrier/coercivity.hpp"
#include "parabarrier/operators.hpp"
#include "parabarrier/schemes.hpp"

using namespace parabarrier;

static void BM_PucciEval(benchmark::State& state) {
  Operator op = make_pucci_minus(1.0, 3.0, 1.0, static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  Vec p = random_vector(rng, op.dim);
  SymMat x = random_symmetric(rng, op.dim);
  for (auto _ : state) benchmark::DoNotOptimize(op.eval(p, x));
}
BENCHMARK(BM_PucciEval)->Arg(2)->Arg(4)->Arg(8);

static void BM_SphereExtrema(benchmark::State& state) {
  Operator op = make_pseudo_p(3.0, 0.0, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(sphere_extrema(op, 1.5, static_cast<int>(state.range(0)), 25));
}
BENCHMARK(BM_SphereExtrema)->Arg(512)->Arg(4096);

static void BM_SchemeSweep(benchmark::State& state) {
  GridGeometry geom = GridGeometry::box(64, 64, {0.0, 0.0}, {1.0, 1.0});
  std::vector<double> u(geom.nodes());
  for (int i = 0; i < geom.n1; ++i)
    for (int j = 0; j < geom.n2; ++j) {
      Vec x = geom.position(i, j);
      u[geom.idx(i, j)] = std::sin(3.0 * x[0]) * std::cos(2.0 * x[1]);
    }
  SchemeKey key = static_cast<SchemeKey>(state.range(0));
  Operator op = key == SchemeKey::Inf
                    ? make_inf_laplacian(2)
                    : key == SchemeKey::PLap ? make_p_laplacian_variant(1.0, 1.0, 2)
                                             : make_pucci_minus(1.0, 3.0, 1.0, 2);
  SchemeContext ctx = make_scheme_context(key, op);
  for (auto _ : state) {
    double acc = 0.0;
    for (int i = 1; i < geom.n1 - 1; ++i)
      for (int j = 1; j < geom.n2 - 1; ++j)
        acc += apply_scheme(ctx, geom, u, i, j).H;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_SchemeSweep)->Arg(0)->Arg(1)->Arg(2);

BENCHMARK_MAIN();
