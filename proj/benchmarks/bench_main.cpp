#include <benchmark/benchmark.h>

#include "cope/enmf.hpp"
#include "cope/fixtures.hpp"
#include "cope/nnr.hpp"

using namespace cope;
using Q = QuadraticScalar;

static void BM_RankFactorizePentagon(benchmark::State& state) {
    auto pent = fixtures::pentagon();
    for (auto _ : state) {
        auto f = rank_factorize(pent);
        benchmark::DoNotOptimize(f.inner_dim);
    }
}
BENCHMARK(BM_RankFactorizePentagon);

static void BM_ExactShearLp(benchmark::State& state) {
    auto inst = fixtures::capped_pentagon_instance();
    for (auto _ : state) {
        auto cert = decide_nonneg_map(inst.g, inst.b);
        benchmark::DoNotOptimize(cert.verdict);
    }
}
BENCHMARK(BM_ExactShearLp);

static void BM_MinNestedPolygon(benchmark::State& state) {
    auto f = rank_factorize(fixtures::pentagon());
    auto outer = enumerate_vertices(outer_from_effects(f.left, 1)).polytope;
    auto chart = make_span_chart(outer.vertices);
    auto flatten = [&](const Matrix<Q>& pts) {
        std::vector<std::vector<Q>> loc;
        for (std::size_t j = 0; j < pts.cols(); ++j) loc.push_back(chart.to_local(pts.col(j)));
        VPolytope<Q> v;
        v.dim = 2;
        v.vertices = Matrix<Q>::from_columns(loc);
        return v;
    };
    auto outer2d = flatten(outer.vertices);
    auto inner2d = flatten(f.right);
    for (auto _ : state) {
        auto nested = min_nested_polygon_2d(inner2d, outer2d);
        benchmark::DoNotOptimize(nested.k);
    }
}
BENCHMARK(BM_MinNestedPolygon);

static void BM_EnnrPentagonFull(benchmark::State& state) {
    auto pent = fixtures::pentagon();
    for (auto _ : state) {
        auto res = ennr(pent);
        benchmark::DoNotOptimize(res.value);
    }
}
BENCHMARK(BM_EnnrPentagonFull);

static void BM_HeuristicNmfBoxWorld(benchmark::State& state) {
    auto box = fixtures::box_world();
    HeuristicOptions opt;
    opt.restarts = 8;
    opt.iterations = 500;
    for (auto _ : state) {
        auto v = nnr_heuristic_matrix(box.data, 4, opt);
        benchmark::DoNotOptimize(v.answer);
    }
}
BENCHMARK(BM_HeuristicNmfBoxWorld);

BENCHMARK_MAIN();
