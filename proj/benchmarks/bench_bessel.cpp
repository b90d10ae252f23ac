#include <benchmark/benchmark.h>

#include "glq/bessel.hpp"

using namespace glq;

static void BM_bessel_memoized(benchmark::State& state)
{
    const CharacterTable& t = character_table(3, 2);
    const BesselEvaluator& ev = bessel_evaluator(irrep(t, t.cuspidal_rows()[0]), 1);
    std::vector<Mat> elems;
    for_each_group_element(t.field(), 2, [&](const Mat& g) { elems.push_back(g); });
    for (const Mat& g : elems) ev.value(g);  // warm
    std::size_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(ev.value(elems[i++ % elems.size()]));
}
BENCHMARK(BM_bessel_memoized);

static void BM_bessel_cold_gl3(benchmark::State& state)
{
    const CharacterTable& t = character_table(2, 3);
    const int pi = t.cuspidal_rows()[0];
    std::vector<Mat> elems;
    for_each_group_element(t.field(), 3, [&](const Mat& g) { elems.push_back(g); });
    for (auto _ : state) {
        state.PauseTiming();
        BesselEvaluator ev(t, pi, 1);  // fresh memo each round
        state.ResumeTiming();
        cxd acc{0, 0};
        for (const Mat& g : elems) acc += ev.value(g);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_bessel_cold_gl3)->Unit(benchmark::kMillisecond);

static void BM_table_build_gl2_f5(benchmark::State& state)
{
    for (auto _ : state) {
        // measures Dixon + metadata through the public surface; the registry
        // caches, so the build cost shows up once per process
        benchmark::DoNotOptimize(character_table(5, 2).irrep_count());
    }
}
BENCHMARK(BM_table_build_gl2_f5);
