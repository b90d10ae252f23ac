#include <benchmark/benchmark.h>

#include "glq/gamma.hpp"

using namespace glq;

static void BM_shahidi_gamma_2_1(benchmark::State& state)
{
    const CharacterTable& t2 = character_table(3, 2);
    const CharacterTable& t1 = character_table(3, 1);
    const IrrepHandle pi = irrep(t2, t2.cuspidal_rows()[0]);
    const IrrepHandle chi = irrep(t1, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(shahidi_gamma(pi, chi, 1).value);
}
BENCHMARK(BM_shahidi_gamma_2_1);

static void BM_shahidi_gamma_3_3(benchmark::State& state)
{
    const CharacterTable& t3 = character_table(3, 3);
    const auto gens = t3.generic_rows();
    const IrrepHandle pi = irrep(t3, gens[0]);
    const IrrepHandle sg = irrep(t3, gens[1]);
    for (auto _ : state)
        benchmark::DoNotOptimize(shahidi_gamma(pi, sg, 1).value);
}
BENCHMARK(BM_shahidi_gamma_3_3)->Unit(benchmark::kMicrosecond);

static void BM_intertwining_oracle_2_1(benchmark::State& state)
{
    const CharacterTable& t2 = character_table(3, 2);
    const CharacterTable& t1 = character_table(3, 1);
    const IrrepHandle pi = irrep(t2, t2.cuspidal_rows()[0]);
    const IrrepHandle chi = irrep(t1, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(gamma_intertwining_oracle(pi, chi, 1).value);
}
BENCHMARK(BM_intertwining_oracle_2_1);

static void BM_two_block_kloosterman(benchmark::State& state)
{
    const CharacterTable& t = character_table(3, 3);
    const IrrepHandle pi = irrep(t, t.cuspidal_rows()[0]);
    for (auto _ : state)
        benchmark::DoNotOptimize(two_block_special_value(pi, 2, 1));
}
BENCHMARK(BM_two_block_kloosterman);
