#include <benchmark/benchmark.h>

#include "glq/classes.hpp"
#include "glq/field.hpp"

using namespace glq;

static void BM_field_mul(benchmark::State& state)
{
    const Field& F = Field::get(3, 2);
    Fel x = 5;
    for (auto _ : state) {
        x = F.mul(x, 7);
        benchmark::DoNotOptimize(x);
        if (x == 0) x = 5;
    }
}
BENCHMARK(BM_field_mul);

static void BM_field_add(benchmark::State& state)
{
    const Field& F = Field::get(5, 2);
    Fel x = 13;
    for (auto _ : state) {
        x = F.add(x, 17);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_field_add);

static void BM_class_label(benchmark::State& state)
{
    const Field& F = Field::get(3, 1);
    std::vector<Mat> elems;
    for_each_group_element(F, 3, [&](const Mat& g) {
        if (elems.size() < 64) elems.push_back(g);
    });
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(class_label(elems[i++ % elems.size()]));
    }
}
BENCHMARK(BM_class_label);

static void BM_class_index_memoized(benchmark::State& state)
{
    const Field& F = Field::get(3, 1);
    const ClassData& cd = ClassData::get(F, 3);
    std::vector<Mat> elems;
    for_each_group_element(F, 3, [&](const Mat& g) {
        if (elems.size() < 64) elems.push_back(g);
    });
    for (const Mat& g : elems) cd.index_of(g);  // warm the memo
    std::size_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(cd.index_of(elems[i++ % elems.size()]));
}
BENCHMARK(BM_class_index_memoized);
