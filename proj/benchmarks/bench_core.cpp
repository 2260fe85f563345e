#include <benchmark/benchmark.h>

#include <map>
#include <sstream>

#include "shuttle/intercept_model.hpp"
#include "shuttle/rla_predictor.hpp"
#include "shuttle/synthetic.hpp"

using namespace shuttle;

namespace {

const Dataset& data(std::size_t n) {
    static std::map<std::size_t, Dataset> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, generate_synthetic(default_generator_config(), n, 1)).first;
    return it->second;
}

void BM_FitRlaModels(benchmark::State& state) {
    const auto& ds = data(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(fit_rla_models(ds));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FitRlaModels)->Arg(1776)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_FitInterceptModels(benchmark::State& state) {
    const auto& ds = data(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(fit_intercept_models(ds));
}
BENCHMARK(BM_FitInterceptModels)->Arg(1776)->Unit(benchmark::kMillisecond);

void BM_PredictProba(benchmark::State& state) {
    const auto models = fit_rla_models(data(1776));
    const auto row = rla_indicator_row(models.design, SlaArea::Middle, FootFirst::Left, GripType::Forehand);
    for (auto _ : state) benchmark::DoNotOptimize(predict_proba(*models.left.fit, row));
}
BENCHMARK(BM_PredictProba);

void BM_LoadCsv(benchmark::State& state) {
    std::ostringstream out;
    write_csv(out, data(static_cast<std::size_t>(state.range(0))));
    const auto text = out.str();
    for (auto _ : state) {
        std::istringstream in(text);
        benchmark::DoNotOptimize(load_csv(in));
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_LoadCsv)->Arg(1776)->Arg(20000);

void BM_GenerateSynthetic(benchmark::State& state) {
    const auto config = default_generator_config();
    for (auto _ : state) benchmark::DoNotOptimize(generate_synthetic(config, 10000, 1));
}
BENCHMARK(BM_GenerateSynthetic)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
