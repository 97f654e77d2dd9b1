// OpenMP kernels against their serial twins.

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "chartscribe/color.hpp"
#include "chartscribe/ingestion.hpp"
#include "chartscribe/kernels.hpp"

namespace cs = chartscribe;

namespace {

std::vector<cs::color::LabColor> random_labs(std::size_t n) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> byte(0, 255);
    std::vector<cs::color::LabColor> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(cs::color::srgb_to_lab(cs::color::Rgb8{static_cast<std::uint8_t>(byte(rng)),
                                                              static_cast<std::uint8_t>(byte(rng)),
                                                              static_cast<std::uint8_t>(byte(rng))}));
    }
    return out;
}

// Wide table: one ordered x column and `vars` random walks of `rows` points.
cs::ChartBundle wide_bundle(std::size_t vars, std::size_t rows) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> step(0.0, 1.0);
    std::string csv = "x";
    for (std::size_t v = 0; v < vars; ++v) csv += ",v" + std::to_string(v);
    csv += "\n";
    std::vector<double> level(vars, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        csv += std::to_string(r);
        for (auto& y : level) {
            y += step(rng);
            csv += "," + std::to_string(y);
        }
        csv += "\n";
    }
    cs::ChartBundle b;
    b.metadata.id = "bench";
    b.metadata.title = "bench";
    b.metadata.chart_type = cs::ChartType::Line;
    b.table = cs::ingest::parse_data_table(csv);
    return b;
}

std::vector<std::string> variable_names(std::size_t vars) {
    std::vector<std::string> out;
    for (std::size_t v = 0; v < vars; ++v) out.push_back("v" + std::to_string(v));
    return out;
}

void BM_NearestColors(benchmark::State& state) {
    const auto queries = random_labs(static_cast<std::size_t>(state.range(0)));
    const auto& palette = cs::color::css3_palette();
    for (auto _ : state) benchmark::DoNotOptimize(cs::kernels::nearest_colors(queries, palette));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_NearestColorsSerial(benchmark::State& state) {
    const auto queries = random_labs(static_cast<std::size_t>(state.range(0)));
    const auto& palette = cs::color::css3_palette();
    for (auto _ : state) benchmark::DoNotOptimize(cs::kernels::nearest_colors_serial(queries, palette));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FactsForVariables(benchmark::State& state) {
    const auto vars = static_cast<std::size_t>(state.range(0));
    const auto bundle = wide_bundle(vars, 2000);
    const auto names = variable_names(vars);
    for (auto _ : state) benchmark::DoNotOptimize(cs::kernels::facts_for_variables(bundle, names, {}));
}

void BM_FactsForVariablesSerial(benchmark::State& state) {
    const auto vars = static_cast<std::size_t>(state.range(0));
    const auto bundle = wide_bundle(vars, 2000);
    const auto names = variable_names(vars);
    for (auto _ : state) benchmark::DoNotOptimize(cs::kernels::facts_for_variables_serial(bundle, names, {}));
}

}  // namespace

BENCHMARK(BM_NearestColors)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK(BM_NearestColorsSerial)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK(BM_FactsForVariables)->Arg(4)->Arg(32);
BENCHMARK(BM_FactsForVariablesSerial)->Arg(4)->Arg(32);

BENCHMARK_MAIN();
