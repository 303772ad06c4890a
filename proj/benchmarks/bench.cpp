#include <benchmark/benchmark.h>

#include "opbeam/optics.hpp"
#include "opbeam/orbit.hpp"
#include "opbeam/rflink.hpp"
#include "opbeam/scenario.hpp"

namespace {

using namespace opbeam;

void BM_HcwPropagate(benchmark::State& state) {
    const double n = orbit::mean_motion(orbit::CentralBody{}, orbit::OrbitSpec{});
    const orbit::HcwState start{30.0, -40.0, 25.0, 0.01, -0.02, 0.015};
    double t = 0.0;
    for (auto _ : state) {
        t = t < 5000.0 ? t + 1.0 : 0.0;
        benchmark::DoNotOptimize(orbit::hcw_propagate(start, n, t));
    }
}
BENCHMARK(BM_HcwPropagate);

void BM_CaptureStaticFlatTop(benchmark::State& state) {
    const optics::OpticalTxSpec tx{};
    const optics::ReceiverSpec rx{};
    double offset = 0.0;
    for (auto _ : state) {
        offset = offset < 0.08 ? offset + 1e-4 : 0.0;
        benchmark::DoNotOptimize(optics::capture_fraction_static(tx, rx, offset));
    }
}
BENCHMARK(BM_CaptureStaticFlatTop);

void BM_CaptureStaticGaussian(benchmark::State& state) {
    optics::OpticalTxSpec tx{};
    tx.profile = optics::BeamProfile::gaussian;
    const optics::ReceiverSpec rx{};
    double offset = 0.0;
    for (auto _ : state) {
        offset = offset < 0.08 ? offset + 1e-4 : 0.0;
        benchmark::DoNotOptimize(optics::capture_fraction_static(tx, rx, offset));
    }
}
BENCHMARK(BM_CaptureStaticGaussian);

void BM_CaptureJittered(benchmark::State& state) {
    const optics::OpticalTxSpec tx{};
    const optics::ReceiverSpec rx{};
    const optics::JitterSpec jitter{};
    const auto samples = static_cast<std::int64_t>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            optics::capture_fraction_jittered(tx, rx, jitter, samples, seed++));
    }
    state.SetItemsProcessed(state.iterations() * samples);
}
BENCHMARK(BM_CaptureJittered)->Arg(1000)->Arg(100000);

void BM_EvaluateRfLink(benchmark::State& state) {
    const rflink::RfLinkSpec spec{};
    for (auto _ : state) {
        benchmark::DoNotOptimize(rflink::evaluate_rf_link(spec));
    }
}
BENCHMARK(BM_EvaluateRfLink);

void BM_LoadScenario(benchmark::State& state) {
    const std::string text = scenario::baseline_scenario_text();
    for (auto _ : state) {
        benchmark::DoNotOptimize(scenario::load_scenario(text));
    }
}
BENCHMARK(BM_LoadScenario);

void BM_EvaluateScenario(benchmark::State& state) {
    const scenario::MissionScenario mission = scenario::load_scenario("{}");
    for (auto _ : state) {
        benchmark::DoNotOptimize(scenario::evaluate(mission));
    }
}
BENCHMARK(BM_EvaluateScenario);

void BM_RenderMachine(benchmark::State& state) {
    const scenario::MissionReport report = scenario::evaluate(scenario::load_scenario("{}"));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            scenario::render_report(report, scenario::ReportFormat::machine));
    }
}
BENCHMARK(BM_RenderMachine);

}  // namespace

BENCHMARK_MAIN();
