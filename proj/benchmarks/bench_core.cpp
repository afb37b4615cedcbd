#include <benchmark/benchmark.h>

#include <cmath>

#include "wslab/fft.hpp"
#include "wslab/multiplier.hpp"
#include "wslab/propagator.hpp"

using namespace wslab;

namespace {

ComplexField test_field(const SpectralGrid& g) {
    ComplexField f(g);
    std::size_t idx = 0;
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            for (int k = 0; k < g.n(); ++k, ++idx) {
                const double r2 = g.coord(i) * g.coord(i) + g.coord(j) * g.coord(j) +
                                  g.coord(k) * g.coord(k);
                f[idx] = complexd(std::exp(-r2), 0.3 * std::exp(-0.5 * r2));
            }
    return f;
}

void bm_fft_roundtrip(benchmark::State& state) {
    SpectralGrid g(static_cast<int>(state.range(0)), 6.0);
    auto f = test_field(g);
    std::vector<complexd> spec(g.size());
    for (auto _ : state) {
        dft_forward(g, f.data(), spec.data());
        dft_inverse(g, spec.data(), f.data());
        benchmark::DoNotOptimize(f.data());
    }
}
BENCHMARK(bm_fft_roundtrip)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

void bm_multiplier(benchmark::State& state) {
    SpectralGrid g(static_cast<int>(state.range(0)), 6.0);
    auto f = test_field(g);
    const auto spec = MultiplierSpec::omega(1.2);
    for (auto _ : state) {
        auto out = apply_multiplier(f, spec);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(bm_multiplier)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

void bm_dilate(benchmark::State& state) {
    SpectralGrid g(static_cast<int>(state.range(0)), 6.0);
    auto f = test_field(g);
    for (auto _ : state) {
        auto out = dilate_sample(f, 1.3);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(bm_dilate)->Arg(32)->Unit(benchmark::kMillisecond);

void bm_galilei_norm(benchmark::State& state) {
    SpectralGrid g(static_cast<int>(state.range(0)), 6.0);
    auto f = test_field(g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(galilei_norm(f, 2.0, 1.2));
    }
}
BENCHMARK(bm_galilei_norm)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    return 0;
}
