// Serial reference kernels against their OpenMP versions.
#include <benchmark/benchmark.h>

#include "iskp/calibration.hpp"
#include "iskp/thermo.hpp"
#include "iskp/validation.hpp"

using namespace iskp;

namespace {

SpectrumContext h2_context() {
    return make_context(lookup_molecule("H2", MoleculeDatabase::builtin()), UnitSystem{}, -1, physical_convention());
}

SweepSpec beta_sweep(int points) {
    SweepSpec s;
    s.grid = log_grid(0.1, 5.0, points);
    return s;
}

VerifyScope small_scope() {
    VerifyScope v;
    v.molecules = {"H2", "LiH"};
    v.cbars = {-1, 0};
    v.ms = {0, 1};
    v.fields = {FieldConfig{}};
    v.convention = physical_convention();
    v.N = 2000;
    return v;
}

void BM_SweepSerial(benchmark::State& st) {
    const auto ctx = h2_context();
    const auto spec = beta_sweep(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(sweep(ctx, spec));
}

void BM_SweepParallel(benchmark::State& st) {
    const auto ctx = h2_context();
    const auto spec = beta_sweep(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(sweep_parallel(ctx, spec));
}

void BM_VerifySerial(benchmark::State& st) {
    const auto scope = small_scope();
    for (auto _ : st) benchmark::DoNotOptimize(verify_closed_form(scope, MoleculeDatabase::builtin(), UnitSystem{}));
}

void BM_VerifyParallel(benchmark::State& st) {
    const auto scope = small_scope();
    for (auto _ : st)
        benchmark::DoNotOptimize(verify_closed_form_parallel(scope, MoleculeDatabase::builtin(), UnitSystem{}));
}

} // namespace

BENCHMARK(BM_SweepSerial)->Arg(30)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(30)->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
