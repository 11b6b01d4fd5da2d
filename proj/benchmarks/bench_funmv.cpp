#include <benchmark/benchmark.h>

#include "funmv/funmv.hpp"
#include "funmv/generators.hpp"

namespace {

void BM_matmat_poisson(benchmark::State& state) {
    const auto k = static_cast<funmv::index_t>(state.range(0));
    const auto a = funmv::poisson_grid(k);
    auto b = funmv::DenseBlock<double>::ones(a.n, 1);
    funmv::MatvecCounter counter;
    for (auto _ : state) {
        auto y = funmv::matmat(a, b, counter);
        benchmark::DoNotOptimize(y.data.data());
    }
    state.SetItemsProcessed(state.iterations() * a.nnz());
}
BENCHMARK(BM_matmat_poisson)->Arg(32)->Arg(64)->Arg(99);

void BM_funmv_poisson(benchmark::State& state) {
    const auto k = static_cast<funmv::index_t>(state.range(0));
    const double t = static_cast<double>(state.range(1));
    const auto a = funmv::poisson_grid(k);
    const auto b = funmv::DenseBlock<double>::from_column(funmv::b_cos(a.n));
    long long matvecs = 0;
    for (auto _ : state) {
        auto rep = funmv::funmv(t, a, b, funmv::precision_tol(funmv::Precision::dbl),
                                funmv::FunmvOption::from_id(1));
        matvecs = rep.matvecs;
        benchmark::DoNotOptimize(rep.C.data.data());
    }
    state.counters["matvecs"] = static_cast<double>(matvecs);
}
BENCHMARK(BM_funmv_poisson)->Args({32, 10})->Args({64, 10})->Unit(benchmark::kMillisecond);

void BM_funmv_diag_option5(benchmark::State& state) {
    const auto n = static_cast<funmv::index_t>(state.range(0));
    const auto a = funmv::diag_range(n);
    const auto b = funmv::DenseBlock<double>::ones(n, 1);
    for (auto _ : state) {
        auto rep = funmv::funmv(1.0, a, b, funmv::precision_tol(funmv::Precision::dbl),
                                funmv::FunmvOption::from_id(5));
        benchmark::DoNotOptimize(rep.C.data.data());
    }
}
BENCHMARK(BM_funmv_diag_option5)->Arg(100)->Arg(1000);

void BM_spm_reuse(benchmark::State& state) {
    const auto a = funmv::poisson_grid(32);
    const auto b = funmv::DenseBlock<double>::from_column(funmv::b_cos(a.n));
    const double tol = funmv::precision_tol(funmv::Precision::dbl);
    funmv::SelectConfig scfg;
    funmv::MatvecCounter build;
    const auto spm = funmv::build_spm(a, 0.5, tol, scfg, build);
    funmv::FunmvConfig cfg;
    cfg.spm = &spm;
    double t = 0.1;
    for (auto _ : state) {
        auto rep = funmv::funmv(t, a, b, tol, funmv::FunmvOption::from_id(5), cfg);
        benchmark::DoNotOptimize(rep.C.data.data());
    }
}
BENCHMARK(BM_spm_reuse)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
