// Serial reference vs OpenMP kernels: superoperator products and sweep points.

#include <benchmark/benchmark.h>

#include <vector>

#include "tripart/kernels.hpp"
#include "tripart/model.hpp"
#include "tripart/sweep.hpp"

namespace {

tripart::CsrMatrix liouvillian_csr(int levels) {
    tripart::SystemParams p = tripart::default_params();
    p.delta = 100.0;
    p.j_coupling = 100.0;
    return tripart::CsrMatrix::from(
        tripart::build_liouvillian(p, tripart::HilbertSpace(levels, levels)).matrix);
}

template <auto Kernel>
void BM_Spmv(benchmark::State& state) {
    const tripart::CsrMatrix a = liouvillian_csr(static_cast<int>(state.range(0)));
    std::vector<tripart::cplx> x(static_cast<std::size_t>(a.cols), tripart::cplx(1.0, 0.5));
    std::vector<tripart::cplx> y(static_cast<std::size_t>(a.rows));
    for (auto _ : state) {
        Kernel(a, x, y);
        benchmark::DoNotOptimize(y.data());
    }
    state.counters["nnz"] = static_cast<double>(a.nonzeros());
    state.counters["threads"] = tripart::kernel_threads();
    state.SetItemsProcessed(state.iterations() * static_cast<long>(a.nonzeros()));
}

void spmv_serial(const tripart::CsrMatrix& a, std::span<const tripart::cplx> x,
                 std::span<tripart::cplx> y) {
    tripart::spmv_serial(a, x, y);
}
void spmv_parallel(const tripart::CsrMatrix& a, std::span<const tripart::cplx> x,
                   std::span<tripart::cplx> y) {
    tripart::spmv_parallel(a, x, y);
}

BENCHMARK(BM_Spmv<spmv_serial>)->Name("spmv/serial")->Arg(3)->Arg(5)->Arg(8);
BENCHMARK(BM_Spmv<spmv_parallel>)->Name("spmv/parallel")->Arg(3)->Arg(5)->Arg(8);

void BM_Sweep(benchmark::State& state, tripart::Execution exec) {
    tripart::SweepConfig c;
    c.axis = tripart::SweepAxis::delta;
    for (int i = 0; i < 16; ++i) c.axis_values.push_back(-0.5 + i / 15.0);
    c.truncation = {4, 4};
    c.check_truncation = false;
    for (auto _ : state) {
        auto r = tripart::run_sweep(c, exec);
        benchmark::DoNotOptimize(r.rows.data());
    }
    state.counters["points"] = static_cast<double>(c.axis_values.size());
}

BENCHMARK_CAPTURE(BM_Sweep, serial, tripart::Execution::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Sweep, parallel, tripart::Execution::parallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
