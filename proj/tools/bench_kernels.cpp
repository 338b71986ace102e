// Serial vs OpenMP timings for the grid kernels, asserting bit-identical
// results between the two paths.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <vector>

#include "schrocvx/grid.hpp"
#include "schrocvx/kernels.hpp"

using namespace schrocvx;
using kernels::cxd;
using kernels::Exec;

namespace {

double ms_of(const std::function<void()>& fn, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void report(const char* name, double serial, double parallel, bool identical) {
    std::printf("%-24s %10.3f ms %10.3f ms %7.2fx  %s\n", name, serial, parallel,
                serial / parallel, identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main() {
    const std::size_t n = 1024;
    const GridSpec spec{2, n, 60.0};
    const ChirpedGaussian g = ChirpedGaussian::standard(2);

    std::printf("%-24s %13s %13s %8s\n", "kernel (1024x1024)", "serial", "parallel",
                "speedup");

    GridField fs = sample(g, spec, kAliasingThreshold, Exec::serial);
    GridField fp = sample(g, spec, kAliasingThreshold, Exec::parallel);
    report("sample", ms_of([&] { fs = sample(g, spec, 1e-12, Exec::serial); }, 3),
           ms_of([&] { fp = sample(g, spec, 1e-12, Exec::parallel); }, 3),
           fs.values == fp.values);

    std::vector<cxd> as = fs.values, ap = fs.values;
    kernels::fft_2d(as.data(), n, -1, Exec::serial);
    kernels::fft_2d(ap.data(), n, -1, Exec::parallel);
    const bool fft_same = as == ap;
    as = fs.values;
    ap = fs.values;
    report("fft_2d",
           ms_of([&] { kernels::fft_2d(as.data(), n, -1, Exec::serial); }, 3),
           ms_of([&] { kernels::fft_2d(ap.data(), n, -1, Exec::parallel); }, 3), fft_same);

    GridField ps = fft_propagate(fs, 0.5, Exec::serial);
    GridField pp = fft_propagate(fs, 0.5, Exec::parallel);
    report("fft_propagate",
           ms_of([&] { ps = fft_propagate(fs, 0.5, Exec::serial); }, 3),
           ms_of([&] { pp = fft_propagate(fs, 0.5, Exec::parallel); }, 3),
           ps.values == pp.values);

    const WeightSpec w = WeightSpec::make_interaction_gaussian(4.0);
    const double ns = grid_weighted_log_norm(fs, w, {kTailThreshold, Exec::serial});
    const double np = grid_weighted_log_norm(fs, w, {kTailThreshold, Exec::parallel});
    report("weighted_log_norm",
           ms_of([&] { grid_weighted_log_norm(fs, w, {kTailThreshold, Exec::serial}); }, 3),
           ms_of([&] { grid_weighted_log_norm(fs, w, {kTailThreshold, Exec::parallel}); }, 3),
           ns == np);

    std::vector<double> expo(fs.values.size());
    for (std::size_t i = 0; i < expo.size(); ++i)
        expo[i] = -1.0 + std::sin(static_cast<double>(i));
    const double ss = kernels::reduce_sum_exp(expo.data(), expo.size(), 0.0, Exec::serial);
    const double sp = kernels::reduce_sum_exp(expo.data(), expo.size(), 0.0, Exec::parallel);
    report("reduce_sum_exp",
           ms_of([&] { kernels::reduce_sum_exp(expo.data(), expo.size(), 0.0, Exec::serial); },
                 5),
           ms_of([&] { kernels::reduce_sum_exp(expo.data(), expo.size(), 0.0,
                                               Exec::parallel); },
                 5),
           ss == sp);
    return 0;
}
