#pragma once

// Data-parallel building blocks behind the grid propagator and the weighted
// norm reductions. Each kernel takes an Exec policy: Exec::serial is the
// reference path kept for tests and the kernel benchmark, Exec::parallel
// runs the same arithmetic with OpenMP worksharing. Both paths produce
// bit-identical results: reductions use fixed-size chunks combined pairwise
// in index order, and FFT lines are always transformed by the same serial
// routine (parallelism is across lines).

#include <complex>
#include <cstddef>
#include <vector>

namespace schrocvx::kernels {

using cxd = std::complex<double>;

enum class Exec { serial, parallel };

// Root table e^{sign * 2 pi i m / n}, m = 0..n/2-1.
std::vector<cxd> fft_roots(std::size_t n, int sign);

// In-place radix-2 transform of one contiguous line; n a power of two.
// sign = -1: forward sum_j f_j e^{-2 pi i jk/n}; sign = +1: unscaled inverse.
void fft_line(cxd* data, std::size_t n, const std::vector<cxd>& roots);

// Single 1-d transform (one line; serial by construction).
void fft_1d(cxd* data, std::size_t n, int sign);

// n x n row-major 2-d transform: all rows, then all columns.
void fft_2d(cxd* data, std::size_t n, int sign, Exec ex);

void scale(cxd* data, std::size_t count, double factor, Exec ex);

// data[ix*ny + iy] *= ax[ix] * ay[iy]; pass ay == nullptr for the 1-d case
// data[i] *= ax[i].
void axis_product_multiply(cxd* data, const cxd* ax, std::size_t nx, const cxd* ay,
                           std::size_t ny, Exec ex);

// data[ix*ny + iy] = ax[ix] * ay[iy] (outer product fill; ay nullable as above).
void axis_product_fill(cxd* data, const cxd* ax, std::size_t nx, const cxd* ay,
                       std::size_t ny, Exec ex);

// Deterministic reductions (chunked pairwise, identical for both Exec).
double reduce_max(const double* values, std::size_t n, Exec ex);
double reduce_sum(const double* values, std::size_t n, Exec ex);
// sum_i exp(values[i] - shift); -inf entries contribute zero.
double reduce_sum_exp(const double* values, std::size_t n, double shift, Exec ex);
double reduce_sum_abs2(const cxd* values, std::size_t n, Exec ex);
double reduce_sum_abs2_diff(const cxd* a, const cxd* b, std::size_t n, Exec ex);

}  // namespace schrocvx::kernels
