#include "schrocvx/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace schrocvx::kernels {

namespace {

constexpr std::size_t kChunk = 4096;

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

bool run_parallel(Exec ex) {
#if defined(_OPENMP)
    return ex == Exec::parallel;
#else
    (void)ex;
    return false;
#endif
}

// Pairwise sum of one chunk, fixed association order.
double pairwise(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise(v, half) + pairwise(v + half, n - half);
}

template <class PerChunk>
double chunked_reduce_sum(std::size_t n, Exec ex, PerChunk per_chunk) {
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(chunks, 0.0);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (run_parallel(ex))
#endif
    for (long long c = 0; c < static_cast<long long>(chunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
        const std::size_t hi = std::min(lo + kChunk, n);
        partial[static_cast<std::size_t>(c)] = per_chunk(lo, hi);
    }
    return pairwise(partial.data(), partial.size());
}

}  // namespace

std::vector<cxd> fft_roots(std::size_t n, int sign) {
    std::vector<cxd> roots(n / 2);
    const double base = sign * 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t m = 0; m < n / 2; ++m)
        roots[m] = std::polar(1.0, base * static_cast<double>(m));
    return roots;
}

void fft_line(cxd* a, std::size_t n, const std::vector<cxd>& roots) {
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cxd w = roots[k * stride];
                const cxd u = a[i + k];
                const cxd v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

void fft_1d(cxd* data, std::size_t n, int sign) {
    if (!power_of_two(n)) throw std::invalid_argument("fft: length must be a power of two");
    const std::vector<cxd> roots = fft_roots(n, sign);
    fft_line(data, n, roots);
}

void fft_2d(cxd* data, std::size_t n, int sign, Exec ex) {
    if (!power_of_two(n)) throw std::invalid_argument("fft: length must be a power of two");
    const std::vector<cxd> roots = fft_roots(n, sign);
    const long long nn = static_cast<long long>(n);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (run_parallel(ex))
#endif
    for (long long r = 0; r < nn; ++r) fft_line(data + r * nn, n, roots);
#if defined(_OPENMP)
#pragma omp parallel if (run_parallel(ex))
#endif
    {
        std::vector<cxd> col(n);
#if defined(_OPENMP)
#pragma omp for schedule(static)
#endif
        for (long long c = 0; c < nn; ++c) {
            for (long long r = 0; r < nn; ++r) col[static_cast<std::size_t>(r)] = data[r * nn + c];
            fft_line(col.data(), n, roots);
            for (long long r = 0; r < nn; ++r) data[r * nn + c] = col[static_cast<std::size_t>(r)];
        }
    }
}

void scale(cxd* data, std::size_t count, double factor, Exec ex) {
    const long long n = static_cast<long long>(count);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (run_parallel(ex))
#endif
    for (long long i = 0; i < n; ++i) data[i] *= factor;
}

void axis_product_multiply(cxd* data, const cxd* ax, std::size_t nx, const cxd* ay,
                           std::size_t ny, Exec ex) {
    if (ay == nullptr) {
        const long long n = static_cast<long long>(nx);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (run_parallel(ex))
#endif
        for (long long i = 0; i < n; ++i) data[i] *= ax[i];
        return;
    }
    const long long rows = static_cast<long long>(nx);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (run_parallel(ex))
#endif
    for (long long ix = 0; ix < rows; ++ix) {
        cxd* row = data + ix * static_cast<long long>(ny);
        const cxd fx = ax[ix];
        for (std::size_t iy = 0; iy < ny; ++iy) row[iy] *= fx * ay[iy];
    }
}

void axis_product_fill(cxd* data, const cxd* ax, std::size_t nx, const cxd* ay,
                       std::size_t ny, Exec ex) {
    if (ay == nullptr) {
        const long long n = static_cast<long long>(nx);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (run_parallel(ex))
#endif
        for (long long i = 0; i < n; ++i) data[i] = ax[i];
        return;
    }
    const long long rows = static_cast<long long>(nx);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (run_parallel(ex))
#endif
    for (long long ix = 0; ix < rows; ++ix) {
        cxd* row = data + ix * static_cast<long long>(ny);
        const cxd fx = ax[ix];
        for (std::size_t iy = 0; iy < ny; ++iy) row[iy] = fx * ay[iy];
    }
}

double reduce_max(const double* values, std::size_t n, Exec ex) {
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(chunks, -std::numeric_limits<double>::infinity());
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (run_parallel(ex))
#endif
    for (long long c = 0; c < static_cast<long long>(chunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
        const std::size_t hi = std::min(lo + kChunk, n);
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t i = lo; i < hi; ++i) m = std::max(m, values[i]);
        partial[static_cast<std::size_t>(c)] = m;
    }
    double m = -std::numeric_limits<double>::infinity();
    for (double p : partial) m = std::max(m, p);
    return m;
}

double reduce_sum(const double* values, std::size_t n, Exec ex) {
    return chunked_reduce_sum(n, ex, [&](std::size_t lo, std::size_t hi) {
        return pairwise(values + lo, hi - lo);
    });
}

double reduce_sum_exp(const double* values, std::size_t n, double shift, Exec ex) {
    return chunked_reduce_sum(n, ex, [&](std::size_t lo, std::size_t hi) {
        double buf[kChunk];
        std::size_t m = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            const double e = values[i];
            buf[m++] = std::isfinite(e) ? std::exp(e - shift) : 0.0;
        }
        return pairwise(buf, m);
    });
}

double reduce_sum_abs2(const cxd* values, std::size_t n, Exec ex) {
    return chunked_reduce_sum(n, ex, [&](std::size_t lo, std::size_t hi) {
        double buf[kChunk];
        std::size_t m = 0;
        for (std::size_t i = lo; i < hi; ++i) buf[m++] = std::norm(values[i]);
        return pairwise(buf, m);
    });
}

double reduce_sum_abs2_diff(const cxd* a, const cxd* b, std::size_t n, Exec ex) {
    return chunked_reduce_sum(n, ex, [&](std::size_t lo, std::size_t hi) {
        double buf[kChunk];
        std::size_t m = 0;
        for (std::size_t i = lo; i < hi; ++i) buf[m++] = std::norm(a[i] - b[i]);
        return pairwise(buf, m);
    });
}

}  // namespace schrocvx::kernels
