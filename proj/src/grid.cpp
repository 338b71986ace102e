#include "schrocvx/grid.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace schrocvx {

using kernels::cxd;
using kernels::Exec;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Per-axis sample vector exp(-z x_k^2 + c x_k), amplitude folded into axis 0.
std::vector<cxd> axis_samples(const ChirpedGaussian& g, int axis, const GridSpec& spec) {
    std::vector<cxd> v(spec.points);
    const cxd z = g.quad[axis], c = g.lin[axis];
    const cxd amp = (axis == 0) ? g.log_amplitude : cxd{0.0, 0.0};
    for (std::size_t k = 0; k < spec.points; ++k) {
        const double x = spec.coord(k);
        v[k] = std::exp(amp - z * x * x + c * x);
    }
    return v;
}

// Max |value| over all cells and over the boundary ring.
struct RingMax {
    double all;
    double ring;
};

RingMax ring_maxima(const GridField& f) {
    const std::size_t n = f.spec.points;
    RingMax m{0.0, 0.0};
    if (f.spec.dim == 1) {
        for (std::size_t i = 0; i < n; ++i) m.all = std::max(m.all, std::abs(f.values[i]));
        m.ring = std::max(std::abs(f.values[0]), std::abs(f.values[n - 1]));
        return m;
    }
    for (std::size_t ix = 0; ix < n; ++ix)
        for (std::size_t iy = 0; iy < n; ++iy) {
            const double a = std::abs(f.values[ix * n + iy]);
            m.all = std::max(m.all, a);
            if (ix == 0 || iy == 0 || ix == n - 1 || iy == n - 1) m.ring = std::max(m.ring, a);
        }
    return m;
}

// e^{-i t xi^2} per FFT bin.
std::vector<cxd> phase_factors(const GridSpec& spec, double t) {
    std::vector<cxd> p(spec.points);
    for (std::size_t k = 0; k < spec.points; ++k) {
        const double xi = spec.freq(k);
        p[k] = std::polar(1.0, -t * xi * xi);
    }
    return p;
}

void forward_fft(GridField& f, Exec ex) {
    if (f.spec.dim == 1)
        kernels::fft_1d(f.values.data(), f.spec.points, -1);
    else
        kernels::fft_2d(f.values.data(), f.spec.points, -1, ex);
}

void inverse_fft(GridField& f, Exec ex) {
    if (f.spec.dim == 1)
        kernels::fft_1d(f.values.data(), f.spec.points, +1);
    else
        kernels::fft_2d(f.values.data(), f.spec.points, +1, ex);
    kernels::scale(f.values.data(), f.values.size(),
                   1.0 / static_cast<double>(f.values.size()), ex);
}

}  // namespace

double GridSpec::freq(std::size_t bin) const {
    const long long half = static_cast<long long>(points) / 2;
    const long long signed_k =
        static_cast<long long>(bin) < half ? static_cast<long long>(bin)
                                           : static_cast<long long>(bin) - static_cast<long long>(points);
    return 2.0 * std::numbers::pi * static_cast<double>(signed_k) / box_length;
}

std::size_t GridSpec::total() const {
    std::size_t t = points;
    for (int d = 1; d < dim; ++d) t *= points;
    return t;
}

double GridSpec::cell_volume() const {
    double v = cell();
    for (int d = 1; d < dim; ++d) v *= cell();
    return v;
}

void validate(const GridSpec& spec) {
    if (spec.dim != 1 && spec.dim != 2)
        throw std::invalid_argument("GridSpec: dim must be 1 or 2");
    if (spec.points < 8 || !power_of_two(spec.points))
        throw std::invalid_argument("GridSpec: points must be a power of two >= 8");
    if (!(spec.box_length > 0.0))
        throw std::invalid_argument("GridSpec: box_length must be > 0");
}

GridField sample(const ChirpedGaussian& g, const GridSpec& spec, double guard, Exec ex) {
    validate(spec);
    if (g.dim != spec.dim) throw std::invalid_argument("sample: dimension mismatch");
    GridField f{spec, std::vector<cxd>(spec.total()), 0.0};
    const std::vector<cxd> ax = axis_samples(g, 0, spec);
    if (spec.dim == 1) {
        kernels::axis_product_fill(f.values.data(), ax.data(), spec.points, nullptr, 0, ex);
    } else {
        const std::vector<cxd> ay = axis_samples(g, 1, spec);
        kernels::axis_product_fill(f.values.data(), ax.data(), spec.points, ay.data(),
                                   spec.points, ex);
    }
    const RingMax m = ring_maxima(f);
    if (!(m.ring <= guard * m.all))
        throw AliasingGuardError("sample: boundary magnitude " + std::to_string(m.ring) +
                                 " exceeds " + std::to_string(guard) + " of field max " +
                                 std::to_string(m.all));
    return f;
}

GridField fft_propagate(const GridField& f, double t, Exec ex) {
    GridField out = f;
    forward_fft(out, ex);
    const std::vector<cxd> px = phase_factors(out.spec, t);
    if (out.spec.dim == 1)
        kernels::axis_product_multiply(out.values.data(), px.data(), out.spec.points, nullptr,
                                       0, ex);
    else
        kernels::axis_product_multiply(out.values.data(), px.data(), out.spec.points,
                                       px.data(), out.spec.points, ex);
    inverse_fft(out, ex);
    out.time_tag = f.time_tag + t;
    return out;
}

GridField grid_fourier(const GridField& f, Exec ex) {
    GridField work = f;
    forward_fft(work, ex);
    const std::size_t n = f.spec.points;
    GridField out{f.spec.dual(), std::vector<cxd>(f.spec.total()), f.time_tag};
    // fhat(xi_k) = (2 pi)^{-1/2} (L/N) (-1)^m F_{(m + N/2) mod N} per axis,
    // output index m <-> signed bin k' = m - N/2; N/2 is even so
    // (-1)^{k'} = (-1)^m.
    const double unit = f.spec.cell() / std::sqrt(2.0 * std::numbers::pi);
    if (f.spec.dim == 1) {
        for (std::size_t m = 0; m < n; ++m) {
            const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
            out.values[m] = unit * sgn * work.values[(m + n / 2) % n];
        }
        return out;
    }
    for (std::size_t mx = 0; mx < n; ++mx)
        for (std::size_t my = 0; my < n; ++my) {
            const double sgn = ((mx + my) % 2 == 0) ? 1.0 : -1.0;
            out.values[mx * n + my] =
                unit * unit * sgn * work.values[((mx + n / 2) % n) * n + (my + n / 2) % n];
        }
    return out;
}

double discrete_l2_norm(const GridField& f, Exec ex) {
    const double s = kernels::reduce_sum_abs2(f.values.data(), f.values.size(), ex);
    return std::sqrt(s * f.spec.cell_volume());
}

double field_error(const GridField& f, const ChirpedGaussian& g, Exec ex) {
    // Reference values are taken without the aliasing guard: the error
    // itself reports any spread beyond the box.
    const GridField ref = sample(g, f.spec, 1.0, ex);
    const double den = kernels::reduce_sum_abs2(ref.values.data(), ref.values.size(), ex);
    if (den == 0.0) throw GuardError("field_error: reference field vanishes");
    const double num =
        kernels::reduce_sum_abs2_diff(f.values.data(), ref.values.data(), f.values.size(), ex);
    return std::sqrt(num / den);
}

double grid_weighted_log_norm(const GridField& f, const WeightSpec& w,
                              const GridNormOptions& opt) {
    const std::size_t n = f.spec.points;
    const std::size_t total = f.spec.total();
    const double logcell = std::log(f.spec.cell_volume());
    std::vector<double> expo(total);

    if (f.spec.dim == 1) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (opt.exec == kernels::Exec::parallel)
#endif
        for (long long i = 0; i < static_cast<long long>(total); ++i) {
            const double mag = std::abs(f.values[i]);
            if (mag == 0.0) {
                expo[i] = -kInf;
                continue;
            }
            const std::vector<double> x{f.spec.coord(static_cast<std::size_t>(i))};
            expo[i] = 2.0 * weight_log_multiplier(w, x) + 2.0 * std::log(mag) + logcell;
        }
    } else {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (opt.exec == kernels::Exec::parallel)
#endif
        for (long long i = 0; i < static_cast<long long>(total); ++i) {
            const double mag = std::abs(f.values[i]);
            if (mag == 0.0) {
                expo[i] = -kInf;
                continue;
            }
            const std::size_t ix = static_cast<std::size_t>(i) / n;
            const std::size_t iy = static_cast<std::size_t>(i) % n;
            const std::vector<double> x{f.spec.coord(ix), f.spec.coord(iy)};
            expo[i] = 2.0 * weight_log_multiplier(w, x) + 2.0 * std::log(mag) + logcell;
        }
    }

    const double emax = kernels::reduce_max(expo.data(), total, opt.exec);
    if (emax == -kInf) return -kInf;

    // Tail check on the weighted integrand.
    double ring = -kInf;
    if (f.spec.dim == 1) {
        ring = std::max(expo[0], expo[total - 1]);
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            ring = std::max(ring, expo[k]);                  // ix = 0
            ring = std::max(ring, expo[(n - 1) * n + k]);    // ix = n-1
            ring = std::max(ring, expo[k * n]);              // iy = 0
            ring = std::max(ring, expo[k * n + n - 1]);      // iy = n-1
        }
    }
    if (ring > emax + std::log(opt.tail_threshold))
        throw TailDominanceError("grid_weighted_log_norm: boundary integrand exceeds " +
                                 std::to_string(opt.tail_threshold) + " of its maximum");

    const double s = kernels::reduce_sum_exp(expo.data(), total, emax, opt.exec);
    return 0.5 * (emax + std::log(s));
}

void dump_csv(const GridField& f, std::ostream& os) {
    char line[128];
    const std::size_t n = f.spec.points;
    if (f.spec.dim == 1) {
        os << "x,re,im\n";
        for (std::size_t i = 0; i < n; ++i) {
            std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", f.spec.coord(i),
                          f.values[i].real(), f.values[i].imag());
            os << line;
        }
        return;
    }
    os << "x,y,re,im\n";
    for (std::size_t ix = 0; ix < n; ++ix)
        for (std::size_t iy = 0; iy < n; ++iy) {
            const cxd v = f.values[ix * n + iy];
            std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", f.spec.coord(ix),
                          f.spec.coord(iy), v.real(), v.imag());
            os << line;
        }
}

}  // namespace schrocvx
