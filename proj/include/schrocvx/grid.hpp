#pragma once

// FFT propagator on a periodic box, the numerical cross-check for the exact
// calculus. The frequency convention matches the transform used by the
// Gaussian calculus (unitary, e^{-i x xi} forward, angular frequencies
// 2 pi k / L with signed k), so Fourier-side weighted norms can be computed
// on the grid directly via grid_fourier.
//
// Aliasing guard: sample() rejects fields whose boundary magnitude exceeds
// 1e-12 of the field maximum. Propagation that spreads the packet beyond
// the guard is the caller's responsibility; the closed-form spread factor
// |1 + 4 i z t|^2 tells the caller how large a box it needs.

#include <iosfwd>
#include <numbers>
#include <vector>

#include "schrocvx/chirped_gaussian.hpp"
#include "schrocvx/errors.hpp"
#include "schrocvx/kernels.hpp"
#include "schrocvx/weights.hpp"

namespace schrocvx {

inline constexpr double kAliasingThreshold = 1e-12;
inline constexpr double kTailThreshold = 1e-10;

struct GridSpec {
    int dim = 1;                // 1 or 2
    std::size_t points = 1024;  // per axis, power of two >= 8
    double box_length = 40.0;   // x_k = -L/2 + k L / N

    double cell() const { return box_length / static_cast<double>(points); }
    double coord(std::size_t k) const {
        return -0.5 * box_length + static_cast<double>(k) * cell();
    }
    // FFT-bin angular frequency 2 pi k'/L with signed k'.
    double freq(std::size_t bin) const;
    std::size_t total() const;
    double cell_volume() const;
    // Spec of grid_fourier's output: same points, box 2 pi N / L.
    GridSpec dual() const { return {dim, points, 2.0 * std::numbers::pi * points / box_length}; }
};

void validate(const GridSpec& spec);

struct GridField {
    GridSpec spec;
    std::vector<kernels::cxd> values;  // row-major; index ix*N + iy for dim 2
    double time_tag = 0.0;
};

// Pointwise evaluation of g on the grid, time_tag 0. Throws
// AliasingGuardError when the boundary magnitude exceeds guard * max.
GridField sample(const ChirpedGaussian& g, const GridSpec& spec,
                 double guard = kAliasingThreshold,
                 kernels::Exec ex = kernels::Exec::parallel);

// Forward transform, multiply by e^{-i t |xi|^2}, invert; preserves the
// discrete L^2 norm to round-off and advances time_tag by t.
GridField fft_propagate(const GridField& f, double t,
                        kernels::Exec ex = kernels::Exec::parallel);

// Discrete approximation of the continuum Fourier transform, returned as a
// field over the frequency grid (increasing xi, box 2 pi N / L).
GridField grid_fourier(const GridField& f, kernels::Exec ex = kernels::Exec::parallel);

// sqrt( sum |f|^2 * cell volume )
double discrete_l2_norm(const GridField& f, kernels::Exec ex = kernels::Exec::parallel);

// || f - sample(g) || / || sample(g) || on f's grid. The caller is expected
// to have propagated g to f.time_tag.
double field_error(const GridField& f, const ChirpedGaussian& g,
                   kernels::Exec ex = kernels::Exec::parallel);

struct GridNormOptions {
    double tail_threshold = kTailThreshold;
    kernels::Exec exec = kernels::Exec::parallel;
};

// log || e^phi f ||_2 by log-sum-exp over cells (overflow-free for phi up to
// several hundred at the hottest cell). Throws TailDominanceError when the
// weighted integrand at the box boundary exceeds tail_threshold * max.
double grid_weighted_log_norm(const GridField& f, const WeightSpec& w,
                              const GridNormOptions& opt = {});

// CSV rows "x,re,im" (dim 1) or "x,y,re,im" (dim 2).
void dump_csv(const GridField& f, std::ostream& os);

}  // namespace schrocvx
