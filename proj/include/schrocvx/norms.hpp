#pragma once

// Exponentially weighted L^2 norms of chirped Gaussians, evaluated in closed
// form where the weight is linear or Gaussian (completed-square integrals)
// and by adaptive quadrature for the sub-Gaussian power weights. Every norm
// is returned as a log; +inf signals divergence.

#include "schrocvx/chirped_gaussian.hpp"
#include "schrocvx/quadrature.hpp"
#include "schrocvx/weights.hpp"

namespace schrocvx {

// ||e^phi g||_2 for the single-solution weight kinds (linear, gaussian_iso,
// gaussian_aniso, power_axis, power_radial). Gaussian kinds return +inf
// exactly when the weight rate on some axis reaches Re quad[j]; radial power
// weights with dim >= 2 require a radial Gaussian (UnsupportedWeightError
// otherwise); interaction kinds are rejected here (see exact_weighted_log_norm).
double weighted_l2_log_norm(const ChirpedGaussian& g, const WeightSpec& w,
                            const QuadOptions& quad = {});

// Facade over weighted_l2_log_norm extended to the interaction weights on
// tensor Gaussians of even dimension, pairing coordinate j with j + dim/2.
// interaction_gaussian is a coupled completed-square integral per pair;
// interaction_distance is evaluated exactly through second moments.
double exact_weighted_log_norm(const ChirpedGaussian& g, const WeightSpec& w,
                               const QuadOptions& quad = {});
double exact_weighted_log_norm(const ChirpedGaussian& u, const ChirpedGaussian& v,
                               const WeightSpec& w, const QuadOptions& quad = {});

// Finiteness of ||e^phi g||_2 by rate arithmetic alone (no integral): the
// Gaussian-kind weight rate on every axis must stay below Re quad[j].
bool weighted_norm_finite(const ChirpedGaussian& g, const WeightSpec& w);

// Empirical band of the one-dimensional power-weight constant: min and max
// over x in [x_lo, x_hi] of
//   int_R exp(lambda x - |lambda|^{p'}/p') |lambda|^{(p'-2)/2} dlambda
//   / exp(|x|^p / p),
// where 1/p + 1/p' = 1. For p = 2 the ratio is exactly sqrt(2 pi).
struct ProbeBand {
    double c_low;
    double c_high;
};
ProbeBand power_weight_constant_probe(double p, double x_lo, double x_hi, int samples = 33,
                                      const QuadOptions& quad = {});

}  // namespace schrocvx
