#pragma once

// Exact algebra of complex (chirped) Gaussians
//
//   g(x) = exp( log_amplitude + sum_j ( -quad[j] x_j^2 + lin[j] x_j ) ),
//
// with Re quad[j] > 0 on every axis. The class is closed under the Fourier
// transform, the free Schroedinger flow, heat smoothing, quadratic chirps,
// modulations and pointwise products, so all of these are computed in closed
// form on the coefficients. Amplitudes are kept as complex logarithms;
// norms are returned as logs (weighted norms span hundreds of orders of
// magnitude across parameter sweeps).
//
// Fourier convention (unitary, angular frequency):
//   fhat(xi) = (2 pi)^{-n/2} \int e^{-i x.xi} f(x) dx,
// under which exp(-x^2/2) is a fixed point and the free flow
// u(t) = e^{it Laplacian} u0 acts on the Fourier side as multiplication by
// e^{-it |xi|^2}.
//
// Branch choice: propagate/heat use the principal logarithm of (1 + 4 i z t)
// resp. (1 + 4 delta z). For Re z > 0 the point 1 + 4izt has imaginary part
// 4 t Re z, so it never crosses the negative real axis for t != 0; the
// amplitude factor is continuous on each of t > 0 and t < 0 and equals 1 at
// t = 0.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "schrocvx/errors.hpp"

namespace schrocvx {

using cxd = std::complex<double>;

struct ChirpedGaussian {
    int dim = 1;
    cxd log_amplitude{0.0, 0.0};
    std::vector<cxd> quad;  // z_j, Re z_j > 0, units 1/length^2
    std::vector<cxd> lin;   // c_j, units 1/length

    ChirpedGaussian() : quad{cxd{1.0, 0.0}}, lin{cxd{0.0, 0.0}} {}
    ChirpedGaussian(int n, cxd log_amp, std::vector<cxd> z, std::vector<cxd> c);

    // exp(-z x^2 + c x), one axis.
    static ChirpedGaussian axis1d(cxd z, cxd c = {}, cxd log_amp = {});
    // exp(-|x|^2) in n dimensions.
    static ChirpedGaussian standard(int n);

    double min_decay_rate() const;  // min_j Re z_j
    bool is_radial() const;         // all quad equal and lin zero
};

// Decay-class closure: every operation below preserves Re quad > 0; the
// constructor rejects anything else.
void validate(const ChirpedGaussian& g);

// Exact analytic continuation, returned in log form: real part is the log
// modulus, imaginary part the phase (not reduced mod 2 pi).
cxd evaluate_log(const ChirpedGaussian& g, std::span<const cxd> point);
cxd evaluate(const ChirpedGaussian& g, std::span<const cxd> point);
cxd evaluate_log(const ChirpedGaussian& g, cxd point);  // 1-d convenience
cxd evaluate(const ChirpedGaussian& g, cxd point);

ChirpedGaussian fourier(const ChirpedGaussian& g);
ChirpedGaussian inverse_fourier(const ChirpedGaussian& g);

// Free Schroedinger flow e^{it Laplacian}: per axis
//   z' = z/(1+4izt),  c' = c/(1+4izt),
//   log_amp' = log_amp + i c^2 t/(1+4izt) - (1/2) Log(1+4izt).
ChirpedGaussian propagate(const ChirpedGaussian& g, double t);

// Heat smoothing e^{delta Laplacian}, delta > 0 (Fourier-side multiplication
// by e^{-delta |xi|^2}).
ChirpedGaussian heat(const ChirpedGaussian& g, double delta);

// Multiplication by e^{i tau |x|^2}: z_j -> z_j - i tau.
ChirpedGaussian chirp(const ChirpedGaussian& g, double tau);

// Galilean boost, multiplication by e^{i nu.x}: c_j -> c_j + i nu_j.
ChirpedGaussian boost(const ChirpedGaussian& g, std::span<const double> nu);
ChirpedGaussian boost(const ChirpedGaussian& g, double nu);  // 1-d

ChirpedGaussian multiply(const ChirpedGaussian& g, const ChirpedGaussian& h);

// Convolution (g*h)(x) = \int g(x-y) h(y) dy, computed as
// (2 pi)^{n/2} F^{-1}[ F g . F h ]. For real rates mu, nu this reproduces
//   (pi/(mu+nu))^{n/2} e^{-mu nu/(mu+nu) |x|^2}
// exactly, including the amplitude.
ChirpedGaussian convolve(const ChirpedGaussian& g, const ChirpedGaussian& h);

// Appel (psi-conformal) transform of the initial data:
//   v0(x) = 2^{-n/2} conj(u0hat)(x/2).
// For t > 0 the evolved v satisfies
//   conj(v)(x,t) = (-it)^{-n/2} e^{-i|x|^2/(4t)} u(x/t, 1/t),
// principal branch of (-it)^{-n/2}; applying the transform twice is the
// identity.
ChirpedGaussian appel(const ChirpedGaussian& u0);

// u0 (x) tensor v0 (y): concatenates axes into one Gaussian of dimension
// u.dim + v.dim.
ChirpedGaussian tensor_product(const ChirpedGaussian& u, const ChirpedGaussian& v);

// Log of the unweighted L^2 norm.
double log_l2_norm(const ChirpedGaussian& g);

// JSON wire format, field names fixed:
// {"dim": n, "log_amp": [re, im], "quad": [[re,im],...], "lin": [[re,im],...]}
std::string to_json(const ChirpedGaussian& g);
ChirpedGaussian gaussian_from_json(const std::string& text);

}  // namespace schrocvx
