#pragma once

// Hardy / Beurling-Hoermander uncertainty bookkeeping on the Gaussian class:
// decay-class exponents on both sides of the transform, the sharp-product
// classification, complex-extension bounds, and the closed-form parameter
// maps for the decay-class algebra under products, flows and chirps.

#include <limits>
#include <utility>

#include "schrocvx/chirped_gaussian.hpp"
#include "schrocvx/quadrature.hpp"

namespace schrocvx {

// Decay class O_{p,q}(A1; A2): e^{A1|x|^2} f in L^p and e^{A2|xi|^2} fhat
// in L^q. a1_sup/a2_sup are the suprema of admissible exponents (the
// boundary itself is excluded for every p, see hardy_classify's docs);
// m = a1_sup * a2_sup is the uncertainty product.
struct OpqClass {
    double a1_sup;
    double a2_sup;
    double p;
    double q;
    double m;
};

OpqClass opq_class(const ChirpedGaussian& g, double p, double q);

// true iff e^{rate |x|^2} g in L^p, i.e. rate < min_j Re quad[j]. The
// boundary rate = min_j Re quad[j] is classified as NOT a member for all p,
// including p = inf with a nonzero linear term.
bool weighted_lp_membership(const ChirpedGaussian& g, double rate, double p);

enum class HardyClass { forced_zero, extremal, admissible };

// p = q = inf: forced_zero iff a1 a2 > 1/4, extremal iff = 1/4.
// At least one exponent finite: forced_zero iff a1 a2 >= 1/4 (1-d
// Cowling-Price refinement, applied in all dimensions). No extremal class
// when an exponent is finite.
HardyClass hardy_classify(double a1, double a2, double p, double q);

// |g(x+iy)| <= exp(log_n) * exp(-a|x|^2 + b|y|^2) at every complex point.
struct ComplexBound {
    double log_n;
    double a;
    double b;

    double log_bound(std::span<const cxd> point) const;
};

// a = (1-slack) min_j Re z_j; the cross term 2 Im z_j x_j y_j and the linear
// terms are absorbed with budget (slack/2) Re z_j each, which puts their
// completed squares into b and log_n. slack -> 0 on a real Gaussian gives
// b -> Re z exactly.
ComplexBound complex_bound_params(const ChirpedGaussian& g, double slack = 0.5);

// Decay-class parameters of e^{it Laplacian} h for h = O_2(c1; c2):
//   ( c1 c2 / (c2 + 4|t| sqrt(c1 c2) + 4 t^2 c1),  c2 ).
std::pair<double, double> lemma_params_d(double c1, double c2, double t);

// Decay-class parameters of e^{-i tau |x|^2} h:
//   ( c1,  c1 c2 / (c1 + 4|tau| sqrt(c1 c2) + 4 tau^2 c2) ).
// The chirp is unimodular, so the space-side exponent is unchanged; at
// tau = 0 the pair degenerates to (c1, c2).
std::pair<double, double> lemma_params_e(double c1, double c2, double tau);

// Class of data whose flow lies in L^2(e^{2 mu_1 |x|^2}) at time 0 and in
// L^2(e^{2 mu_2 |x|^2}) at time s > 0:
//   ( 4 s^2 mu_2,  4 s^2 mu_1 mu_2 / (mu_1 + 2 sqrt(mu_1 mu_2) + mu_2) ).
std::pair<double, double> corollary_2_1_params(double mu1, double mu2, double s);

// log of  intint |g(x)| |ghat(xi)| e^{|x xi|} dx dxi  for 1-d g, evaluated
// on expanding boxes [-R,R]^2, R in {5,10,20,40}; +inf when the box sequence
// still grows by more than factor 1.5 at the last doubling (the integrand
// of any nonzero Gaussian is critical or growing along some ray, so the
// divergent branch is the generic one). QuadratureError is reported
// distinctly from divergence.
double beurling_functional(const ChirpedGaussian& g, double rel_tol = 1e-8);

}  // namespace schrocvx
