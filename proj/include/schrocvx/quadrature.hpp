#pragma once

// Adaptive Gauss-Kronrod (7-15) quadrature on finite intervals, plus a
// log-domain driver for integrands given as exp of an exponent function
// (keeps sweeps with exponents of magnitude several hundred overflow-free).

#include <functional>

namespace schrocvx {

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_depth = 48;
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt = {});

// log of  int_a^b exp(E(x)) dx.  The exponent maximum is located by a coarse
// scan plus local refinement and factored out before integrating.
double log_integrate_exp(const std::function<double(double)>& exponent, double a, double b,
                         const QuadOptions& opt = {});

// Truncation radius for exp(E(x)) on [0, inf) or (-inf, 0]: smallest
// scanned R with E(sign*R) <= peak - drop and E decreasing past the peak.
double truncation_radius(const std::function<double(double)>& exponent, double sign,
                         double initial = 1.0, double drop = 60.0);

}  // namespace schrocvx
