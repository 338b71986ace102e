#include "schrocvx/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace schrocvx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct LogAbsPoly {
    // log|g(x)| = q0 + q1 x - q2 x^2 on the real line
    double q0, q1, q2;

    static LogAbsPoly of(const ChirpedGaussian& g) {
        return {g.log_amplitude.real(), g.lin[0].real(), g.quad[0].real()};
    }
    double operator()(double x) const { return q0 + q1 * x - q2 * x * x; }
};

double log_sum_exp2(double a, double b) {
    const double m = std::max(a, b);
    if (m == -kInf) return m;
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

OpqClass opq_class(const ChirpedGaussian& g, double p, double q) {
    OpqClass c;
    c.a1_sup = g.min_decay_rate();
    c.a2_sup = fourier(g).min_decay_rate();
    c.p = p;
    c.q = q;
    c.m = c.a1_sup * c.a2_sup;
    return c;
}

bool weighted_lp_membership(const ChirpedGaussian& g, double rate, double p) {
    if (!(rate > 0.0)) throw std::invalid_argument("membership: rate must be > 0");
    if (!(p >= 1.0)) throw std::invalid_argument("membership: p must be >= 1");
    return rate < g.min_decay_rate();
}

HardyClass hardy_classify(double a1, double a2, double p, double q) {
    if (!(a1 > 0.0 && a2 > 0.0))
        throw std::invalid_argument("hardy_classify: exponents must be > 0");
    const double m = a1 * a2;
    const bool both_infinite = std::isinf(p) && std::isinf(q);
    if (both_infinite) {
        if (m > 0.25) return HardyClass::forced_zero;
        if (m == 0.25) return HardyClass::extremal;
        return HardyClass::admissible;
    }
    return m >= 0.25 ? HardyClass::forced_zero : HardyClass::admissible;
}

double ComplexBound::log_bound(std::span<const cxd> point) const {
    double x2 = 0.0, y2 = 0.0;
    for (const cxd& w : point) {
        x2 += w.real() * w.real();
        y2 += w.imag() * w.imag();
    }
    return log_n - a * x2 + b * y2;
}

ComplexBound complex_bound_params(const ChirpedGaussian& g, double slack) {
    if (!(slack > 0.0 && slack < 1.0))
        throw std::invalid_argument("complex_bound_params: slack must lie in (0,1)");
    ComplexBound bound;
    bound.a = (1.0 - slack) * g.min_decay_rate();
    bound.b = 0.0;
    bound.log_n = g.log_amplitude.real();
    for (int j = 0; j < g.dim; ++j) {
        const double re = g.quad[j].real(), im = g.quad[j].imag();
        const double eps = 0.5 * slack * re;  // budget per absorbed term
        bound.b = std::max(bound.b, re + im * im / eps + eps);
        bound.log_n += std::norm(g.lin[j]) / (4.0 * eps);
    }
    return bound;
}

std::pair<double, double> lemma_params_d(double c1, double c2, double t) {
    if (!(c1 > 0.0 && c2 > 0.0)) throw std::invalid_argument("lemma_params: need c1, c2 > 0");
    const double at = std::abs(t);
    const double denom = c2 + 4.0 * at * std::sqrt(c1 * c2) + 4.0 * t * t * c1;
    return {c1 * c2 / denom, c2};
}

std::pair<double, double> lemma_params_e(double c1, double c2, double tau) {
    if (!(c1 > 0.0 && c2 > 0.0)) throw std::invalid_argument("lemma_params: need c1, c2 > 0");
    const double at = std::abs(tau);
    const double denom = c1 + 4.0 * at * std::sqrt(c1 * c2) + 4.0 * tau * tau * c2;
    return {c1, c1 * c2 / denom};
}

std::pair<double, double> corollary_2_1_params(double mu1, double mu2, double s) {
    if (!(mu1 > 0.0 && mu2 > 0.0 && s > 0.0))
        throw std::invalid_argument("corollary_2_1_params: need positive arguments");
    const double first = 4.0 * s * s * mu2;
    const double second =
        4.0 * s * s * mu1 * mu2 / (mu1 + 2.0 * std::sqrt(mu1 * mu2) + mu2);
    return {first, second};
}

double beurling_functional(const ChirpedGaussian& g, double rel_tol) {
    if (g.dim != 1) throw std::invalid_argument("beurling_functional: 1-d only");
    const LogAbsPoly lf = LogAbsPoly::of(g);
    const LogAbsPoly lh = LogAbsPoly::of(fourier(g));

    QuadOptions inner_opt{rel_tol, 0.0, 40};
    QuadOptions outer_opt{rel_tol, 0.0, 40};

    // log of the quadrant integral over [0,R]^2 with sign pattern (sx, sv)
    auto log_quadrant = [&](double R, double sx, double sv) {
        auto outer_exponent = [&](double u) {
            auto inner_exponent = [&](double v) { return lh(sv * v) + u * v; };
            return lf(sx * u) + log_integrate_exp(inner_exponent, 0.0, R, inner_opt);
        };
        return log_integrate_exp(outer_exponent, 0.0, R, outer_opt);
    };

    auto log_box = [&](double R) {
        double acc = -kInf;
        for (double sx : {-1.0, 1.0})
            for (double sv : {-1.0, 1.0}) acc = log_sum_exp2(acc, log_quadrant(R, sx, sv));
        return acc;
    };

    // Expanding boxes; divergent when the last doubling still grows the
    // value by more than factor 1.5.
    const double radii[4] = {5.0, 10.0, 20.0, 40.0};
    double logs[4];
    for (int i = 0; i < 4; ++i) logs[i] = log_box(radii[i]);
    if (logs[3] - logs[2] > std::log(1.5)) return kInf;
    return logs[3];
}

}  // namespace schrocvx
