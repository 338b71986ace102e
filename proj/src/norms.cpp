#include "schrocvx/norms.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace schrocvx {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// log int exp(-a x^2 + b x) dx, a > 0.
double log_gauss_integral(double a, double b) {
    return 0.5 * std::log(kPi / a) + b * b / (4.0 * a);
}

// log int exp(E(x)) dx over the whole line, E eventually dominated by its
// -a x^2 term; truncated where E drops 60 below the peak.
double log_line_integral(const std::function<double(double)>& E, const QuadOptions& quad) {
    const double rp = truncation_radius(E, +1.0);
    const double rm = truncation_radius(E, -1.0);
    return log_integrate_exp(E, -rm, rp, quad);
}

double per_axis_gaussian_rate(const WeightSpec& w, int axis) {
    switch (w.kind) {
        case WeightKind::gaussian_iso: return 1.0 / (w.scale * w.scale);
        case WeightKind::gaussian_aniso: return w.gamma[axis] / (w.scale * w.scale);
        default: return 0.0;
    }
}

// Exponent -1/2 w^T M w + beta^T w of one (x_j, y_j) interaction pair, with
// the weight's r (x-y)^2 term already folded in.
struct PairForm {
    double m11, m22, m12, b1, b2;

    static PairForm interaction(const ChirpedGaussian& g, int j, int m, double r) {
        PairForm f;
        f.m11 = 4.0 * g.quad[j].real() - 2.0 * r;
        f.m22 = 4.0 * g.quad[m + j].real() - 2.0 * r;
        f.m12 = 2.0 * r;
        f.b1 = 2.0 * g.lin[j].real();
        f.b2 = 2.0 * g.lin[m + j].real();
        return f;
    }

    bool positive_definite() const { return m11 > 0.0 && m11 * m22 - m12 * m12 > 0.0; }

    // log int exp(-1/2 w^T M w + beta^T w) dw over R^2
    double log_mass() const {
        const double d = m11 * m22 - m12 * m12;
        const double q = (m22 * b1 * b1 - 2.0 * m12 * b1 * b2 + m11 * b2 * b2) / d;
        return std::log(2.0 * kPi) - 0.5 * std::log(d) + 0.5 * q;
    }
};

}  // namespace

bool weighted_norm_finite(const ChirpedGaussian& g, const WeightSpec& w) {
    switch (w.kind) {
        case WeightKind::linear:
        case WeightKind::interaction_distance:
            return true;
        case WeightKind::gaussian_iso:
        case WeightKind::gaussian_aniso: {
            if (w.kind == WeightKind::gaussian_aniso &&
                w.gamma.size() != static_cast<std::size_t>(g.dim))
                throw std::invalid_argument("weight: gamma dimension mismatch");
            for (int j = 0; j < g.dim; ++j)
                if (per_axis_gaussian_rate(w, j) >= g.quad[j].real()) return false;
            return true;
        }
        case WeightKind::power_axis: {
            if (w.gamma.size() != static_cast<std::size_t>(g.dim))
                throw std::invalid_argument("weight: gamma dimension mismatch");
            for (int j = 0; j < g.dim; ++j)
                if (w.p_axis[j] == 2.0 &&
                    w.gamma[j] / (w.scale * w.scale) >= g.quad[j].real())
                    return false;
            return true;
        }
        case WeightKind::power_radial:
            if (w.p == 2.0) return 1.0 / (w.scale * w.scale) < g.min_decay_rate();
            return true;
        case WeightKind::interaction_gaussian: {
            if (g.dim % 2 != 0)
                throw std::invalid_argument("interaction weight needs even dimension");
            const int m = g.dim / 2;
            const double r = 2.0 / (w.scale * w.scale);
            for (int j = 0; j < m; ++j)
                if (!PairForm::interaction(g, j, m, r).positive_definite()) return false;
            return true;
        }
    }
    throw std::logic_error("weighted_norm_finite: bad enum");
}

double weighted_l2_log_norm(const ChirpedGaussian& g, const WeightSpec& w,
                            const QuadOptions& quad) {
    if (is_interaction(w))
        throw UnsupportedWeightError(
            "weighted_l2_log_norm: interaction weights require the tensor facade");

    const double A0 = 2.0 * g.log_amplitude.real();

    switch (w.kind) {
        case WeightKind::linear: {
            if (w.lambda.size() != static_cast<std::size_t>(g.dim))
                throw std::invalid_argument("weight: lambda dimension mismatch");
            double s = A0;
            for (int j = 0; j < g.dim; ++j) {
                const double a = 2.0 * g.quad[j].real();
                const double b = 2.0 * g.lin[j].real() + 2.0 * w.lambda[j] / w.scale;
                s += log_gauss_integral(a, b);
            }
            return 0.5 * s;
        }
        case WeightKind::gaussian_iso:
        case WeightKind::gaussian_aniso: {
            if (!weighted_norm_finite(g, w)) return kInf;
            double s = A0;
            for (int j = 0; j < g.dim; ++j) {
                const double a = 2.0 * (g.quad[j].real() - per_axis_gaussian_rate(w, j));
                const double b = 2.0 * g.lin[j].real();
                s += log_gauss_integral(a, b);
            }
            return 0.5 * s;
        }
        case WeightKind::power_axis: {
            if (w.gamma.size() != static_cast<std::size_t>(g.dim))
                throw std::invalid_argument("weight: gamma dimension mismatch");
            if (!weighted_norm_finite(g, w)) return kInf;
            double s = A0;
            for (int j = 0; j < g.dim; ++j) {
                const double a = 2.0 * g.quad[j].real();
                const double b = 2.0 * g.lin[j].real();
                const double gam = w.gamma[j], p = w.p_axis[j], sc = w.scale;
                if (p == 2.0) {
                    s += log_gauss_integral(a - 2.0 * gam / (sc * sc), b);
                } else {
                    auto E = [&](double x) {
                        return 2.0 * gam * std::pow(std::abs(x / sc), p) - a * x * x + b * x;
                    };
                    s += log_line_integral(E, quad);
                }
            }
            return 0.5 * s;
        }
        case WeightKind::power_radial: {
            if (g.dim == 1)
                return weighted_l2_log_norm(
                    g, WeightSpec::make_power_axis({w.p}, {1.0}, w.scale), quad);
            if (w.p == 2.0)
                return weighted_l2_log_norm(g, WeightSpec::make_gaussian_iso(w.scale), quad);
            if (!g.is_radial())
                throw UnsupportedWeightError(
                    "power_radial with dim >= 2 requires a radial Gaussian");
            const double a = 2.0 * g.quad[0].real();
            const int n = g.dim;
            auto E = [&](double r) {
                if (r <= 0.0) return -kInf;
                return 2.0 * std::pow(r / w.scale, w.p) - a * r * r + (n - 1) * std::log(r);
            };
            const double rmax = truncation_radius(E, +1.0);
            const double log_surface =
                std::log(2.0) + 0.5 * n * std::log(kPi) - std::lgamma(0.5 * n);
            return 0.5 * (A0 + log_surface + log_integrate_exp(E, 0.0, rmax, quad));
        }
        default:
            throw UnsupportedWeightError("weighted_l2_log_norm: unsupported kind");
    }
}

double exact_weighted_log_norm(const ChirpedGaussian& g, const WeightSpec& w,
                               const QuadOptions& quad) {
    if (!is_interaction(w)) return weighted_l2_log_norm(g, w, quad);
    if (g.dim % 2 != 0)
        throw std::invalid_argument("interaction weight needs even dimension");
    const int m = g.dim / 2;
    const double A0 = 2.0 * g.log_amplitude.real();

    if (w.kind == WeightKind::interaction_gaussian) {
        const double r = 2.0 / (w.scale * w.scale);  // coefficient of (x-y)^2 in 2 phi
        double s = A0;
        for (int j = 0; j < m; ++j) {
            const PairForm f = PairForm::interaction(g, j, m, r);
            if (!f.positive_definite()) return kInf;
            s += f.log_mass();
        }
        return 0.5 * s;
    }

    // interaction_distance: || |x-y| g ||^2 = (prod_j mass_j) sum_j E[(x_j - y_j)^2]
    double s = A0;
    double second_moment = 0.0;
    for (int j = 0; j < m; ++j) {
        const double a1 = 2.0 * g.quad[j].real(), b1 = 2.0 * g.lin[j].real();
        const double a2 = 2.0 * g.quad[m + j].real(), b2 = 2.0 * g.lin[m + j].real();
        s += log_gauss_integral(a1, b1) + log_gauss_integral(a2, b2);
        const double mean_diff = b1 / (2.0 * a1) - b2 / (2.0 * a2);
        second_moment += mean_diff * mean_diff + 0.5 / a1 + 0.5 / a2;
    }
    return 0.5 * (s + std::log(second_moment));
}

double exact_weighted_log_norm(const ChirpedGaussian& u, const ChirpedGaussian& v,
                               const WeightSpec& w, const QuadOptions& quad) {
    return exact_weighted_log_norm(tensor_product(u, v), w, quad);
}

ProbeBand power_weight_constant_probe(double p, double x_lo, double x_hi, int samples,
                                      const QuadOptions& quad) {
    if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("probe: p must lie in (1,2]");
    if (samples < 2 || !(x_hi > x_lo)) throw std::invalid_argument("probe: bad x range");
    const double pp = p / (p - 1.0);
    ProbeBand band{kInf, -kInf};
    for (int i = 0; i < samples; ++i) {
        const double x = x_lo + (x_hi - x_lo) * i / (samples - 1);
        auto E = [&](double lam) {
            const double al = std::abs(lam);
            if (al == 0.0 && pp > 2.0) return -kInf;
            const double weight_term = (pp == 2.0) ? 0.0 : 0.5 * (pp - 2.0) * std::log(al);
            return lam * x - std::pow(al, pp) / pp + weight_term;
        };
        const double rp = truncation_radius(E, +1.0, std::max(1.0, std::abs(x)));
        const double rm = truncation_radius(E, -1.0, std::max(1.0, std::abs(x)));
        const double log_integral = log_integrate_exp(E, -rm, rp, quad);
        const double ratio = std::exp(log_integral - std::pow(std::abs(x), p) / p);
        band.c_low = std::min(band.c_low, ratio);
        band.c_high = std::max(band.c_high, ratio);
    }
    if (!(band.c_low > 0.0) || !std::isfinite(band.c_high))
        throw QuadratureError("power_weight_constant_probe: ratio left (0, inf)");
    return band;
}

}  // namespace schrocvx
