#include "schrocvx/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "schrocvx/errors.hpp"
#include "schrocvx/kernels.hpp"

namespace schrocvx {

namespace {

constexpr double kPi = std::numbers::pi;

double real_inner(const Vec& a, const Vec& b) { return b.dot(a).real(); }

double trace_H(const Vec& f) { return f.squaredNorm(); }

double trace_D(const Vec& f, const Mat& S) { return f.dot(S * f).real(); }

double trace_N(const Vec& f, const Mat& S) { return trace_D(f, S) / trace_H(f); }

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double kB5[7] = {35.0 / 384,     0.0,  500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kB4[7] = {5179.0 / 57600,  0.0,          7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

using Rhs = std::function<Vec(double, const Vec&)>;

// One adaptive segment [t0, t1].
Vec integrate_segment(Vec y, double t0, double t1, const Rhs& rhs, double tol) {
    if (t1 == t0) return y;
    const double span = t1 - t0;
    double t = t0;
    double h = span / 16.0;
    Vec k[7];
    int guard = 0;
    while (t < t1) {
        if (++guard > 2'000'000)
            throw StepSizeUnderflowError("evolve: step budget exhausted");
        h = std::min(h, t1 - t);
        k[0] = rhs(t, y);
        Vec stage;
        for (int i = 1; i < 7; ++i) {
            stage = y;
            for (int j = 0; j < i; ++j)
                if (kA[i][j] != 0.0) stage += (h * kA[i][j]) * k[j];
            k[i] = rhs(t + kC[i] * h, stage);
        }
        Vec y5 = y, y4 = y;
        for (int i = 0; i < 7; ++i) {
            if (kB5[i] != 0.0) y5 += (h * kB5[i]) * k[i];
            if (kB4[i] != 0.0) y4 += (h * kB4[i]) * k[i];
        }
        double err = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const double scale =
                tol + tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            const double e = std::abs(y5[i] - y4[i]) / scale;
            err += e * e;
        }
        err = std::sqrt(err / static_cast<double>(y.size()));
        if (err <= 1.0) {
            t += h;
            y.swap(y5);
        }
        const double factor =
            std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
        h *= factor;
        if (!(h > std::abs(span) * 1e-14))
            throw StepSizeUnderflowError("evolve: step size underflow");
    }
    return y;
}

Rhs make_rhs(const OperatorPair& ops, const std::function<Vec(double)>& forcing) {
    return [&ops, forcing](double t, const Vec& y) {
        Vec r = ops.symmetric(t) * y + ops.antisymmetric(t) * y;
        if (forcing) r += forcing(t);
        return r;
    };
}

// States at an arbitrary increasing set of times, one integration sweep.
std::vector<Vec> states_at(const Vec& f0, const OperatorPair& ops,
                           const std::vector<double>& ts, double tol,
                           const std::function<Vec(double)>& forcing) {
    const Rhs rhs = make_rhs(ops, forcing);
    std::vector<Vec> out;
    out.reserve(ts.size());
    Vec y = f0;
    out.push_back(y);
    for (std::size_t i = 1; i < ts.size(); ++i) {
        y = integrate_segment(y, ts[i - 1], ts[i], rhs, tol);
        out.push_back(y);
    }
    return out;
}

double richardson_slope(double m_h, double p_h, double m_h2, double p_h2, double h) {
    const double d_h = (p_h - m_h) / (2.0 * h);
    const double d_h2 = (p_h2 - m_h2) / h;
    return (4.0 * d_h2 - d_h) / 3.0;
}

}  // namespace

OperatorPair OperatorPair::constant(const Mat& s, const Mat& a) {
    OperatorPair ops;
    ops.dimension = static_cast<int>(s.rows());
    const Mat zero = Mat::Zero(s.rows(), s.cols());
    ops.symmetric = [s](double) { return s; };
    ops.antisymmetric = [a](double) { return a; };
    ops.symmetric_dt = [zero](double) { return zero; };
    return ops;
}

void OperatorPair::check_symmetry(double t, double tol) const {
    const Mat s = symmetric(t);
    const Mat a = antisymmetric(t);
    const double ds = (s - s.adjoint()).norm();
    const double da = (a + a.adjoint()).norm();
    if (ds > tol * (1.0 + s.norm()))
        throw std::invalid_argument("OperatorPair: S(t) is not Hermitian");
    if (da > tol * (1.0 + a.norm()))
        throw std::invalid_argument("OperatorPair: A(t) is not anti-Hermitian");
}

void write_csv(const FrequencyTrace& trace, std::ostream& os) {
    os << "t,H,D,N\n";
    char line[160];
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", trace.times[i],
                      trace.H[i], trace.D[i], trace.N[i]);
        os << line;
    }
}

FrequencyTrace evolve(const Vec& f0, const OperatorPair& ops, const std::vector<double>& times,
                      double local_tol, const std::function<Vec(double)>& forcing) {
    if (times.size() < 1) throw std::invalid_argument("evolve: need at least one time");
    if (!(f0.norm() > 0.0)) throw std::invalid_argument("evolve: f0 must be nonzero");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1])
            throw std::invalid_argument("evolve: times must be increasing");
    ops.check_symmetry(times.front());
    ops.check_symmetry(times.back());

    FrequencyTrace trace;
    trace.times = times;
    trace.states = states_at(f0, ops, times, local_tol, forcing);
    trace.H.resize(times.size());
    trace.D.resize(times.size());
    trace.N.resize(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const Mat s = ops.symmetric(times[i]);
        trace.H[i] = trace_H(trace.states[i]);
        trace.D[i] = trace_D(trace.states[i], s);
        trace.N[i] = trace.D[i] / trace.H[i];
    }
    return trace;
}

double check_identity_2_2a(const std::function<Vec(double)>& f,
                           const std::function<Vec(double)>& dtf, const OperatorPair& ops,
                           double t, double h) {
    const Mat S = ops.symmetric(t);
    const Mat A = ops.antisymmetric(t);
    const Mat St = ops.symmetric_dt(t);
    const Vec ft = f(t);
    const Vec dft = dtf(t);
    const double H = trace_H(ft);

    const Vec commutator = St * ft + S * (A * ft) - A * (S * ft);
    const Vec gp = dft - A * ft + S * ft;
    const Vec gm = dft - A * ft - S * ft;
    const double term1 = real_inner(commutator, ft) / H;
    const double term2 =
        0.5 * (gp.squaredNorm() * H - std::pow(real_inner(gp, ft), 2)) / (H * H);
    const double term3 =
        0.5 * (std::pow(real_inner(gm, ft), 2) - gm.squaredNorm() * H) / (H * H);
    const double rhs = term1 + term2 + term3;

    auto N_at = [&](double tt) { return trace_N(f(tt), ops.symmetric(tt)); };
    const double ndot = richardson_slope(N_at(t - h), N_at(t + h), N_at(t - 0.5 * h),
                                         N_at(t + 0.5 * h), h);
    return std::abs(ndot - rhs) / std::max({1.0, std::abs(ndot), std::abs(rhs)});
}

std::vector<double> ndot_lower_bound_margins(const Vec& f0, const OperatorPair& ops,
                                             const std::vector<double>& times, double h,
                                             double local_tol,
                                             const std::function<Vec(double)>& forcing) {
    // One integration sweep through the union of all stencil points.
    std::vector<double> stencil;
    for (double t : times)
        for (double dt : {-h, -0.5 * h, 0.0, 0.5 * h, h}) stencil.push_back(t + dt);
    std::sort(stencil.begin(), stencil.end());
    stencil.erase(std::unique(stencil.begin(), stencil.end()), stencil.end());
    if (stencil.front() < 0.0)
        throw std::invalid_argument("ndot_lower_bound_margins: stencil leaves [0, inf)");
    std::vector<double> sweep;
    sweep.push_back(0.0);
    for (double t : stencil)
        if (t > 0.0) sweep.push_back(t);
    const std::vector<Vec> states = states_at(f0, ops, sweep, local_tol, forcing);
    auto state_at = [&](double t) -> const Vec& {
        const auto it = std::lower_bound(sweep.begin(), sweep.end(), t - 1e-15);
        return states[static_cast<std::size_t>(it - sweep.begin())];
    };
    auto N_at = [&](double t) { return trace_N(state_at(t), ops.symmetric(t)); };

    std::vector<double> margins;
    margins.reserve(times.size());
    for (double t : times) {
        const Mat S = ops.symmetric(t);
        const Mat A = ops.antisymmetric(t);
        const Mat St = ops.symmetric_dt(t);
        const Vec& ft = state_at(t);
        const double H = trace_H(ft);
        const Vec commutator = St * ft + S * (A * ft) - A * (S * ft);
        double bound = real_inner(commutator, ft) / H;
        if (forcing) {
            const Vec g = forcing(t);  // dtf - Sf - Af along the perturbed flow
            bound -= 0.5 * g.squaredNorm() * ft.squaredNorm() / (H * H);
        }
        const double ndot = richardson_slope(N_at(t - h), N_at(t + h), N_at(t - 0.5 * h),
                                             N_at(t + 0.5 * h), h);
        margins.push_back(ndot - bound);
    }
    return margins;
}

std::vector<double> hdot_residuals(const Vec& f0, const OperatorPair& ops,
                                   const std::vector<double>& times, double h,
                                   double local_tol) {
    std::vector<double> sweep;
    sweep.push_back(0.0);
    for (double t : times)
        for (double dt : {-h, -0.5 * h, 0.0, 0.5 * h, h})
            if (t + dt > 0.0) sweep.push_back(t + dt);
    std::sort(sweep.begin(), sweep.end());
    sweep.erase(std::unique(sweep.begin(), sweep.end()), sweep.end());
    const std::vector<Vec> states = states_at(f0, ops, sweep, local_tol, {});
    auto state_at = [&](double t) -> const Vec& {
        const auto it = std::lower_bound(sweep.begin(), sweep.end(), t - 1e-15);
        return states[static_cast<std::size_t>(it - sweep.begin())];
    };
    auto H_at = [&](double t) { return trace_H(state_at(t)); };

    std::vector<double> residuals;
    residuals.reserve(times.size());
    for (double t : times) {
        const double hdot = richardson_slope(H_at(t - h), H_at(t + h), H_at(t - 0.5 * h),
                                             H_at(t + 0.5 * h), h);
        const double d2 = 2.0 * trace_D(state_at(t), ops.symmetric(t));
        residuals.push_back(std::abs(hdot - d2) / std::max(std::abs(d2), std::abs(hdot)));
    }
    return residuals;
}

CarlemanResult check_carleman_expansion(const std::function<Vec(double)>& f,
                                        const std::function<Vec(double)>& dtf,
                                        const OperatorPair& ops, double t0, double t1,
                                        int quad_order) {
    std::vector<double> nodes, weights;
    gauss_legendre(quad_order, nodes, weights);

    double i_full = 0.0, i_anti = 0.0, i_sym = 0.0, i_comm = 0.0;
    double min_eig = std::numeric_limits<double>::infinity();
    for (int q = 0; q < quad_order; ++q) {
        const double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * nodes[q];
        const double w = 0.5 * (t1 - t0) * weights[q];
        const Mat S = ops.symmetric(t);
        const Mat A = ops.antisymmetric(t);
        const Mat St = ops.symmetric_dt(t);
        const Vec ft = f(t);
        const Vec dft = dtf(t);
        const Vec sf = S * ft;
        const Vec residual_full = dft - sf - A * ft;
        const Vec residual_anti = dft - A * ft;
        i_full += w * residual_full.squaredNorm();
        i_anti += w * residual_anti.squaredNorm();
        i_sym += w * sf.squaredNorm();
        const Mat comm = St + S * A - A * S;
        i_comm += w * real_inner(comm * ft, ft);
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (comm + Mat(comm.adjoint())));
        min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    }
    const double d0 = trace_D(f(t0), ops.symmetric(t0));
    const double d1 = trace_D(f(t1), ops.symmetric(t1));

    CarlemanResult out;
    out.boundary_correction = d1 - d0;
    const double rhs = i_anti + i_sym + i_comm - out.boundary_correction;
    out.residual = std::abs(i_full - rhs) / std::max({1.0, i_full, std::abs(rhs)});
    out.commutator_min_eigenvalue = min_eig;
    out.inequality_holds = i_anti + i_sym <= i_full + 1e-10 * std::max(1.0, i_full);
    return out;
}

SurrogateResult gaussian_surrogate_check(const SurrogateConfig& cfg) {
    if (cfg.points > 512)
        throw std::invalid_argument("gaussian_surrogate_check: points must be <= 512");
    if (cfg.times.size() < 3)
        throw std::invalid_argument("gaussian_surrogate_check: need at least three times");
    GridSpec spec{1, cfg.points, cfg.box_length};
    validate(spec);
    const std::size_t n = spec.points;

    // Dense spectral derivative matrices via transform of identity columns.
    Mat d1 = Mat::Zero(n, n), d2 = Mat::Zero(n, n);
    std::vector<kernels::cxd> col(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(col.begin(), col.end(), kernels::cxd{0.0, 0.0});
        col[j] = 1.0;
        kernels::fft_1d(col.data(), n, -1);
        std::vector<kernels::cxd> c1(n), c2(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double xi = spec.freq(k);
            c1[k] = col[k] * kernels::cxd{0.0, xi};
            c2[k] = col[k] * (-xi * xi);
        }
        kernels::fft_1d(c1.data(), n, +1);
        kernels::fft_1d(c2.data(), n, +1);
        for (std::size_t i = 0; i < n; ++i) {
            d1(i, j) = c1[i] / static_cast<double>(n);
            d2(i, j) = c2[i] / static_cast<double>(n);
        }
    }
    Mat x = Mat::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i) x(i, i) = spec.coord(i);

    const double lam = cfg.lambda, alpha = cfg.alpha, beta = cfg.beta;
    auto S_at = [&](double t) -> Mat {
        const double s = alpha * t + beta;
        return kernels::cxd{0.0, -2.0 / s} * lam * d1 - (alpha / (s * s)) * lam * x;
    };
    auto A_at = [&](double t) -> Mat {
        const double s = alpha * t + beta;
        return kernels::cxd{0.0, 1.0} *
               (d2 + (lam * lam / (s * s)) * Mat::Identity(n, n));
    };
    auto St_at = [&](double t) -> Mat {
        const double s = alpha * t + beta;
        return kernels::cxd{0.0, 2.0 * alpha / (s * s)} * lam * d1 +
               (2.0 * alpha * alpha / (s * s * s)) * lam * x;
    };

    // Commutator identity on Gaussian-localized test vectors.
    std::vector<ChirpedGaussian> probes;
    probes.push_back(ChirpedGaussian::standard(1));
    probes.push_back(ChirpedGaussian::axis1d(cxd{0.5, 0.0}, cxd{1.0, 0.5}));
    probes.push_back(ChirpedGaussian::axis1d(cxd{1.0, 0.5}, cxd{-0.5, 0.0}));
    double worst = 0.0;
    for (double t : {cfg.times.front(), 0.5 * (cfg.times.front() + cfg.times.back()),
                     cfg.times.back()}) {
        const double s = alpha * t + beta;
        const Mat S = S_at(t), A = A_at(t), St = St_at(t);
        const Mat lhs = St + S * A - A * S;
        const Mat rhs = (-2.0 * alpha / s) * S;
        for (const ChirpedGaussian& p : probes) {
            Vec v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = evaluate(p, cxd{spec.coord(i), 0.0});
            const double num = (lhs * v - rhs * v).norm();
            const double den = (St * v).norm() + (S * (A * v) - A * (S * v)).norm() + 1e-300;
            worst = std::max(worst, num / den);
        }
    }

    // Differential inequality along the grid flow.
    const GridField base = sample(cfg.u0, spec);
    std::vector<double> logH(cfg.times.size());
    for (std::size_t i = 0; i < cfg.times.size(); ++i) {
        const GridField ut = fft_propagate(base, cfg.times[i]);
        const WeightSpec w = WeightSpec::make_linear({lam}, alpha * cfg.times[i] + beta);
        logH[i] = 2.0 * grid_weighted_log_norm(ut, w);
    }
    SurrogateResult out;
    out.commutator_residual = worst;
    for (std::size_t i = 1; i + 1 < cfg.times.size(); ++i) {
        const double h1 = cfg.times[i] - cfg.times[i - 1];
        const double h2 = cfg.times[i + 1] - cfg.times[i];
        const double d2v = 2.0 *
                           ((logH[i + 1] - logH[i]) / h2 - (logH[i] - logH[i - 1]) / h1) /
                           (h1 + h2);
        const double d1v = (logH[i + 1] - logH[i - 1]) / (h1 + h2);
        const double s = alpha * cfg.times[i] + beta;
        out.eq_2_24_margins.push_back(d2v + (2.0 * alpha / s) * d1v);
    }
    return out;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

}  // namespace schrocvx
