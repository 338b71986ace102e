#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "oracles.hpp"
#include "schrocvx/frequency.hpp"

using namespace schrocvx;
using oracles::Rng;

namespace {

Mat random_complex(Rng& rng, int m) {
    Mat a(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            a(i, j) = cxd{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)} /
                      std::sqrt(static_cast<double>(m));
    return a;
}

Mat random_hermitian(Rng& rng, int m) {
    const Mat a = random_complex(rng, m);
    return 0.5 * (a + Mat(a.adjoint()));
}

Mat random_antihermitian(Rng& rng, int m) {
    const Mat a = random_complex(rng, m);
    return 0.5 * (a - Mat(a.adjoint()));
}

Vec random_state(Rng& rng, int m) {
    Vec v(m);
    for (int i = 0; i < m; ++i) v[i] = cxd{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return v / v.norm();
}

std::vector<double> interior_times() { return {0.1, 0.25, 0.4, 0.55, 0.7, 0.85, 1.0}; }

}  // namespace

TEST_CASE("operator pair validation") {
    Rng rng(71);
    const Mat s = random_hermitian(rng, 6);
    const Mat a = random_antihermitian(rng, 6);
    OperatorPair ops = OperatorPair::constant(s, a);
    ops.check_symmetry(0.0);

    OperatorPair bad = OperatorPair::constant(random_complex(rng, 6), a);
    CHECK_THROWS_AS(bad.check_symmetry(0.0), std::invalid_argument);
    OperatorPair bad2 = OperatorPair::constant(s, random_complex(rng, 6));
    CHECK_THROWS_AS(bad2.check_symmetry(0.0), std::invalid_argument);
}

TEST_CASE("evolve: unitary flow keeps H constant and D zero") {
    Rng rng(72);
    const int m = 8;
    const OperatorPair ops =
        OperatorPair::constant(Mat::Zero(m, m), random_antihermitian(rng, m));
    const Vec f0 = random_state(rng, m);
    const FrequencyTrace trace = evolve(f0, ops, {0.0, 0.25, 0.5, 0.75, 1.0});
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        CHECK(trace.H[i] == doctest::Approx(trace.H[0]).epsilon(1e-11));
        CHECK(std::abs(trace.D[i]) < 1e-11 * trace.H[i]);
    }
}

TEST_CASE("evolve: matrix-exponential oracle for constant coefficients") {
    Rng rng(73);
    const int m = 8;
    const Mat s = random_hermitian(rng, m);
    const Vec f0 = random_state(rng, m);

    // pure Hermitian flow: eigendecomposition oracle, N nondecreasing
    const OperatorPair herm = OperatorPair::constant(s, Mat::Zero(m, m));
    const FrequencyTrace trace = evolve(f0, herm, {0.0, 0.3, 0.6, 1.0});
    Eigen::SelfAdjointEigenSolver<Mat> es(s);
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        const Vec expm_f = es.eigenvectors() *
                           (trace.times[i] * es.eigenvalues().array())
                               .exp()
                               .matrix()
                               .asDiagonal() *
                           (es.eigenvectors().adjoint() * f0);
        CHECK((trace.states[i] - expm_f).norm() <= 1e-9 * expm_f.norm());
        if (i > 0) CHECK(trace.N[i] >= trace.N[i - 1] - 1e-10);
    }

    // mixed constant pair against the Pade matrix exponential
    const Mat a = random_antihermitian(rng, m);
    const OperatorPair mixed = OperatorPair::constant(s, a);
    const FrequencyTrace tm = evolve(f0, mixed, {0.0, 0.5, 1.0});
    const Mat gen = s + a;
    for (std::size_t i = 0; i < tm.times.size(); ++i) {
        const Vec want = Mat(gen * tm.times[i]).exp() * f0;
        CHECK((tm.states[i] - want).norm() <= 1e-9 * want.norm());
    }
}

TEST_CASE("evolve input validation") {
    const OperatorPair ops = OperatorPair::constant(Mat::Zero(2, 2), Mat::Zero(2, 2));
    CHECK_THROWS_AS(evolve(Vec::Zero(2), ops, {0.0, 1.0}), std::invalid_argument);
    Vec f0(2);
    f0 << 1.0, 0.0;
    CHECK_THROWS_AS(evolve(f0, ops, {0.0, 1.0, 0.5}), std::invalid_argument);
}

TEST_CASE("Hdot = 2 D along exact flows") {
    Rng rng(74);
    for (int rep = 0; rep < 5; ++rep) {
        const int m = 8;
        const OperatorPair ops =
            OperatorPair::constant(random_hermitian(rng, m), random_antihermitian(rng, m));
        const Vec f0 = random_state(rng, m);
        for (double r : hdot_residuals(f0, ops, interior_times())) CHECK(r <= 1e-8);
    }
}

TEST_CASE("identity for Ndot on analytic trajectories") {
    Rng rng(75);
    const int m = 8;
    const Mat s = random_hermitian(rng, m);
    const Mat a = random_antihermitian(rng, m);
    const Vec f0 = random_state(rng, m);

    // f(t) = e^{tS} f0 with A = 0
    {
        const OperatorPair ops = OperatorPair::constant(s, Mat::Zero(m, m));
        Eigen::SelfAdjointEigenSolver<Mat> es(s);
        auto f = [&](double t) -> Vec {
            return es.eigenvectors() *
                   (t * es.eigenvalues().array()).exp().matrix().asDiagonal() *
                   (es.eigenvectors().adjoint() * f0);
        };
        auto dtf = [&](double t) -> Vec { return s * f(t); };
        for (double t : {0.2, 0.5, 1.0})
            CHECK(check_identity_2_2a(f, dtf, ops, t) <= 1e-8);
    }

    // constant f, S constant, A = 0: the two quadratic terms cancel exactly
    {
        const OperatorPair ops = OperatorPair::constant(s, Mat::Zero(m, m));
        auto f = [&](double) -> Vec { return f0; };
        auto dtf = [&](double) -> Vec { return Vec::Zero(m); };
        CHECK(check_identity_2_2a(f, dtf, ops, 0.5) <= 1e-10);
        // N is scale-free: unchanged residual under f -> c f
        auto f2 = [&](double) -> Vec { return 3.7 * f0; };
        auto dtf2 = [&](double) -> Vec { return Vec::Zero(m); };
        CHECK(std::abs(check_identity_2_2a(f, dtf, ops, 0.5) -
                       check_identity_2_2a(f2, dtf2, ops, 0.5)) < 1e-13);
    }

    // full identity along the exact mixed flow
    {
        const OperatorPair ops = OperatorPair::constant(s, a);
        const Mat gen = s + a;
        auto f = [&](double t) -> Vec { return Mat(gen * t).exp() * f0; };
        auto dtf = [&](double t) -> Vec { return gen * f(t); };
        for (double t : {0.25, 0.75})
            CHECK(check_identity_2_2a(f, dtf, ops, t) <= 1e-7);
    }
}

TEST_CASE("Ndot lower bound margins") {
    Rng rng(76);
    const int m = 8;
    const Mat s = random_hermitian(rng, m);
    const Mat a = random_antihermitian(rng, m);
    const Vec f0 = random_state(rng, m);

    // exact flow: the correction term vanishes and Ndot >= <[S,A]f,f>/H
    const OperatorPair ops = OperatorPair::constant(s, a);
    for (double margin : ndot_lower_bound_margins(f0, ops, interior_times()))
        CHECK(margin >= -1e-7);

    // commuting pair A = iS: [S,A] = 0, so Ndot >= 0 -- the log-convexity
    // of || e^{tS} f0 ||^2
    const OperatorPair comm = OperatorPair::constant(s, cxd{0.0, 1.0} * s);
    for (double margin : ndot_lower_bound_margins(f0, comm, interior_times()))
        CHECK(margin >= -1e-7);

    // perturbed flow: dtf = Sf + Af + g with the forcing in the last term
    const Vec gvec = 0.01 * random_state(rng, m);
    auto forcing = [gvec](double t) -> Vec { return std::sin(t) * gvec; };
    for (double margin :
         ndot_lower_bound_margins(f0, ops, interior_times(), 4e-3, 1e-11, forcing))
        CHECK(margin >= -1e-7);
}

TEST_CASE("log-convexity shadow of a PSD commutator") {
    // A = iS commutes with S and S_t = 0, so log H is convex along the flow
    Rng rng(79);
    const int m = 8;
    const Mat s = random_hermitian(rng, m);
    const OperatorPair ops = OperatorPair::constant(s, cxd{0.0, 1.0} * s);
    const Vec f0 = random_state(rng, m);
    std::vector<double> ts;
    for (int i = 0; i <= 16; ++i) ts.push_back(i / 16.0);
    const FrequencyTrace trace = evolve(f0, ops, ts);
    for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
        const double h = ts[1] - ts[0];
        const double d2 = (std::log(trace.H[i + 1]) - 2.0 * std::log(trace.H[i]) +
                           std::log(trace.H[i - 1])) /
                          (h * h);
        CHECK(d2 >= -1e-7);
    }
}

TEST_CASE("Carleman space-time expansion") {
    Rng rng(77);
    const int m = 6;
    const Mat s = random_hermitian(rng, m);
    const Mat a = random_antihermitian(rng, m);
    const Vec v0 = random_state(rng, m);
    const Vec v1 = random_state(rng, m);
    const double t0 = 0.0, t1 = 1.0;

    // endpoint-vanishing polynomial trajectory: identity exact under GL
    auto traj = [&](double t) -> Vec { return (t - t0) * (t1 - t) * (v0 + t * v1); };
    auto dtraj = [&](double t) -> Vec {
        return (t0 + t1 - 2.0 * t) * (v0 + t * v1) + (t - t0) * (t1 - t) * v1;
    };

    // A = 0, S constant: cross term cancels by symmetry bookkeeping
    const CarlemanResult plain = check_carleman_expansion(
        traj, dtraj, OperatorPair::constant(s, Mat::Zero(m, m)), t0, t1);
    CHECK(plain.residual <= 1e-10);
    CHECK(std::abs(plain.boundary_correction) < 1e-12);

    // random constant pair
    const CarlemanResult mixed =
        check_carleman_expansion(traj, dtraj, OperatorPair::constant(s, a), t0, t1);
    CHECK(mixed.residual <= 1e-8);

    // non-vanishing endpoints: the boundary correction is reported and the
    // corrected identity still closes
    auto traj2 = [&](double t) -> Vec { return v0 + t * v1; };
    auto dtraj2 = [&](double) -> Vec { return v1; };
    const CarlemanResult open =
        check_carleman_expansion(traj2, dtraj2, OperatorPair::constant(s, a), t0, t1);
    CHECK(open.residual <= 1e-8);
    CHECK(std::abs(open.boundary_correction) > 1e-6);

    // PSD commutator (A = iS commutes, S_t = 0): the Carleman inequality holds
    const CarlemanResult psd = check_carleman_expansion(
        traj, dtraj, OperatorPair::constant(s, cxd{0.0, 1.0} * s), t0, t1);
    CHECK(psd.commutator_min_eigenvalue >= -1e-10);
    CHECK(psd.inequality_holds);
}

TEST_CASE("gaussian surrogate: commutator identity and the log-H inequality") {
    SurrogateConfig cfg;
    cfg.lambda = 1.0;
    cfg.alpha = 1.0;
    cfg.beta = 1.0;
    cfg.points = 256;
    cfg.box_length = 40.0;
    cfg.u0 = ChirpedGaussian::standard(1);
    for (int i = 0; i <= 20; ++i) cfg.times.push_back(i / 20.0);

    const SurrogateResult res = gaussian_surrogate_check(cfg);
    CHECK(res.commutator_residual <= 1e-8);
    for (double margin : res.eq_2_24_margins) CHECK(margin >= -1e-6);

    // lambda = 0: S = 0, H constant, both sides vanish
    SurrogateConfig flat = cfg;
    flat.lambda = 0.0;
    const SurrogateResult res0 = gaussian_surrogate_check(flat);
    for (double margin : res0.eq_2_24_margins) CHECK(std::abs(margin) < 1e-9);
}

TEST_CASE("trace csv") {
    Rng rng(78);
    const OperatorPair ops =
        OperatorPair::constant(random_hermitian(rng, 4), random_antihermitian(rng, 4));
    const FrequencyTrace trace = evolve(random_state(rng, 4), ops, {0.0, 0.5, 1.0});
    std::ostringstream os;
    write_csv(trace, os);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "t,H,D,N");
}
