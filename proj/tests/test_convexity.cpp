#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "schrocvx/convexity.hpp"

using namespace schrocvx;
using oracles::Rng;

namespace {

constexpr double kPi = std::numbers::pi;

ConvexitySchedule sched_of(double a, double b, double T, int n = 21) {
    return ConvexitySchedule::chebyshev({a, b}, T, n);
}

// log || e^{(|x|^2 + 4 t nu x + 4 t^2 nu^2)/s^2} u(t) ||, the gal1 weight
// written out directly (independent of the boost-delegation path)
double gal1_direct_lhs(const ChirpedGaussian& u0, double nu, double t, double s) {
    const ChirpedGaussian ut = propagate(u0, t);
    const double a = 2.0 * ut.quad[0].real() - 2.0 / (s * s);
    const double b = 2.0 * ut.lin[0].real() + 8.0 * t * nu / (s * s);
    const double c0 = 2.0 * ut.log_amplitude.real() + 8.0 * t * t * nu * nu / (s * s);
    return 0.5 * (c0 + 0.5 * std::log(kPi / a) + b * b / (4.0 * a));
}

}  // namespace

TEST_CASE("schedule: exponents and validation") {
    const ConvexitySchedule s = sched_of(2.0, 1.5, 3.0, 33);
    CHECK(s.theta(0.0) == 1.0);
    CHECK(s.theta(3.0) == 0.0);
    CHECK(s.mu(0.0) == 1.0);
    CHECK(s.times.front() == 0.0);
    CHECK(s.times.back() == 3.0);
    for (std::size_t i = 1; i < s.times.size(); ++i) {
        CHECK(s.times[i] > s.times[i - 1]);
        CHECK(s.theta(s.times[i]) < s.theta(s.times[i - 1]));
        CHECK(s.mu(s.times[i]) < s.mu(s.times[i - 1]));
        CHECK(s.theta(s.times[i]) >= 0.0);
        CHECK(s.mu(s.times[i]) >= 0.0);
    }
    CHECK_THROWS_AS(ConvexitySchedule::chebyshev({-1.0, 1.0}, 1.0, 9),
                    std::invalid_argument);
    CHECK_THROWS_AS(ConvexitySchedule::chebyshev({1.0, 0.0}, 1.0, 9),
                    std::invalid_argument);
    CHECK_THROWS_AS(ConvexitySchedule::chebyshev({1.0, 1.0}, 0.0, 9),
                    std::invalid_argument);
}

TEST_CASE("vacuous predicates fire exactly on the stated regions") {
    CHECK(eq_2_23_vacuous(1.0, 1.0));
    CHECK(eq_2_23_vacuous(2.0, 2.0));  // boundary 4 = alpha beta included
    CHECK_FALSE(eq_2_23_vacuous(5.0, 2.0));
    CHECK(eq_2_22_vacuous(1.0, 1.0, 1.0));  // 4 >= 1 * 2
    CHECK_FALSE(eq_2_22_vacuous(5.0, 2.0, 1.0));
    CHECK(eq_2_22_vacuous(0.0, 1.0, 1.0));
}

TEST_CASE("check_eq_2_20: endpoints exact, interior margins nonnegative") {
    const ChirpedGaussian u0 = ChirpedGaussian::standard(1);
    const ConvexityReport rep = check_eq_2_20(u0, {1.0}, sched_of(1.0, 1.0, 1.0));
    CHECK(rep.pass);
    CHECK(rep.rows.front().margin == 0.0);
    CHECK(rep.rows.back().margin == 0.0);
    CHECK(rep.min_margin >= -1e-9);

    // alpha = 0 degenerates to a fixed weight; theta = (T-t)/T
    const ConvexityReport flat = check_eq_2_20(u0, {1.0}, sched_of(0.0, 1.0, 1.0));
    CHECK(flat.pass);

    // random chirped data stays nonnegative
    Rng rng(61);
    for (int i = 0; i < 10; ++i) {
        const ChirpedGaussian g(
            1, cxd{rng.uniform(-0.3, 0.3), rng.uniform(-1.0, 1.0)},
            {cxd{rng.uniform(0.4, 2.0), rng.uniform(-1.0, 1.0)}},
            {cxd{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}});
        const ConvexityReport r =
            check_eq_2_20(g, {rng.uniform(-2.0, 2.0)}, sched_of(rng.uniform(0.0, 3.0),
                                                                rng.uniform(0.5, 2.0), 1.0));
        CHECK(r.min_margin >= -1e-9);
    }
}

TEST_CASE("check_eq_2_21: mu-form against the Fourier side") {
    const ChirpedGaussian u0 = ChirpedGaussian::standard(1);
    const ConvexityReport rep = check_eq_2_21(u0, {1.0}, sched_of(2.0, 1.0, 1.0));
    CHECK(rep.pass);
    CHECK(rep.rows.front().margin == 0.0);  // mu(0) = 1

    // exponents are beta/(at+b) and at/(at+b)
    const ConvexitySchedule s = sched_of(2.0, 1.0, 1.0);
    const double t = s.times[7];
    CHECK(s.mu(t) == doctest::Approx(1.0 / (2.0 * t + 1.0)).epsilon(1e-15));
    CHECK(1.0 - s.mu(t) == doctest::Approx(2.0 * t / (2.0 * t + 1.0)).epsilon(1e-13));

    CHECK_THROWS_AS(check_eq_2_21(u0, {1.0}, sched_of(0.0, 1.0, 1.0)),
                    std::invalid_argument);
}

TEST_CASE("check_eq_2_22: pass, vacuous flag, endpoint-infinite") {
    const ChirpedGaussian u0 = ChirpedGaussian::standard(1);
    const ConvexityReport rep = check_eq_2_22(u0, sched_of(5.0, 2.0, 1.0));
    CHECK(rep.pass);
    CHECK_FALSE(rep.vacuous);
    CHECK(rep.rows.front().margin == 0.0);
    CHECK(rep.rows.back().margin == 0.0);
    CHECK(rep.min_margin >= -1e-9);

    // finiteness via rate arithmetic: (5t+2)^2 > 1 + 16 t^2 on [0,1]
    for (double t : {0.0, 0.3, 0.7, 1.0})
        CHECK(std::pow(5.0 * t + 2.0, 2) > 1.0 + 16.0 * t * t);

    const ConvexityReport vac = check_eq_2_22(u0, sched_of(1.0, 1.0, 1.0));
    CHECK(vac.vacuous);
    CHECK(vac.pass);
    CHECK(vac.rows.empty());

    // not vacuous but the t = 0 norm diverges: 1/beta^2 = 4 > Re z
    CHECK_THROWS_AS(check_eq_2_22(u0, sched_of(40.0, 0.5, 1.0)), EndpointInfiniteError);
}

TEST_CASE("check_eq_2_23: pass and vacuous") {
    const ChirpedGaussian u0 = ChirpedGaussian::standard(1);
    const ConvexityReport rep = check_eq_2_23(u0, sched_of(16.0, 4.0, 2.0));
    CHECK(rep.pass);
    CHECK(rep.rows.front().margin == 0.0);
    CHECK(rep.min_margin >= -1e-9);

    const ConvexityReport vac = check_eq_2_23(u0, sched_of(1.0, 1.0, 1.0));
    CHECK(vac.vacuous);
    CHECK(vac.pass);
}

TEST_CASE("grid path: margins within 1e-6 of the exact path") {
    const ChirpedGaussian u0 = ChirpedGaussian::standard(1);
    CheckOptions grid_opt;
    grid_opt.path = DataPath::grid;

    for (auto [a, b, T] : {std::tuple{5.0, 2.0, 1.0}, std::tuple{16.0, 4.0, 2.0}}) {
        const ConvexitySchedule s = sched_of(a, b, T);
        const ConvexityReport exact22 = check_eq_2_22(u0, s);
        const ConvexityReport grid22 = check_eq_2_22(u0, s, grid_opt);
        CHECK(grid22.pass);
        REQUIRE(grid22.rows.size() == exact22.rows.size());
        for (std::size_t i = 0; i < exact22.rows.size(); ++i)
            CHECK(std::abs(grid22.rows[i].margin - exact22.rows[i].margin) < 1e-6);

        const ConvexityReport exact23 = check_eq_2_23(u0, s);
        const ConvexityReport grid23 = check_eq_2_23(u0, s, grid_opt);
        CHECK(grid23.pass);
        for (std::size_t i = 0; i < exact23.rows.size(); ++i)
            CHECK(std::abs(grid23.rows[i].margin - exact23.rows[i].margin) < 1e-6);
    }

    // grid endpoint margins vanish to 1e-12 (identical code path both sides)
    const ConvexityReport g20 =
        check_eq_2_20(u0, {1.0}, sched_of(1.0, 1.0, 1.0), grid_opt);
    CHECK(std::abs(g20.rows.front().margin) < 1e-12);
    CHECK(std::abs(g20.rows.back().margin) < 1e-12);
}

TEST_CASE("check_logconvex_G: chord inequality of the G function") {
    const ChirpedGaussian u0 = ChirpedGaussian::standard(1);
    // lambda = 0: H constant, log G linear, second differences vanish
    const ConvexityReport zero = check_logconvex_G(
        u0, WeightSpec::make_linear({0.0}, 1.0), sched_of(1.0, 1.0, 1.0));
    for (const ReportRow& r : zero.rows) CHECK(std::abs(r.margin) < 1e-10);

    const ConvexityReport lin = check_logconvex_G(
        u0, WeightSpec::make_linear({1.0}, 1.0), sched_of(1.0, 1.0, 1.0));
    CHECK(lin.pass);
    CHECK(lin.min_margin >= -1e-9);

    // the chord inequality is eq 2.20 on the same grid
    CHECK(check_eq_2_20(u0, {1.0}, sched_of(1.0, 1.0, 1.0)).pass);

    // gaussian weight shape
    const ConvexityReport gau = check_logconvex_G(
        u0, WeightSpec::make_gaussian_iso(1.0), sched_of(5.0, 2.0, 1.0));
    CHECK(gau.pass);
}

TEST_CASE("check_cor_3_1: anisotropic weights in two dimensions") {
    const ChirpedGaussian u0 = ChirpedGaussian::standard(2);
    // gamma = 0 degenerates to the unweighted (constant) norm: margins 0
    const ConvexityReport none = check_cor_3_1(u0, {0.0, 0.0}, sched_of(1.0, 1.0, 1.0));
    for (const ReportRow& r : none.rows) CHECK(std::abs(r.margin) < 1e-12);

    const ConvexityReport one = check_cor_3_1(u0, {1.0, 0.0}, sched_of(5.0, 2.0, 1.0));
    CHECK(one.pass);
    CHECK(one.rows.front().margin == 0.0);

    // gamma = (1,1) is the radial weight: matches the isotropic check
    const ConvexityReport both = check_cor_3_1(u0, {1.0, 1.0}, sched_of(5.0, 2.0, 1.0));
    const ConvexityReport iso = check_eq_2_22(u0, sched_of(5.0, 2.0, 1.0));
    REQUIRE(both.rows.size() == iso.rows.size());
    for (std::size_t i = 0; i < both.rows.size(); ++i)
        CHECK(both.rows[i].margin == doctest::Approx(iso.rows[i].margin).epsilon(1e-13));
}

TEST_CASE("check_cor_3_2_3_3: empirical constant") {
    const ChirpedGaussian u0 = ChirpedGaussian::standard(1);
    // p = 2 is eq 2.22 verbatim: c = 1 exactly (endpoint equality)
    const PowerConstantReport p2 = check_cor_3_2_3_3(
        u0, WeightSpec::make_power_radial(2.0, 1.0), sched_of(5.0, 2.0, 1.0));
    CHECK(p2.pass);
    CHECK(p2.c_empirical == doctest::Approx(1.0).epsilon(1e-12));

    const PowerConstantReport p15 = check_cor_3_2_3_3(
        u0, WeightSpec::make_power_radial(1.5, 1.0), sched_of(5.0, 2.0, 1.0));
    CHECK(p15.pass);
    CHECK(std::isfinite(p15.c_empirical));
    CHECK(p15.stable);
    CHECK(p15.c_rescaled / p15.c_empirical <= 10.0);
    CHECK(p15.c_empirical / p15.c_rescaled <= 10.0);

    // per-axis variant on 2-d data
    const PowerConstantReport axis = check_cor_3_2_3_3(
        ChirpedGaussian::standard(2),
        WeightSpec::make_power_axis({1.5, 2.0}, {1.0, 0.5}, 1.0), sched_of(5.0, 2.0, 1.0));
    CHECK(axis.pass);
}

TEST_CASE("check_cor_3_4: interaction variants") {
    const ChirpedGaussian u0 = ChirpedGaussian::standard(1);
    const ChirpedGaussian v0 = ChirpedGaussian::axis1d(cxd{2.0, 0.0});
    const ConvexitySchedule s = sched_of(5.0, 2.0, 1.0);

    // linear interaction weight: always finite
    const ConvexityReport d1 = check_cor_3_4(u0, v0, InteractionVariant::dos1, {1.0}, s);
    CHECK(d1.pass);
    CHECK(d1.rows.front().margin == 0.0);
    CHECK(d1.rows.back().margin == 0.0);
    CHECK(d1.min_margin >= -1e-9);

    // the Gaussian interaction weight beats the spread of exp(-2x^2) at
    // T = 1 when beta = 2 (the t = T side diverges); beta = 4 is feasible
    CHECK_THROWS_AS(check_cor_3_4(u0, v0, InteractionVariant::dos3, {}, s),
                    EndpointInfiniteError);
    const ConvexityReport d3 =
        check_cor_3_4(u0, v0, InteractionVariant::dos3, {}, sched_of(5.0, 4.0, 1.0));
    CHECK(d3.pass);
    CHECK(d3.rows.front().margin == 0.0);
    CHECK(d3.min_margin >= -1e-9);

    // Fourier-side variants need a wide-enough alpha for finiteness
    const ConvexitySchedule sf = sched_of(8.0, 2.0, 1.0);
    for (InteractionVariant v :
         {InteractionVariant::fourier_linear, InteractionVariant::fourier_gaussian}) {
        const ConvexityReport rep = check_cor_3_4(u0, u0, v, {1.0}, sf);
        CHECK(rep.pass);
        CHECK(rep.rows.front().margin == 0.0);
    }

    // symmetric pair: dos3 margins equal the single-solution Gaussian check
    // with the schedule rescaled by sqrt(2) (rotation to (x-y)/sqrt2)
    const ConvexityReport sym = check_cor_3_4(u0, u0, InteractionVariant::dos3, {}, s);
    const double r2 = std::sqrt(2.0);
    ConvexitySchedule rot = s;
    rot.scale = {s.scale.alpha / r2, s.scale.beta / r2};
    const ConvexityReport single = check_eq_2_22(u0, rot);
    REQUIRE(sym.rows.size() == single.rows.size());
    for (std::size_t i = 0; i < sym.rows.size(); ++i)
        CHECK(sym.rows[i].margin == doctest::Approx(single.rows[i].margin).epsilon(1e-12));
}

TEST_CASE("grid path for interaction checks agrees with the exact path") {
    const ChirpedGaussian u0 = ChirpedGaussian::standard(1);
    const ChirpedGaussian v0 = ChirpedGaussian::axis1d(cxd{2.0, 0.0});
    const ConvexitySchedule s = sched_of(5.0, 4.0, 1.0, 9);
    CheckOptions grid_opt;
    grid_opt.path = DataPath::grid;
    grid_opt.grid.points = 512;  // 2-d tensor grids must resolve the data bandwidth

    const ConvexityReport exact = check_cor_3_4(u0, v0, InteractionVariant::dos3, {}, s);
    const ConvexityReport grid =
        check_cor_3_4(u0, v0, InteractionVariant::dos3, {}, s, grid_opt);
    CHECK(grid.pass);
    REQUIRE(grid.rows.size() == exact.rows.size());
    for (std::size_t i = 0; i < exact.rows.size(); ++i)
        CHECK(std::abs(grid.rows[i].margin - exact.rows[i].margin) < 1e-6);

    std::vector<double> times;
    for (int i = 0; i <= 12; ++i) times.push_back(-0.6 + 0.1 * i);
    const ConvexityReport vex = check_variance_convexity(u0, v0, times);
    const ConvexityReport vgr = check_variance_convexity(u0, v0, times, grid_opt);
    REQUIRE(vgr.rows.size() == vex.rows.size());
    for (std::size_t i = 0; i < vex.rows.size(); ++i)
        CHECK(vgr.rows[i].margin ==
              doctest::Approx(vex.rows[i].margin).epsilon(1e-6));
}

TEST_CASE("check_variance_convexity: quadratic in t, reflection symmetric") {
    const ChirpedGaussian u0 = ChirpedGaussian::standard(1);
    std::vector<double> times;
    for (int i = 0; i <= 40; ++i) times.push_back(-1.0 + 2.0 * i / 40.0);

    const ConvexityReport rep = check_variance_convexity(u0, u0, times);
    CHECK(rep.pass);
    CHECK(rep.min_margin >= -1e-8);
    // V(t) = pi (1 + 16 t^2)/4: constant second divided difference 8 pi
    for (const ReportRow& r : rep.rows)
        CHECK(r.margin == doctest::Approx(8.0 * kPi).epsilon(1e-9));
    // time reflection symmetry of the values for real data
    const std::size_t n = rep.rows.size();
    for (std::size_t i = 0; i < n / 2; ++i)
        CHECK(rep.rows[i].lhs_log ==
              doctest::Approx(rep.rows[n - 1 - i].lhs_log).epsilon(1e-12));

    // boosted pair stays convex
    const ConvexityReport boosted =
        check_variance_convexity(boost(u0, 1.5), ChirpedGaussian::axis1d(cxd{2.0, 0.0}),
                                 times);
    CHECK(boosted.pass);
}

TEST_CASE("check_cor_3_5: Galilean delegation") {
    const ChirpedGaussian u0 = ChirpedGaussian::standard(1);
    const ConvexitySchedule s = sched_of(5.0, 2.0, 1.0);

    // nu = 0 reduces bitwise to the unboosted checks
    const ConvexityReport zero1 = check_cor_3_5(u0, {0.0}, s, GalileanVariant::gal1);
    const ConvexityReport base = check_eq_2_22(u0, s);
    REQUIRE(zero1.rows.size() == base.rows.size());
    for (std::size_t i = 0; i < base.rows.size(); ++i)
        CHECK(zero1.rows[i].margin == base.rows[i].margin);

    const ConvexityReport g1 = check_cor_3_5(u0, {1.0}, s, GalileanVariant::gal1);
    CHECK(g1.pass);
    const ConvexityReport g2 =
        check_cor_3_5(u0, {1.0}, sched_of(16.0, 4.0, 2.0), GalileanVariant::gal2);
    CHECK(g2.pass);

    // the delegation equals the shifted-weight formulation exactly
    // (change of variables x -> x + 2 t nu)
    const double nu = 1.0;
    for (std::size_t i = 0; i < s.times.size(); ++i) {
        const double t = s.times[i];
        const double direct = gal1_direct_lhs(u0, nu, t, s.scale.scale_at(t));
        const double via_boost = weighted_l2_log_norm(
            propagate(boost(u0, nu), t),
            WeightSpec::make_gaussian_iso(s.scale.scale_at(t)));
        CHECK(direct == doctest::Approx(via_boost).epsilon(1e-12));
    }

    // boosting the data and shifting the weight with the packet is a no-op:
    // || e^{|x - 2t nu|^2/s^2} u_nu(t) || = || e^{|x|^2/s^2} u(t) ||
    for (double t : {0.2, 0.6, 1.0}) {
        const double sc = s.scale.scale_at(t);
        const double undone = gal1_direct_lhs(boost(u0, nu), -nu, t, sc);
        const double plain = weighted_l2_log_norm(
            propagate(u0, t), WeightSpec::make_gaussian_iso(sc));
        CHECK(undone == doctest::Approx(plain).epsilon(1e-12));
    }
}

TEST_CASE("weight-scale monotonicity of margins in beta") {
    const ChirpedGaussian u0 = ChirpedGaussian::standard(1);
    double prev = -1.0;
    for (double beta : {2.0, 2.5, 3.0, 4.0}) {
        const ConvexityReport rep = check_eq_2_22(u0, sched_of(5.0, beta, 1.0));
        const double mid = rep.rows[rep.rows.size() / 2].margin;
        if (prev >= 0.0) CHECK(mid <= prev + 1e-12);
        prev = mid;
    }
}

TEST_CASE("nu_schedule: values and certificates") {
    const ChirpedGaussian u0 = ChirpedGaussian::standard(1);
    const NuSchedule ns = nu_schedule(u0, 5.0, 2.0, {0.0, 0.5, 1.0});
    CHECK(ns.rows[0].nu == doctest::Approx(0.25));
    CHECK(ns.rows[1].nu < ns.rows[0].nu);
    CHECK(ns.rows[2].nu < ns.rows[1].nu);
    CHECK_FALSE(ns.vacuous);  // alpha beta = 10 > 4

    const NuSchedule big = nu_schedule(u0, 16.0, 4.0, {0.0, 1.0});
    CHECK(big.finiteness_certified);
    CHECK_FALSE(big.vacuous);

    const NuSchedule vac = nu_schedule(u0, 1.0, 1.0, {0.0});
    CHECK(vac.vacuous);
}

TEST_CASE("csv output of a report") {
    const ConvexityReport rep =
        check_eq_2_20(ChirpedGaussian::standard(1), {1.0}, sched_of(1.0, 1.0, 1.0, 5));
    std::ostringstream os;
    write_csv(rep, os);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "t,lhs_log,rhs_log,margin");
    int rows = 0;
    for (std::string line; std::getline(is, line);) ++rows;
    CHECK(rows == 5);
}
