#include "schrocvx/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "schrocvx/errors.hpp"

namespace schrocvx {

namespace {

// 15-point Kronrod extension of 7-point Gauss on [-1,1] (QUADPACK constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b, long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    evals += 15;
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double f1 = f(c - x);
        const double f2 = f(c + x);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    return {a, b, resk * h, std::abs((resk - resg) * h)};
}

bool worse(const Panel& lhs, const Panel& rhs) {
    if (lhs.error != rhs.error) return lhs.error < rhs.error;
    return lhs.a > rhs.a;  // deterministic tie-break
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt) {
    QuadResult out;
    if (a == b) return out;
    long evals = 0;

    // Globally adaptive: keep a heap of panels, split the worst one until
    // the summed error meets the budget. Integrable cusps just get a chain
    // of shrinking panels instead of racing a per-panel tolerance.
    std::vector<Panel> heap;
    heap.push_back(gk15(f, a, b, evals));
    const std::size_t max_panels =
        64 * static_cast<std::size_t>(std::max(opt.max_depth, 1));
    while (true) {
        double total = 0.0, err = 0.0;
        for (const Panel& p : heap) {
            total += p.value;
            err += p.error;
        }
        if (err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) break;
        if (heap.size() >= max_panels)
            throw QuadratureError("quadrature-nonconvergence: panel limit reached");
        std::pop_heap(heap.begin(), heap.end(), worse);
        const Panel top = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (top.a + top.b);
        if (!(mid > top.a && mid < top.b))
            throw QuadratureError("quadrature-nonconvergence: interval underflow");
        heap.push_back(gk15(f, top.a, mid, evals));
        std::push_heap(heap.begin(), heap.end(), worse);
        heap.push_back(gk15(f, mid, top.b, evals));
        std::push_heap(heap.begin(), heap.end(), worse);
    }

    // Sum in interval order for a reproducible result.
    std::sort(heap.begin(), heap.end(),
              [](const Panel& l, const Panel& r) { return l.a < r.a; });
    for (const Panel& p : heap) {
        out.value += p.value;
        out.error_estimate += p.error;
    }
    out.evaluations = evals;
    return out;
}

double log_integrate_exp(const std::function<double(double)>& exponent, double a, double b,
                         const QuadOptions& opt) {
    if (a == b) return -std::numeric_limits<double>::infinity();
    // Coarse scan for the exponent peak, then golden-section refinement.
    const int scan = 257;
    double emax = -std::numeric_limits<double>::infinity();
    double xmax = a;
    for (int i = 0; i < scan; ++i) {
        const double x = a + (b - a) * i / (scan - 1);
        const double e = exponent(x);
        if (e > emax) {
            emax = e;
            xmax = x;
        }
    }
    double lo = std::max(a, xmax - (b - a) / (scan - 1));
    double hi = std::min(b, xmax + (b - a) / (scan - 1));
    for (int it = 0; it < 80 && hi - lo > 1e-14 * (b - a); ++it) {
        const double m1 = lo + 0.381966011250105 * (hi - lo);
        const double m2 = hi - 0.381966011250105 * (hi - lo);
        if (exponent(m1) < exponent(m2))
            lo = m1;
        else
            hi = m2;
    }
    emax = std::max(emax, exponent(0.5 * (lo + hi)));
    if (!std::isfinite(emax)) return emax;

    const double shift = emax;
    QuadResult r = integrate([&](double x) { return std::exp(exponent(x) - shift); }, a, b, opt);
    if (!(r.value > 0.0)) return -std::numeric_limits<double>::infinity();
    return std::log(r.value) + shift;
}

double truncation_radius(const std::function<double(double)>& exponent, double sign,
                         double initial, double drop) {
    double peak = exponent(0.0);
    double r = std::abs(initial);
    for (int it = 0; it < 64; ++it) {
        const double e = exponent(sign * r);
        peak = std::max(peak, e);
        if (e <= peak - drop) return r;
        r *= 2.0;
    }
    throw QuadratureError("truncation_radius: exponent does not decay");
}

}  // namespace schrocvx
