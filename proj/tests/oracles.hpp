#pragma once

// Test-side oracles, deliberately independent of the library's numerics:
// a plain adaptive-Simpson integrator for defining-integral checks, a naive
// O(n^2) DFT, and a portable seeded RNG for property tests.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

using cxd = std::complex<double>;

// Adaptive Simpson on [a, b], seeded with 64 initial panels so oscillatory
// integrands cannot trigger accidental early acceptance.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double tol = 1e-12, int depth = 60) {
    struct Impl {
        const std::function<double(double)>& f;
        double run(double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) {
            const double m = 0.5 * (a + b);
            const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            const double flm = f(lm), frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if (depth <= 0) throw std::runtime_error("oracle simpson: depth exceeded");
            if (std::abs(left + right - whole) <=
                15.0 * tol + 1e-14 * (std::abs(left) + std::abs(right)))
                return left + right + (left + right - whole) / 15.0;
            return run(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
                   run(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
        }
    } impl{f};
    const int panels = 64;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double pa = a + (b - a) * p / panels;
        const double pb = a + (b - a) * (p + 1) / panels;
        const double fa = f(pa), fb = f(pb), fm = f(0.5 * (pa + pb));
        const double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
        total += impl.run(pa, pb, fa, fm, fb, whole, tol / panels, depth);
    }
    return total;
}

inline cxd simpson_complex(const std::function<cxd(double)>& f, double a, double b,
                           double tol = 1e-12) {
    const double re = simpson([&](double x) { return f(x).real(); }, a, b, tol);
    const double im = simpson([&](double x) { return f(x).imag(); }, a, b, tol);
    return {re, im};
}

// (2 pi)^{-1/2} int e^{-i x xi} g(x) dx over [-R, R].
inline cxd fourier_quadrature(const std::function<cxd(double)>& g, double xi, double R,
                              double tol = 1e-12) {
    const cxd v = simpson_complex(
        [&](double x) { return g(x) * std::exp(cxd{0.0, -x * xi}); }, -R, R, tol);
    return v / std::sqrt(2.0 * std::acos(-1.0));
}

// Naive O(n^2) DFT, sign -1 forward.
inline std::vector<cxd> naive_dft(const std::vector<cxd>& in, int sign) {
    const std::size_t n = in.size();
    std::vector<cxd> out(n);
    const double base = sign * 2.0 * std::acos(-1.0) / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        cxd acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j)
            acc += in[j] * std::polar(1.0, base * static_cast<double>(j * k % n));
        out[k] = acc;
    }
    return out;
}

// Portable splitmix64-based uniforms.
class Rng {
  public:
    explicit Rng(unsigned long long seed) : state_(seed) {}
    double uniform() {
        state_ += 0x9e3779b97f4a7c15ull;
        unsigned long long z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  private:
    unsigned long long state_;
};

}  // namespace oracles
