#pragma once

// Finite-dimensional surrogate of the abstract frequency-function argument:
// flows dtf = S(t) f + A(t) f with S Hermitian and A anti-Hermitian,
// H = <f,f>, D = <S f, f>, N = D/H, the exact derivative identity for N,
// its lower bound, the Carleman space-time expansion, and the spectral
// discretization of the weighted free-flow generator pair.
//
// Inner products follow <a,b> = sum_i a_i conj(b_i); D and the commutator
// quadratic form are real by Hermiticity. Time derivatives of H and N are
// taken by centered differences plus one Richardson level on a dyadic
// refinement.

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <vector>

#include "schrocvx/chirped_gaussian.hpp"
#include "schrocvx/grid.hpp"

namespace schrocvx {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct OperatorPair {
    int dimension = 0;
    std::function<Mat(double)> symmetric;      // S(t), Hermitian
    std::function<Mat(double)> antisymmetric;  // A(t), anti-Hermitian
    std::function<Mat(double)> symmetric_dt;   // exact dS/dt

    static OperatorPair constant(const Mat& s, const Mat& a);

    // Throws when ||S - S*|| or ||A + A*|| exceeds tol (1 + ||.||).
    void check_symmetry(double t, double tol = 1e-13) const;
};

struct FrequencyTrace {
    std::vector<double> times;
    std::vector<Vec> states;
    std::vector<double> H;
    std::vector<double> D;
    std::vector<double> N;
};

void write_csv(const FrequencyTrace& trace, std::ostream& os);

// Integrates dtf = S f + A f (+ forcing) with an adaptive embedded
// Dormand-Prince 5(4) scheme at the given local tolerance, recording the
// state and H, D, N at each requested time. times must be increasing and
// start at the initial time of f0.
FrequencyTrace evolve(const Vec& f0, const OperatorPair& ops, const std::vector<double>& times,
                      double local_tol = 1e-11,
                      const std::function<Vec(double)>& forcing = {});

// Both sides of the exact derivative identity
//   Ndot = <S_t f + [S,A] f, f>/H
//        + 1/2 [ ||G+||^2 H - (Re<G+,f>)^2 ] / H^2
//        + 1/2 [ (Re<G-,f>)^2 - ||G-||^2 H ] / H^2,
//   G+- = dtf - A f +- S f,
// for an analytically supplied trajectory (f, dtf); returns the relative
// residual (Ndot by Richardson-extrapolated centered differences).
double check_identity_2_2a(const std::function<Vec(double)>& f,
                           const std::function<Vec(double)>& dtf, const OperatorPair& ops,
                           double t, double h = 1e-3);

// Margins Ndot - <S_t f + [S,A] f, f>/H + 1/2 ||dtf - A f - S f||^2 ||f||^2 / H^2
// along the numerically evolved flow at the interior sample times. With no
// forcing the correction term vanishes up to integrator error.
std::vector<double> ndot_lower_bound_margins(const Vec& f0, const OperatorPair& ops,
                                             const std::vector<double>& times, double h = 4e-3,
                                             double local_tol = 1e-11,
                                             const std::function<Vec(double)>& forcing = {});

// Richardson-extrapolated Hdot vs 2 D along the exact flow; one relative
// residual per interior time.
std::vector<double> hdot_residuals(const Vec& f0, const OperatorPair& ops,
                                   const std::vector<double>& times, double h = 4e-3,
                                   double local_tol = 1e-11);

// Space-time expansion behind the Carleman inequality, over [t0, t1] with
// Gauss-Legendre quadrature:
//   int ||dtf - Sf - Af||^2 = int ||dtf - Af||^2 + int ||Sf||^2
//                           + int <(S_t + [S,A]) f, f>  - [<Sf,f>]_{t0}^{t1}.
// boundary_correction is the bracket (zero for endpoint-vanishing f, in
// which case the displayed identity holds as stated); residual is relative.
struct CarlemanResult {
    double residual;
    double boundary_correction;
    double commutator_min_eigenvalue;  // over quadrature nodes
    bool inequality_holds;             // int ||dtf-Af||^2 + int ||Sf||^2 <= int ||dtf-Sf-Af||^2
};
CarlemanResult check_carleman_expansion(const std::function<Vec(double)>& f,
                                        const std::function<Vec(double)>& dtf,
                                        const OperatorPair& ops, double t0, double t1,
                                        int quad_order = 32);

// Spectral discretization of the weighted free-flow pair on a periodic grid:
//   S = -(2i/s) lambda d/dx - (alpha/s^2) lambda x,
//   A = i (d^2/dx^2 + lambda^2/s^2),   s = alpha t + beta,
// which satisfies S_t + [S,A] = -(2 alpha/s) S. Verifies the identity on
// Gaussian-localized test vectors and the differential inequality
//   dt^2 log H >= -(2 alpha/s) dt log H
// along f = e^{lambda x/s} u on the grid flow of u0.
struct SurrogateConfig {
    double lambda = 1.0;
    double alpha = 1.0;
    double beta = 1.0;
    std::size_t points = 256;  // <= 512
    double box_length = 40.0;
    ChirpedGaussian u0 = ChirpedGaussian::standard(1);
    std::vector<double> times;  // uniform grid for the inequality
};
struct SurrogateResult {
    double commutator_residual;
    std::vector<double> eq_2_24_margins;  // one per interior time
};
SurrogateResult gaussian_surrogate_check(const SurrogateConfig& cfg);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace schrocvx
