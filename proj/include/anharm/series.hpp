#pragma once

// Series machinery: asymptotic coefficients h_m, power-series coefficients
// b_n of the auxiliary function w(r), the Wronskian-expansion coefficients
// gamma_k assembled from them, and an ODE-residual self check.

#include <map>
#include <vector>

#include "anharm/potential.hpp"

namespace anharm {

// Truncation / summation control shared by series and wronskian evaluation.
struct Truncation {
    int h_order = 250;                  // highest h index generated (M)
    int b_order = 0;                    // highest b index; 0 = derived from h_order and gamma indices
    double stabilization_tol = 1e-14;   // relative increment threshold for accepting a gamma sum
    int stabilization_run = 5;          // consecutive small increments required
    double qes_zero_threshold = 1e-10;  // relative numerical zero for QES termination detection
};

struct HCoefficients {
    std::vector<double> values;  // h_0 .. h_M (h_0 = 1)
    int truncation_order = 0;    // M
    bool qes_terminated = false;
    int termination_index = -1;  // last index kept when qes_terminated
};

struct BCoefficients {
    std::vector<double> values;  // b_0 .. b_K (b_0 = 1)
    double nu = 0.0;
    int truncation_order = 0;  // K
};

// Outcome of one gamma partial-sum evaluation.
struct SumDiagnostics {
    double value = 0.0;
    bool stabilized = false;     // accepted by the stabilization rule
    int terms_used = 0;          // terms actually summed
    double largest_partial = 0;  // roundoff hump: max |partial sum| or |term| seen
    double smallest_term = 0;    // magnitude at the optimal-truncation cut (0 if stabilized)
};

struct GammaCoefficients {
    std::map<int, double> values;
    Family family = Family::quartic;
    std::map<int, SumDiagnostics> convergence_report;
};

// Asymptotic coefficients of one quartic branch:
//   2 alpha3 m h_m = (E + alpha1^2) h_{m-1} - 2 alpha1 (m-1) h_{m-2}
//                    + ((m-1)(m-2) - am2) h_{m-3},  h_0 = 1.
HCoefficients quartic_h(const AsymptoticSolutionSpec& spec, double am2, double energy, int order);

// Power-series coefficients of w(r) = exp(alpha1 r) exp(-alpha3 r^3/3) u_reg:
//   n(n-1+2nu) b_n = 2 alpha1 (n-1+nu) b_{n-1} - (E+alpha1^2) b_{n-2}
//                    - 2 alpha3 (n-2+nu) b_{n-3} + 2 a2 b_{n-4},  b_0 = 1.
// Degenerate step n(n-1+2nu)=0: at n=1, nu=0 the free coefficient is fixed to
// b_1 = alpha1 b_0 (the image of the even 1D solution under the exp(alpha1 r)
// prefactor); other degenerate steps take b_n = 0. Throws std::runtime_error
// when the leading factor vanishes against a nonzero right-hand side.
BCoefficients quartic_b(const AsymptoticSolutionSpec& spec, double nu, double a2_coef,
                        double energy, int order);

// Sextic analogues. Odd-index h vanish identically; qes_terminated is set when
// a run of consecutive even-index coefficients drops below the numerical-zero
// threshold (relative to the largest |h| before them), in which case the
// stored list is truncated there (exact termination in exact arithmetic).
//   2 alpha4 m h_m = (E + alpha2 (-2m+5+2mu)) h_{m-2}
//                    + ((m-4-mu)(m-3-mu) - am2) h_{m-4}
HCoefficients sextic_h(const AsymptoticSolutionSpec& spec, double am2, double energy, int order,
                       double qes_zero_threshold = 1e-10);

//   n(n-1+2nu) b_n = (-E + alpha2 (2n-3+2nu)) b_{n-2}
//                    + (a2 - alpha2^2 - alpha4 (2n-5+2nu)) b_{n-4} + 2 a4 b_{n-6}
BCoefficients sextic_b(const AsymptoticSolutionSpec& spec, double nu, const SexticPotential& pot,
                       double energy, int order);

// gamma_k = sum_m h_m (2 alpha1 b_{k+m} - (2m+k+2+nu) b_{k+m+1}), k >= 1.
// The sum is accumulated under the truncation-control policy: accepted when
// the last `stabilization_run` increments are each below stabilization_tol
// times the partial sum, otherwise cut at the smallest-magnitude term and
// flagged (diag.stabilized = false, value still returned).
double quartic_gamma(const HCoefficients& h, const BCoefficients& b,
                     const AsymptoticSolutionSpec& spec, double nu, int k,
                     const Truncation& trunc = {}, SumDiagnostics* diag = nullptr);

// gamma_{2k} = sum_m h_{2m} (2 alpha2 b_{2k+2m} - (2k+4m+2+nu-mu) b_{2k+2m+2}), 2k >= 0.
double sextic_gamma(const HCoefficients& h, const BCoefficients& b,
                    const AsymptoticSolutionSpec& spec, double nu, int two_k,
                    const Truncation& trunc = {}, SumDiagnostics* diag = nullptr);

GammaCoefficients quartic_gamma_set(const HCoefficients& h, const BCoefficients& b,
                                    const AsymptoticSolutionSpec& spec, double nu,
                                    const std::vector<int>& indices, const Truncation& trunc = {});
GammaCoefficients sextic_gamma_set(const HCoefficients& h, const BCoefficients& b,
                                   const AsymptoticSolutionSpec& spec, double nu,
                                   const std::vector<int>& indices, const Truncation& trunc = {});

// |w'' + 2(alpha3 r^2 - alpha1) w' + (-2 a2 r^2 + 2 alpha3 r + E + alpha1^2 - am2/r^2) w|
// evaluated from the truncated b series; certifies the recurrence against the
// differential equation it solves. 0 < r <= 1 recommended.
double residual_check(const QuarticPotential& pot, const AsymptoticSolutionSpec& spec, double nu,
                      double energy, double r, int order);
double residual_check(const SexticPotential& pot, const AsymptoticSolutionSpec& spec, double nu,
                      double energy, double r, int order);

}  // namespace anharm
