#pragma once

// The r-independent Wronskian W(E) of the origin-regular solution and the
// recessive asymptotic solution. Two evaluation routes:
//
//  * closed form — Gamma-weighted combinations of gamma coefficients,
//      quartic: W = q^{-(n+nu/3)} [ G(n+1+nu/3) g_{3n+1}
//                   + G(n+1+(nu+1)/3) q^{-1/3} g_{3n+2}
//                   + G(n+1+(nu+2)/3) q^{-2/3} g_{3n+3} ],   q = (-2/3) alpha3
//      sextic:  W = p^{-(n+(1+nu+mu)/4)} [ G(n+1+(1+nu+mu)/4) g_{4n}
//                   + G(n+1+(3+nu+mu)/4) p^{-1/2} g_{4n+2} ], p = -alpha4/2
//    valid at any reference index n >= 0; evaluated over a configured n-set
//    with the cross-n deviation reported as `spread`.
//
//  * direct — the same Wronskian evaluated as
//      exp(-q r^{N+1} (N+1)/... damping) * (2 alpha w T + w T' - w' T)
//    from the convergent b-series (w) and the optimally truncated asymptotic
//    series (T) at a finite radius. Used by the solver to polish roots: the
//    closed form's gamma sums carry a small resummation defect on strongly
//    cancelling cases that the n-spread cannot see (it is common mode).
//
// Both routes share the normalization h_0 = b_0 = 1, so their values are
// directly comparable.

#include <vector>

#include "anharm/potential.hpp"
#include "anharm/real128.hpp"
#include "anharm/series.hpp"

namespace anharm {

struct WronskianValue {
    double value = 0.0;        // W at the reference index (or radius)
    double scale = 0.0;        // max |term| combined; W is meaningful only up to this scale
    double spread = 0.0;       // max pairwise |W_i - W_j| / scale across the n-set (or radius pair)
    bool converged = false;    // sums stabilized and spread below tolerance
    double noise_floor = 0.0;  // absolute estimate of the numerical floor on `value`
};

struct WronskianConfig {
    Truncation truncation;
    // Reference indices for the consistency spread. The closed form's
    // n-independence is asymptotic: small n (< ~20) can carry an n-dependent
    // bias up to ~1e-4 on strongly cancelling double-well cells, while by
    // n ~ 40 the extraction has converged; n beyond ~60 risks overflow of
    // the Gamma weights in double precision.
    std::vector<int> n_set{40, 41, 42};
    double spread_tolerance = 1e-6;
    Precision precision = Precision::float64;
};

// Closed-form evaluation at reference index n (n >= 0), spread over cfg.n_set.
// Throws std::domain_error if a Gamma argument hits a non-positive integer.
WronskianValue quartic_wronskian(const QuarticPotential& pot, double nu, double energy, int n,
                                 const WronskianConfig& cfg = {});
WronskianValue sextic_wronskian(const SexticPotential& pot, double nu, double energy, int n,
                                const WronskianConfig& cfg = {});

struct DirectConfig {
    double radius = 0.0;      // 0 = automatic ladder selection
    int h_order = 250;        // cap on asymptotic terms (optimal truncation decides the cut)
    int b_order = 0;          // cap on b terms; 0 = automatic tail-driven length
    bool with_spread = true;  // evaluate at a second radius and report the deviation
    Precision precision = Precision::float64;
};

WronskianValue quartic_wronskian_direct(const QuarticPotential& pot, double nu, double energy,
                                        const DirectConfig& cfg = {});
WronskianValue sextic_wronskian_direct(const SexticPotential& pot, double nu, double energy,
                                       const DirectConfig& cfg = {});

// Candidate evaluation radii for the direct route, scaled to the potential's
// own length unit (a4^(-1/6) or a6^(-1/8)). Ascending; small radii minimize
// the dominant-solution contrast, large ones deepen the asymptotic cut.
std::vector<double> direct_radius_ladder(Family family, double leading_coefficient);

}  // namespace anharm
