#pragma once

// Potential families for the radial Schroedinger equation
//   -u'' + V(r) u = E u,   V(r) = A_{2N} r^{2N} + ... + A_2 r^2 + A_{-2} r^{-2}
// restricted to the quartic (N=2) and sextic (N=3) cases, together with the
// indicial exponents at the origin and the exponent sets of the two
// asymptotic solution branches at infinity.

#include <stdexcept>
#include <vector>

namespace anharm {

enum class Family { quartic, sextic };
enum class Branch { recessive, dominant };

struct QuarticPotential {
    double a4;   // r^4 coefficient, must be > 0
    double a2;   // r^2 coefficient
    double am2;  // centrifugal r^-2 coefficient

    QuarticPotential(double a4_, double a2_, double am2_ = 0.0)
        : a4(a4_), a2(a2_), am2(am2_) {
        if (!(a4 > 0.0))
            throw std::invalid_argument("QuarticPotential: a4 must be positive");
        if (1.0 + 4.0 * am2 < 0.0)
            throw std::invalid_argument("QuarticPotential: 1 + 4*am2 must be >= 0");
    }
};

struct SexticPotential {
    double a6;
    double a4;
    double a2;
    double am2;

    SexticPotential(double a6_, double a4_, double a2_, double am2_ = 0.0)
        : a6(a6_), a4(a4_), a2(a2_), am2(am2_) {
        if (!(a6 > 0.0))
            throw std::invalid_argument("SexticPotential: a6 must be positive");
        if (1.0 + 4.0 * am2 < 0.0)
            throw std::invalid_argument("SexticPotential: 1 + 4*am2 must be >= 0");
    }
};

// One asymptotic branch u ~ exp(sum_p alpha_p r^p / p) r^mu sum_m h_m r^-m.
// alphas[p-1] holds alpha_p; the last entry is the leading exponential rate
// (negative for the recessive branch, positive for the dominant one).
struct AsymptoticSolutionSpec {
    std::vector<double> alphas;
    double mu;
    Branch branch;

    double leading_rate() const { return alphas.back(); }
};

// Frobenius exponents at the origin, roots of nu(nu-1) = am2.
struct IndicialPair {
    double nu_regular;  // larger root
    double nu_other;    // smaller root
    bool degenerate;    // 1 + 4*am2 == 0 (double root; log solutions outside scope)
};

// nu = (1 +- sqrt(1+4*am2))/2. Throws std::domain_error when 1+4*am2 < 0.
IndicialPair indicial_exponents(double am2);

// Exponent sets of the two asymptotic branches.
//   quartic: alpha_3 = -+sqrt(a4), alpha_2 = 0, alpha_1 = -+a2/(2 sqrt(a4)), mu = -1
//   sextic:  alpha_4 = -+sqrt(a6), alpha_2 = -+a4/(2 sqrt(a6)),
//            mu = -3/2 -+ (4 a6 a2 - a4^2)/(8 a6 sqrt(a6)), alpha_3 = alpha_1 = 0
AsymptoticSolutionSpec quartic_exponents(const QuarticPotential& pot, Branch branch);
AsymptoticSolutionSpec sextic_exponents(const SexticPotential& pot, Branch branch);

// Quasi-exactly solvable sextic family:
//   V = r^6 - (4s+4J-2) r^2 + (1/4)(4s-1)(4s-3) r^-2.
// Positive integer J makes the J lowest levels of the regular sector exact.
SexticPotential qes_potential(double s, double j);

}  // namespace anharm
