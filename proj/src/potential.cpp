#include "anharm/potential.hpp"

#include <cmath>

namespace anharm {

IndicialPair indicial_exponents(double am2) {
    double disc = 1.0 + 4.0 * am2;
    if (disc < 0.0)
        throw std::domain_error("indicial_exponents: 1 + 4*am2 < 0, exponents are complex");
    double root = std::sqrt(disc);
    return {0.5 * (1.0 + root), 0.5 * (1.0 - root), disc == 0.0};
}

AsymptoticSolutionSpec quartic_exponents(const QuarticPotential& pot, Branch branch) {
    double s = branch == Branch::recessive ? -1.0 : 1.0;
    double root = std::sqrt(pot.a4);
    AsymptoticSolutionSpec spec;
    spec.alphas = {s * pot.a2 / (2.0 * root), 0.0, s * root};
    spec.mu = -1.0;
    spec.branch = branch;
    return spec;
}

AsymptoticSolutionSpec sextic_exponents(const SexticPotential& pot, Branch branch) {
    double s = branch == Branch::recessive ? -1.0 : 1.0;
    double root = std::sqrt(pot.a6);
    AsymptoticSolutionSpec spec;
    spec.alphas = {0.0, s * pot.a4 / (2.0 * root), 0.0, s * root};
    spec.mu = -1.5 + s * (4.0 * pot.a6 * pot.a2 - pot.a4 * pot.a4) / (8.0 * pot.a6 * root);
    spec.branch = branch;
    return spec;
}

SexticPotential qes_potential(double s, double j) {
    return SexticPotential(1.0, 0.0, -(4.0 * s + 4.0 * j - 2.0),
                           0.25 * (4.0 * s - 1.0) * (4.0 * s - 3.0));
}

}  // namespace anharm
