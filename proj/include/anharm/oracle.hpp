#pragma once

// Independent eigenvalue oracle: Numerov integration of -u'' + V u = E u with
// two-sided shooting (outward from the origin, inward from r_max with a
// decaying seed), log-derivative matching at the outer turning point and
// Sturm node counting on the full outward sweep. Shares no numerical kernels
// with the series/wronskian modules.

#include <vector>

#include "anharm/potential.hpp"

namespace anharm {

enum class Boundary {
    dirichlet_origin,  // radial: u ~ r^nu_regular at the origin
    even_1d,           // half line, u'(0) = 0
    odd_1d,            // half line, u(0) = 0
};

struct OracleConfig {
    double r_max = 0.0;            // 0 = family default (6.5 quartic, 4.5 sextic)
    int grid_points = 20000;
    double matching_radius = 0.0;  // 0 = outer classical turning point
    double energy_tolerance = 1e-9;
    double march_step = 0.5;       // node-count march resolution
    bool auto_extend = true;       // grow r_max until V(r_max) - E >= 100
};

// `count` lowest eigenvalues of the sector, ascending. Throws
// std::runtime_error when the cutoff is too small (auto_extend disabled or
// exhausted) or when a state cannot be bracketed.
std::vector<double> oracle_eigenvalues(const QuarticPotential& pot, Boundary boundary, int count,
                                       OracleConfig cfg = {});
std::vector<double> oracle_eigenvalues(const SexticPotential& pot, Boundary boundary, int count,
                                       OracleConfig cfg = {});

}  // namespace anharm
