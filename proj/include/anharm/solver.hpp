#pragma once

// Eigenvalue enumeration: grid the energy axis, bracket sign changes of the
// normalized Wronskian, refine each bracket with a guarded Brent iteration,
// polish in extended precision, and attach error estimates and cross checks.

#include <functional>
#include <string>
#include <vector>

#include "anharm/potential.hpp"
#include "anharm/wronskian.hpp"

namespace anharm {

enum class ScanRoute { direct, closed_form };

struct EnergyScanConfig {
    double e_min = 0.0;
    double e_max = 0.0;
    double step = 0.01;
    double root_tolerance = 1e-10;  // absolute, on E
    int max_refine_iterations = 200;
    std::vector<int> n_set{40, 41, 42};
    Truncation truncation;
    double spread_tolerance = 1e-6;
    ScanRoute route = ScanRoute::direct;
    bool parallel = true;           // OpenMP grid evaluation (results identical to serial)
    bool polish_extended = true;    // final bisection pass in extended precision
    bool diagnostics = true;        // closed-form drift estimates per root
};

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

struct ScanWarning {
    double energy;
    std::string reason;
};

struct ScanResult {
    std::vector<Bracket> brackets;
    std::vector<ScanWarning> warnings;  // non-converged evaluations excluded from bracketing
};

struct EigenvalueResult {
    double energy = 0.0;
    double sector_nu = 0.0;
    Bracket bracket;
    double estimated_error = 0.0;  // max(root tolerance, cross-n drift, truncation/route drift)
    int index_in_sector = 0;
    bool qes_exact = false;  // h-series terminated at this root (sextic QES)
    bool converged = true;
};

using WronskianEvaluator = std::function<WronskianValue(double)>;

// Normalized-W sign-change brackets on the configured grid, with one local
// halving pass around each detection. Empty result is valid (no roots).
ScanResult scan_brackets(const QuarticPotential& pot, double nu, const EnergyScanConfig& cfg);
ScanResult scan_brackets(const SexticPotential& pot, double nu, const EnergyScanConfig& cfg);

// Grid evaluation kernel behind scan_brackets; `parallel` toggles the OpenMP
// path. Exposed for the serial/parallel equivalence tests and the benchmark.
std::vector<WronskianValue> scan_grid(const WronskianEvaluator& w,
                                      const std::vector<double>& energies, bool parallel);

// Brent refinement (inverse-quadratic step with bisection fallback) of one
// sign-change bracket. Stops when the bracket shrinks below root_tolerance or
// |W| falls below the evaluation's own noise floor. Throws on a bracket
// without sign change or on iteration exhaustion.
EigenvalueResult refine_root(const WronskianEvaluator& w, Bracket bracket,
                             const EnergyScanConfig& cfg);

// The `count` lowest eigenvalues of one sector, ascending, with estimated
// errors, convergence diagnostics and QES-exactness flags attached.
// Throws std::runtime_error if the grid exhausts before `count` roots.
std::vector<EigenvalueResult> eigenvalues(const QuarticPotential& pot, double nu, int count,
                                          const EnergyScanConfig& cfg);
std::vector<EigenvalueResult> eigenvalues(const SexticPotential& pot, double nu, int count,
                                          const EnergyScanConfig& cfg);

// Merge per-sector lists into one spectrum ordered by energy; index fields are
// relabeled to the merged ordering (sector_nu identifies the origin).
std::vector<EigenvalueResult> merge_sectors(const std::vector<std::vector<EigenvalueResult>>& sectors);

}  // namespace anharm
