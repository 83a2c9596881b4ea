#include "anharm/series.hpp"

#include <cmath>
#include <stdexcept>

#include "anharm/detail/series_kernels.hpp"

namespace anharm {

namespace {

void require_quartic(const AsymptoticSolutionSpec& spec) {
    if (spec.alphas.size() != 3)
        throw std::invalid_argument("expected a quartic asymptotic branch (3 exponents)");
}
void require_sextic(const AsymptoticSolutionSpec& spec) {
    if (spec.alphas.size() != 4)
        throw std::invalid_argument("expected a sextic asymptotic branch (4 exponents)");
}

SumDiagnostics to_diag(const detail::SumResult<double>& r) {
    return {r.value, r.stabilized, r.terms_used, r.largest_partial, r.smallest_term};
}

}  // namespace

HCoefficients quartic_h(const AsymptoticSolutionSpec& spec, double am2, double energy, int order) {
    require_quartic(spec);
    if (order < 0) throw std::invalid_argument("quartic_h: order must be >= 0");
    HCoefficients out;
    out.values = detail::quartic_h_kernel<double>(spec.alphas[2], spec.alphas[0], am2, energy, order);
    out.truncation_order = order;
    out.qes_terminated = false;  // the quartic recurrence never terminates
    return out;
}

BCoefficients quartic_b(const AsymptoticSolutionSpec& spec, double nu, double a2_coef,
                        double energy, int order) {
    require_quartic(spec);
    if (spec.branch != Branch::recessive)
        throw std::invalid_argument("quartic_b: recessive branch required");
    if (order < 0) throw std::invalid_argument("quartic_b: order must be >= 0");
    BCoefficients out;
    out.values = detail::quartic_b_kernel<double>(spec.alphas[2], spec.alphas[0], nu, a2_coef,
                                                  energy, order, spec.alphas[0]);
    out.nu = nu;
    out.truncation_order = order;
    return out;
}

// QES termination: a window of consecutive even-index coefficients below the
// numerical-zero threshold relative to the preceding maximum. Roundoff revives
// the tail at higher orders, so the stored list is truncated at the detected
// index (the exact-arithmetic tail is identically zero).
HCoefficients sextic_h(const AsymptoticSolutionSpec& spec, double am2, double energy, int order,
                       double qes_zero_threshold) {
    require_sextic(spec);
    if (order < 0) throw std::invalid_argument("sextic_h: order must be >= 0");
    HCoefficients out;
    out.values =
        detail::sextic_h_kernel<double>(spec.alphas[3], spec.alphas[1], spec.mu, am2, energy, order);
    out.truncation_order = order;

    constexpr int window = 5;  // consecutive even indices required below threshold
    double prefix_max = 0.0;
    for (int t = 0; t + 2 * window <= order; t += 2) {
        prefix_max = std::max(prefix_max, std::fabs(out.values[t]));
        bool run = true;
        for (int m = t + 2; m <= t + 2 * window && run; m += 2)
            run = std::fabs(out.values[m]) <= qes_zero_threshold * prefix_max;
        if (run && prefix_max > 0.0) {
            out.qes_terminated = true;
            out.termination_index = t;
            out.values.resize(t + 1);
            break;
        }
    }
    return out;
}

BCoefficients sextic_b(const AsymptoticSolutionSpec& spec, double nu, const SexticPotential& pot,
                       double energy, int order) {
    require_sextic(spec);
    if (spec.branch != Branch::recessive)
        throw std::invalid_argument("sextic_b: recessive branch required");
    if (order < 0) throw std::invalid_argument("sextic_b: order must be >= 0");
    BCoefficients out;
    out.values = detail::sextic_b_kernel<double>(spec.alphas[3], spec.alphas[1], nu, pot.a2,
                                                 pot.a4, energy, order);
    out.nu = nu;
    out.truncation_order = order;
    return out;
}

double quartic_gamma(const HCoefficients& h, const BCoefficients& b,
                     const AsymptoticSolutionSpec& spec, double nu, int k, const Truncation& trunc,
                     SumDiagnostics* diag) {
    require_quartic(spec);
    if (k < 1) throw std::invalid_argument("quartic_gamma: k must be >= 1");
    auto r = detail::quartic_gamma_kernel<double>(h.values, b.values, spec.alphas[0], nu, k,
                                                  trunc.stabilization_tol, trunc.stabilization_run);
    if (diag) *diag = to_diag(r);
    return r.value;
}

double sextic_gamma(const HCoefficients& h, const BCoefficients& b,
                    const AsymptoticSolutionSpec& spec, double nu, int two_k,
                    const Truncation& trunc, SumDiagnostics* diag) {
    require_sextic(spec);
    if (two_k < 0 || two_k % 2 != 0)
        throw std::invalid_argument("sextic_gamma: index must be an even integer >= 0");
    auto r = detail::sextic_gamma_kernel<double>(h.values, b.values, spec.alphas[1], nu, spec.mu,
                                                 two_k, trunc.stabilization_tol,
                                                 trunc.stabilization_run);
    if (diag) *diag = to_diag(r);
    return r.value;
}

GammaCoefficients quartic_gamma_set(const HCoefficients& h, const BCoefficients& b,
                                    const AsymptoticSolutionSpec& spec, double nu,
                                    const std::vector<int>& indices, const Truncation& trunc) {
    GammaCoefficients out;
    out.family = Family::quartic;
    for (int k : indices) {
        SumDiagnostics d;
        out.values[k] = quartic_gamma(h, b, spec, nu, k, trunc, &d);
        out.convergence_report[k] = d;
    }
    return out;
}

GammaCoefficients sextic_gamma_set(const HCoefficients& h, const BCoefficients& b,
                                   const AsymptoticSolutionSpec& spec, double nu,
                                   const std::vector<int>& indices, const Truncation& trunc) {
    GammaCoefficients out;
    out.family = Family::sextic;
    for (int k : indices) {
        SumDiagnostics d;
        out.values[k] = sextic_gamma(h, b, spec, nu, k, trunc, &d);
        out.convergence_report[k] = d;
    }
    return out;
}

namespace {

// w, w', w'' from the truncated series w = sum b_n r^{n+nu}
struct SeriesEval {
    double w, wp, wpp;
};

SeriesEval eval_b_series(const std::vector<double>& b, double nu, double r) {
    SeriesEval s{0.0, 0.0, 0.0};
    double rp = std::pow(r, nu);  // r^{n+nu}
    for (int n = 0; n < (int)b.size(); ++n) {
        double p = nu + n;
        s.w += b[n] * rp;
        s.wp += b[n] * p * rp / r;
        s.wpp += b[n] * p * (p - 1.0) * rp / (r * r);
        rp *= r;
    }
    return s;
}

}  // namespace

double residual_check(const QuarticPotential& pot, const AsymptoticSolutionSpec& spec, double nu,
                      double energy, double r, int order) {
    require_quartic(spec);
    if (!(r > 0.0)) throw std::invalid_argument("residual_check: r must be positive");
    auto b = quartic_b(spec, nu, pot.a2, energy, order);
    auto s = eval_b_series(b.values, nu, r);
    double a3 = spec.alphas[2], a1 = spec.alphas[0];
    double coeff_wp = 2.0 * (a3 * r * r - a1);
    double coeff_w =
        -2.0 * pot.a2 * r * r + 2.0 * a3 * r + energy + a1 * a1 - pot.am2 / (r * r);
    return std::fabs(s.wpp + coeff_wp * s.wp + coeff_w * s.w);
}

double residual_check(const SexticPotential& pot, const AsymptoticSolutionSpec& spec, double nu,
                      double energy, double r, int order) {
    require_sextic(spec);
    if (!(r > 0.0)) throw std::invalid_argument("residual_check: r must be positive");
    auto b = sextic_b(spec, nu, pot, energy, order);
    auto s = eval_b_series(b.values, nu, r);
    double a4 = spec.alphas[3], a2 = spec.alphas[1];
    double coeff_wp = 2.0 * (a4 * r * r * r - a2 * r);
    double coeff_w = -2.0 * pot.a4 * r * r * r * r +
                     (3.0 * a4 + a2 * a2 - pot.a2) * r * r + energy - a2 - pot.am2 / (r * r);
    return std::fabs(s.wpp + coeff_wp * s.wp + coeff_w * s.w);
}

}  // namespace anharm
