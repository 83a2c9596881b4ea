#include "anharm/wronskian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "anharm/detail/series_kernels.hpp"
#include "anharm/log_gamma.hpp"

namespace anharm {

namespace {

using detail::fp_abs;
using detail::fp_eps;
using detail::fp_exp;
using detail::fp_log;
using detail::fp_pow;
using detail::to_double;

template <class Real>
struct ClosedPoint {
    Real value = Real(0);
    Real scale = Real(0);
    Real noise = Real(0);
    bool accepted = true;  // every gamma stabilized or cut at a clear minimum
};

// the truncation-control policy accepts a sum when it stabilizes or when the
// optimal-truncation cut happens at a clearly resolved minimum
template <class Real>
bool sum_accepted(const detail::SumResult<Real>& g) {
    return g.stabilized || g.smallest_term <= Real(1e-8) * g.largest_partial;
}

// recurrences may overflow past the useful range; drop the junk tail
template <class Real>
void truncate_nonfinite(std::vector<Real>& v) {
    for (size_t i = 0; i < v.size(); ++i)
        if (!detail::fp_finite(v[i])) {
            v.resize(i);
            return;
        }
}

// One closed-form evaluation at reference index n from shared h/b tables.
template <class Real>
ClosedPoint<Real> quartic_closed_point(const std::vector<Real>& h, const std::vector<Real>& b,
                                       Real a1, Real a3, Real nu, int n, Real stab_tol, int run) {
    Real q = Real(-2) / Real(3) * a3;  // (2/3) sqrt(a4) > 0 on the recessive branch
    Real lq = fp_log(q);
    ClosedPoint<Real> out;
    Real terms[3];
    for (int j = 0; j < 3; ++j) {
        auto g = detail::quartic_gamma_kernel<Real>(h, b, a1, nu, 3 * n + 1 + j, stab_tol, run);
        out.accepted = out.accepted && sum_accepted(g);
        int sg = 1;
        Real lgam = detail::log_gamma_impl<Real>(Real(n + 1) + (nu + Real(j)) / Real(3), &sg);
        Real weight = fp_exp(lgam - Real(j) / Real(3) * lq);
        terms[j] = Real(sg) * weight * g.value;
        out.noise += weight * (fp_eps<Real>() * g.largest_partial + g.smallest_term);
    }
    Real pre = fp_exp(-(Real(n) + nu / Real(3)) * lq);
    out.value = pre * (terms[0] + terms[1] + terms[2]);
    out.scale = pre * std::max({fp_abs(terms[0]), fp_abs(terms[1]), fp_abs(terms[2])});
    out.noise *= pre;
    return out;
}

template <class Real>
ClosedPoint<Real> sextic_closed_point(const std::vector<Real>& h, const std::vector<Real>& b,
                                      Real a2, Real a4, Real nu, Real mu, int n, Real stab_tol,
                                      int run) {
    Real p = -a4 / Real(2);  // sqrt(a6)/2 > 0 on the recessive branch
    Real lp = fp_log(p);
    Real delta = (Real(1) + nu + mu) / Real(4);
    ClosedPoint<Real> out;
    Real terms[2];
    for (int j = 0; j < 2; ++j) {
        auto g = detail::sextic_gamma_kernel<Real>(h, b, a2, nu, mu, 4 * n + 2 * j, stab_tol, run);
        out.accepted = out.accepted && sum_accepted(g);
        int sg = 1;
        Real lgam = detail::log_gamma_impl<Real>(Real(n + 1) + delta + Real(j) / Real(2), &sg);
        Real weight = fp_exp(lgam - Real(j) / Real(2) * lp);
        terms[j] = Real(sg) * weight * g.value;
        out.noise += weight * (fp_eps<Real>() * g.largest_partial + g.smallest_term);
    }
    Real pre = fp_exp(-(Real(n) + delta) * lp);
    out.value = pre * (terms[0] + terms[1]);
    out.scale = pre * std::max(fp_abs(terms[0]), fp_abs(terms[1]));
    out.noise *= pre;
    return out;
}

template <class Real>
WronskianValue closed_form_eval(Family family, Real a_lead, Real a_sub, Real nu, Real mu,
                                Real a2pot, Real a4pot, Real am2, Real energy, int n_report,
                                const WronskianConfig& cfg) {
    std::vector<int> ns = cfg.n_set;
    if (std::find(ns.begin(), ns.end(), n_report) == ns.end()) ns.push_back(n_report);
    int n_max = *std::max_element(ns.begin(), ns.end());
    int gamma_max = family == Family::quartic ? 3 * n_max + 3 : 4 * n_max + 2;

    int M = cfg.truncation.h_order;
    int K = cfg.truncation.b_order > 0 ? cfg.truncation.b_order : gamma_max + M + 2;
    // extended mode keeps a 1e-20 stabilization floor: the m-sum tails decay
    // only algebraically, chasing 100*eps_quad would demand absurd orders
    Real tol = std::max(std::min(Real(cfg.truncation.stabilization_tol),
                                 Real(100) * fp_eps<Real>()),
                        std::min(Real(cfg.truncation.stabilization_tol), Real(1e-20)));
    int run = cfg.truncation.stabilization_run;

    std::vector<Real> h, b;
    if (family == Family::quartic) {
        h = detail::quartic_h_kernel<Real>(a_lead, a_sub, am2, energy, M);
        b = detail::quartic_b_kernel<Real>(a_lead, a_sub, nu, a2pot, energy, K, a_sub);
    } else {
        h = detail::sextic_h_kernel<Real>(a_lead, a_sub, mu, am2, energy, M);
        b = detail::sextic_b_kernel<Real>(a_lead, a_sub, nu, a2pot, a4pot, energy, K);
    }
    truncate_nonfinite(h);
    truncate_nonfinite(b);

    WronskianValue out;
    bool all_accepted = true;
    Real scale_all = Real(0);
    std::vector<Real> values(ns.size());
    for (size_t i = 0; i < ns.size(); ++i) {
        ClosedPoint<Real> pt =
            family == Family::quartic
                ? quartic_closed_point<Real>(h, b, a_sub, a_lead, nu, ns[i], tol, run)
                : sextic_closed_point<Real>(h, b, a_sub, a_lead, nu, mu, ns[i], tol, run);
        values[i] = pt.value;
        all_accepted = all_accepted && pt.accepted;
        scale_all = std::max(scale_all, pt.scale);
        if (ns[i] == n_report) {
            out.value = to_double(pt.value);
            out.scale = to_double(pt.scale);
            out.noise_floor = to_double(pt.noise);
        }
    }
    Real spread = Real(0);
    for (size_t i = 0; i < values.size(); ++i)
        for (size_t j = i + 1; j < values.size(); ++j)
            spread = std::max(spread, fp_abs(values[i] - values[j]));
    out.spread = scale_all > Real(0) ? to_double(spread / scale_all) : 0.0;
    out.converged = all_accepted && out.spread <= cfg.spread_tolerance;
    return out;
}

// ---------------------------------------------------------------------------
// Direct product evaluation at a finite radius.

template <class Real>
struct DirectPoint {
    Real value = Real(0);
    Real scale = Real(0);
    Real noise_rel = Real(1);  // eps*cancellations + asymptotic least term
    bool usable = false;
};

// w(r), w'(r) from the b series with automatic length: extend until the tail
// is negligible against the largest term.
template <class Real>
bool sum_b_series(Family family, Real a_lead, Real a_sub, Real nu, Real a2pot, Real a4pot,
                  Real energy, Real r, int k_cap, Real* w, Real* wp, Real* cancel) {
    int K = 160;
    int hard_cap = k_cap > 0 ? k_cap : 1600;
    for (;;) {
        std::vector<Real> b =
            family == Family::quartic
                ? detail::quartic_b_kernel<Real>(a_lead, a_sub, nu, a2pot, energy, K, a_sub)
                : detail::sextic_b_kernel<Real>(a_lead, a_sub, nu, a2pot, a4pot, energy, K);
        Real sw(0), swp(0), maxterm(0), tail(0);
        Real rp = fp_pow(r, nu);
        int summed = 0;
        for (int n = 0; n < (int)b.size() && detail::fp_finite(rp); ++n) {
            Real t = b[n] * rp;
            sw += t;
            swp += t * (nu + Real(n)) / r;
            Real mag = fp_abs(t);
            if (mag > maxterm) maxterm = mag;
            tail = n >= (int)b.size() - 8 ? tail + mag : Real(0);
            rp *= r;
            ++summed;
        }
        // the tail only needs to sit well below the summation's own roundoff
        bool decayed = summed < (int)b.size()  // b underflowed: exact zero tail
                       || tail <= Real(1e-3) * fp_eps<Real>() * maxterm;
        if (decayed || K >= hard_cap) {
            *w = sw;
            *wp = swp;
            *cancel = fp_abs(sw) > Real(0) ? maxterm / fp_abs(sw) : Real(1e300);
            return decayed || tail <= fp_eps<Real>() * maxterm;
        }
        K = std::min(hard_cap, K * 2);
    }
}

template <class Real>
DirectPoint<Real> direct_point(Family family, Real a_lead, Real a_sub, Real nu, Real mu,
                               Real a2pot, Real a4pot, Real am2, Real energy, Real r, int m_cap,
                               int k_cap) {
    // asymptotic factor T = r^mu * S, S = sum h_m r^-m cut at the least term
    std::vector<Real> h =
        family == Family::quartic
            ? detail::quartic_h_kernel<Real>(a_lead, a_sub, am2, energy, m_cap)
            : detail::sextic_h_kernel<Real>(a_lead, a_sub, mu, am2, energy, m_cap);
    truncate_nonfinite(h);
    if (h.empty()) return {};
    int m_opt = 0;
    {
        Real best = fp_abs(h[0]), rm = Real(1);
        int grow = 0;
        for (int m = 0; m < (int)h.size(); ++m) {
            Real mag = fp_abs(h[m] * rm);
            if (mag < best && mag > Real(0)) { best = mag; m_opt = m; grow = 0; }
            else if (mag > best && ++grow > 24) break;  // deep in the divergent tail
            rm /= r;
        }
    }
    Real S(0), Sp(0), hump(0), least(0), rm(1);
    for (int m = 0; m <= m_opt; ++m) {
        Real t = h[m] * rm;
        S += t;
        Sp += t * Real(-m) / r;
        hump = std::max(hump, fp_abs(t));
        if (m == m_opt) least = fp_abs(t);
        rm /= r;
    }
    DirectPoint<Real> out;
    if (!(fp_abs(S) > Real(0))) return out;
    Real least_rel = least / fp_abs(S);
    // exact truncation: a terminating series has a vanishing least term
    if (m_opt + 4 < (int)h.size()) {
        bool zero_tail = true;
        for (int m = m_opt + 1; m <= m_opt + 4; ++m) zero_tail = zero_tail && h[m] == Real(0);
        if (zero_tail) least_rel = Real(0);
    }
    Real cancel_S = hump / fp_abs(S);

    Real w, wp, cancel_b;
    bool b_ok = sum_b_series<Real>(family, a_lead, a_sub, nu, a2pot, a4pot, energy, r, k_cap, &w,
                                   &wp, &cancel_b);

    Real T = fp_pow(r, mu) * S;
    Real Tp = mu * fp_pow(r, mu - Real(1)) * S + fp_pow(r, mu) * Sp;
    Real cross = family == Family::quartic ? Real(2) * a_sub : Real(2) * a_sub * r;
    Real inner = cross * w * T + w * Tp - wp * T;
    Real damp = family == Family::quartic
                    ? fp_exp(Real(2) / Real(3) * a_lead * r * r * r)   // exp(-q r^3), q = -(2/3) a3
                    : fp_exp(a_lead * r * r * r * r / Real(2));        // exp(-p r^4), p = -a4/2
    out.value = damp * inner;
    out.scale =
        damp * std::max({fp_abs(cross * w * T), fp_abs(w * Tp), fp_abs(wp * T), Real(1e-300)});
    out.noise_rel = fp_eps<Real>() * (cancel_b + cancel_S) + least_rel;
    out.usable = b_ok && detail::fp_finite(out.value);
    return out;
}

template <class Real>
WronskianValue direct_eval(Family family, Real a_lead, Real a_sub, Real nu, Real mu, Real a2pot,
                           Real a4pot, Real am2, Real energy, const DirectConfig& cfg,
                           double scale_unit) {
    std::vector<double> ladder = direct_radius_ladder(family, 1.0);  // scale applied below

    Real target = fp_eps<Real>() < Real(1e-20) ? Real(1e-22) : Real(1e-11);
    DirectPoint<Real> best;
    Real best_r = Real(ladder[0]) * Real(scale_unit);
    if (cfg.radius > 0.0) {
        best_r = Real(cfg.radius);
        best = direct_point<Real>(family, a_lead, a_sub, nu, mu, a2pot, a4pot, am2, energy, best_r,
                                  cfg.h_order, cfg.b_order);
    } else {
        for (size_t i = 0; i < ladder.size(); ++i) {
            Real r = Real(ladder[i]) * Real(scale_unit);
            auto pt = direct_point<Real>(family, a_lead, a_sub, nu, mu, a2pot, a4pot, am2, energy,
                                         r, cfg.h_order, cfg.b_order);
            if (pt.usable && (!best.usable || pt.noise_rel < best.noise_rel)) {
                best = pt;
                best_r = r;
            }
            if (pt.usable && pt.noise_rel < target) break;
        }
    }

    WronskianValue out;
    out.value = to_double(best.value);
    out.scale = to_double(best.scale);
    out.noise_floor = to_double(best.noise_rel * best.scale);
    out.converged = best.usable && to_double(best.noise_rel) < 1e-8;
    if (cfg.with_spread && best.usable) {
        Real r2 = best_r * Real(1.12);
        auto pt2 = direct_point<Real>(family, a_lead, a_sub, nu, mu, a2pot, a4pot, am2, energy, r2,
                                      cfg.h_order, cfg.b_order);
        if (pt2.usable) {
            double s = std::max(out.scale, to_double(pt2.scale));
            out.spread = std::fabs(out.value - to_double(pt2.value)) / s;
            out.converged = out.converged && out.spread < 1e-6;
        }
    }
    if (!best.usable) out.converged = false;
    return out;
}

}  // namespace

WronskianValue quartic_wronskian(const QuarticPotential& pot, double nu, double energy, int n,
                                 const WronskianConfig& cfg) {
    if (n < 0) throw std::invalid_argument("quartic_wronskian: reference index n must be >= 0");
    auto spec = quartic_exponents(pot, Branch::recessive);
    if (cfg.precision == Precision::extended)
        return closed_form_eval<extended>(Family::quartic, extended(spec.alphas[2]),
                                          extended(spec.alphas[0]), extended(nu), extended(spec.mu),
                                          extended(pot.a2), extended(0), extended(pot.am2),
                                          extended(energy), n, cfg);
    return closed_form_eval<double>(Family::quartic, spec.alphas[2], spec.alphas[0], nu, spec.mu,
                                    pot.a2, 0.0, pot.am2, energy, n, cfg);
}

WronskianValue sextic_wronskian(const SexticPotential& pot, double nu, double energy, int n,
                                const WronskianConfig& cfg) {
    if (n < 0) throw std::invalid_argument("sextic_wronskian: reference index n must be >= 0");
    auto spec = sextic_exponents(pot, Branch::recessive);
    if (cfg.precision == Precision::extended)
        return closed_form_eval<extended>(Family::sextic, extended(spec.alphas[3]),
                                          extended(spec.alphas[1]), extended(nu), extended(spec.mu),
                                          extended(pot.a2), extended(pot.a4), extended(pot.am2),
                                          extended(energy), n, cfg);
    return closed_form_eval<double>(Family::sextic, spec.alphas[3], spec.alphas[1], nu, spec.mu,
                                    pot.a2, pot.a4, pot.am2, energy, n, cfg);
}

std::vector<double> direct_radius_ladder(Family family, double leading_coefficient) {
    std::vector<double> ladder = family == Family::quartic
                                     ? std::vector<double>{3.4, 4.0, 4.6, 5.2, 6.0}
                                     : std::vector<double>{2.3, 2.7, 3.1, 3.5, 3.9};
    double unit = family == Family::quartic ? std::pow(leading_coefficient, -1.0 / 6.0)
                                            : std::pow(leading_coefficient, -1.0 / 8.0);
    for (double& r : ladder) r *= unit;
    return ladder;
}

WronskianValue quartic_wronskian_direct(const QuarticPotential& pot, double nu, double energy,
                                        const DirectConfig& cfg) {
    auto spec = quartic_exponents(pot, Branch::recessive);
    double unit = std::pow(pot.a4, -1.0 / 6.0);
    if (cfg.precision == Precision::extended)
        return direct_eval<extended>(Family::quartic, extended(spec.alphas[2]),
                                     extended(spec.alphas[0]), extended(nu), extended(spec.mu),
                                     extended(pot.a2), extended(0), extended(pot.am2),
                                     extended(energy), cfg, unit);
    return direct_eval<double>(Family::quartic, spec.alphas[2], spec.alphas[0], nu, spec.mu,
                               pot.a2, 0.0, pot.am2, energy, cfg, unit);
}

WronskianValue sextic_wronskian_direct(const SexticPotential& pot, double nu, double energy,
                                       const DirectConfig& cfg) {
    auto spec = sextic_exponents(pot, Branch::recessive);
    double unit = std::pow(pot.a6, -1.0 / 8.0);
    if (cfg.precision == Precision::extended)
        return direct_eval<extended>(Family::sextic, extended(spec.alphas[3]),
                                     extended(spec.alphas[1]), extended(nu), extended(spec.mu),
                                     extended(pot.a2), extended(pot.a4), extended(pot.am2),
                                     extended(energy), cfg, unit);
    return direct_eval<double>(Family::sextic, spec.alphas[3], spec.alphas[1], nu, spec.mu,
                               pot.a2, pot.a4, pot.am2, energy, cfg, unit);
}

}  // namespace anharm
