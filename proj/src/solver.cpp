#include "anharm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "anharm/detail/series_kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace anharm {

namespace {

WronskianValue safe_eval(const WronskianEvaluator& w, double e) {
    try {
        return w(e);
    } catch (const std::exception&) {
        WronskianValue bad;
        bad.value = std::numeric_limits<double>::quiet_NaN();
        return bad;
    }
}

double norm_of(const WronskianValue& v) {
    return v.scale > 0.0 ? v.value / v.scale : v.value;
}

bool usable_point(const WronskianValue& v) {
    if (!std::isfinite(v.value) || !std::isfinite(v.scale) || v.scale <= 0.0) return false;
    return v.noise_floor < 0.3 * v.scale;  // sign carries information
}

struct EvaluatorBundle {
    WronskianEvaluator scan;         // double precision, no spread (fast)
    WronskianEvaluator refine;       // double precision, with spread
    WronskianEvaluator polish;       // extended precision
    WronskianEvaluator closed;       // closed form at n_set.front()
    WronskianEvaluator closed_deep;  // closed form, truncation + 20
};

// Pin one evaluation radius for a whole scan: per-point automatic selection
// would give adjacent grid points differently-biased normalized values and
// scramble the sign pattern. Smallest ladder radius usable across the range
// wins (it minimizes the dominant-solution contrast).
template <class Pot>
double pick_scan_radius(const Pot& pot, double nu, const EnergyScanConfig& cfg) {
    constexpr Family family =
        std::is_same_v<Pot, QuarticPotential> ? Family::quartic : Family::sextic;
    double lead = 0.0;
    if constexpr (std::is_same_v<Pot, QuarticPotential>) lead = pot.a4;
    else lead = pot.a6;
    auto ladder = direct_radius_ladder(family, lead);
    const double probes[3] = {cfg.e_min, 0.5 * (cfg.e_min + cfg.e_max), cfg.e_max};
    for (double r : ladder) {
        bool ok = true;
        for (double e : probes) {
            DirectConfig dc;
            dc.radius = r;
            dc.h_order = cfg.truncation.h_order;
            dc.b_order = cfg.truncation.b_order;
            dc.with_spread = false;
            WronskianValue v;
            if constexpr (std::is_same_v<Pot, QuarticPotential>)
                v = quartic_wronskian_direct(pot, nu, e, dc);
            else
                v = sextic_wronskian_direct(pot, nu, e, dc);
            if (!(v.scale > 0.0) || !std::isfinite(v.value) || v.noise_floor > 1e-6 * v.scale) {
                ok = false;
                break;
            }
        }
        if (ok) return r;
    }
    return 0.0;  // fall back to per-point selection
}

template <class Pot>
EvaluatorBundle make_bundle(const Pot& pot, double nu, const EnergyScanConfig& cfg) {
    DirectConfig scan_cfg;
    scan_cfg.h_order = cfg.truncation.h_order;
    scan_cfg.b_order = cfg.truncation.b_order;
    scan_cfg.with_spread = false;
    scan_cfg.radius = pick_scan_radius(pot, nu, cfg);
    DirectConfig refine_cfg = scan_cfg;
    refine_cfg.with_spread = true;
    DirectConfig polish_cfg = scan_cfg;
    polish_cfg.radius = 0.0;
    polish_cfg.precision = Precision::extended;

    WronskianConfig closed_cfg;
    closed_cfg.truncation = cfg.truncation;
    closed_cfg.n_set = cfg.n_set;
    closed_cfg.spread_tolerance = cfg.spread_tolerance;
    WronskianConfig deep_cfg = closed_cfg;
    deep_cfg.truncation.h_order += 20;
    if (deep_cfg.truncation.b_order > 0) deep_cfg.truncation.b_order += 20;
    int n0 = cfg.n_set.empty() ? 40 : cfg.n_set.front();

    EvaluatorBundle b;
    if constexpr (std::is_same_v<Pot, QuarticPotential>) {
        b.scan = [=](double e) { return quartic_wronskian_direct(pot, nu, e, scan_cfg); };
        b.refine = [=](double e) { return quartic_wronskian_direct(pot, nu, e, refine_cfg); };
        b.polish = [=](double e) { return quartic_wronskian_direct(pot, nu, e, polish_cfg); };
        b.closed = [=](double e) { return quartic_wronskian(pot, nu, e, n0, closed_cfg); };
        b.closed_deep = [=](double e) { return quartic_wronskian(pot, nu, e, n0, deep_cfg); };
    } else {
        b.scan = [=](double e) { return sextic_wronskian_direct(pot, nu, e, scan_cfg); };
        b.refine = [=](double e) { return sextic_wronskian_direct(pot, nu, e, refine_cfg); };
        b.polish = [=](double e) { return sextic_wronskian_direct(pot, nu, e, polish_cfg); };
        b.closed = [=](double e) { return sextic_wronskian(pot, nu, e, n0, closed_cfg); };
        b.closed_deep = [=](double e) { return sextic_wronskian(pot, nu, e, n0, deep_cfg); };
    }
    if (cfg.route == ScanRoute::closed_form) {
        b.scan = b.closed;
        b.refine = b.closed;
    }
    return b;
}

ScanResult scan_impl(const EvaluatorBundle& bundle, const EnergyScanConfig& cfg) {
    if (!(cfg.e_min < cfg.e_max)) throw std::invalid_argument("scan_brackets: e_min must be < e_max");
    if (!(cfg.step > 0.0)) throw std::invalid_argument("scan_brackets: step must be positive");

    std::vector<double> grid;
    for (double e = cfg.e_min; e <= cfg.e_max + 0.5 * cfg.step; e += cfg.step) grid.push_back(e);
    auto values = scan_grid(bundle.scan, grid, cfg.parallel);

    ScanResult out;
    // keep only points whose sign is trustworthy
    std::vector<double> es;
    std::vector<double> ws;
    for (size_t i = 0; i < grid.size(); ++i) {
        if (!usable_point(values[i])) {
            out.warnings.push_back({grid[i], "evaluation excluded (non-finite or below noise)"});
            continue;
        }
        es.push_back(grid[i]);
        ws.push_back(norm_of(values[i]));
    }

    auto emit = [&](double lo, double hi) { out.brackets.push_back({lo, hi}); };
    for (size_t i = 1; i < es.size(); ++i) {
        if (ws[i - 1] == 0.0) continue;
        if ((ws[i - 1] < 0.0) != (ws[i] < 0.0)) {
            // one local halving pass over the bracket and its neighbours to
            // split near-degenerate pairs the coarse grid may have merged
            double lo = i >= 2 ? es[i - 2] : es[i - 1];
            double hi = i + 1 < es.size() ? es[i + 1] : es[i];
            std::vector<double> xs;
            for (double x = lo; x <= hi + 1e-12; x += 0.5 * cfg.step) xs.push_back(x);
            auto fine = scan_grid(bundle.scan, xs, cfg.parallel);
            bool found = false;
            for (size_t k = 1; k < xs.size(); ++k) {
                if (!usable_point(fine[k - 1]) || !usable_point(fine[k])) continue;
                if ((norm_of(fine[k - 1]) < 0.0) != (norm_of(fine[k]) < 0.0)) {
                    if (xs[k] > es[i - 1] - 1e-12 && xs[k - 1] < es[i] + 1e-12) {
                        emit(xs[k - 1], xs[k]);
                        found = true;
                    }
                }
            }
            if (!found) emit(es[i - 1], es[i]);
        }
    }
    // dedupe overlapping brackets from the halving pass
    std::sort(out.brackets.begin(), out.brackets.end(),
              [](const Bracket& a, const Bracket& b) { return a.lo < b.lo; });
    std::vector<Bracket> dedup;
    for (const auto& br : out.brackets)
        if (dedup.empty() || br.lo >= dedup.back().hi - 1e-15) dedup.push_back(br);
    out.brackets = std::move(dedup);
    return out;
}

// Bisection in a window around a double-precision root. The double-precision
// direct route can sit off the true zero by roundoff amplified with the
// dominant/recessive contrast, so the window is generous; the extended
// evaluator pinned at a small radius resolves the true crossing inside it.
double polish_root(const WronskianEvaluator& polish, double root, double window, int iters,
                   bool* ok) {
    if (ok) *ok = false;
    for (double w = window; w <= 16.0 * window; w *= 4.0) {
        double lo = root - w, hi = root + w;
        double flo = norm_of(safe_eval(polish, lo));
        double fhi = norm_of(safe_eval(polish, hi));
        if (!std::isfinite(flo) || !std::isfinite(fhi)) break;
        if ((flo < 0.0) == (fhi < 0.0)) continue;
        for (int i = 0; i < iters && hi - lo > 1e-15 * std::max(1.0, std::fabs(lo)); ++i) {
            double mid = 0.5 * (lo + hi);
            double fm = norm_of(safe_eval(polish, mid));
            if (fm == 0.0) { lo = hi = mid; break; }
            if ((flo < 0.0) != (fm < 0.0)) hi = mid;
            else { lo = mid; flo = fm; }
        }
        if (ok) *ok = true;
        return 0.5 * (lo + hi);
    }
    return root;
}

// Smallest ladder radius at which the extended direct evaluation reaches its
// accuracy target near the given energy; also reports the next usable radius
// for the cross-radius drift estimate.
template <class Pot>
void pick_polish_radii(const Pot& pot, double nu, double energy, const Truncation& trunc,
                       double* r_polish, double* r_check) {
    constexpr Family family =
        std::is_same_v<Pot, QuarticPotential> ? Family::quartic : Family::sextic;
    double lead = 0.0;
    if constexpr (std::is_same_v<Pot, QuarticPotential>) lead = pot.a4;
    else lead = pot.a6;
    auto ladder = direct_radius_ladder(family, lead);
    *r_polish = 0.0;
    *r_check = 0.0;
    for (double r : ladder) {
        DirectConfig cfg;
        cfg.radius = r;
        cfg.h_order = trunc.h_order;
        cfg.b_order = trunc.b_order;
        cfg.with_spread = false;
        cfg.precision = Precision::extended;
        WronskianValue v;
        if constexpr (std::is_same_v<Pot, QuarticPotential>)
            v = quartic_wronskian_direct(pot, nu, energy, cfg);
        else
            v = sextic_wronskian_direct(pot, nu, energy, cfg);
        if (v.scale > 0.0 && std::isfinite(v.value) && v.noise_floor < 1e-12 * v.scale) {
            if (*r_polish == 0.0) { *r_polish = r; continue; }
            *r_check = r;
            break;
        }
    }
    if (*r_polish == 0.0) *r_polish = ladder.front();
}

template <class Pot>
WronskianEvaluator closed_evaluator(const Pot& pot, double nu, int n, const EnergyScanConfig& cfg,
                                    Precision prec, int extra_order = 0) {
    WronskianConfig wc;
    wc.truncation = cfg.truncation;
    wc.truncation.h_order += extra_order;
    if (wc.truncation.b_order > 0) wc.truncation.b_order += extra_order;
    wc.n_set = {n};
    wc.spread_tolerance = cfg.spread_tolerance;
    wc.precision = prec;
    if constexpr (std::is_same_v<Pot, QuarticPotential>)
        return [=](double e) { return quartic_wronskian(pot, nu, e, n, wc); };
    else
        return [=](double e) { return sextic_wronskian(pot, nu, e, n, wc); };
}

template <class Pot>
WronskianEvaluator pinned_extended_evaluator(const Pot& pot, double nu, double radius,
                                             const Truncation& trunc) {
    DirectConfig cfg;
    cfg.radius = radius;
    cfg.h_order = trunc.h_order;
    cfg.b_order = trunc.b_order;
    cfg.with_spread = false;
    cfg.precision = Precision::extended;
    if constexpr (std::is_same_v<Pot, QuarticPotential>)
        return [=](double e) { return quartic_wronskian_direct(pot, nu, e, cfg); };
    else
        return [=](double e) { return sextic_wronskian_direct(pot, nu, e, cfg); };
}

// root of the closed form near `guess`, for the drift diagnostics; falls back
// to a conditioning estimate when the closed form cannot bracket there.
double closed_root_near(const WronskianEvaluator& closed, double guess, double tol, bool* ok) {
    *ok = false;
    for (double w : {1e-5, 1e-4, 1e-3, 1e-2}) {
        double lo = guess - w, hi = guess + w;
        auto vlo = safe_eval(closed, lo), vhi = safe_eval(closed, hi);
        if (!std::isfinite(vlo.value) || !std::isfinite(vhi.value)) continue;
        double flo = norm_of(vlo), fhi = norm_of(vhi);
        if ((flo < 0.0) == (fhi < 0.0)) continue;
        for (int i = 0; i < 100 && hi - lo > tol; ++i) {
            double mid = 0.5 * (lo + hi);
            double fm = norm_of(safe_eval(closed, mid));
            if ((flo < 0.0) != (fm < 0.0)) hi = mid;
            else { lo = mid; flo = fm; }
        }
        *ok = true;
        return 0.5 * (lo + hi);
    }
    return guess;
}

template <class Pot>
bool qes_flag_at(const Pot& pot, double energy, const Truncation& trunc) {
    if constexpr (std::is_same_v<Pot, SexticPotential>) {
        auto spec = sextic_exponents(pot, Branch::recessive);
        auto h = detail::sextic_h_kernel<extended>(extended(spec.alphas[3]),
                                                   extended(spec.alphas[1]), extended(spec.mu),
                                                   extended(pot.am2), extended(energy),
                                                   trunc.h_order);
        constexpr int window = 5;
        long double prefix_max = 0.0L;
        for (int t = 0; t + 2 * window <= trunc.h_order; t += 2) {
            prefix_max = std::max<long double>(prefix_max, (long double)detail::fp_abs(h[t]));
            bool run = prefix_max > 0.0L;
            for (int m = t + 2; m <= t + 2 * window && run; m += 2)
                run = (long double)detail::fp_abs(h[m]) <=
                      (long double)trunc.qes_zero_threshold * prefix_max;
            if (run) return true;
        }
        return false;
    } else {
        (void)pot;
        (void)energy;
        (void)trunc;
        return false;
    }
}

template <class Pot>
std::vector<EigenvalueResult> eigenvalues_impl(const Pot& pot, double nu, int count,
                                               const EnergyScanConfig& cfg) {
    if (count < 1) throw std::invalid_argument("eigenvalues: count must be >= 1");
    auto bundle = make_bundle(pot, nu, cfg);
    auto scan = scan_impl(bundle, cfg);

    std::vector<EigenvalueResult> roots;
    for (const auto& br : scan.brackets) {
        EigenvalueResult res;
        try {
            res = refine_root(bundle.refine, br, cfg);
        } catch (const std::exception&) {
            continue;  // stale bracket from scan noise
        }
        res.sector_nu = nu;
        if (cfg.polish_extended) {
            double r_polish = 0.0, r_check = 0.0;
            pick_polish_radii(pot, nu, res.energy, cfg.truncation, &r_polish, &r_check);
            auto ext = pinned_extended_evaluator(pot, nu, r_polish, cfg.truncation);
            double window = std::max(1e-3, 1e3 * cfg.root_tolerance);
            bool ok = false;
            double polished = polish_root(ext, res.energy, window, 140, &ok);
            if (ok) {
                res.energy = polished;
                res.converged = true;
                res.estimated_error = cfg.root_tolerance;
                if (r_check > 0.0) {
                    auto ext2 = pinned_extended_evaluator(pot, nu, r_check, cfg.truncation);
                    bool ok2 = false;
                    double p2 = polish_root(ext2, polished, 1e-6, 80, &ok2);
                    if (ok2) {  // truncated-asymptotics drift across radii
                        res.estimated_error = std::max(res.estimated_error, std::fabs(p2 - polished));
                        if (std::fabs(p2 - polished) > 1e3 * cfg.root_tolerance) res.converged = false;
                    }
                }
            } else {
                // direct route cannot confirm; accept only if the closed form can
                auto cl = closed_evaluator(pot, nu, cfg.n_set.empty() ? 40 : cfg.n_set.front(),
                                           cfg, Precision::extended);
                bool okc = false;
                double ec = closed_root_near(cl, res.energy, 0.1 * cfg.root_tolerance, &okc);
                if (!okc) continue;  // unconfirmed sign flip, discard
                res.energy = ec;
                res.converged = false;
            }
        }
        roots.push_back(res);
    }

    // merge duplicates produced by noise-split brackets
    std::sort(roots.begin(), roots.end(),
              [](const EigenvalueResult& a, const EigenvalueResult& b) { return a.energy < b.energy; });
    std::vector<EigenvalueResult> unique;
    for (const auto& r : roots) {
        double tol = std::max(16.0 * cfg.root_tolerance, 1e-8 * (1.0 + std::fabs(r.energy)));
        if (!unique.empty() && std::fabs(r.energy - unique.back().energy) < tol) {
            if (r.converged && !unique.back().converged) unique.back() = r;
            continue;
        }
        unique.push_back(r);
    }

    if ((int)unique.size() < count)
        throw std::runtime_error(
            "eigenvalues: grid exhausted before finding the requested number of roots (" +
            std::to_string(unique.size()) + " of " + std::to_string(count) + ")");
    unique.resize(count);

    for (int i = 0; i < count; ++i) {
        auto& r = unique[i];
        r.index_in_sector = i;
        if (cfg.diagnostics) {
            // closed-form drift diagnostics; escalate precision when the
            // double-precision gamma sums flag non-convergence at this root
            Precision prec = Precision::float64;
            {
                auto probe = safe_eval(bundle.closed, r.energy);
                if (!probe.converged) prec = Precision::extended;
            }
            double n_drift = 0.0, trunc_drift = 0.0;
            std::vector<double> closed_roots;
            for (int n : cfg.n_set) {
                auto cl = closed_evaluator(pot, nu, n, cfg, prec);
                bool ok = false;
                double er = closed_root_near(cl, r.energy, 0.1 * cfg.root_tolerance, &ok);
                if (ok) closed_roots.push_back(er);
            }
            for (size_t a = 0; a + 1 < closed_roots.size(); ++a)
                n_drift = std::max(n_drift, std::fabs(closed_roots[a + 1] - closed_roots[a]));
            if (!closed_roots.empty()) {
                auto deep = closed_evaluator(pot, nu, cfg.n_set.empty() ? 40 : cfg.n_set.front(),
                                             cfg, prec, 20);
                bool okd = false;
                double ed = closed_root_near(deep, r.energy, 0.1 * cfg.root_tolerance, &okd);
                if (okd) trunc_drift = std::fabs(ed - closed_roots.front());
            }
            r.estimated_error =
                std::max({r.estimated_error, cfg.root_tolerance, n_drift, trunc_drift});
        } else {
            r.estimated_error = std::max(r.estimated_error, cfg.root_tolerance);
        }
        r.qes_exact = qes_flag_at(pot, r.energy, cfg.truncation);
    }
    return unique;
}

}  // namespace

std::vector<WronskianValue> scan_grid(const WronskianEvaluator& w,
                                      const std::vector<double>& energies, bool parallel) {
    std::vector<WronskianValue> out(energies.size());
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long i = 0; i < (long)energies.size(); ++i) out[i] = safe_eval(w, energies[i]);
        return out;
    }
#else
    (void)parallel;
#endif
    for (size_t i = 0; i < energies.size(); ++i) out[i] = safe_eval(w, energies[i]);
    return out;
}

ScanResult scan_brackets(const QuarticPotential& pot, double nu, const EnergyScanConfig& cfg) {
    return scan_impl(make_bundle(pot, nu, cfg), cfg);
}
ScanResult scan_brackets(const SexticPotential& pot, double nu, const EnergyScanConfig& cfg) {
    return scan_impl(make_bundle(pot, nu, cfg), cfg);
}

EigenvalueResult refine_root(const WronskianEvaluator& w, Bracket bracket,
                             const EnergyScanConfig& cfg) {
    double a = bracket.lo, b = bracket.hi;
    auto va = w(a), vb = w(b);
    double fa = norm_of(va), fb = norm_of(vb);
    if (!std::isfinite(fa) || !std::isfinite(fb) || (fa < 0.0) == (fb < 0.0))
        throw std::invalid_argument("refine_root: bracket does not straddle a sign change");

    // Brent: inverse-quadratic / secant step guarded by bisection
    double c = a, fc = fa, d = b - a, e = b - a;
    bool converged_eval = va.converged && vb.converged;
    for (int iter = 0; iter < cfg.max_refine_iterations; ++iter) {
        if ((fb < 0.0) == (fc < 0.0)) { c = a; fc = fa; d = e = b - a; }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol1 = 2.0 * 1e-16 * std::fabs(b) + 0.5 * cfg.root_tolerance;
        double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) {
            EigenvalueResult res;
            res.energy = b;
            res.bracket = bracket;
            res.estimated_error = std::max(cfg.root_tolerance, std::fabs(xm));
            res.converged = converged_eval;
            return res;
        }
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double s = fb / fa, p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                double qq = fa / fc, rr = fb / fc;
                p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
                q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d; d = p / q;
            } else {
                d = xm; e = d;
            }
        } else {
            d = xm; e = d;
        }
        a = b; fa = fb;
        b += std::fabs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
        auto v = w(b);
        fb = norm_of(v);
        converged_eval = converged_eval && v.converged;
        if (!std::isfinite(fb)) throw std::runtime_error("refine_root: evaluation failed inside bracket");
        // below the evaluation's own noise floor the sign carries no signal
        if (v.scale > 0.0 && std::fabs(v.value) <= v.noise_floor && std::fabs(c - b) < 1e4 * cfg.root_tolerance) {
            EigenvalueResult res;
            res.energy = b;
            res.bracket = bracket;
            res.estimated_error = std::max(cfg.root_tolerance, std::fabs(0.5 * (c - b)));
            res.converged = converged_eval;
            return res;
        }
    }
    throw std::runtime_error("refine_root: iteration limit exceeded (truncation too low?)");
}

std::vector<EigenvalueResult> eigenvalues(const QuarticPotential& pot, double nu, int count,
                                          const EnergyScanConfig& cfg) {
    return eigenvalues_impl(pot, nu, count, cfg);
}
std::vector<EigenvalueResult> eigenvalues(const SexticPotential& pot, double nu, int count,
                                          const EnergyScanConfig& cfg) {
    return eigenvalues_impl(pot, nu, count, cfg);
}

std::vector<EigenvalueResult> merge_sectors(const std::vector<std::vector<EigenvalueResult>>& sectors) {
    std::vector<EigenvalueResult> all;
    for (const auto& s : sectors) all.insert(all.end(), s.begin(), s.end());
    std::sort(all.begin(), all.end(),
              [](const EigenvalueResult& a, const EigenvalueResult& b) { return a.energy < b.energy; });
    for (size_t i = 0; i < all.size(); ++i) all[i].index_in_sector = (int)i;
    return all;
}

}  // namespace anharm
