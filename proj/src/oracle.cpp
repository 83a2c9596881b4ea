#include "anharm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace anharm {

namespace {

struct Problem {
    std::function<double(double)> v;  // effective potential
    double nu = 0.0;                  // Frobenius exponent (dirichlet_origin)
    Boundary boundary;
    double r0 = 0.0;
    double r_max = 0.0;
    int grid_points = 0;
    double matching_radius = 0.0;
    // Frobenius seed recurrence coefficients: a_j = (-E a_{j-2} + a2 a_{j-4}
    // + a4 a_{j-6} + a6 a_{j-8}) / (j (j + 2 nu - 1))
    double c2 = 0.0, c4 = 0.0, c6 = 0.0;
};

double series_seed(const Problem& p, double energy, double r) {
    constexpr int terms = 16;
    double a[terms + 1] = {0.0};
    a[0] = 1.0;
    auto at = [&](int i) { return i >= 0 ? a[i] : 0.0; };
    for (int j = 2; j <= terms; j += 2)
        a[j] = (-energy * at(j - 2) + p.c2 * at(j - 4) + p.c4 * at(j - 6) + p.c6 * at(j - 8)) /
               (j * (j + 2.0 * p.nu - 1.0));
    double s = 0.0, rp = std::pow(r, p.nu);
    for (int j = 0; j <= terms; ++j) {
        s += a[j] * rp;
        rp *= r;
    }
    return s;
}

void seeds(const Problem& p, double energy, double h, double f0, double* u0, double* u1) {
    switch (p.boundary) {
        case Boundary::dirichlet_origin:
            *u0 = series_seed(p, energy, p.r0);
            *u1 = series_seed(p, energy, p.r0 + h);
            break;
        case Boundary::even_1d:
            *u0 = 1.0;
            *u1 = 1.0 + 0.5 * f0 * h * h;
            break;
        case Boundary::odd_1d:
            *u0 = 0.0;
            *u1 = h;
            break;
    }
}

// Sturm count: nodes of the outward solution over the whole range.
int count_nodes(const Problem& p, double energy) {
    const int n = p.grid_points;
    const double h = (p.r_max - p.r0) / n;
    const double c = h * h / 12.0;
    auto f = [&](int i) { return p.v(p.r0 + i * h) - energy; };
    double u0, u1;
    seeds(p, energy, h, f(0), &u0, &u1);
    int nodes = 0;
    double fm = f(0), fc = f(1);
    double um = u0, uc = u1;
    for (int i = 1; i < n; ++i) {
        double fp = f(i + 1);
        double un = (2.0 * uc * (1.0 + 5.0 * c * fc) - um * (1.0 - c * fm)) / (1.0 - c * fp);
        if (un * uc < 0.0) ++nodes;
        um = uc;
        uc = un;
        fm = fc;
        fc = fp;
        if (std::fabs(uc) > 1e200) { um *= 1e-200; uc *= 1e-200; }
    }
    return nodes;
}

// Two-sided log-derivative mismatch (discrete Wronskian) at the matching index.
double mismatch(const Problem& p, double energy) {
    const int n = p.grid_points;
    const double h = (p.r_max - p.r0) / n;
    const double c = h * h / 12.0;
    std::vector<double> f(n + 1);
    for (int i = 0; i <= n; ++i) f[i] = p.v(p.r0 + i * h) - energy;
    int im = n / 2;
    if (p.matching_radius > 0.0) {
        im = (int)((p.matching_radius - p.r0) / h);
    } else {
        for (int i = n; i >= 1; --i)
            if (f[i] < 0.0) { im = i; break; }
    }
    im = std::clamp(im, 5, n - 5);

    double u0, u1;
    seeds(p, energy, h, f[0], &u0, &u1);
    double um = u0, uc = u1;
    for (int i = 1; i < im; ++i) {
        double un = (2.0 * uc * (1.0 + 5.0 * c * f[i]) - um * (1.0 - c * f[i - 1])) /
                    (1.0 - c * f[i + 1]);
        um = uc;
        uc = un;
        if (std::fabs(uc) > 1e200) { um *= 1e-200; uc *= 1e-200; }
    }
    double o0 = um, o1 = uc;
    double on = std::max(std::fabs(o0), std::fabs(o1));
    if (on == 0.0) return 0.0;
    o0 /= on;
    o1 /= on;

    double vp = 1.0, vc = std::exp(std::sqrt(std::max(f[n], 1e-12)) * h);
    for (int i = n - 1; i >= im; --i) {
        double vn = (2.0 * vc * (1.0 + 5.0 * c * f[i]) - vp * (1.0 - c * f[i + 1])) /
                    (1.0 - c * f[i - 1]);
        vp = vc;
        vc = vn;
        if (std::fabs(vc) > 1e200) { vp *= 1e-200; vc *= 1e-200; }
    }
    double i0 = vc, i1 = vp;
    double inn = std::max(std::fabs(i0), std::fabs(i1));
    i0 /= inn;
    i1 /= inn;
    return o0 * i1 - o1 * i0;
}

void ensure_cutoff(Problem& p, double energy, const OracleConfig& cfg) {
    int extensions = 0;
    double base_span = p.r_max - p.r0;
    while (p.v(p.r_max) - energy < 100.0) {
        if (!cfg.auto_extend || extensions >= 8)
            throw std::runtime_error("oracle: r_max too small (V(r_max) - E < 100)");
        p.r_max += 1.0;
        ++extensions;
    }
    if (extensions > 0)  // keep the grid density of the original request
        p.grid_points = (int)(cfg.grid_points * (p.r_max - p.r0) / base_span);
}

std::vector<double> enumerate(Problem p, int count, const OracleConfig& cfg) {
    // march start: below the minimum of the effective potential
    double vmin = p.v(p.r_max);
    for (int i = 1; i <= 400; ++i) {
        double r = p.r0 + (p.r_max - p.r0) * i / 400.0;
        vmin = std::min(vmin, p.v(r));
    }
    double e = vmin - 0.5;
    ensure_cutoff(p, e, cfg);

    std::vector<double> out;
    int have = count_nodes(p, e);
    int guard = 0;
    while ((int)out.size() < count) {
        if (++guard > 100000) throw std::runtime_error("oracle: state enumeration did not advance");
        double e2 = e + cfg.march_step;
        ensure_cutoff(p, e2, cfg);
        int n2 = count_nodes(p, e2);
        for (int k = have; k < n2 && (int)out.size() < count; ++k) {
            double lo = e, hi = e2;
            while (hi - lo > std::max(cfg.energy_tolerance * 1e-2,
                                      1e-14 * std::max(1.0, std::fabs(lo)))) {
                double mid = 0.5 * (lo + hi);
                if (count_nodes(p, mid) > k) hi = mid;
                else lo = mid;
            }
            // polish on the two-sided mismatch inside a padded window
            double a = lo - 1e-7, b = hi + 1e-7;
            double fa = mismatch(p, a), fb = mismatch(p, b);
            double root = 0.5 * (lo + hi);
            if (std::isfinite(fa) && std::isfinite(fb) && fa * fb < 0.0) {
                while (b - a > 1e-14 * std::max(1.0, std::fabs(a))) {
                    double mid = 0.5 * (a + b), fm = mismatch(p, mid);
                    if ((fa < 0.0) != (fm < 0.0)) b = mid;
                    else { a = mid; fa = fm; }
                }
                root = 0.5 * (a + b);
            }
            if (std::fabs(root - 0.5 * (lo + hi)) > 10.0 * cfg.march_step)
                throw std::runtime_error("oracle: state could not be bracketed");
            out.push_back(root);
        }
        e = e2;
        have = n2;
    }
    return out;
}

Problem make_problem(const QuarticPotential& pot, Boundary boundary, const OracleConfig& cfg) {
    if (boundary != Boundary::dirichlet_origin && pot.am2 != 0.0)
        throw std::invalid_argument("oracle: 1D parity sectors require am2 = 0");
    Problem p;
    p.v = [pot](double r) {
        double r2 = r * r;
        return (pot.a4 * r2 + pot.a2) * r2 + (pot.am2 != 0.0 ? pot.am2 / r2 : 0.0);
    };
    p.boundary = boundary;
    p.nu = boundary == Boundary::dirichlet_origin ? indicial_exponents(pot.am2).nu_regular : 0.0;
    p.r0 = boundary == Boundary::dirichlet_origin ? 0.04 : 0.0;
    p.r_max = cfg.r_max > 0.0 ? cfg.r_max : 6.5;
    p.grid_points = cfg.grid_points;
    p.matching_radius = cfg.matching_radius;
    p.c2 = pot.a2;
    p.c4 = pot.a4;
    return p;
}

Problem make_problem(const SexticPotential& pot, Boundary boundary, const OracleConfig& cfg) {
    if (boundary != Boundary::dirichlet_origin && pot.am2 != 0.0)
        throw std::invalid_argument("oracle: 1D parity sectors require am2 = 0");
    Problem p;
    p.v = [pot](double r) {
        double r2 = r * r;
        return ((pot.a6 * r2 + pot.a4) * r2 + pot.a2) * r2 + (pot.am2 != 0.0 ? pot.am2 / r2 : 0.0);
    };
    p.boundary = boundary;
    p.nu = boundary == Boundary::dirichlet_origin ? indicial_exponents(pot.am2).nu_regular : 0.0;
    p.r0 = boundary == Boundary::dirichlet_origin ? 0.04 : 0.0;
    p.r_max = cfg.r_max > 0.0 ? cfg.r_max : 4.5;
    p.grid_points = cfg.grid_points;
    p.matching_radius = cfg.matching_radius;
    p.c2 = pot.a2;
    p.c4 = pot.a4;
    p.c6 = pot.a6;
    return p;
}

}  // namespace

std::vector<double> oracle_eigenvalues(const QuarticPotential& pot, Boundary boundary, int count,
                                       OracleConfig cfg) {
    if (count < 1) throw std::invalid_argument("oracle_eigenvalues: count must be >= 1");
    return enumerate(make_problem(pot, boundary, cfg), count, cfg);
}

std::vector<double> oracle_eigenvalues(const SexticPotential& pot, Boundary boundary, int count,
                                       OracleConfig cfg) {
    if (count < 1) throw std::invalid_argument("oracle_eigenvalues: count must be >= 1");
    return enumerate(make_problem(pot, boundary, cfg), count, cfg);
}

}  // namespace anharm
