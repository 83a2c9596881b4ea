// Acceptance suite: one pass/fail line per criterion, nonzero exit when a
// criterion fails. Run a single criterion with --criterion N, everything
// with no arguments.
//
// Criterion 2 is known-red: the embedded published E2/E3 values of the QES
// sextic table drift by up to ~6e-5 from the converged spectrum. Three
// independent routes in this repository (closed form, direct product
// evaluation, shooting oracle) agree with each other and with the exact QES
// anchors to <= 5e-9; the failing cells below print that cross-validation.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "anharm/oracle.hpp"
#include "anharm/reference_data.hpp"
#include "anharm/series.hpp"
#include "anharm/solver.hpp"
#include "anharm/wronskian.hpp"

using namespace anharm;

namespace {

int checks_failed = 0;

void expect(bool ok, const char* what, double got = 0.0, double bound = 0.0) {
    if (!ok) {
        ++checks_failed;
        std::printf("    FAILED: %s (got %.3e, bound %.3e)\n", what, got, bound);
    }
}

EnergyScanConfig window(double lo, double hi, double step = 0.01) {
    EnergyScanConfig cfg;
    cfg.e_min = lo;
    cfg.e_max = hi;
    cfg.step = step;
    return cfg;
}

struct QuarticTableRun {
    double a2;
    EigenvalueResult level[4];  // E0..E3 = even0, odd0, even1, odd1
};

std::vector<QuarticTableRun> solve_table1() {
    std::vector<QuarticTableRun> out;
    for (const auto& row : reference::double_well_table) {
        QuarticPotential pot(1.0, row.a2);
        double lo = row.a2 < 0.0 ? -row.a2 * row.a2 / 4.0 - 1.0 : -1.0;
        auto cfg = window(lo, row.energy[3] + 2.0);
        auto even = eigenvalues(pot, 0.0, 2, cfg);
        auto odd = eigenvalues(pot, 1.0, 2, cfg);
        out.push_back({row.a2, {even[0], odd[0], even[1], odd[1]}});
    }
    return out;
}

struct SexticTableRun {
    double j;
    std::vector<EigenvalueResult> level;
};

std::vector<SexticTableRun> solve_table2() {
    std::vector<SexticTableRun> out;
    double nu = indicial_exponents(0.5).nu_regular;
    for (const auto& row : reference::qes_table) {
        auto pot = qes_potential(reference::qes_s, row.j);
        auto cfg = window(-30.0, row.energy[3] + 3.0, 0.02);
        out.push_back({row.j, eigenvalues(pot, nu, 4, cfg)});
    }
    return out;
}

// closed-form root near a solver energy, one reference index, extended
// precision (the double-precision gamma sums do not converge on the hardest
// double-well cells)
template <class Pot>
bool closed_root(const Pot& pot, double nu, int n, double guess, double* root) {
    WronskianConfig wc;
    wc.n_set = {n};
    wc.truncation.h_order = 700;  // converged truncation for every table cell
    wc.precision = Precision::extended;
    auto eval = [&](double e) {
        if constexpr (std::is_same_v<Pot, QuarticPotential>)
            return quartic_wronskian(pot, nu, e, n, wc);
        else
            return sextic_wronskian(pot, nu, e, n, wc);
    };
    for (double w : {1e-5, 1e-4, 1e-3}) {
        double lo = guess - w, hi = guess + w;
        WronskianValue vlo, vhi;
        try {
            vlo = eval(lo);
            vhi = eval(hi);
        } catch (const std::exception&) {
            return false;
        }
        double flo = vlo.value / vlo.scale, fhi = vhi.value / vhi.scale;
        if (!std::isfinite(flo) || !std::isfinite(fhi) || (flo < 0.0) == (fhi < 0.0)) continue;
        for (int i = 0; i < 90 && hi - lo > 1e-12; ++i) {
            double mid = 0.5 * (lo + hi);
            auto vm = eval(mid);
            double fm = vm.value / vm.scale;
            if ((flo < 0.0) != (fm < 0.0)) hi = mid;
            else { lo = mid; flo = fm; }
        }
        *root = 0.5 * (lo + hi);
        return true;
    }
    return false;
}

// --------------------------------------------------------------------------

bool criterion1() {
    std::printf("criterion 1: double-well quartic table, 44 entries within 1e-7\n");
    auto t0 = std::chrono::steady_clock::now();
    auto table = solve_table1();
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double worst = 0.0;
    for (size_t i = 0; i < table.size(); ++i) {
        for (int k = 0; k < 4; ++k) {
            double diff =
                std::fabs(table[i].level[k].energy - reference::double_well_table[i].energy[k]);
            worst = std::max(worst, diff);
            if (diff > 1e-7)
                std::printf("    a2=%g E%d: regenerated %.9f vs published %.8f (|diff| %.2e)\n",
                            table[i].a2, k, table[i].level[k].energy,
                            reference::double_well_table[i].energy[k], diff);
        }
    }
    expect(worst <= 1e-7, "all 44 entries within 1e-7", worst, 1e-7);

    const auto& last = table.back();  // a2 = -10
    double split = last.level[1].energy - last.level[0].energy;
    expect(std::fabs(split - 2.982e-5) <= 1e-7, "a2=-10 doublet split 2.982e-5 +- 1e-7",
           split, 2.982e-5);
    expect(elapsed < 300.0, "full table regenerates in under 5 minutes", elapsed, 300.0);
    std::printf("    worst |diff| %.2e, split %.4e, %.1f s\n", worst, split, elapsed);
    return checks_failed == 0;
}

bool criterion2() {
    std::printf("criterion 2: QES sextic table, 40 entries within 1e-7\n");
    auto table = solve_table2();
    double worst = 0.0;
    int bad_cells = 0;
    for (size_t i = 0; i < table.size(); ++i) {
        std::vector<double> oracle;
        for (int k = 0; k < 4; ++k) {
            double diff = std::fabs(table[i].level[k].energy - reference::qes_table[i].energy[k]);
            worst = std::max(worst, diff);
            if (diff > 1e-7) {
                ++bad_cells;
                if (oracle.empty()) {
                    OracleConfig oc;
                    oc.grid_points = 40000;
                    oracle = oracle_eigenvalues(qes_potential(reference::qes_s, table[i].j),
                                                Boundary::dirichlet_origin, 4, oc);
                }
                std::printf(
                    "    J=%.4f E%d: regenerated %.9f, published %.8f (|diff| %.2e); "
                    "independent shooting oracle %.9f agrees with regenerated to %.1e\n",
                    table[i].j, k, table[i].level[k].energy, reference::qes_table[i].energy[k],
                    diff, oracle[k], std::fabs(oracle[k] - table[i].level[k].energy));
            }
        }
    }
    expect(worst <= 1e-7, "all 40 entries within 1e-7", worst, 1e-7);
    if (bad_cells > 0)
        std::printf(
            "    NOTE: the %d failing cells are stale published values (see README, known red);\n"
            "    the regenerated energies match the independent oracle and the exact QES\n"
            "    anchors to <= 5e-9.\n",
            bad_cells);
    return checks_failed == 0;
}

bool criterion3() {
    std::printf("criterion 3: QES exactness and termination flags for J = 1..4\n");
    double nu = indicial_exponents(0.5).nu_regular;
    for (int j = 1; j <= 4; ++j) {
        auto pot = qes_potential(reference::qes_s, (double)j);
        auto ev = eigenvalues(pot, nu, j, window(-30.0, 25.0, 0.02));
        for (int k = 0; k < j; ++k)
            expect(ev[k].qes_exact, "h-series termination flag at a QES level",
                   (double)k, (double)j);
        if (j == 1)
            expect(std::fabs(ev[0].energy) <= 1e-9, "J=1 lowest level is 0 within 1e-9",
                   ev[0].energy, 1e-9);
        if (j == 3) {
            auto ev3 = eigenvalues(pot, nu, 2, window(-15.0, 5.0, 0.02));
            expect(std::fabs(ev3[1].energy) <= 1e-9, "J=3 second level is 0 within 1e-9",
                   ev3[1].energy, 1e-9);
        }
    }
    return checks_failed == 0;
}

bool criterion4() {
    std::printf("criterion 4: QES J=4 spectral symmetry\n");
    double nu = indicial_exponents(0.5).nu_regular;
    auto pot = qes_potential(reference::qes_s, 4.0);
    auto ev = eigenvalues(pot, nu, 4, window(-25.0, 23.0, 0.02));
    double s03 = ev[0].energy + ev[3].energy;
    double s12 = ev[1].energy + ev[2].energy;
    expect(std::fabs(s03) <= 2e-7, "E0 + E3 = 0 within 2e-7", s03, 2e-7);
    expect(std::fabs(s12) <= 2e-7, "E1 + E2 = 0 within 2e-7", s12, 2e-7);
    return checks_failed == 0;
}

bool criterion5() {
    std::printf(
        "criterion 5: n-independence of every table root (closed form, n in {40,41,42},\n"
        "             h_order 700, extended precision; at small reference indices the\n"
        "             gamma sums diverge and the extraction is still n-biased)\n");
    double worst = 0.0;
    auto drift_of = [&](auto pot, double nu, double energy) {
        std::vector<double> roots;
        for (int n : {40, 41, 42}) {
            double r = 0.0;
            if (closed_root(pot, nu, n, energy, &r)) roots.push_back(r);
        }
        expect(roots.size() == 3, "closed form brackets the root at every n",
               (double)roots.size(), 3.0);
        double d = 0.0;
        for (size_t a = 0; a + 1 < roots.size(); ++a)
            d = std::max(d, std::fabs(roots[a + 1] - roots[a]));
        return d;
    };
    auto t1 = solve_table1();
    for (const auto& run : t1) {
        QuarticPotential pot(1.0, run.a2);
        for (int k = 0; k < 4; ++k) {
            double d = drift_of(pot, k % 2 == 0 ? 0.0 : 1.0, run.level[k].energy);
            worst = std::max(worst, d);
        }
    }
    double nu = indicial_exponents(0.5).nu_regular;
    auto t2 = solve_table2();
    for (const auto& run : t2) {
        auto pot = qes_potential(reference::qes_s, run.j);
        for (int k = 0; k < 4; ++k) worst = std::max(worst, drift_of(pot, nu, run.level[k].energy));
    }
    expect(worst < 1e-8, "root moves less than 1e-8 across the n-set", worst, 1e-8);
    std::printf("    worst cross-n root drift %.2e over 84 roots\n", worst);
    return checks_failed == 0;
}

bool criterion6() {
    std::printf("criterion 6: cross-validation against the shooting oracle\n");
    // harmonic baseline: 4n+1 / 4n+3 within 1e-8
    QuarticPotential harm(1e-12, 1.0);
    auto he = oracle_eigenvalues(harm, Boundary::even_1d, 3);
    auto ho = oracle_eigenvalues(harm, Boundary::odd_1d, 3);
    for (int n = 0; n < 3; ++n) {
        expect(std::fabs(he[n] - (4.0 * n + 1.0)) <= 1e-8, "harmonic even level", he[n],
               4.0 * n + 1.0);
        expect(std::fabs(ho[n] - (4.0 * n + 3.0)) <= 1e-8, "harmonic odd level", ho[n],
               4.0 * n + 3.0);
    }

    double worst = 0.0;
    auto t1 = solve_table1();
    for (const auto& run : t1) {
        QuarticPotential pot(1.0, run.a2);
        auto oe = oracle_eigenvalues(pot, Boundary::even_1d, 2);
        auto oo = oracle_eigenvalues(pot, Boundary::odd_1d, 2);
        const double orc[4] = {oe[0], oo[0], oe[1], oo[1]};
        for (int k = 0; k < 4; ++k)
            worst = std::max(worst, std::fabs(run.level[k].energy - orc[k]));
    }
    expect(worst <= 1e-6, "all 44 double-well roots within 1e-6 of the oracle", worst, 1e-6);
    std::printf("    worst double-well deviation %.2e\n", worst);

    // five non-QES sextic cases
    double nu = indicial_exponents(0.5).nu_regular;
    OracleConfig oc;
    oc.grid_points = 40000;
    auto p0 = qes_potential(reference::qes_s, -reference::sqrt3_over_4);
    auto w0 = eigenvalues(p0, nu, 4, window(-5.0, 53.0, 0.02));
    auto o0 = oracle_eigenvalues(p0, Boundary::dirichlet_origin, 4, oc);
    double worst6 = 0.0;
    for (int k = 0; k < 4; ++k) worst6 = std::max(worst6, std::fabs(w0[k].energy - o0[k]));
    auto p5 = qes_potential(reference::qes_s, 0.5);
    auto w5 = eigenvalues(p5, nu, 1, window(-5.0, 8.0, 0.02));
    auto o5 = oracle_eigenvalues(p5, Boundary::dirichlet_origin, 1, oc);
    worst6 = std::max(worst6, std::fabs(w5[0].energy - o5[0]));
    expect(worst6 <= 1e-6, "five non-QES sextic cases within 1e-6", worst6, 1e-6);
    std::printf("    worst sextic deviation %.2e\n", worst6);
    return checks_failed == 0;
}

bool criterion7() {
    std::printf("criterion 7: ODE residual of the truncated series, 10 random sets per family\n");
    std::mt19937 rng(20260808);
    std::uniform_real_distribution<double> lead(0.5, 2.0);
    std::uniform_real_distribution<double> mid(-4.0, 4.0);
    std::uniform_real_distribution<double> energy(-5.0, 20.0);
    std::uniform_int_distribution<int> pick_am2(0, 2);
    const double am2s[3] = {0.0, 0.5, 2.0};
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        QuarticPotential q(lead(rng), mid(rng), am2s[pick_am2(rng)]);
        auto spec = quartic_exponents(q, Branch::recessive);
        double nuq = indicial_exponents(q.am2).nu_regular;
        double r = residual_check(q, spec, nuq, energy(rng), 0.5, 60);
        worst = std::max(worst, r);
        expect(r < 1e-10, "quartic residual at r=0.5, K=60", r, 1e-10);
    }
    for (int i = 0; i < 10; ++i) {
        SexticPotential s(lead(rng), mid(rng), mid(rng), am2s[pick_am2(rng)]);
        auto spec = sextic_exponents(s, Branch::recessive);
        double nus = indicial_exponents(s.am2).nu_regular;
        double r = residual_check(s, spec, nus, energy(rng), 0.5, 60);
        worst = std::max(worst, r);
        expect(r < 1e-10, "sextic residual at r=0.5, K=60", r, 1e-10);
    }
    std::printf("    worst residual %.2e\n", worst);
    return checks_failed == 0;
}

bool criterion8() {
    std::printf("criterion 8: pure-quartic scaling law E_k(a4) = a4^(1/3) E_k(1)\n");
    auto base_even = eigenvalues(QuarticPotential(1.0, 0.0), 0.0, 2, window(0.0, 9.0));
    auto base_odd = eigenvalues(QuarticPotential(1.0, 0.0), 1.0, 2, window(0.0, 13.0));
    const double base[4] = {base_even[0].energy, base_odd[0].energy, base_even[1].energy,
                            base_odd[1].energy};
    double worst = 0.0;
    for (double a4 : {0.125, 8.0}) {
        double s = std::cbrt(a4);
        auto even = eigenvalues(QuarticPotential(a4, 0.0), 0.0, 2, window(0.0, 9.0 * s, 0.01 * s));
        auto odd = eigenvalues(QuarticPotential(a4, 0.0), 1.0, 2, window(0.0, 13.0 * s, 0.01 * s));
        const double got[4] = {even[0].energy, odd[0].energy, even[1].energy, odd[1].energy};
        for (int k = 0; k < 4; ++k) {
            double rel = std::fabs(got[k] - s * base[k]) / std::fabs(s * base[k]);
            worst = std::max(worst, rel);
            expect(rel <= 1e-7, "scaled level matches within 1e-7 relative", rel, 1e-7);
        }
    }
    std::printf("    worst relative deviation %.2e\n", worst);
    return checks_failed == 0;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);

    bool (*criteria[])() = {criterion1, criterion2, criterion3, criterion4,
                            criterion5, criterion6, criterion7, criterion8};
    int failed = 0;
    for (int c = 1; c <= 8; ++c) {
        if (only != 0 && c != only) continue;
        checks_failed = 0;
        bool ok = false;
        try {
            ok = criteria[c - 1]();
        } catch (const std::exception& e) {
            std::printf("    EXCEPTION: %s\n", e.what());
            ok = false;
        }
        std::printf("criterion %d: %s\n\n", c, ok ? "PASS" : "FAIL");
        if (!ok) ++failed;
    }
    if (only == 0) std::printf("%d of 8 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
