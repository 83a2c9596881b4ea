#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "anharm/reference_data.hpp"
#include "anharm/series.hpp"

using namespace anharm;

namespace {

AsymptoticSolutionSpec quartic_spec(double a4, double a2) {
    return quartic_exponents(QuarticPotential(a4, a2), Branch::recessive);
}

void check_rel(double got, double want, double tol) {
    CHECK(std::fabs(got - want) <= tol * std::max(1.0, std::fabs(want)));
}

}  // namespace

TEST_CASE("quartic h by hand") {
    auto spec = quartic_spec(1.0, 0.0);
    auto h = quartic_h(spec, 0.0, 1.0, 3);
    CHECK(h.values[0] == 1.0);
    CHECK(h.values[1] == doctest::Approx(-0.5));
    CHECK(h.values[2] == doctest::Approx(0.125));
    CHECK(h.values[3] == doctest::Approx(-17.0 / 48.0));  // -0.354166...
    CHECK(!h.qes_terminated);

    h = quartic_h(spec, 0.0, 0.0, 2);
    CHECK(h.values[1] == 0.0);
    CHECK(h.values[2] == 0.0);
}

TEST_CASE("quartic h against the exact-rational oracle") {
    // alpha3 = -1, alpha1 = 5/2, am2 = 0, E = 65765301/10^8, M = 40;
    // values from tests/oracle_gen/gen_oracle_values.py (python fractions)
    auto spec = quartic_spec(1.0, -5.0);
    REQUIRE(spec.alphas[0] == doctest::Approx(2.5));
    auto h = quartic_h(spec, 0.0, 0.65765301, 40);
    struct Ref { int m; double v; };
    constexpr Ref refs[] = {
        {1, -3.453826505},
        {2, 7.2144587633202575125},
        {3, -14.39554047366167573336596},
        {5, -57.16798818138440618635131},
        {8, 508.7226358030030477460465},
        {13, -27594.18540517355965554576},
        {21, -34909448.27871636962480926},
        {30, 251045290972.7804875565711},
        {40, 10782680960522466.92691763},
    };
    for (const auto& r : refs) check_rel(h.values[r.m], r.v, 1e-13);
}

TEST_CASE("quartic b by hand") {
    auto spec = quartic_spec(1.0, 0.0);
    double energy = 0.7315;
    auto b = quartic_b(spec, 1.0, 0.0, energy, 2);
    CHECK(b.values[1] == 0.0);
    CHECK(b.values[2] == doctest::Approx(-energy / 6.0));

    // degenerate step at n=1 with alpha1 = 0: pure even solution, b1 = 0
    b = quartic_b(spec, 0.0, 0.0, 1.0, 2);
    CHECK(b.values[1] == 0.0);
    CHECK(b.values[2] == doctest::Approx(-0.5));

    // with alpha1 != 0 the even 1D solution maps to b1 = alpha1 * b0
    auto spec5 = quartic_spec(1.0, -5.0);
    b = quartic_b(spec5, 0.0, -5.0, 1.0, 1);
    CHECK(b.values[1] == doctest::Approx(2.5));
}

TEST_CASE("quartic b against the exact-rational oracle") {
    // nu = 0, alpha1 = 5/2, alpha3 = -1, a2 = -5, E = 13778585/10^8, K = 40
    auto spec = quartic_spec(1.0, -5.0);
    auto b = quartic_b(spec, 0.0, -5.0, 0.13778585, 40);
    struct Ref { int n; double v; };
    constexpr Ref refs[] = {
        {1, 2.5},
        {2, 3.056107075},
        {3, 2.7652676875},
        {5, 0.61340671411043984375},
        {8, -0.4459081205783771509010596},
        {13, -0.02045058175431551566260796},
        {21, -0.00001016792642472235209491228},
        {30, -2.259865772848302443203852e-9},
        {40, -6.219986932116511499926004e-14},
    };
    for (const auto& r : refs) check_rel(b.values[r.n], r.v, 1e-13);
}

TEST_CASE("recurrence identity holds for generated coefficients") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> coef(-5.0, 5.0);
    std::uniform_real_distribution<double> lead(0.4, 3.0);
    std::uniform_real_distribution<double> energy(-8.0, 15.0);
    for (int trial = 0; trial < 25; ++trial) {
        QuarticPotential q(lead(rng), coef(rng));
        auto spec = quartic_exponents(q, Branch::recessive);
        double a3 = spec.alphas[2], a1 = spec.alphas[0];
        double e = energy(rng);
        auto h = quartic_h(spec, 0.0, e, 30);
        auto at = [&](int i) { return i >= 0 ? h.values[i] : 0.0; };
        for (int m = 1; m <= 30; ++m) {
            double lhs = 2.0 * a3 * m * h.values[m];
            double rhs = (e + a1 * a1) * at(m - 1) - 2.0 * a1 * (m - 1) * at(m - 2) +
                         ((m - 1.0) * (m - 2.0)) * at(m - 3);
            CHECK(std::fabs(lhs - rhs) <=
                  1e-13 * std::max({std::fabs(lhs), std::fabs(rhs), 1e-30}));
        }

        double nu = 1.0;
        auto b = quartic_b(spec, nu, q.a2, e, 30);
        auto bt = [&](int i) { return i >= 0 ? b.values[i] : 0.0; };
        for (int n = 1; n <= 30; ++n) {
            double lhs = n * (n - 1.0 + 2.0 * nu) * b.values[n];
            double rhs = 2.0 * a1 * (n - 1.0 + nu) * bt(n - 1) - (e + a1 * a1) * bt(n - 2) -
                         2.0 * a3 * (n - 2.0 + nu) * bt(n - 3) + 2.0 * q.a2 * bt(n - 4);
            CHECK(std::fabs(lhs - rhs) <=
                  1e-13 * std::max({std::fabs(lhs), std::fabs(rhs), 1e-30}));
        }
    }
}

TEST_CASE("series generation is deterministic") {
    auto spec = quartic_spec(1.3, -2.7);
    auto h1 = quartic_h(spec, 0.5, 3.14, 60);
    auto h2 = quartic_h(spec, 0.5, 3.14, 60);
    CHECK(std::memcmp(h1.values.data(), h2.values.data(), h1.values.size() * sizeof(double)) == 0);
}

TEST_CASE("sextic h by hand") {
    auto pot = SexticPotential(1.0, 0.0, 0.0, 0.0);
    auto spec = sextic_exponents(pot, Branch::recessive);
    REQUIRE(spec.mu == doctest::Approx(-1.5));
    auto h = sextic_h(spec, 0.0, 2.0, 2);
    CHECK(h.values[1] == 0.0);
    CHECK(h.values[2] == doctest::Approx(-0.5));

    h = sextic_h(spec, 0.0, 17.3, 1);
    CHECK(h.values[1] == 0.0);
}

TEST_CASE("sextic h odd indices vanish") {
    auto pot = qes_potential(reference::qes_s, 1.7);
    auto spec = sextic_exponents(pot, Branch::recessive);
    auto h = sextic_h(spec, pot.am2, 4.2, 41);
    for (int m = 1; m < (int)h.values.size(); m += 2) CHECK(h.values[m] == 0.0);
}

TEST_CASE("QES termination of the sextic h series") {
    // exact QES energies: J=1 -> {0}; J=2 -> {-(2+2sqrt3), +(2+2sqrt3)};
    // J=3 -> {-E*, 0, E*}, E*^2 = 96 + 32 sqrt3 (gen_oracle_values.py)
    const double e2 = 2.0 + 2.0 * std::sqrt(3.0);
    const double e3 = std::sqrt(96.0 + 32.0 * std::sqrt(3.0));
    struct Case { double j; double energy; int last_index; };
    const Case cases[] = {
        {1.0, 0.0, 0}, {2.0, -e2, 2}, {2.0, e2, 2}, {3.0, 0.0, 2}, {3.0, e3, 4}, {3.0, -e3, 4},
    };
    for (const auto& c : cases) {
        auto pot = qes_potential(reference::qes_s, c.j);
        auto spec = sextic_exponents(pot, Branch::recessive);
        auto h = sextic_h(spec, pot.am2, c.energy, 80);
        CHECK(h.qes_terminated);
        CHECK(h.termination_index <= 2 * (int)c.j);
        // everything beyond the detected index is numerically zero
        double head = 0.0;
        for (int m = 0; m <= h.termination_index; ++m)
            head = std::max(head, std::fabs(h.values[m]));
        for (int m = h.termination_index + 1; m < (int)h.values.size(); ++m)
            CHECK(std::fabs(h.values[m]) <= 1e-10 * head);
        (void)c.last_index;
    }

    // a non-QES energy must not terminate
    auto pot = qes_potential(reference::qes_s, 2.0);
    auto spec = sextic_exponents(pot, Branch::recessive);
    CHECK(!sextic_h(spec, pot.am2, 1.0 + std::sqrt(3.0), 80).qes_terminated);
}

TEST_CASE("sextic b by hand") {
    auto pot = qes_potential(reference::qes_s, -std::sqrt(3.0) / 4.0);  // a2 = 0
    auto spec = sextic_exponents(pot, Branch::recessive);
    double nu = indicial_exponents(pot.am2).nu_regular;
    double energy = 4.22831744;
    auto b = sextic_b(spec, nu, pot, energy, 2);
    CHECK(b.values[1] == 0.0);
    CHECK(b.values[2] == doctest::Approx(-energy / (2.0 * (1.0 + 2.0 * nu))));
}

TEST_CASE("sextic b against the exact Q(sqrt3) oracle") {
    auto pot = qes_potential(reference::qes_s, 2.0);
    auto spec = sextic_exponents(pot, Branch::recessive);
    double nu = indicial_exponents(pot.am2).nu_regular;

    // QES eigenvalue E = -2 - 2 sqrt3: the w series terminates at n = 2
    auto b = sextic_b(spec, nu, pot, -2.0 - 2.0 * std::sqrt(3.0), 40);
    CHECK(b.values[2] == doctest::Approx(0.7320508075688772935274463).epsilon(1e-13));
    for (int n = 3; n <= 40; ++n) CHECK(std::fabs(b.values[n]) <= 1e-12);

    // non-QES energy E = 1 + sqrt3 exercises the full recurrence depth
    b = sextic_b(spec, nu, pot, 1.0 + std::sqrt(3.0), 40);
    struct Ref { int n; double v; };
    constexpr Ref refs[] = {
        {2, -0.3660254037844386467637232},
        {4, -0.1308432226402570792195704},
        {6, 0.0077053798743213618851884},
        {10, 0.0006882630993798218701830377},
        {16, -0.00003724512965493371669024635},
        {24, -0.0000001425375138077758230113158},
        {32, -3.673138198201981531993506e-10},
        {40, -6.665957473164837799421859e-13},
    };
    for (const auto& r : refs) check_rel(b.values[r.n], r.v, 1e-12);
    for (int n = 1; n <= 39; n += 2) CHECK(b.values[n] == 0.0);
}

TEST_CASE("single-term gamma sums") {
    // one asymptotic term (M=0), alpha1 = 0, nu = 1: gamma_1 = -(3+nu) b_2 = 2E/3
    auto spec = quartic_spec(1.0, 0.0);
    double energy = 2.31;
    auto b = quartic_b(spec, 1.0, 0.0, energy, 10);
    HCoefficients h0;
    h0.values = {1.0};
    h0.truncation_order = 0;
    SumDiagnostics diag;
    double g1 = quartic_gamma(h0, b, spec, 1.0, 1, {}, &diag);
    CHECK(g1 == doctest::Approx(2.0 * energy / 3.0));
    CHECK(diag.terms_used == 1);

    // all b_n = 0 for n >= 1 forces gamma_1 = 0
    BCoefficients bz;
    bz.values = std::vector<double>(12, 0.0);
    bz.values[0] = 1.0;
    bz.nu = 1.0;
    CHECK(quartic_gamma(h0, bz, spec, 1.0, 1) == 0.0);

    // sextic single term: gamma_{2k} = -(2k+2+nu-mu) b_{2k+2}
    auto pot6 = qes_potential(reference::qes_s, -std::sqrt(3.0) / 4.0);
    auto spec6 = sextic_exponents(pot6, Branch::recessive);
    double nu6 = indicial_exponents(pot6.am2).nu_regular;
    auto b6 = sextic_b(spec6, nu6, pot6, 1.7, 12);
    HCoefficients h60;
    h60.values = {1.0};
    double g2 = sextic_gamma(h60, b6, spec6, nu6, 2);
    CHECK(g2 == doctest::Approx(-(2.0 + 2.0 + nu6 - spec6.mu) * b6.values[4]));

    BCoefficients bz6;
    bz6.values = std::vector<double>(12, 0.0);
    bz6.values[0] = 1.0;
    CHECK(sextic_gamma(h60, bz6, spec6, nu6, 2) == 0.0);
}

TEST_CASE("gamma fixed-truncation sums match the exact-rational oracle") {
    // pure quartic, E = 106036209/10^8, nu = 0, full sums with M=60, K=64
    auto spec = quartic_spec(1.0, 0.0);
    auto h = quartic_h(spec, 0.0, 1.06036209, 60);
    auto b = quartic_b(spec, 0.0, 0.0, 1.06036209, 64);
    Truncation full;
    full.stabilization_run = 0;  // disable the policy: sum every term
    struct Ref { int k; double v; };
    constexpr Ref refs[] = {
        {1, 1.84399940279763993866046},
        {2, -0.91070601924014835948571},
        {3, -0.7708607522621413599686165},
    };
    for (const auto& r : refs) {
        SumDiagnostics diag;
        double g = quartic_gamma(h, b, spec, 0.0, r.k, full, &diag);
        check_rel(g, r.v, 1e-13);
        CHECK(diag.terms_used == 61);
    }
}

TEST_CASE("gamma truncation-control policy reports convergence honestly") {
    auto spec = quartic_spec(1.0, 0.0);
    auto h = quartic_h(spec, 0.0, 1.06036209, 250);
    auto b = quartic_b(spec, 0.0, 0.0, 1.06036209, 300);
    SumDiagnostics diag;
    // k = 1: slowly decaying oscillating tail, must be flagged
    quartic_gamma(h, b, spec, 0.0, 1, {}, &diag);
    CHECK(!diag.stabilized);
    CHECK(diag.smallest_term > 0.0);
    // k = 43: deep subindex, the sum stabilizes
    quartic_gamma(h, b, spec, 0.0, 43, {}, &diag);
    CHECK(diag.stabilized);

    auto set = quartic_gamma_set(h, b, spec, 0.0, {1, 43}, {});
    CHECK(set.values.size() == 2);
    CHECK(!set.convergence_report.at(1).stabilized);
    CHECK(set.convergence_report.at(43).stabilized);
}

TEST_CASE("residual check certifies the recurrences against the ODEs") {
    QuarticPotential q(1.0, 0.0);
    auto spec = quartic_exponents(q, Branch::recessive);
    CHECK(residual_check(q, spec, 0.0, 1.06036209, 0.5, 60) < 1e-10);

    // centrifugal-free limit stays finite towards r = 0
    CHECK(std::isfinite(residual_check(q, spec, 0.0, 1.06036209, 1e-3, 40)));

    auto pot6 = qes_potential(reference::qes_s, 1.0);
    auto spec6 = sextic_exponents(pot6, Branch::recessive);
    double nu6 = indicial_exponents(pot6.am2).nu_regular;
    CHECK(residual_check(pot6, spec6, nu6, 0.0, 0.5, 60) < 1e-10);

    // residual decreases with truncation order (up to the noise floor)
    QuarticPotential q2(1.0, -3.0);
    auto spec2 = quartic_exponents(q2, Branch::recessive);
    double r20 = residual_check(q2, spec2, 1.0, 2.0, 0.5, 20);
    double r60 = residual_check(q2, spec2, 1.0, 2.0, 0.5, 60);
    CHECK(r60 <= r20);
}

TEST_CASE("degenerate-step errors and preconditions") {
    auto spec = quartic_spec(1.0, 0.0);
    CHECK_THROWS_AS(quartic_h(spec, 0.0, 1.0, -1), std::invalid_argument);
    auto dom = quartic_exponents(QuarticPotential(1.0, 0.0), Branch::dominant);
    CHECK_THROWS_AS(quartic_b(dom, 0.0, 0.0, 1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(quartic_gamma(HCoefficients{{1.0}, 0, false, -1}, BCoefficients{{1.0}, 0.0, 0},
                                  spec, 0.0, 0),
                    std::invalid_argument);
}
