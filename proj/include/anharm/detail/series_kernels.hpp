#pragma once

// Precision-generic recurrence and summation kernels. Instantiated with
// double for the default path and anharm::extended for the escalated one.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "anharm/real128.hpp"

namespace anharm::detail {

template <class Real>
std::vector<Real> quartic_h_kernel(Real a3, Real a1, Real am2, Real energy, int order) {
    std::vector<Real> h(order + 1, Real(0));
    h[0] = Real(1);
    auto at = [&](int i) { return i >= 0 ? h[i] : Real(0); };
    for (int m = 1; m <= order; ++m) {
        Real rhs = (energy + a1 * a1) * at(m - 1) - Real(2) * a1 * Real(m - 1) * at(m - 2) +
                   (Real(m - 1) * Real(m - 2) - am2) * at(m - 3);
        h[m] = rhs / (Real(2) * a3 * Real(m));
    }
    return h;
}

// degenerate_b1: value assigned to the free coefficient when the n=1 step is
// degenerate (nu = 0). alpha1*b0 for the quartic family, 0 for the sextic.
template <class Real>
std::vector<Real> quartic_b_kernel(Real a3, Real a1, Real nu, Real a2, Real energy, int order,
                                   Real degenerate_b1) {
    std::vector<Real> b(order + 1, Real(0));
    b[0] = Real(1);
    auto at = [&](int i) { return i >= 0 ? b[i] : Real(0); };
    Real maxb = Real(1);
    for (int n = 1; n <= order; ++n) {
        Real lead = Real(n) * (Real(n) - Real(1) + Real(2) * nu);
        Real rhs = Real(2) * a1 * (Real(n) - Real(1) + nu) * at(n - 1) -
                   (energy + a1 * a1) * at(n - 2) -
                   Real(2) * a3 * (Real(n) - Real(2) + nu) * at(n - 3) + Real(2) * a2 * at(n - 4);
        if (fp_abs(lead) < Real(1e-9)) {
            if (fp_abs(rhs) > Real(1e-9) * (Real(1) + maxb))
                throw std::runtime_error(
                    "quartic_b: inconsistent recurrence at degenerate step n=" + std::to_string(n));
            b[n] = (n == 1) ? degenerate_b1 : Real(0);
        } else {
            b[n] = rhs / lead;
        }
        if (fp_abs(b[n]) > maxb) maxb = fp_abs(b[n]);
    }
    return b;
}

template <class Real>
std::vector<Real> sextic_h_kernel(Real a4, Real a2, Real mu, Real am2, Real energy, int order) {
    std::vector<Real> h(order + 1, Real(0));
    h[0] = Real(1);
    auto at = [&](int i) { return i >= 0 ? h[i] : Real(0); };
    for (int m = 1; m <= order; ++m) {
        Real rhs = (energy + a2 * (Real(-2 * m + 5) + Real(2) * mu)) * at(m - 2) +
                   ((Real(m - 4) - mu) * (Real(m - 3) - mu) - am2) * at(m - 4);
        h[m] = rhs / (Real(2) * a4 * Real(m));
    }
    return h;
}

template <class Real>
std::vector<Real> sextic_b_kernel(Real a4, Real a2, Real nu, Real a2pot, Real a4pot, Real energy,
                                  int order) {
    std::vector<Real> b(order + 1, Real(0));
    b[0] = Real(1);
    auto at = [&](int i) { return i >= 0 ? b[i] : Real(0); };
    Real maxb = Real(1);
    for (int n = 1; n <= order; ++n) {
        Real lead = Real(n) * (Real(n) - Real(1) + Real(2) * nu);
        Real rhs = (-energy + a2 * (Real(2 * n - 3) + Real(2) * nu)) * at(n - 2) +
                   (a2pot - a2 * a2 - a4 * (Real(2 * n - 5) + Real(2) * nu)) * at(n - 4) +
                   Real(2) * a4pot * at(n - 6);
        if (fp_abs(lead) < Real(1e-9)) {
            if (fp_abs(rhs) > Real(1e-9) * (Real(1) + maxb))
                throw std::runtime_error(
                    "sextic_b: inconsistent recurrence at degenerate step n=" + std::to_string(n));
            b[n] = Real(0);
        } else {
            b[n] = rhs / lead;
        }
        if (fp_abs(b[n]) > maxb) maxb = fp_abs(b[n]);
    }
    return b;
}

template <class Real>
struct SumResult {
    Real value = Real(0);
    bool stabilized = false;
    int terms_used = 0;
    Real largest_partial = Real(0);
    Real smallest_term = Real(0);
};

// Truncation-control policy: accept once `run` consecutive increments fall
// below tol*|partial sum|; otherwise cut at the smallest-magnitude term.
// run <= 0 disables the policy and sums every available term (used to pin
// fixed-truncation values against exact-arithmetic oracles).
// TermFn(m) -> Real, m = 0 .. count-1.
template <class Real, class TermFn>
SumResult<Real> controlled_sum(int count, TermFn&& term, Real tol, int run) {
    SumResult<Real> out;
    if (run <= 0) {
        Real s(0), hump(0);
        for (int m = 0; m < count; ++m) {
            Real t = term(m);
            s += t;
            hump = std::max({hump, fp_abs(t), fp_abs(s)});
        }
        out.value = s;
        out.terms_used = count;
        out.largest_partial = hump;
        return out;
    }
    Real s(0), hump(0);
    int consecutive = 0;
    std::vector<Real> terms;
    terms.reserve(count > 0 ? count : 0);
    for (int m = 0; m < count; ++m) {
        Real t = term(m);
        terms.push_back(t);
        s += t;
        if (fp_abs(t) > hump) hump = fp_abs(t);
        if (fp_abs(s) > hump) hump = fp_abs(s);
        if (fp_abs(t) < tol * fp_abs(s)) {
            if (++consecutive >= run) {
                out.value = s;
                out.stabilized = true;
                out.terms_used = m + 1;
                out.largest_partial = hump;
                return out;
            }
        } else {
            consecutive = 0;
        }
    }
    // optimal truncation at the smallest |term|
    int best = 0;
    Real bestmag = terms.empty() ? Real(0) : fp_abs(terms[0]);
    for (int m = 1; m < (int)terms.size(); ++m)
        if (fp_abs(terms[m]) < bestmag) { bestmag = fp_abs(terms[m]); best = m; }
    Real s2(0);
    for (int m = 0; m <= best && m < (int)terms.size(); ++m) s2 += terms[m];
    out.value = s2;
    out.stabilized = false;
    out.terms_used = best + 1;
    out.largest_partial = hump;
    out.smallest_term = bestmag;
    return out;
}

template <class Real>
SumResult<Real> quartic_gamma_kernel(const std::vector<Real>& h, const std::vector<Real>& b,
                                     Real a1, Real nu, int k, Real tol, int run) {
    int count = std::min<int>((int)h.size(), (int)b.size() - k - 1);
    if (count < 0) count = 0;
    return controlled_sum<Real>(
        count,
        [&](int m) {
            return h[m] * (Real(2) * a1 * b[k + m] - (Real(2 * m + k + 2) + nu) * b[k + m + 1]);
        },
        tol, run);
}

template <class Real>
SumResult<Real> sextic_gamma_kernel(const std::vector<Real>& h, const std::vector<Real>& b,
                                    Real a2, Real nu, Real mu, int two_k, Real tol, int run) {
    int count = std::min(((int)h.size() + 1) / 2,                // even h indices 0,2,..
                         ((int)b.size() - 3 - two_k) / 2 + 1);   // b index 2k+2m+2 must exist
    if (count < 0) count = 0;
    return controlled_sum<Real>(
        count,
        [&](int m) {
            return h[2 * m] * (Real(2) * a2 * b[two_k + 2 * m] -
                               (Real(two_k + 4 * m + 2) + nu - mu) * b[two_k + 2 * m + 2]);
        },
        tol, run);
}

}  // namespace anharm::detail
