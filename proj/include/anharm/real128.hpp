#pragma once

// Extended-precision scalar used when double-precision series evaluation is
// not enough. __float128 (113-bit significand) where quadmath is available,
// long double otherwise.

#include <cmath>

#if defined(__SIZEOF_FLOAT128__) && __has_include(<quadmath.h>)
#define ANHARM_HAVE_FLOAT128 1
#include <quadmath.h>
#else
#define ANHARM_HAVE_FLOAT128 0
#endif

namespace anharm {

#if ANHARM_HAVE_FLOAT128
using extended = __float128;
#else
using extended = long double;
#endif

enum class Precision { float64, extended };

namespace detail {

inline double fp_abs(double x) { return std::fabs(x); }
inline double fp_log(double x) { return std::log(x); }
inline double fp_exp(double x) { return std::exp(x); }
inline double fp_sqrt(double x) { return std::sqrt(x); }
inline double fp_pow(double x, double y) { return std::pow(x, y); }
inline double fp_sin(double x) { return std::sin(x); }
inline double fp_floor(double x) { return std::floor(x); }
inline bool fp_finite(double x) { return std::isfinite(x); }
inline double to_double(double x) { return x; }

#if ANHARM_HAVE_FLOAT128
inline extended fp_abs(extended x) { return fabsq(x); }
inline extended fp_log(extended x) { return logq(x); }
inline extended fp_exp(extended x) { return expq(x); }
inline extended fp_sqrt(extended x) { return sqrtq(x); }
inline extended fp_pow(extended x, extended y) { return powq(x, y); }
inline extended fp_sin(extended x) { return sinq(x); }
inline extended fp_floor(extended x) { return floorq(x); }
inline bool fp_finite(extended x) { return finiteq(x) != 0; }
inline double to_double(extended x) { return static_cast<double>(x); }
#else
inline extended fp_abs(extended x) { return fabsl(x); }
inline extended fp_log(extended x) { return logl(x); }
inline extended fp_exp(extended x) { return expl(x); }
inline extended fp_sqrt(extended x) { return sqrtl(x); }
inline extended fp_pow(extended x, extended y) { return powl(x, y); }
inline extended fp_sin(extended x) { return sinl(x); }
inline extended fp_floor(extended x) { return floorl(x); }
inline bool fp_finite(extended x) { return std::isfinite(static_cast<double>(x)); }
inline double to_double(extended x) { return static_cast<double>(x); }
#endif

template <class Real>
constexpr Real fp_eps() {
#if ANHARM_HAVE_FLOAT128
    if constexpr (!std::is_same_v<Real, double> && !std::is_same_v<Real, long double>)
        return Real(1) / (Real(1ULL << 56) * Real(1ULL << 56));  // 2^-112
#endif
    if constexpr (std::is_same_v<Real, long double>)
        return 1e-18L;
    return 2.220446049250313e-16;
}

template <class Real>
constexpr Real fp_pi() {
    return Real(3.14159265358979323846264338327950288L);
}

}  // namespace detail
}  // namespace anharm
