#include "anharm/log_gamma.hpp"

namespace anharm {

double log_gamma(double x) {
    int sign = 1;
    double v = detail::log_gamma_impl<double>(x, &sign);
    if (sign < 0)
        throw std::domain_error("log_gamma: Gamma(x) is negative; use log_gamma_signed");
    return v;
}

SignedLogGamma log_gamma_signed(double x) {
    int sign = 1;
    double v = detail::log_gamma_impl<double>(x, &sign);
    return {v, sign};
}

}  // namespace anharm
