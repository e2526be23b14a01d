#include "toepsv/special_functions.hpp"

#include "toepsv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace toepsv {

namespace {

constexpr double kStirlingThreshold = 12.0;

// B_2k / (2k (2k-1)) for k = 1..8.
constexpr double kStirlingCoefficients[] = {1.0 / 12.0,     -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0,
                                            1.0 / 1188.0,   -691.0 / 360360.0, 1.0 / 156.0,
                                            -3617.0 / 122400.0};

double stirling_correction(double z) {
    const double inv = 1.0 / z;
    const double inv2 = inv * inv;
    double sum = 0.0;
    for (auto it = std::rbegin(kStirlingCoefficients); it != std::rend(kStirlingCoefficients); ++it) {
        sum = sum * inv2 + *it;
    }
    return sum * inv;
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("log_gamma requires finite x > 0, got " + std::to_string(x));
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

double gamma_ratio(double x, double r) {
    if (!(x > 0.0)) throw DomainError("gamma_ratio requires x > 0");
    if (!(x + r > 0.0)) throw DomainError("gamma_ratio requires x + r > 0");
    const double z2 = x + r;
    if (z2 < kStirlingThreshold) return std::tgamma(x + 1.0) / std::tgamma(z2);
    // ln Gamma(z1) - ln Gamma(z2) from Stirling's series, arranged so that no large terms cancel.
    const double z1 = x + 1.0;
    const double delta = 1.0 - r;
    const double log_ratio = (z2 - 0.5) * std::log1p(delta / z2) + delta * (std::log(z1) - 1.0) +
                             (stirling_correction(z1) - stirling_correction(z2));
    return std::exp(log_ratio);
}

bool check_gautschi(double x, double r, double slack) {
    if (!(x > 0.0)) throw DomainError("Gautschi check requires x > 0");
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError("Gautschi check requires r in [0, 1]");
    const double ratio = gamma_ratio(x, r);
    const double lower = std::pow(x, 1.0 - r);
    const double upper = std::pow(x + 1.0, 1.0 - r);
    return lower * (1.0 - slack) <= ratio && ratio <= upper * (1.0 + slack);
}

double hurwitz_partial_sum(double s, double q, std::size_t first_index, std::size_t terms) {
    double sum = 0.0;
    for (std::size_t t = terms; t > 0; --t) {
        const double k = static_cast<double>(first_index + t - 1);
        sum += std::pow(k + q, -s);
    }
    return sum;
}

double hurwitz_tail_bound(double s, double q, std::size_t n_offset) {
    return std::pow(static_cast<double>(n_offset) + q, 1.0 - s) / (s - 1.0);
}

bool check_zeta_tail(double s, double q, std::size_t n_offset, std::size_t terms, double slack) {
    if (!(s > 1.0)) throw DomainError("zeta tail check requires s > 1");
    if (!(q > 0.0)) throw DomainError("zeta tail check requires q > 0");
    if (terms == 0) throw DomainError("zeta tail check requires at least one term");
    const double lhs = hurwitz_partial_sum(s, q, n_offset + 1, terms);
    const double rhs = hurwitz_tail_bound(s, q, n_offset);
    return lhs <= rhs * (1.0 + slack);
}

}  // namespace toepsv
