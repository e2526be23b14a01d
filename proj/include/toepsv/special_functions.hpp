#pragma once

#include <cstddef>

namespace toepsv {

/// ln Gamma(x) for x > 0. Backed by the C library's reentrant lgamma, which is accurate to
/// well under 1e-13 relative on [0.5, 1e6] including the neighbourhoods of the zeros at 1 and 2.
double log_gamma(double x);

/// Gamma(x+1) / Gamma(x+r). A direct tgamma quotient for x + r < 12, otherwise the difference of two
/// Stirling series, which keeps the relative error near a few ulps for arbitrarily large x.
double gamma_ratio(double x, double r);

/// Gautschi's inequality x^{1-r} <= Gamma(x+1)/Gamma(x+r) <= (x+1)^{1-r}, for x > 0 and r in [0, 1].
/// Both sides are compared in the ratio domain with a relative slack of `slack`.
bool check_gautschi(double x, double r, double slack = 1e-12);

/// Partial sum sum_{k=N+1}^{N+terms} (k+q)^{-s}, accumulated from the smallest term up.
double hurwitz_partial_sum(double s, double q, std::size_t first_index, std::size_t terms);

/// Hurwitz-zeta tail bound (N+q)^{1-s} / (s-1).
double hurwitz_tail_bound(double s, double q, std::size_t n_offset);

/// True when the truncated tail sum does not exceed the closed-form bound. The truncated sum is a lower
/// bound for the infinite tail, so the check is valid for any number of terms. Requires s > 1, q > 0 and
/// terms >= 1.
bool check_zeta_tail(double s, double q, std::size_t n_offset, std::size_t terms, double slack = 1e-12);

}  // namespace toepsv
