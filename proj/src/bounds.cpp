#include "toepsv/bounds.hpp"

#include "toepsv/errors.hpp"

#include <cmath>
#include <algorithm>
#include <limits>

namespace toepsv {

namespace {

constexpr std::int64_t kExactPowerLimit = 64;

Rational prefix_sum(const MatrixSpec& spec) {
    Rational s;
    const auto& a = spec.a();
    for (std::size_t j = 0; j + 1 < a.size(); ++j) s += a[j];
    return s;
}

std::string name_a(std::size_t j) { return "a_" + std::to_string(j); }

}  // namespace

Rational subdiagonal_excess(const MatrixSpec& spec) { return prefix_sum(spec) - spec.a().back(); }

HypothesisVerdict check_hypotheses(const MatrixSpec& spec) {
    HypothesisVerdict v;
    const auto& a = spec.a();
    const Rational& mu = spec.mu();
    const std::size_t i = spec.period();
    const Rational zero;
    const Rational one(1);

    v.i_at_least_2 = i >= 2;
    if (!v.i_at_least_2) v.violations.push_back("period i = " + std::to_string(i) + " must be at least 2");

    v.mu_strictly_positive = mu > zero;
    if (!v.mu_strictly_positive) {
        v.violations.push_back("mu = " + mu.to_string() + " must be > 0 for theta and omega to be defined");
    }

    bool eq2 = true;
    for (std::size_t j = 1; j < i; ++j) {
        if (a[j] < zero) {
            eq2 = false;
            v.violations.push_back(name_a(j + 1) + " = " + a[j].to_string() + " is negative");
        }
        if (a[j] > a[0]) {
            eq2 = false;
            v.violations.push_back(name_a(j + 1) + " = " + a[j].to_string() + " exceeds a_1 = " + a[0].to_string());
        }
    }
    if (a[0] > mu + Rational(3)) {
        eq2 = false;
        v.violations.push_back("a_1 = " + a[0].to_string() + " exceeds mu + 3 = " + (mu + Rational(3)).to_string());
    }
    if (a[0] < one) {
        eq2 = false;
        v.violations.push_back("a_1 = " + a[0].to_string() + " is below 1");
    }
    if (mu < zero) {
        eq2 = false;
        v.violations.push_back("mu = " + mu.to_string() + " is negative");
    }
    v.satisfies_eq2 = eq2;

    const Rational excess = subdiagonal_excess(spec);
    const Rational limit(static_cast<std::int64_t>(i) - 1);
    v.satisfies_eq3 = excess < limit;
    if (!v.satisfies_eq3) {
        v.violations.push_back("a_1 + ... + a_{i-1} - a_i = " + excess.to_string() + " is not below i - 1 = " +
                               limit.to_string());
    }
    return v;
}

TheoremBound theorem_bound(const MatrixSpec& spec) {
    const Rational& mu = spec.mu();
    if (mu.sign() <= 0) throw DomainError("theta requires mu > 0, got mu = " + mu.to_string());
    const Rational i(static_cast<std::int64_t>(spec.period()));
    const Rational excess = subdiagonal_excess(spec);
    const Rational exponent = i - excess;
    const Rational gap = exponent - Rational(1);
    if (gap.sign() <= 0) {
        throw DomainError("theta requires i - 1 + a_i - (a_1 + ... + a_{i-1}) > 0, got " + gap.to_string());
    }

    const Rational& a1 = spec.a().front();
    const Rational mu_plus_2 = mu + Rational(2);
    // Rational prefactor a_1^2 mu / (G (mu+2)^2) is exact. A small integer exponent keeps the whole
    // product exact; otherwise only the power is evaluated in binary64.
    const Rational prefactor = a1 * a1 * mu / (gap * mu_plus_2 * mu_plus_2);
    TheoremBound out;
    if (exponent.is_integer() && exponent <= Rational(kExactPowerLimit)) {
        const Rational base = (mu + Rational(4)) / mu;
        Rational product = prefactor;
        for (Rational k(0); k < exponent; k += Rational(1)) product *= base;
        out.theta = product.to_double();
    } else {
        out.theta = prefactor.to_double() *
                    std::exp(exponent.to_double() * std::log1p((Rational(4) / mu).to_double()));
    }
    out.omega = std::sqrt((mu + Rational(1)).to_double() / (1.0 + out.theta));
    out.exponent = exponent.to_double();
    out.denom_gap = gap.to_double();
    return out;
}

double theta(const MatrixSpec& spec) { return theorem_bound(spec).theta; }
double omega(const MatrixSpec& spec) { return theorem_bound(spec).omega; }

BoundSequence psi_phi(const MatrixSpec& spec, std::size_t k_max) {
    if (spec.mu().sign() <= 0) throw DomainError("psi_phi requires mu > 0");
    const double mu = spec.mu_value();
    // mu - i - a_i + S, folded once so each psi_k costs one add and one divide.
    const double shift = (spec.mu() + subdiagonal_excess(spec) - Rational(static_cast<std::int64_t>(spec.period())))
                             .to_double();
    const double nan = std::numeric_limits<double>::quiet_NaN();

    BoundSequence seq;
    seq.psi.assign(std::max<std::size_t>(k_max + 1, 2), nan);
    seq.phi.assign(std::max<std::size_t>(k_max + 1, 2), nan);
    seq.phi[1] = 1.0;
    for (std::size_t k = 2; k <= k_max; ++k) {
        const double two_k = 2.0 * static_cast<double>(k);
        seq.psi[k] = (shift + two_k) / (mu + two_k);
        seq.phi[k] = seq.phi[k - 1] * seq.psi[k];
    }
    return seq;
}

InverseColumn inverse_first_column(const MatrixSpec& spec, const SolveOptions& options) {
    std::vector<double> e1(spec.n(), 0.0);
    e1[0] = 1.0;
    return InverseColumn{forward_solve_from(spec, e1, 1, options)};
}

}  // namespace toepsv
