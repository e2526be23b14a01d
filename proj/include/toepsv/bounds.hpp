#pragma once

// Hypothesis predicates and closed-form lower bound for the smallest singular value.
//
// With S = a_1 + ... + a_{i-1}, E = i + a_i - S and G = i - 1 + a_i - S, the bound is
//
//   theta(mu) = a_1^2 * mu * (1 + 4/mu)^E / (G * (mu + 2)^2)
//   omega     = sqrt((mu + 1) / (1 + theta(mu)))
//
// and it applies when 0 <= a_2..a_i <= a_1 <= mu + 3, a_1 >= 1, mu >= 0, S - a_i < i - 1, i >= 2.
// mu = 0 is admitted by the hypothesis but theta divides by mu, so mu > 0 is required here.

#include "toepsv/matrix_core.hpp"

#include <string>
#include <vector>

namespace toepsv {

struct HypothesisVerdict {
    bool satisfies_eq2 = false;         ///< ordering and range conditions on a_j and mu
    bool satisfies_eq3 = false;         ///< S - a_i < i - 1 (strict)
    bool i_at_least_2 = false;
    bool mu_strictly_positive = false;
    std::vector<std::string> violations;

    [[nodiscard]] bool passed() const {
        return satisfies_eq2 && satisfies_eq3 && i_at_least_2 && mu_strictly_positive;
    }
};

struct TheoremBound {
    double theta = 0.0;
    double omega = 0.0;
    double exponent = 0.0;   ///< E = i + a_i - S
    double denom_gap = 0.0;  ///< G = i - 1 + a_i - S
};

/// psi[k] and phi[k] are indexed by k directly; psi[0], psi[1] and phi[0] are unused (NaN).
struct BoundSequence {
    std::vector<double> psi;
    std::vector<double> phi;

    [[nodiscard]] std::size_t k_max() const { return phi.empty() ? 0 : phi.size() - 1; }
};

/// First column of A^{-1}, c[0] = c_1.
struct InverseColumn {
    std::vector<double> c;
};

/// Exact rational evaluation of every hypothesis; never throws.
HypothesisVerdict check_hypotheses(const MatrixSpec& spec);

/// Exact value of S - a_i.
Rational subdiagonal_excess(const MatrixSpec& spec);

double theta(const MatrixSpec& spec);
double omega(const MatrixSpec& spec);
TheoremBound theorem_bound(const MatrixSpec& spec);

/// psi_k = (mu + 2k - i - a_i + S) / (mu + 2k) for 2 <= k <= k_max, phi_1 = 1, phi_k = phi_{k-1} psi_k.
BoundSequence psi_phi(const MatrixSpec& spec, std::size_t k_max);

/// Plain substitution for c_1 .. c_{i+1}, then the bandwidth-i recurrence of R*A for m >= i+2.
InverseColumn inverse_first_column(const MatrixSpec& spec, const SolveOptions& options = {});

}  // namespace toepsv
