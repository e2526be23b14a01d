#pragma once

// Numerical instantiation of the proof chain behind the omega bound.
//
// For a concrete spec the trace computes the first inverse column c, the contraction
// sequence psi/phi, the paired maxima z_m = max(|c_2m|, |c_2m+1|) (z_1 = |c_2|), the
// gamma-ratio parameters r, x_hat, y_hat, and nu, then checks each inequality of the
// chain on this finite instance:
//
//   EARLY            |c_m| <= |c_2| for 3 <= m <= i+1
//   EE13             |c_2k|, |c_2k+1| <= phi_k |c_2|
//   INEQ16           (mu+2k+3-i-a_i + a_1 psi_{k+1} + a_2..a_{i-1}) / (mu+2k+3) <= psi_{k+1}
//   GAMMA_ARGS       r in [0, 1], x_hat >= 1, y_hat >= 2
//   ZBOUND           z_m (mu/2+m)^{E/2} <= z_1 (mu/2+2)^{E/2}
//   ZNORM            ||z||^2 <= theta / (2 (mu+1)^2)
//   CNORM            ||c||^2 <= (1 + theta) / (mu+1)^2
//   FROB             ||A^{-1}||_F^2 <= (1 + theta) / (mu+1)
//
// Each check keeps the instance with the largest lhs/rhs excess, so a failing check
// reports where the inequality broke.

#include "toepsv/bounds.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace toepsv {

struct CheckRecord {
    std::string name;
    double lhs = 0.0;           ///< at the worst instance
    double rhs = 0.0;           ///< at the worst instance
    double tolerance = 0.0;     ///< multiplicative slack: pass iff lhs <= rhs + tolerance * |rhs|
    std::size_t worst_index = 0;  ///< k or m of the worst instance; 0 for scalar checks
    std::size_t instances = 0;
    std::size_t violations = 0;
    bool pass = true;
};

struct ProofTrace {
    InverseColumn c;
    BoundSequence phi;
    TheoremBound bound;
    std::vector<double> z;  ///< z[0] = z_1
    double nu = 0.0;
    double r = 0.0;
    double x_hat = 0.0;
    double y_hat = 0.0;
    double z_norm_sq = 0.0;
    double c_norm_sq = 0.0;
    double frob_inv_sq = 0.0;
    std::vector<CheckRecord> checks;

    [[nodiscard]] const CheckRecord* find(std::string_view name) const;
    [[nodiscard]] bool all_pass() const;
};

inline constexpr double kEe13Tolerance = 1e-9;
inline constexpr double kCheckTolerance = 1e-8;

struct ProofTraceOptions {
    std::size_t exact_cap = 16384;       ///< dimension limit for the Frobenius column solves
    std::size_t ineq16_k_limit = 10000;  ///< INEQ16 is sampled for k up to this value
};

/// Throws HypothesisViolated unless check_hypotheses(spec) passes.
ProofTrace build_proof_trace(const MatrixSpec& spec, const ProofTraceOptions& options = {});

}  // namespace toepsv
