#pragma once

#include "toepsv/matrix_core.hpp"

#include <cstdint>
#include <vector>

namespace toepsv {

struct SpectralReport {
    std::size_t n = 0;
    double sigma_min = 0.0;            ///< smallest singular value sigma_n
    double frob_inv = 0.0;             ///< ||A^{-1}||_F, NaN when not computed
    double frob_inv_reciprocal = 0.0;  ///< 1 / ||A^{-1}||_F, NaN when not computed
    std::size_t iterations = 0;
    double residual = 0.0;  ///< ||G v - lambda v|| / lambda at the final iterate, G = A^{-T} A^{-1}
    bool converged = false;
};

struct PowerIterationOptions {
    double tol = 1e-12;
    std::size_t max_iter = 50000;
    std::uint64_t seed = 1;
};

/// Deterministic start vector: entries in [0.5, 1.5) drawn from the 64-bit LCG
/// x <- 6364136223846793005 x + 1442695040888963407 (mod 2^64), using the top 53 bits of each state.
std::vector<double> seeded_start_vector(std::size_t n, std::uint64_t seed);

/// sigma_n = 1 / sqrt(lambda_max(A^{-T} A^{-1})) by power iteration, each step one forward_solve and one
/// transpose_solve. Stops once successive Rayleigh quotients differ by at most tol relatively; when
/// max_iter is reached first the report is returned with converged = false. The Frobenius fields are NaN.
SpectralReport smallest_singular_value(const MatrixSpec& spec, const PowerIterationOptions& options = {});

/// ||A^{-1}||_F from the n column solves A x_j = e_j. Columns are split into fixed blocks whose partial
/// sums are reduced in block order, so the result does not depend on the number of worker threads.
double frobenius_inverse_norm(const MatrixSpec& spec, std::size_t exact_cap = kDefaultDenseCap);

/// Both of the above in one report.
SpectralReport spectral_report(const MatrixSpec& spec, const PowerIterationOptions& options = {},
                               std::size_t exact_cap = kDefaultDenseCap);

inline constexpr std::size_t kGramOracleCap = 64;

/// Eigenvalues of A^T A in ascending order by cyclic Jacobi rotations (test oracle, n <= 64). The Gram
/// matrix is formed and diagonalised in binary128 where the compiler provides it, so tiny eigenvalues of
/// ill-conditioned A keep their relative accuracy.
std::vector<double> dense_gram_eigen_oracle(const DenseMatrix& dense);

/// Eigenvalues of a dense symmetric matrix in ascending order, cyclic Jacobi.
std::vector<double> jacobi_eigenvalues(DenseMatrix sym, double relative_offdiag_tol = 1e-14);

}  // namespace toepsv
