#pragma once

// Periodic lower-triangular Toeplitz matrices with linearly increasing diagonal:
//
//   A[r][r] = mu + r                              (1-based r)
//   A[r][c] = a_{((r - c - 1) mod i) + 1}         (r > c)
//   A[r][c] = 0                                   (r < c)
//
// so the first column is (mu+1, a_1, ..., a_i, a_1, ..., a_i, ...). Every kernel
// here runs in O(n * i) time without forming the dense matrix; the dense form
// exists only as a small-n oracle.

#include "toepsv/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace toepsv {

inline constexpr std::size_t kDefaultDenseCap = 4096;
inline constexpr double kDefaultPivotFloor = 1e-300;

class MatrixSpec {
public:
    /// Throws DomainError if `a` is empty or n == 0. Sign conditions are not checked here.
    MatrixSpec(Rational mu, std::vector<Rational> a, std::size_t n);

    [[nodiscard]] const Rational& mu() const { return mu_; }
    [[nodiscard]] const std::vector<Rational>& a() const { return a_; }
    [[nodiscard]] std::size_t period() const { return a_.size(); }
    [[nodiscard]] std::size_t n() const { return n_; }

    /// Binary64 images of the parameters, rounded to nearest once at construction.
    [[nodiscard]] double mu_value() const { return mu_value_; }
    [[nodiscard]] std::span<const double> a_values() const { return a_values_; }

    /// Same parameters, different dimension.
    [[nodiscard]] MatrixSpec with_n(std::size_t n) const;

    /// Entry in binary64 at 1-based (row, col).
    [[nodiscard]] double entry(std::size_t row, std::size_t col) const;

private:
    Rational mu_;
    std::vector<Rational> a_;
    std::size_t n_;
    double mu_value_;
    std::vector<double> a_values_;
};

/// Row-major dense n x n matrix.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> entries;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

/// Floating-point operation tally used to check that kernels stay linear in n.
struct OpCounter {
    std::uint64_t multiply_adds = 0;
    std::uint64_t divisions = 0;

    [[nodiscard]] std::uint64_t total() const { return multiply_adds + divisions; }
};

struct SolveOptions {
    double pivot_floor = kDefaultPivotFloor;
    OpCounter* counter = nullptr;
};

DenseMatrix materialize_dense(const MatrixSpec& spec, std::size_t dense_cap = kDefaultDenseCap);

std::vector<double> matvec(const MatrixSpec& spec, std::span<const double> x, OpCounter* counter = nullptr);

/// Solves A x = b through the banded form R*A, where R subtracts row m-i from row m for m >= i+2.
std::vector<double> forward_solve(const MatrixSpec& spec, std::span<const double> b, const SolveOptions& options = {});

/// Solves A x = b assuming b_m = 0 and hence x_m = 0 for every m < first (1-based). Used by
/// column-wise inversion so that column j costs O((n - j) * i).
std::vector<double> forward_solve_from(const MatrixSpec& spec, std::span<const double> b, std::size_t first,
                                       const SolveOptions& options = {});

/// Solves A^T x = b: a backward sweep on (R*A)^T followed by x = R^T y.
std::vector<double> transpose_solve(const MatrixSpec& spec, std::span<const double> b,
                                    const SolveOptions& options = {});

}  // namespace toepsv
