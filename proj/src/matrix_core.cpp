#include "toepsv/matrix_core.hpp"

#include "toepsv/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace toepsv {

MatrixSpec::MatrixSpec(Rational mu, std::vector<Rational> a, std::size_t n)
    : mu_(std::move(mu)), a_(std::move(a)), n_(n), mu_value_(mu_.to_double()) {
    if (a_.empty()) throw DomainError("period i must be at least 1");
    if (n_ == 0) throw DomainError("dimension n must be at least 1");
    a_values_.reserve(a_.size());
    for (const auto& v : a_) a_values_.push_back(v.to_double());
}

MatrixSpec MatrixSpec::with_n(std::size_t n) const { return MatrixSpec(mu_, a_, n); }

double MatrixSpec::entry(std::size_t row, std::size_t col) const {
    if (row == col) return mu_value_ + static_cast<double>(row);
    if (row < col) return 0.0;
    return a_values_[(row - col - 1) % a_values_.size()];
}

namespace {

void check_length(const MatrixSpec& spec, std::size_t len, const char* what) {
    if (len != spec.n()) {
        throw DimensionMismatch(std::string(what) + ": expected length " + std::to_string(spec.n()) + ", got " +
                                std::to_string(len));
    }
}

double pivot(const MatrixSpec& spec, std::size_t m, double floor) {
    const double d = spec.mu_value() + static_cast<double>(m);
    if (!(std::abs(d) >= floor)) {
        throw SingularDiagonal("diagonal entry mu+" + std::to_string(m) + " = " + std::to_string(d) +
                               " is below the pivot floor");
    }
    return d;
}

}  // namespace

DenseMatrix materialize_dense(const MatrixSpec& spec, std::size_t dense_cap) {
    const std::size_t n = spec.n();
    if (n > dense_cap) {
        throw DimensionTooLarge("dense materialization of n=" + std::to_string(n) + " exceeds cap " +
                                std::to_string(dense_cap));
    }
    DenseMatrix out(n, n);
    for (std::size_t r = 1; r <= n; ++r) {
        for (std::size_t c = 1; c <= r; ++c) out(r - 1, c - 1) = spec.entry(r, c);
    }
    return out;
}

std::vector<double> matvec(const MatrixSpec& spec, std::span<const double> x, OpCounter* counter) {
    check_length(spec, x.size(), "matvec");
    const std::size_t n = spec.n();
    const std::size_t period = spec.period();
    const auto a = spec.a_values();
    const double mu = spec.mu_value();

    // partial[q] = sum of x_k over k < m with k = q (mod period), 1-based k.
    // Row m picks up a_j * x_k exactly when k = m - j (mod period).
    std::vector<double> partial(period, 0.0);
    std::vector<double> y(n);
    for (std::size_t m = 1; m <= n; ++m) {
        double acc = (mu + static_cast<double>(m)) * x[m - 1];
        for (std::size_t j = 1; j <= period; ++j) {
            acc += a[j - 1] * partial[(m + period * j - j) % period];
        }
        y[m - 1] = acc;
        partial[m % period] += x[m - 1];
    }
    if (counter != nullptr) counter->multiply_adds += n * (period + 2);
    return y;
}

std::vector<double> forward_solve(const MatrixSpec& spec, std::span<const double> b, const SolveOptions& options) {
    return forward_solve_from(spec, b, 1, options);
}

std::vector<double> forward_solve_from(const MatrixSpec& spec, std::span<const double> b, std::size_t first,
                                       const SolveOptions& options) {
    check_length(spec, b.size(), "forward_solve");
    const std::size_t n = spec.n();
    const std::size_t period = spec.period();
    const auto a = spec.a_values();
    const double mu = spec.mu_value();
    const double a_last = a[period - 1];
    if (first == 0) first = 1;

    std::vector<double> x(n, 0.0);
    std::uint64_t madds = 0;
    std::uint64_t divs = 0;

    // Rows 1 .. i+1 keep the plain substitution form; row m touches a_1 .. a_{m-1} only.
    const std::size_t plain_end = std::min(n, period + 1);
    for (std::size_t m = first; m <= plain_end; ++m) {
        double acc = b[m - 1];
        for (std::size_t k = first; k < m; ++k) acc -= a[m - k - 1] * x[k - 1];
        madds += m - first;
        x[m - 1] = acc / pivot(spec, m, options.pivot_floor);
        ++divs;
    }

    // Rows m >= i+2 of R*A: a_{i-1} .. a_1 on the i-1 subdiagonals, a_i - (mu + m - i) at column m-i.
    for (std::size_t m = std::max(first, period + 2); m <= n; ++m) {
        double acc = b[m - 1] - b[m - period - 1];
        const std::size_t lag_max = std::min(period - 1, m - first);
        for (std::size_t j = 1; j <= lag_max; ++j) acc -= a[j - 1] * x[m - j - 1];
        acc += (mu + static_cast<double>(m - period) - a_last) * x[m - period - 1];
        madds += lag_max + 2;
        x[m - 1] = acc / pivot(spec, m, options.pivot_floor);
        ++divs;
    }

    if (options.counter != nullptr) {
        options.counter->multiply_adds += madds;
        options.counter->divisions += divs;
    }
    return x;
}

std::vector<double> transpose_solve(const MatrixSpec& spec, std::span<const double> b, const SolveOptions& options) {
    check_length(spec, b.size(), "transpose_solve");
    const std::size_t n = spec.n();
    const std::size_t period = spec.period();
    const auto a = spec.a_values();
    const double mu = spec.mu_value();
    const double a_last = a[period - 1];

    // Backward sweep on (R*A)^T. Column r of R*A holds a_{c-r} in rows c = r+1 .. r+i, except that
    // the entry at c = r+i becomes a_i - (mu + r) once c >= i+2 (that is, r >= 2).
    std::vector<double> y(n, 0.0);
    std::uint64_t madds = 0;
    for (std::size_t r = n; r >= 1; --r) {
        double acc = b[r - 1];
        const std::size_t c_max = std::min(n, r + period);
        for (std::size_t c = r + 1; c <= c_max; ++c) {
            const std::size_t lag = c - r;
            const double coeff =
                (lag == period && c >= period + 2) ? a_last - (mu + static_cast<double>(r)) : a[lag - 1];
            acc -= coeff * y[c - 1];
        }
        madds += c_max - r;
        y[r - 1] = acc / pivot(spec, r, options.pivot_floor);
    }

    // x = R^T y: R^T has -1 at (m, m+i) for m >= 2.
    std::vector<double> x(y);
    for (std::size_t m = 2; m + period <= n; ++m) x[m - 1] -= y[m + period - 1];

    if (options.counter != nullptr) {
        options.counter->multiply_adds += madds + n;
        options.counter->divisions += n;
    }
    return x;
}

}  // namespace toepsv
