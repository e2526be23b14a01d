#include "toepsv/spectral.hpp"

#include "toepsv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <thread>

namespace toepsv {

namespace {

using Lcg64 = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0ULL>;

double dot(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
    return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

void scale(std::vector<double>& x, double f) {
    for (auto& v : x) v *= f;
}

constexpr std::size_t kFrobeniusBlocks = 64;

}  // namespace

std::vector<double> seeded_start_vector(std::size_t n, std::uint64_t seed) {
    Lcg64 gen(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = 0.5 + static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return v;
}

SpectralReport smallest_singular_value(const MatrixSpec& spec, const PowerIterationOptions& options) {
    const std::size_t n = spec.n();
    std::vector<double> v = seeded_start_vector(n, options.seed);
    scale(v, 1.0 / norm2(v));

    SpectralReport report;
    report.n = n;
    report.frob_inv = std::numeric_limits<double>::quiet_NaN();
    report.frob_inv_reciprocal = std::numeric_limits<double>::quiet_NaN();

    double lambda = 0.0;
    double prev = 0.0;
    std::vector<double> u;
    for (std::size_t it = 1; it <= options.max_iter; ++it) {
        const std::vector<double> w = forward_solve(spec, v);
        u = transpose_solve(spec, w);
        // v is a unit vector, so v^T G v = ||A^{-1} v||^2.
        lambda = dot(w, w);
        report.iterations = it;
        if (it > 1 && std::abs(lambda - prev) <= options.tol * lambda) {
            report.converged = true;
            break;
        }
        prev = lambda;
        v = u;
        scale(v, 1.0 / norm2(v));
    }

    double res = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double d = u[k] - lambda * v[k];
        res += d * d;
    }
    report.residual = std::sqrt(res) / lambda;
    report.sigma_min = 1.0 / std::sqrt(lambda);
    return report;
}

double frobenius_inverse_norm(const MatrixSpec& spec, std::size_t exact_cap) {
    const std::size_t n = spec.n();
    if (n > exact_cap) {
        throw DimensionTooLarge("Frobenius norm of the inverse for n=" + std::to_string(n) + " exceeds cap " +
                                std::to_string(exact_cap));
    }
    // Fail fast on the calling thread rather than inside a worker.
    for (std::size_t m = 1; m <= n; ++m) {
        if (!(std::abs(spec.mu_value() + static_cast<double>(m)) >= kDefaultPivotFloor)) {
            throw SingularDiagonal("diagonal entry mu+" + std::to_string(m) + " is below the pivot floor");
        }
    }

    const std::size_t blocks = std::min(kFrobeniusBlocks, n);
    std::vector<double> partial(blocks, 0.0);
    auto run_block = [&](std::size_t b) {
        const std::size_t begin = b * n / blocks;
        const std::size_t end = (b + 1) * n / blocks;
        std::vector<double> rhs(n, 0.0);
        double sum = 0.0;
        for (std::size_t j = begin; j < end; ++j) {
            rhs[j] = 1.0;
            const std::vector<double> x = forward_solve_from(spec, rhs, j + 1);
            rhs[j] = 0.0;
            for (std::size_t k = j; k < n; ++k) sum += x[k] * x[k];
        }
        partial[b] = sum;
    };

    const std::size_t workers =
        std::min<std::size_t>(blocks, std::max(1U, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) run_block(b);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t b = w; b < blocks; b += workers) run_block(b);
            });
        }
    }

    double total = 0.0;
    for (double p : partial) total += p;
    return std::sqrt(total);
}

SpectralReport spectral_report(const MatrixSpec& spec, const PowerIterationOptions& options, std::size_t exact_cap) {
    SpectralReport report = smallest_singular_value(spec, options);
    report.frob_inv = frobenius_inverse_norm(spec, exact_cap);
    report.frob_inv_reciprocal = 1.0 / report.frob_inv;
    return report;
}

namespace {

#if defined(__SIZEOF_FLOAT128__)
__extension__ typedef __float128 wide_t;
#else
typedef long double wide_t;
#endif

double root(double v) { return std::sqrt(v); }

wide_t root(wide_t v) {
    if (v <= 0) return 0;
    wide_t x = std::sqrt(static_cast<double>(v));
    if (x == 0) x = 1;
    for (int k = 0; k < 3; ++k) x = (x + v / x) / 2;
    return x;
}

template <class T>
T magnitude(T v) {
    return v < 0 ? -v : v;
}

// Cyclic Jacobi on a dense symmetric n x n matrix stored row-major.
template <class T>
std::vector<double> cyclic_jacobi(std::vector<T> a, std::size_t n, double relative_offdiag_tol) {
    auto at = [&](std::size_t r, std::size_t c) -> T& { return a[r * n + c]; };
    T total = 0;
    for (const T& v : a) total += v * v;
    const T threshold = static_cast<T>(relative_offdiag_tol) * root(total);

    for (int sweep = 0; sweep < 100; ++sweep) {
        T off = 0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) off += 2 * at(p, q) * at(p, q);
        }
        if (root(off) <= threshold) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const T apq = at(p, q);
                if (apq == 0) continue;
                const T theta = (at(q, q) - at(p, p)) / (2 * apq);
                const T t = (theta >= 0 ? T(1) : T(-1)) / (magnitude(theta) + root(theta * theta + 1));
                const T c = 1 / root(t * t + 1);
                const T s = t * c;
                const T tau = s / (1 + c);
                at(p, p) -= t * apq;
                at(q, q) += t * apq;
                at(p, q) = 0;
                at(q, p) = 0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const T arp = at(r, p);
                    const T arq = at(r, q);
                    at(r, p) = at(p, r) = arp - s * (arq + tau * arp);
                    at(r, q) = at(q, r) = arq + s * (arp - tau * arq);
                }
            }
        }
    }

    std::vector<double> eig(n);
    for (std::size_t k = 0; k < n; ++k) eig[k] = static_cast<double>(at(k, k));
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace

std::vector<double> jacobi_eigenvalues(DenseMatrix a, double relative_offdiag_tol) {
    if (a.cols != a.rows) throw DimensionMismatch("jacobi_eigenvalues needs a square matrix");
    return cyclic_jacobi(std::move(a.entries), a.rows, relative_offdiag_tol);
}

std::vector<double> dense_gram_eigen_oracle(const DenseMatrix& dense) {
    const std::size_t n = dense.rows;
    if (n > kGramOracleCap) {
        throw DimensionTooLarge("Gram eigen oracle is limited to n <= " + std::to_string(kGramOracleCap));
    }
    if (dense.cols != n) throw DimensionMismatch("Gram eigen oracle needs a square matrix");
    // Products of binary64 entries are exact in the wide type, so the Gram matrix carries no
    // rounding that would swamp a tiny lambda_min.
    std::vector<wide_t> gram(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = r; c < n; ++c) {
            wide_t s = 0;
            for (std::size_t k = 0; k < n; ++k) s += static_cast<wide_t>(dense(k, r)) * dense(k, c);
            gram[r * n + c] = gram[c * n + r] = s;
        }
    }
    return cyclic_jacobi(std::move(gram), n, 1e-30);
}

}  // namespace toepsv
