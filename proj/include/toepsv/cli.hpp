#pragma once

#include "toepsv/matrix_core.hpp"
#include "toepsv/rational.hpp"
#include "toepsv/spectral.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace toepsv::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitHypothesis = 2,
    kExitNotConverged = 3,
    kExitCheckFailed = 4,
};

struct RunConfig {
    std::optional<Rational> mu;
    std::vector<Rational> a;
    std::vector<std::size_t> n_values;
    double tol = 1e-12;
    std::size_t max_iter = 50000;
    std::uint64_t seed = 1;
    std::filesystem::path output_dir = ".";
    bool emit_svg = false;
    std::optional<std::size_t> exact_cap;

    [[nodiscard]] bool has_matrix() const { return mu.has_value() && !a.empty(); }
    [[nodiscard]] MatrixSpec spec(std::size_t n) const;
    [[nodiscard]] PowerIterationOptions power_options() const;
};

/// Parses a JSON config. Throws ParseError naming "line L, column C" for malformed JSON and the
/// offending field path (e.g. `a[2]`) for invalid values.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);

/// Shortest decimal string that round-trips to the same binary64 value.
std::string format_double(double v);

/// 40 log-spaced integers in [10, 2000].
std::vector<std::size_t> figure_grid();

struct ScanRow {
    std::size_t n = 0;
    double sigma_n = 0.0;
    double frob_inv_reciprocal = 0.0;
    double omega = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

std::vector<ScanRow> run_scan(const RunConfig& config);
std::string scan_csv(const std::vector<ScanRow>& rows);
std::string scan_svg(const std::vector<ScanRow>& rows, std::string_view title);

int cmd_bound(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_scan(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_figures(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line: `bound|scan|figures|verify [--config FILE] [--out DIR] [--tol X] [--seed N] [--svg]`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace toepsv::cli
