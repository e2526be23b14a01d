#include "toepsv/cli.hpp"

#include "toepsv/bounds.hpp"
#include "toepsv/errors.hpp"
#include "toepsv/proof_trace.hpp"
#include "toepsv/reference_sets.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace toepsv::cli {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
    throw ParseError("config field '" + path + "': " + what);
}

Rational rational_field(const json& v, const std::string& path) {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (!v.is_string()) field_error(path, "expected a rational string such as \"7/3\" or \"100-1/6\"");
    try {
        return Rational::parse(v.get<std::string>());
    } catch (const ParseError& e) {
        field_error(path, e.what());
    }
}

std::uint64_t unsigned_field(const json& v, const std::string& path) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    field_error(path, "expected a non-negative integer");
}

std::string position_of(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min(byte > 0 ? byte - 1 : 0, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
        if (text[k] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

void require_matrix(const RunConfig& config) {
    if (!config.mu) throw ParseError("config field 'mu' is required");
    if (config.a.empty()) throw ParseError("config field 'a' is required");
    if (config.n_values.empty()) throw ParseError("config field 'n_values' is required");
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open " + path.string() + " for writing");
    f << content;
    if (!f) throw Error("failed writing " + path.string());
}

double omega_or_nan(const MatrixSpec& spec) {
    try {
        return omega(spec);
    } catch (const DomainError&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void report_verdict(const HypothesisVerdict& verdict, std::ostream& out) {
    out << "hypotheses: " << (verdict.passed() ? "satisfied" : "violated") << '\n';
    for (const auto& v : verdict.violations) out << "  - " << v << '\n';
}

// Runs one command body, translating library errors into exit codes.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const HypothesisViolated& e) {
        err << "error: " << e.what() << '\n';
        return kExitHypothesis;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace

MatrixSpec RunConfig::spec(std::size_t n) const {
    if (!mu) throw ParseError("config field 'mu' is required");
    return MatrixSpec(*mu, a, n);
}

PowerIterationOptions RunConfig::power_options() const {
    PowerIterationOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    opts.seed = seed;
    return opts;
}

RunConfig parse_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        std::string msg = e.what();
        if (const auto colon = msg.rfind(": "); colon != std::string::npos) msg = msg.substr(colon + 2);
        throw ParseError("malformed JSON at " + position_of(json_text, e.byte) + ": " + msg);
    }
    if (!doc.is_object()) throw ParseError("config must be a JSON object");

    RunConfig config;
    for (const auto& [key, value] : doc.items()) {
        if (key == "mu") {
            config.mu = rational_field(value, "mu");
        } else if (key == "a") {
            if (!value.is_array() || value.empty()) field_error("a", "expected a non-empty array of rationals");
            for (std::size_t k = 0; k < value.size(); ++k) {
                config.a.push_back(rational_field(value[k], "a[" + std::to_string(k) + "]"));
            }
        } else if (key == "n_values") {
            if (!value.is_array() || value.empty()) field_error("n_values", "expected a non-empty array of integers");
            for (std::size_t k = 0; k < value.size(); ++k) {
                const std::string path = "n_values[" + std::to_string(k) + "]";
                const std::uint64_t n = unsigned_field(value[k], path);
                if (n == 0) field_error(path, "dimension must be at least 1");
                if (!config.n_values.empty() && n <= config.n_values.back()) {
                    field_error(path, "n_values must be strictly increasing");
                }
                config.n_values.push_back(static_cast<std::size_t>(n));
            }
        } else if (key == "tol") {
            if (!value.is_number() || !(value.get<double>() > 0.0)) field_error("tol", "expected a positive number");
            config.tol = value.get<double>();
        } else if (key == "max_iter") {
            config.max_iter = static_cast<std::size_t>(unsigned_field(value, "max_iter"));
            if (config.max_iter == 0) field_error("max_iter", "must be at least 1");
        } else if (key == "seed") {
            config.seed = unsigned_field(value, "seed");
        } else if (key == "output_dir") {
            if (!value.is_string()) field_error("output_dir", "expected a path string");
            config.output_dir = value.get<std::string>();
        } else if (key == "emit_svg") {
            if (!value.is_boolean()) field_error("emit_svg", "expected true or false");
            config.emit_svg = value.get<bool>();
        } else if (key == "exact_cap") {
            config.exact_cap = static_cast<std::size_t>(unsigned_field(value, "exact_cap"));
        } else {
            field_error(key, "unknown field");
        }
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot read config " + path.string());
    std::ostringstream buf;
    buf << f.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<std::size_t> figure_grid() {
    constexpr int kPoints = 40;
    std::vector<std::size_t> grid;
    const double lo = std::log(10.0);
    const double hi = std::log(2000.0);
    for (int k = 0; k < kPoints; ++k) {
        const double v = std::exp(lo + (hi - lo) * k / (kPoints - 1));
        auto n = static_cast<std::size_t>(std::lround(v));
        if (!grid.empty() && n <= grid.back()) n = grid.back() + 1;
        grid.push_back(n);
    }
    return grid;
}

std::vector<ScanRow> run_scan(const RunConfig& config) {
    require_matrix(config);
    const double w = omega_or_nan(config.spec(config.n_values.front()));
    std::vector<ScanRow> rows;
    rows.reserve(config.n_values.size());
    for (std::size_t n : config.n_values) {
        const SpectralReport r =
            spectral_report(config.spec(n), config.power_options(), config.exact_cap.value_or(kDefaultDenseCap));
        rows.push_back({n, r.sigma_min, r.frob_inv_reciprocal, w, r.iterations, r.converged});
    }
    return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
    std::string out = "n,sigma_n,frob_inv_reciprocal,omega,iterations,converged\r\n";
    for (const auto& r : rows) {
        out += std::to_string(r.n) + ',' + format_double(r.sigma_n) + ',' + format_double(r.frob_inv_reciprocal) +
               ',' + format_double(r.omega) + ',' + std::to_string(r.iterations) + ',' +
               (r.converged ? "true" : "false") + "\r\n";
    }
    return out;
}

std::string scan_svg(const std::vector<ScanRow>& rows, std::string_view title) {
    constexpr double kWidth = 800.0;
    constexpr double kHeight = 500.0;
    constexpr double kLeft = 80.0;
    constexpr double kRight = 170.0;
    constexpr double kTop = 40.0;
    constexpr double kBottom = 60.0;

    struct Series {
        const char* label;
        const char* color;
        double ScanRow::*field;
    };
    const Series series[] = {
        {"sigma_n", "#1f77b4", &ScanRow::sigma_n},
        {"1/||A^-1||_F", "#2ca02c", &ScanRow::frob_inv_reciprocal},
        {"omega", "#d62728", &ScanRow::omega},
    };

    double x_lo = rows.empty() ? 0.0 : static_cast<double>(rows.front().n);
    double x_hi = rows.empty() ? 1.0 : static_cast<double>(rows.back().n);
    if (x_hi <= x_lo) x_hi = x_lo + 1.0;
    double y_lo = std::numeric_limits<double>::infinity();
    double y_hi = -std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
        for (const auto& s : series) {
            const double v = r.*(s.field);
            if (std::isfinite(v)) {
                y_lo = std::min(y_lo, v);
                y_hi = std::max(y_hi, v);
            }
        }
    }
    if (!std::isfinite(y_lo)) {
        y_lo = 0.0;
        y_hi = 1.0;
    }
    const double pad = y_hi > y_lo ? 0.05 * (y_hi - y_lo) : std::max(1.0, std::abs(y_hi) * 0.05);
    y_lo -= pad;
    y_hi += pad;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };

    std::string escaped_title;
    for (char ch : title) {
        switch (ch) {
            case '&': escaped_title += "&amp;"; break;
            case '<': escaped_title += "&lt;"; break;
            case '>': escaped_title += "&gt;"; break;
            default: escaped_title += ch;
        }
    }

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<title>" << escaped_title << "</title>\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n"
        << "<text x=\"" << fixed2(kLeft + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << escaped_title << "</text>\n";

    // Axes, ticks and labels.
    svg << "<g stroke=\"black\" stroke-width=\"1\">\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w << "\" y2=\""
        << kTop + plot_h << "\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + plot_h
        << "\"/>\n"
        << "</g>\n";
    svg << "<g font-size=\"12\" font-family=\"sans-serif\">\n";
    for (int t = 0; t <= 4; ++t) {
        const double xv = x_lo + (x_hi - x_lo) * t / 4.0;
        const double yv = y_lo + (y_hi - y_lo) * t / 4.0;
        svg << "<text x=\"" << fixed2(px(xv)) << "\" y=\"" << fixed2(kTop + plot_h + 18)
            << "\" text-anchor=\"middle\">" << tick_label(xv) << "</text>\n"
            << "<text x=\"" << fixed2(kLeft - 6) << "\" y=\"" << fixed2(py(yv) + 4) << "\" text-anchor=\"end\">"
            << tick_label(yv) << "</text>\n";
    }
    svg << "<text x=\"" << fixed2(kLeft + plot_w / 2) << "\" y=\"" << fixed2(kHeight - 16)
        << "\" text-anchor=\"middle\" font-size=\"14\">n</text>\n"
        << "<text x=\"20\" y=\"" << fixed2(kTop + plot_h / 2) << "\" text-anchor=\"middle\" font-size=\"14\" "
        << "transform=\"rotate(-90 20 " << fixed2(kTop + plot_h / 2) << ")\">value</text>\n"
        << "</g>\n";

    int legend_row = 0;
    for (const auto& s : series) {
        svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\" points=\"";
        bool first = true;
        for (const auto& r : rows) {
            const double v = r.*(s.field);
            if (!std::isfinite(v)) continue;
            if (!first) svg << ' ';
            first = false;
            svg << fixed2(px(static_cast<double>(r.n))) << ',' << fixed2(py(v));
        }
        svg << "\"/>\n";
        const double ly = kTop + 10 + 20.0 * legend_row++;
        svg << "<line x1=\"" << kLeft + plot_w + 15 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + plot_w + 35
            << "\" y2=\"" << ly << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << kLeft + plot_w + 40 << "\" y=\"" << ly + 4
            << "\" font-size=\"12\" font-family=\"sans-serif\">" << s.label << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

int cmd_bound(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (!config.mu) throw ParseError("config field 'mu' is required");
        if (config.a.empty()) throw ParseError("config field 'a' is required");
        const MatrixSpec spec = config.spec(config.n_values.empty() ? 1 : config.n_values.back());
        const HypothesisVerdict verdict = check_hypotheses(spec);
        report_verdict(verdict, out);

        double th = std::numeric_limits<double>::quiet_NaN();
        double w = th;
        double exponent = th;
        try {
            const TheoremBound b = theorem_bound(spec);
            th = b.theta;
            w = b.omega;
            exponent = b.exponent;
        } catch (const DomainError& e) {
            out << "bound undefined: " << e.what() << '\n';
        }
        out << "i = " << spec.period() << '\n'
            << "mu = " << spec.mu().to_string() << '\n'
            << "theta = " << format_double(th) << '\n'
            << "omega = " << format_double(w) << '\n';

        std::filesystem::create_directories(config.output_dir);
        const std::string csv = "mu,i,theta,omega,exponent,hypotheses\r\n" + spec.mu().to_string() + ',' +
                                std::to_string(spec.period()) + ',' + format_double(th) + ',' + format_double(w) +
                                ',' + format_double(exponent) + ',' + (verdict.passed() ? "pass" : "fail") + "\r\n";
        write_file(config.output_dir / "bound.csv", csv);
        return verdict.passed() ? kExitOk : kExitHypothesis;
    });
}

int cmd_scan(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        require_matrix(config);
        const HypothesisVerdict verdict = check_hypotheses(config.spec(config.n_values.front()));
        if (!verdict.passed()) {
            err << "warning: hypotheses violated, omega is not a certified bound for this matrix\n";
        }
        const auto rows = run_scan(config);
        std::filesystem::create_directories(config.output_dir);
        write_file(config.output_dir / "scan.csv", scan_csv(rows));
        if (config.emit_svg) write_file(config.output_dir / "scan.svg", scan_svg(rows, "scan"));

        std::size_t unconverged = 0;
        for (const auto& r : rows) {
            out << "n = " << r.n << "  sigma_n = " << format_double(r.sigma_n)
                << "  1/||A^-1||_F = " << format_double(r.frob_inv_reciprocal)
                << "  omega = " << format_double(r.omega) << (r.converged ? "" : "  NOT CONVERGED") << '\n';
            if (!r.converged) ++unconverged;
        }
        if (unconverged > 0) {
            err << "error: power iteration did not converge for " << unconverged << " value(s) of n\n";
            return kExitNotConverged;
        }
        return kExitOk;
    });
}

int cmd_figures(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        std::filesystem::create_directories(config.output_dir);
        int code = kExitOk;
        for (const ReferenceSet& set : reference_sets()) {
            RunConfig run = config;
            const MatrixSpec base = set.spec(1);
            run.mu = base.mu();
            run.a = base.a();
            run.n_values = figure_grid();
            const auto rows = run_scan(run);
            const std::string stem = "fig_" + set.label;
            write_file(config.output_dir / (stem + ".csv"), scan_csv(rows));
            write_file(config.output_dir / (stem + ".svg"), scan_svg(rows, set.label));
            const bool all_converged =
                std::all_of(rows.begin(), rows.end(), [](const ScanRow& r) { return r.converged; });
            out << stem << ": " << rows.size() << " rows, omega = " << format_double(rows.front().omega)
                << (all_converged ? "" : ", some rows NOT CONVERGED") << '\n';
            if (!all_converged) code = kExitNotConverged;
        }
        return code;
    });
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        require_matrix(config);
        ProofTraceOptions opts;
        if (config.exact_cap) opts.exact_cap = *config.exact_cap;
        const std::size_t n = config.n_values.back();
        const ProofTrace t = build_proof_trace(config.spec(n), opts);
        out << "n = " << n << '\n'
            << "theta = " << format_double(t.bound.theta) << '\n'
            << "omega = " << format_double(t.bound.omega) << '\n'
            << "nu = " << format_double(t.nu) << '\n'
            << "r = " << format_double(t.r) << "  x_hat = " << format_double(t.x_hat)
            << "  y_hat = " << format_double(t.y_hat) << '\n';
        for (const auto& c : t.checks) {
            out << c.name << "  lhs = " << format_double(c.lhs) << "  rhs = " << format_double(c.rhs) << "  "
                << (c.pass ? "PASS" : "FAIL");
            if (c.instances > 1) {
                out << "  (" << c.violations << '/' << c.instances << " violated, worst at " << c.worst_index << ')';
            }
            out << '\n';
        }
        return t.all_pass() ? kExitOk : kExitCheckFailed;
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Singular value bounds for periodic lower-triangular Toeplitz matrices"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    bool svg = false;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
        if (needs_config) opt->required();
        sub->add_option("--out", out_dir, "output directory (overrides output_dir)");
        sub->add_option("--tol", tol, "power iteration tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "start vector seed");
        sub->add_flag("--svg", svg, "also write SVG plots");
    };
    CLI::App* bound = app.add_subcommand("bound", "evaluate the closed-form lower bound");
    CLI::App* scan = app.add_subcommand("scan", "compute sigma_n and 1/||A^-1||_F over n_values");
    CLI::App* figures = app.add_subcommand("figures", "scan the eight built-in parameter sets");
    CLI::App* verify = app.add_subcommand("verify", "check every inequality of the proof chain");
    add_common(bound, true);
    add_common(scan, true);
    add_common(figures, false);
    add_common(verify, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o;
        std::ostringstream eo;
        const int code = app.exit(e, o, eo);
        out << o.str();
        err << eo.str();
        return code == 0 ? kExitOk : kExitUsage;
    }

    RunConfig config;
    try {
        if (!config_path.empty()) config = load_config(config_path);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (tol) config.tol = *tol;
    if (seed) config.seed = *seed;
    if (svg) config.emit_svg = true;

    if (bound->parsed()) return cmd_bound(config, out, err);
    if (scan->parsed()) return cmd_scan(config, out, err);
    if (figures->parsed()) return cmd_figures(config, out, err);
    return cmd_verify(config, out, err);
}

}  // namespace toepsv::cli
