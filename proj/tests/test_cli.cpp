#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "toepsv/cli.hpp"
#include "toepsv/errors.hpp"

#include <unistd.h>

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

using namespace toepsv;
using namespace toepsv::cli;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = fs::temp_directory_path() / ("toepsv_cli_test_" + std::to_string(::getpid()) + "_" +
                                             std::to_string(counter++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

fs::path write_config(const TempDir& dir, const std::string& name, const std::string& body) {
    const fs::path p = dir.path() / name;
    std::ofstream(p, std::ios::binary) << body;
    return p;
}

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "toepsv");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> csv_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        const std::size_t end = text.find("\r\n", start);
        REQUIRE(end != std::string::npos);
        lines.push_back(text.substr(start, end - start));
        start = end + 2;
    }
    return lines;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream s(line);
    std::string f;
    while (std::getline(s, f, ',')) fields.push_back(f);
    return fields;
}

// Minimal XML well-formedness: balanced tags, quoted attributes, no stray '<' or '&'.
bool well_formed_xml(const std::string& doc, std::string& why) {
    std::vector<std::string> stack;
    std::size_t k = 0;
    bool seen_root = false;
    while (k < doc.size()) {
        if (doc[k] == '&') {
            const std::size_t semi = doc.find(';', k);
            const std::string ent = semi == std::string::npos ? "" : doc.substr(k, semi - k + 1);
            if (ent != "&amp;" && ent != "&lt;" && ent != "&gt;" && ent != "&quot;" && ent != "&apos;") {
                why = "bad entity at " + std::to_string(k);
                return false;
            }
            k = semi + 1;
            continue;
        }
        if (doc[k] != '<') {
            if (stack.empty() && !std::isspace(static_cast<unsigned char>(doc[k]))) {
                why = "text outside root at " + std::to_string(k);
                return false;
            }
            ++k;
            continue;
        }
        const std::size_t close = doc.find('>', k);
        if (close == std::string::npos) {
            why = "unterminated tag";
            return false;
        }
        std::string tag = doc.substr(k + 1, close - k - 1);
        k = close + 1;
        if (tag.starts_with("?")) continue;
        if (tag.starts_with("/")) {
            const std::string name = tag.substr(1);
            if (stack.empty() || stack.back() != name) {
                why = "mismatched </" + name + ">";
                return false;
            }
            stack.pop_back();
            continue;
        }
        const bool self_closing = tag.ends_with("/");
        if (self_closing) tag.pop_back();
        const std::size_t sp = tag.find_first_of(" \t\n");
        const std::string name = tag.substr(0, sp);
        if (name.empty()) {
            why = "empty tag name";
            return false;
        }
        // Attributes: name="value" pairs.
        std::size_t quotes = 0;
        for (char ch : tag) quotes += ch == '"';
        if (quotes % 2 != 0 || tag.find('<') != std::string::npos) {
            why = "bad attributes in <" + name + ">";
            return false;
        }
        if (stack.empty()) {
            if (seen_root) {
                why = "second root element";
                return false;
            }
            seen_root = true;
        }
        if (!self_closing) stack.push_back(name);
    }
    if (!stack.empty()) {
        why = "unclosed <" + stack.back() + ">";
        return false;
    }
    return seen_root;
}

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t c = 0;
    for (std::size_t p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++c;
    return c;
}

const char* kI2 = R"({"mu": "100-1/6", "a": ["7/3", "5/3"], "n_values": [10, 50, 200]})";
const char* kSmall = R"({"mu": "2", "a": ["1", "1"], "n_values": [500]})";
const char* kInfeasible = R"({"mu": "1", "a": ["1", "0"], "n_values": [5]})";

}  // namespace

TEST_CASE("parse_config reads every field") {
    const RunConfig c = parse_config(R"({
        "mu": "100-1/6", "a": ["7/3", "5/3", 1], "n_values": [10, 20, 40],
        "tol": 1e-10, "max_iter": 77, "seed": 9, "output_dir": "out/x", "emit_svg": true, "exact_cap": 100
    })");
    CHECK(*c.mu == Rational(599, 6));
    CHECK(c.a == std::vector<Rational>{Rational(7, 3), Rational(5, 3), Rational(1)});
    CHECK(c.n_values == std::vector<std::size_t>{10, 20, 40});
    CHECK(c.tol == 1e-10);
    CHECK(c.max_iter == 77);
    CHECK(c.seed == 9);
    CHECK(c.output_dir == fs::path("out/x"));
    CHECK(c.emit_svg);
    CHECK(*c.exact_cap == 100);

    const RunConfig d = parse_config("{}");
    CHECK_FALSE(d.mu.has_value());
    CHECK(d.tol == 1e-12);
    CHECK(d.max_iter == 50000);
    CHECK(d.seed == 1);
    CHECK_FALSE(d.emit_svg);
}

TEST_CASE("parse_config reports positions and field paths") {
    auto message = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message("{\"mu\": \"2\",\n  \"a\": [\"1\", \"1\",]\n}").find("line 2, column 18") != std::string::npos);
    CHECK(message("{\"mu\": ").find("line 1") != std::string::npos);
    CHECK(message(R"({"a": ["1", "x/3"]})").find("'a[1]'") != std::string::npos);
    CHECK(message(R"({"a": []})").find("'a'") != std::string::npos);
    CHECK(message(R"({"mu": true})").find("'mu'") != std::string::npos);
    CHECK(message(R"({"n_values": [10, 10]})").find("'n_values[1]'") != std::string::npos);
    CHECK(message(R"({"n_values": [10, 5]})").find("strictly increasing") != std::string::npos);
    CHECK(message(R"({"n_values": [0]})").find("'n_values[0]'") != std::string::npos);
    CHECK(message(R"({"n_values": [-3]})").find("'n_values[0]'") != std::string::npos);
    CHECK(message(R"({"tol": -1})").find("'tol'") != std::string::npos);
    CHECK(message(R"({"max_iter": 0})").find("'max_iter'") != std::string::npos);
    CHECK(message(R"({"emit_svg": "yes"})").find("'emit_svg'") != std::string::npos);
    CHECK(message(R"({"colour": 1})").find("'colour': unknown field") != std::string::npos);
    CHECK(message("[1, 2]").find("JSON object") != std::string::npos);
}

TEST_CASE("format_double is shortest round-trip") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.125) == "1.125");
    CHECK(format_double(100.0) == "100");
    CHECK(format_double(std::nan("")) == "nan");
    for (double v : {1.0 / 3.0, 99.89359428341847, 1e-300, 6.02214076e23, -2.5e-7}) {
        const std::string s = format_double(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == v);
    }
}

TEST_CASE("figure grid") {
    const auto g = figure_grid();
    REQUIRE(g.size() == 40);
    CHECK(g.front() == 10);
    CHECK(g.back() == 2000);
    for (std::size_t k = 1; k < g.size(); ++k) CHECK(g[k] > g[k - 1]);
}

TEST_CASE("usage errors exit 1") {
    CHECK(invoke({}).code == kExitUsage);
    CHECK(invoke({"frobnicate"}).code == kExitUsage);
    CHECK(invoke({"bound"}).code == kExitUsage);  // --config is required
    CHECK(invoke({"bound", "--config", "/nonexistent/config.json"}).code == kExitUsage);
    const Result help = invoke({"--help"});
    CHECK(help.code == kExitOk);
    CHECK(help.out.find("scan") != std::string::npos);

    TempDir dir;
    const auto bad = write_config(dir, "bad.json", "{\"mu\": \"2\",\n  \"a\": [\"1\", \"1\",]\n}");
    const Result r = invoke({"bound", "--config", bad.string()});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("line 2, column 18") != std::string::npos);

    const auto no_n = write_config(dir, "no_n.json", R"({"mu": "2", "a": ["1", "1"]})");
    const Result s = invoke({"scan", "--config", no_n.string(), "--out", dir.path().string()});
    CHECK(s.code == kExitUsage);
    CHECK(s.err.find("n_values") != std::string::npos);
}

TEST_CASE("bound") {
    TempDir dir;
    const auto cfg = write_config(dir, "small.json", kSmall);
    const Result r = invoke({"bound", "--config", cfg.string(), "--out", dir.path().string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("hypotheses: satisfied") != std::string::npos);
    CHECK(r.out.find("theta = 1.125\n") != std::string::npos);
    const auto lines = csv_lines(slurp(dir.path() / "bound.csv"));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "mu,i,theta,omega,exponent,hypotheses");
    CHECK(lines[1].starts_with("2,2,1.125,"));
    CHECK(lines[1].ends_with(",2,pass"));

    const auto i2 = write_config(dir, "i2.json", kI2);
    const Result p = invoke({"bound", "--config", i2.string(), "--out", dir.path().string()});
    CHECK(p.code == kExitOk);
    CHECK(p.out.find("omega = 9.3005563657438") != std::string::npos);

    const auto bad = write_config(dir, "infeasible.json", kInfeasible);
    const Result f = invoke({"bound", "--config", bad.string(), "--out", dir.path().string()});
    CHECK(f.code == kExitHypothesis);
    CHECK(f.out.find("hypotheses: violated") != std::string::npos);
    CHECK(slurp(dir.path() / "bound.csv").find(",fail\r\n") != std::string::npos);
}

TEST_CASE("scan writes CSV and SVG") {
    TempDir dir;
    const auto cfg = write_config(dir, "i2.json", kI2);
    const Result r = invoke({"scan", "--config", cfg.string(), "--out", dir.path().string(), "--svg"});
    CHECK(r.code == kExitOk);
    const std::string csv = slurp(dir.path() / "scan.csv");
    const auto lines = csv_lines(csv);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "n,sigma_n,frob_inv_reciprocal,omega,iterations,converged");
    std::vector<std::string> ns;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto f = split(lines[k]);
        REQUIRE(f.size() == 6);
        ns.push_back(f[0]);
        const double sigma = std::stod(f[1]);
        const double frob = std::stod(f[2]);
        const double w = std::stod(f[3]);
        CHECK(sigma >= frob);
        CHECK(frob >= w);
        CHECK(f[5] == "true");
        CHECK(format_double(sigma) == f[1]);
    }
    CHECK(ns == std::vector<std::string>{"10", "50", "200"});

    const std::string svg = slurp(dir.path() / "scan.svg");
    std::string why;
    CHECK_MESSAGE(well_formed_xml(svg, why), why);
    CHECK(count(svg, "<polyline") == 3);
    CHECK(svg.find(">n</text>") != std::string::npos);
    CHECK(svg.find(">value</text>") != std::string::npos);
    CHECK(svg.find("version=\"1.1\"") != std::string::npos);

    // Identical config and seed give byte-identical output.
    const TempDir again;
    CHECK(invoke({"scan", "--config", cfg.string(), "--out", again.path().string(), "--svg"}).code == kExitOk);
    CHECK(slurp(again.path() / "scan.csv") == csv);
    CHECK(slurp(again.path() / "scan.svg") == svg);
}

TEST_CASE("scan of a diagonal matrix") {
    TempDir dir;
    const auto cfg = write_config(dir, "diag.json", R"({"mu": "3", "a": ["0", "0"], "n_values": [1, 5, 30]})");
    const Result r = invoke({"scan", "--config", cfg.string(), "--out", dir.path().string()});
    CHECK(r.code == kExitOk);
    CHECK(r.err.find("hypotheses violated") != std::string::npos);
    const auto lines = csv_lines(slurp(dir.path() / "scan.csv"));
    REQUIRE(lines.size() == 4);
    for (std::size_t k = 1; k < lines.size(); ++k) {
        CHECK(std::stod(split(lines[k])[1]) == doctest::Approx(4.0).epsilon(1e-10));
    }
    CHECK_FALSE(fs::exists(dir.path() / "scan.svg"));
}

TEST_CASE("scan flags non-convergence with exit 3") {
    TempDir dir;
    const auto cfg = write_config(
        dir, "slow.json", R"({"mu": "100-1/6", "a": ["7/3", "5/3"], "n_values": [100, 200], "max_iter": 2})");
    const Result r = invoke({"scan", "--config", cfg.string(), "--out", dir.path().string()});
    CHECK(r.code == kExitNotConverged);
    CHECK(r.out.find("NOT CONVERGED") != std::string::npos);
    const auto lines = csv_lines(slurp(dir.path() / "scan.csv"));
    REQUIRE(lines.size() == 3);
    CHECK(lines[1].ends_with(",2,false"));
}

TEST_CASE("command-line overrides") {
    TempDir dir;
    const auto cfg = write_config(dir, "i2.json", kI2);
    const fs::path out1 = dir.path() / "s1";
    const fs::path out2 = dir.path() / "s2";
    CHECK(invoke({"scan", "--config", cfg.string(), "--out", out1.string(), "--seed", "1"}).code == kExitOk);
    CHECK(invoke({"scan", "--config", cfg.string(), "--out", out2.string(), "--seed", "12345", "--tol", "1e-6"})
              .code == kExitOk);
    const auto a = csv_lines(slurp(out1 / "scan.csv"));
    const auto b = csv_lines(slurp(out2 / "scan.csv"));
    REQUIRE(a.size() == b.size());
    CHECK(std::stoul(split(b[1])[4]) < std::stoul(split(a[1])[4]));
    CHECK(std::stod(split(b[1])[1]) == doctest::Approx(std::stod(split(a[1])[1])).epsilon(1e-5));
    CHECK(invoke({"scan", "--config", cfg.string(), "--tol", "-1"}).code == kExitUsage);
}

TEST_CASE("verify") {
    TempDir dir;
    const Result small = invoke({"verify", "--config", write_config(dir, "s.json", kSmall).string()});
    CHECK(small.code == kExitOk);
    CHECK(small.out.find("nu = 0.0625\n") != std::string::npos);
    for (const char* name : {"EARLY", "EE13", "INEQ16", "GAMMA_ARGS", "ZBOUND", "ZNORM", "CNORM", "FROB"}) {
        CHECK(small.out.find(std::string(name) + "  lhs = ") != std::string::npos);
    }
    CHECK(small.out.find("FAIL") == std::string::npos);

    const auto i3 = write_config(dir, "i3.json",
                                 R"({"mu": "100-1/6", "a": ["10/3", "1/3", "8/3"], "n_values": [100, 2000]})");
    const Result ok = invoke({"verify", "--config", i3.string()});
    CHECK(ok.code == kExitOk);
    CHECK(ok.out.find("n = 2000\n") != std::string::npos);

    const auto i5 = write_config(
        dir, "i5.json", R"({"mu": "100-1/6", "a": ["20/9", "1/9", "2/9", "1/3", "5/9"], "n_values": [2000]})");
    const Result broken = invoke({"verify", "--config", i5.string()});
    CHECK(broken.code == kExitCheckFailed);
    CHECK(broken.out.find("EE13  lhs") != std::string::npos);
    CHECK(broken.out.find("FAIL") != std::string::npos);

    const Result bad = invoke({"verify", "--config", write_config(dir, "bad.json", kInfeasible).string()});
    CHECK(bad.code == kExitHypothesis);
    CHECK(bad.err.find("hypotheses violated") != std::string::npos);
}

TEST_CASE("figures writes eight CSV/SVG pairs") {
    TempDir dir;
    const Result r = invoke({"figures", "--out", dir.path().string()});
    CHECK(r.code == kExitOk);
    for (int i = 2; i <= 9; ++i) {
        const std::string stem = "fig_i" + std::to_string(i);
        CAPTURE(stem);
        const auto lines = csv_lines(slurp(dir.path() / (stem + ".csv")));
        CHECK(lines.size() == 41);
        for (std::size_t k = 1; k < lines.size(); ++k) {
            const auto f = split(lines[k]);
            CHECK(std::stod(f[1]) >= std::stod(f[2]));
            CHECK(std::stod(f[2]) >= std::stod(f[3]) * (1.0 - 1e-8));
        }
        const std::string svg = slurp(dir.path() / (stem + ".svg"));
        std::string why;
        CHECK_MESSAGE(well_formed_xml(svg, why), why);
        CHECK(count(svg, "<polyline") == 3);
    }
}
