#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <doctest.h>

#include "radpauli/cli.hpp"
#include "radpauli/errors.hpp"

using namespace radpauli;
using namespace radpauli::cli;

TEST_CASE("config defaults and overrides") {
    const RunConfig d = parse_config("");
    CHECK(d.field.kind == "ac-circle");
    CHECK(d.numeric.r_max == 1e4);
    const RunConfig c = parse_config("field:\n  kind: gaussian\n  alpha: -0.3\nbattery:\n  lambdas: [0.5, 2]\n  sample: 4\n");
    CHECK(c.field.kind == "gaussian");
    CHECK(c.field.alpha == -0.3);
    CHECK(c.battery.lambdas == std::vector<double>{0.5, 2.0});
    CHECK(c.battery.sample == 4);
    CHECK(flux_alpha(c.field.build()) == doctest::Approx(-0.3).epsilon(1e-10));
}

TEST_CASE("the config help names every section") {
    const std::string text = default_config_text();
    for (const char* key : {"field:", "potential:", "numeric:", "spectrum:", "battery:", "kernel:", "hardy:", "weak:",
                            "heat:", "failure:", "counterexample:", "ac:"})
        CHECK(text.find(key) != std::string::npos);
    for (const auto& name : command_names()) CHECK_FALSE(command_summary(name).empty());
}

TEST_CASE("config errors name the offending field") {
    CHECK_THROWS_WITH_AS(parse_config("numeric:\n  r_max: abc\n"), doctest::Contains("'numeric.r_max' (line 2)"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("numeric:\n  rmax: 10\n"), doctest::Contains("'numeric.rmax'"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("numeric:\n  rmax: 10\n"), doctest::Contains("unknown key"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("battery:\n  alphas: [0.5, 1.2]\n"), doctest::Contains("'battery.alphas'"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("field:\n  kind: square\n"), doctest::Contains("unknown field kind 'square'"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("field:\n  kind: power-tail\n  decay: 2\n"), doctest::Contains("'field.decay'"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("weak:\n  lambdas: 0.1\n"), doctest::Contains("expected a list"), ConfigError);
    CHECK_THROWS_AS(parse_config("field: [1, 2\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/run.yaml"), ConfigError);
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1.5) == "1.5");
    CHECK(format_number(1e-20) == "1e-20");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("csv sections") {
    CsvSection a{{"x", "y"}, {}};
    a.add({"1", "2"});
    CsvSection b{{"z"}, {}};
    std::ostringstream os;
    write_csv(os, {a, b});
    CHECK(os.str() == "x,y\n1,2\n\nz\n");
}

TEST_CASE("svg output is well formed") {
    SvgPlot p{"a < b", "x", "y", {{"s", {1.0, 10.0, -1.0}, {1.0, 100.0, 5.0}}}, {"note & more"}};
    const std::string s = render_svg(p);
    CHECK(s.rfind("<svg", 0) == 0);
    CHECK(s.find("</svg>") != std::string::npos);
    CHECK(s.find("a &lt; b") != std::string::npos);
    CHECK(s.find("note &amp; more") != std::string::npos);
    CHECK(s.find("<circle") != std::string::npos);
}

namespace {

int run(const std::string& cmd, const RunConfig& cfg, std::string& out, std::uint64_t seed = 1, int jobs = 1) {
    std::ostringstream os, log;
    CommandOptions opt;
    opt.seed = seed;
    opt.jobs = jobs;
    const int rc = run_command(cmd, cfg, opt, os, log);
    out = os.str();
    return rc;
}

}  // namespace

TEST_CASE("command table") {
    const auto& names = command_names();
    for (const char* n : {"spectrum", "lt-check", "kernel", "hardy", "weak-coupling", "heat", "failure-demo",
                          "counterexample", "ac-check"})
        CHECK(std::find(names.begin(), names.end(), n) != names.end());
    std::string out;
    CHECK_THROWS_AS(run("nope", {}, out), ConfigError);
}

TEST_CASE("empty lt battery prints headers only") {
    RunConfig c;
    c.battery.alphas.clear();
    std::string out;
    CHECK(run("lt-check", c, out) == 0);
    CHECK(out.rfind("alpha,gamma,lambda,lhs,term1,term2,ratio\n\n", 0) == 0);
}

TEST_CASE("lt-check refuses exponents below critical") {
    RunConfig c;
    c.battery.alphas = {0.6};
    c.battery.gammas = {0.3};
    c.battery.lambdas = {1.0};
    std::string out;
    CHECK_THROWS_WITH_AS(run("lt-check", c, out), doctest::Contains("below critical exponent"), DomainError);
}

TEST_CASE("sampled batteries are deterministic in the seed") {
    RunConfig c;
    c.numeric.r_max = 100;
    c.numeric.h0 = 5e-3;
    c.numeric.grading = 1.05;
    c.battery.alphas = {0.5};
    c.battery.lambdas = {0.1, 1.0, 10.0};
    c.battery.sample = 2;
    std::string a, b, threaded;
    run("lt-check", c, a, 7);
    run("lt-check", c, b, 7);
    run("lt-check", c, threaded, 7, 3);
    CHECK(a == b);
    CHECK(a == threaded);
    CHECK_FALSE(a.empty());
}

TEST_CASE("kernel command at a single point") {
    RunConfig c;
    std::string a, b;
    CHECK(run("kernel", c, a) == 0);
    std::swap(c.kernel.r, c.kernel.rprime);
    CHECK(run("kernel", c, b) == 0);
    // second line is the data row; drop alpha, kappa, r, rprime
    const auto values = [](const std::string& s) {
        std::string row = s.substr(s.find('\n') + 1);
        row = row.substr(0, row.find('\n'));
        for (int i = 0; i < 4; ++i) row = row.substr(row.find(',') + 1);
        return row;
    };
    CHECK(values(a) == values(b));
}

TEST_CASE("counterexample command") {
    RunConfig c;
    c.counterexample.radii = {1e2, 1e3};
    std::string out;
    CHECK(run("counterexample", c, out) == 0);
    CHECK(out.find("1,100,0.127") != std::string::npos);
    c.counterexample.alpha = 0.5;
    CHECK_THROWS_AS(run("counterexample", c, out), DomainError);
}
