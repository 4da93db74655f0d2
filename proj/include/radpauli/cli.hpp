#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "radpauli/field.hpp"
#include "radpauli/greenkernel.hpp"
#include "radpauli/verify.hpp"

namespace radpauli::cli {

// Malformed or out-of-range configuration; the message names the field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldSpec {
    std::string kind = "ac-circle";
    double alpha = 0.5;                 // flux; sets the amplitude unless one is given
    std::optional<double> amplitude;
    double scale = 1.0;
    double decay = 3.0;

    FieldProfile build() const;
    std::string label() const;
};

struct PotentialSpec {
    std::string shape = "step";  // step | gaussian | zero
    double depth = 1.0;
    double radius = 2.0;

    RadialPotential build(double lambda = 1.0) const;
};

struct NumericSpec {
    double r_max = 1e4;
    double h0 = 1e-3;
    double grading = 1.01;
    double mode_tol = 1e-6;
    int max_modes = 400;
};

struct SpectrumSpec {
    int modes = 3;
    double lambda = 1.0;
};

struct BatterySpec {
    std::vector<double> alphas{0.2, 0.5, 0.8};
    std::vector<std::string> fields{"gaussian", "ac-circle"};
    std::vector<std::string> shapes{"gaussian", "step"};
    std::vector<double> lambdas{1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
    std::vector<double> gammas{1.0};
    bool critical = true;  // also run gamma = |alpha|
    int sample = 0;        // > 0: random subset of this many cases (see --seed)
};

struct KernelSpec {
    std::vector<double> alphas{0.5};
    bool sweep = false;
    double kappa = 1.0;
    double r = 0.5;
    double rprime = 2.0;
    SweepRange range = standard_sweep();
};

struct HardySpec {
    std::vector<double> alphas{0.5};
    std::vector<int> modes{-2, -1, 0, 1, 2};
    double r_max = 1e3;
    int n = 1500;
    double grading = 1.01;
    double tol = 1e-3;
};

struct WeakSpec {
    std::vector<double> lambdas{1e-4, 2.5e-4, 6.3e-4, 1.6e-3, 4e-3, 1e-2};
    double exponent_tol = 0.05;
    double prefactor_tol = 0.10;
};

struct HeatSpec {
    std::vector<double> alphas{0.0, 0.5};
    double r_max = 1e4;
    double h0 = 1e-3;
    double grading = 1.01;
    int per_decade = 4;
    double slope_tol = 0.05;
    double free_tol = 0.02;
};

struct FailureSpec {
    std::vector<double> alphas{0.5};
    std::vector<std::string> families{"semiclassical", "weak"};
    double tol = 0.15;
};

struct CounterSpec {
    double alpha = 1.0;
    std::vector<double> radii{1e2, 1e3, 1e4, 1e5, 1e6};
};

struct RunConfig {
    FieldSpec field;
    PotentialSpec potential;
    NumericSpec numeric;
    SpectrumSpec spectrum;
    BatterySpec battery;
    KernelSpec kernel;
    HardySpec hardy;
    WeakSpec weak;
    HeatSpec heat;
    FailureSpec failure;
    CounterSpec counterexample;
    std::vector<FieldSpec> ac_fields;  // empty: ac-circle and gaussian at |alpha| in {0.25, 0.5, 0.9}
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
// Help text listing every key with its default.
std::string default_config_text();

// ---------------------------------------------------------------- output

std::string format_number(double x);  // %.12g, "inf"/"nan" spelled out

struct CsvSection {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

// Sections separated by one blank line.
void write_csv(std::ostream& os, const std::vector<CsvSection>& sections);

struct SvgSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    bool dashed = false;
    bool markers = true;
};

struct SvgPlot {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    std::vector<SvgSeries> series;
    std::vector<std::string> notes;  // printed in the upper left corner
};

// Self-contained log-log plot; non-positive points are dropped.
std::string render_svg(const SvgPlot& plot);

// ---------------------------------------------------------------- commands

struct CommandOptions {
    std::optional<std::filesystem::path> out_dir;  // CSV to stdout when unset
    bool svg = false;
    int jobs = 1;
    std::uint64_t seed = 1;
};

const std::vector<std::string>& command_names();
std::string command_summary(const std::string& name);

// Runs one subcommand. Returns 0 when every contract holds and 1 otherwise;
// library errors propagate to the caller.
int run_command(const std::string& name, const RunConfig& cfg, const CommandOptions& opt, std::ostream& out,
                std::ostream& log);

}  // namespace radpauli::cli
