#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <random>
#include <thread>

#include "radpauli/cli.hpp"
#include "radpauli/errors.hpp"
#include "radpauli/greenkernel.hpp"
#include "radpauli/spectral.hpp"

namespace radpauli::cli {
namespace {

using Fmt = std::string (*)(double);
constexpr Fmt F = format_number;

// Runs task(i) for i < n on up to `jobs` threads; results stay in index order.
template <class T>
std::vector<T> parallel_map(std::size_t n, int jobs, const std::function<T(std::size_t)>& task) {
    std::vector<T> out(n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < n;) {
            try {
                out[i] = task(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = n;
            }
        }
    };
    const int threads = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(n, 1)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
    return out;
}

class Sink {
public:
    Sink(const std::string& name, const CommandOptions& opt, std::ostream& out) : name_(name), opt_(opt), out_(out) {
        if (opt_.out_dir) std::filesystem::create_directories(*opt_.out_dir);
    }

    void csv(const std::vector<CsvSection>& sections) {
        if (!opt_.out_dir) {
            write_csv(out_, sections);
            return;
        }
        std::ofstream f(*opt_.out_dir / (name_ + ".csv"));
        write_csv(f, sections);
        if (!f) throw std::runtime_error("cannot write " + (*opt_.out_dir / (name_ + ".csv")).string());
    }

    void svg(const SvgPlot& plot) {
        if (!opt_.svg) return;
        const std::filesystem::path p = opt_.out_dir.value_or(".") / (name_ + ".svg");
        std::ofstream f(p);
        f << render_svg(plot);
        if (!f) throw std::runtime_error("cannot write " + p.string());
    }

private:
    std::string name_;
    const CommandOptions& opt_;
    std::ostream& out_;
};

LTOptions lt_options(const NumericSpec& n) {
    LTOptions o;
    o.r_max = n.r_max;
    o.h0 = n.h0;
    o.grading = n.grading;
    o.mode_tol = n.mode_tol;
    o.max_modes = n.max_modes;
    return o;
}

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out, std::ostream& log) {
    const FieldProfile profile = cfg.field.build();
    const double alpha = flux_alpha(profile);
    const RadialPotential v = cfg.potential.build(cfg.spectrum.lambda);
    const RadialGrid grid = make_grid_h0(cfg.numeric.r_max, cfg.numeric.h0, cfg.numeric.grading);
    const std::vector<double> v_mid = sample_midpoints(grid, v.fn);

    struct Job {
        int spin, m;
    };
    std::vector<Job> jobs;
    for (int spin : {kUpper, kLower})
        for (int m = -cfg.spectrum.modes; m <= cfg.spectrum.modes; ++m) jobs.push_back({spin, m});
    const WeightTable up = weight_table(grid, WeightKind::ExactH, alpha, kUpper, &profile);
    const WeightTable down = weight_table(grid, WeightKind::ExactH, alpha, kLower, &profile);
    const auto spectra = parallel_map<Spectrum>(jobs.size(), opt.jobs, [&](std::size_t i) {
        const auto& j = jobs[i];
        return eigen_negative(assemble_mode(grid, j.spin == kUpper ? up : down, j.m, Form::Chiral, v_mid));
    });

    CsvSection s{{"spin", "m", "index", "eigenvalue", "residual"}, {}};
    double worst = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i)
        for (std::size_t k = 0; k < spectra[i].eigenvalues.size(); ++k) {
            s.add({jobs[i].spin > 0 ? "+" : "-", std::to_string(jobs[i].m), std::to_string(k),
                   F(spectra[i].eigenvalues[k]), F(spectra[i].residuals[k])});
            worst = std::max(worst, spectra[i].residuals[k]);
            ++count;
        }
    Sink(std::string("spectrum"), opt, out).csv({s});
    log << "spectrum: " << cfg.field.label() << ", " << count << " negative eigenvalues over |m| <= "
        << cfg.spectrum.modes << ", grid " << grid.size() << ", max residual " << F(worst) << "\n";
    return worst <= 1e-6 ? 0 : 1;
}

// ---------------------------------------------------------------- lt-check

struct LtCase {
    double alpha;
    std::string field, shape;
    double lambda;
};

int cmd_lt_check(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out, std::ostream& log) {
    const BatterySpec& b = cfg.battery;
    std::map<double, std::vector<double>> gammas;  // per alpha, ascending, deduplicated
    for (double a : b.alphas) {
        std::vector<double> g = b.gammas;
        if (b.critical) g.push_back(std::abs(a));
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
        for (double x : g) {
            if (!(x > 0.0)) throw DomainError("Lieb-Thirring exponent must be positive");
            if (x < std::abs(a) - 1e-12)
                throw DomainError("below critical exponent: gamma = " + F(x) + " < |alpha| = " + F(std::abs(a)) +
                                  " admits no bound of this form (the Riesz mean then outgrows both terms as the "
                                  "coupling shrinks)");
        }
        gammas[a] = g;
    }

    std::vector<LtCase> cases;
    for (double a : b.alphas)
        for (const auto& f : b.fields)
            for (const auto& sh : b.shapes)
                for (double lam : b.lambdas) cases.push_back({a, f, sh, lam});
    if (b.sample > 0 && static_cast<std::size_t>(b.sample) < cases.size()) {
        std::vector<std::size_t> idx(cases.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::mt19937_64 rng(opt.seed);
        std::shuffle(idx.begin(), idx.end(), rng);
        idx.resize(b.sample);
        std::sort(idx.begin(), idx.end());
        std::vector<LtCase> picked;
        for (std::size_t i : idx) picked.push_back(cases[i]);
        cases = std::move(picked);
    }

    const LTOptions lo = lt_options(cfg.numeric);
    const auto reports = parallel_map<std::vector<LTReport>>(cases.size(), opt.jobs, [&](std::size_t i) {
        const LtCase& c = cases[i];
        FieldSpec fs = cfg.field;
        fs.kind = c.field;
        fs.alpha = c.alpha;
        fs.amplitude.reset();
        PotentialSpec ps = cfg.potential;
        ps.shape = c.shape;
        auto rs = lt_report(fs.build(), ps.build(c.lambda), gammas.at(c.alpha), lo);
        for (auto& r : rs) r.lambda = c.lambda;
        return rs;
    });

    CsvSection rows{{"alpha", "gamma", "lambda", "lhs", "term1", "term2", "ratio"}, {}};
    CsvSection consts{{"alpha", "gamma", "L1", "L2", "violation", "L1_one_term", "violation_one_term"}, {}};
    SvgPlot plot{"Riesz means against coupling", "lambda", "tr(H + lambda V)_-^gamma", {}, {}};
    int status = 0;
    for (double a : b.alphas)
        for (double g : gammas.at(a)) {
            std::vector<LTReport> bat, one;
            std::map<std::string, SvgSeries> series;
            for (std::size_t i = 0; i < cases.size(); ++i) {
                if (cases[i].alpha != a) continue;
                for (const auto& r : reports[i]) {
                    if (r.gamma != g) continue;
                    bat.push_back(r);
                    // The block without the zero-energy resonance: spin + for alpha > 0.
                    LTReport o = r;
                    if (a < 0.0) o.lhs_plus = r.lhs_minus;
                    one.push_back(o);
                    rows.add({F(a), F(g), F(r.lambda), F(r.lhs), F(r.term1), F(r.term2), F(r.ratio)});
                    auto& s = series[cases[i].field + "/" + cases[i].shape];
                    s.x.push_back(r.lambda);
                    s.y.push_back(r.lhs);
                }
            }
            const LTConstants c = fit_lt_constants(bat);
            const LTConstants c1 = fit_lt_constant_one_term(one, true);
            const double viol = lt_certificate_violation(bat, c, false);
            const double viol1 = lt_certificate_violation(one, c1, true);
            consts.add({F(a), F(g), F(c.L1), F(c.L2), F(viol), F(c1.L1), F(viol1)});
            if (!c.feasible || viol > 1e-9 || !c1.feasible || viol1 > 1e-9) {
                status = 1;
                log << "lt-check: no certificate at alpha=" << F(a) << " gamma=" << F(g) << "\n";
            }
            for (auto& [name, s] : series) {
                s.name = "a=" + F(a) + " g=" + F(g) + " " + name;
                plot.series.push_back(s);
            }
            if (!bat.empty()) {
                SvgSeries env{"a=" + F(a) + " g=" + F(g) + " envelope", {}, {}, true, false};
                std::vector<std::pair<double, double>> pts;
                for (const auto& r : bat) pts.emplace_back(r.lambda, c.L1 * r.term1 + c.L2 * r.term2);
                std::sort(pts.begin(), pts.end());
                for (const auto& [x, y] : pts) env.x.push_back(x), env.y.push_back(y);
                plot.series.push_back(env);
            }
            log << "lt-check: alpha=" << F(a) << " gamma=" << F(g) << " L1=" << F(c.L1) << " L2=" << F(c.L2)
                << " one-term L1=" << F(c1.L1) << " over " << bat.size() << " cases\n";
        }
    Sink sink("lt-check", opt, out);
    sink.csv({rows, consts});
    sink.svg(plot);
    return status;
}

// ---------------------------------------------------------------- kernel

int cmd_kernel(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out, std::ostream& log) {
    const KernelSpec& k = cfg.kernel;
    CsvSection rows{{"alpha", "kappa", "r", "rprime", "kernel", "gamma", "ratio"}, {}};
    auto add = [&](double a, double kappa, double r, double rp) {
        const ResolventKernel G(a, kappa);
        rows.add({F(a), F(kappa), F(r), F(rp), F(G(r, rp)), F(G.gamma(r, rp)), F(kernel_bound_ratio(a, kappa, r, rp))});
    };
    if (!k.sweep) {
        for (double a : k.alphas) add(a, k.kappa, k.r, k.rprime);
        Sink("kernel", opt, out).csv({rows});
        return 0;
    }
    const auto& R = k.range;
    const auto kap = log_space(R.kappa_min, R.kappa_max, R.per_decade);
    const auto rs = log_space(R.r_min, R.r_max, R.per_decade);
    CsvSection summary{{"alpha", "max_gamma_ratio", "max_raw_ratio"}, {}};
    int status = 0;
    for (double a : k.alphas) {
        for (double kappa : kap)
            for (double r : rs)
                for (double rp : rs) add(a, kappa, r, rp);
        const SweepMax m = kernel_sweep_max(a, R);
        summary.add({F(a), F(m.gamma_ratio), F(m.raw_ratio)});
        if (!std::isfinite(m.gamma_ratio)) status = 1;
        log << "kernel: alpha=" << F(a) << " max Gamma ratio " << F(m.gamma_ratio) << ", raw " << F(m.raw_ratio)
            << "\n";
    }
    Sink("kernel", opt, out).csv({rows, summary});
    return status;
}

// ---------------------------------------------------------------- hardy

int cmd_hardy(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out, std::ostream& log) {
    const HardySpec& h = cfg.hardy;
    const RadialGrid grid = make_grid(h.r_max, h.n, h.grading);
    struct Job {
        double alpha;
        int sign, m;
    };
    std::vector<Job> jobs;
    for (double a : h.alphas)
        for (int sign : {kUpper, kLower})
            for (int m : h.modes) jobs.push_back({a, sign, m});
    const auto q = parallel_map<double>(jobs.size(), opt.jobs, [&](std::size_t i) {
        return hardy_q_estimate(jobs[i].alpha, jobs[i].sign, jobs[i].m, grid);
    });
    CsvSection modes{{"alpha", "sign", "m", "q_estimate", "bound"}, {}};
    int status = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& j = jobs[i];
        const double bound = j.sign == kUpper && j.m >= 0 ? 1.0 : q_alpha(j.alpha);
        modes.add({F(j.alpha), j.sign > 0 ? "+" : "-", std::to_string(j.m), F(q[i]), F(bound)});
        if (q[i] < bound - h.tol) {
            status = 1;
            log << "hardy: alpha=" << F(j.alpha) << " sign " << (j.sign > 0 ? "+" : "-") << " m=" << j.m
                << " quotient " << F(q[i]) << " below " << F(bound) << "\n";
        }
    }
    CsvSection off{{"alpha", "offradial", "m_min", "theta"}, {}};
    constexpr double kOffRadialFloor = 8.0 / 9.0;
    for (double a : h.alphas) {
        const OffRadial o = offradial_bound_check(a, grid);
        off.add({F(a), F(o.value), std::to_string(o.m_min), F(theta_formula(a))});
        if (o.value < kOffRadialFloor - h.tol) {
            status = 1;
            log << "hardy: off-radial quotient " << F(o.value) << " below 8/9 at alpha=" << F(a) << "\n";
        }
    }
    Sink("hardy", opt, out).csv({modes, off});
    return status;
}

// ---------------------------------------------------------------- weak coupling

int cmd_weak_coupling(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out, std::ostream& log) {
    const FieldProfile profile = cfg.field.build();
    const RadialPotential v = cfg.potential.build();
    const WeakCoupling w = weak_coupling_fit(profile, v, cfg.weak.lambdas);
    const double a = std::abs(flux_alpha(profile));
    CsvSection pts{{"lambda", "energy"}, {}};
    for (std::size_t i = 0; i < w.fit.x.size(); ++i) pts.add({F(w.fit.x[i]), F(-w.fit.y[i])});
    CsvSection sum{{"alpha", "exponent", "expected_exponent", "c_fit", "c_predicted", "method"}, {}};
    sum.add({F(flux_alpha(profile)), F(w.fit.exponent), F(1.0 / a), F(w.c_fit), F(w.c_predicted),
             w.birman_schwinger ? "birman-schwinger" : "finite-element"});
    Sink sink("weak-coupling", opt, out);
    sink.csv({pts, sum});
    SvgPlot plot{"Weak-coupling ground state", "lambda", "|E(lambda)|", {}, {}};
    plot.series.push_back({"computed", w.fit.x, w.fit.y, false, true});
    SvgSeries pred{"(c lambda)^(1/alpha)", {}, {}, true, false};
    for (double lam : w.fit.x) pred.x.push_back(lam), pred.y.push_back(std::pow(w.c_predicted * lam, 1.0 / a));
    plot.series.push_back(pred);
    plot.notes.push_back("slope " + F(w.fit.exponent) + ", expected " + F(1.0 / a));
    sink.svg(plot);
    const bool ok = rel(w.fit.exponent, 1.0 / a) <= cfg.weak.exponent_tol && rel(w.c_fit, w.c_predicted) <= cfg.weak.prefactor_tol;
    log << "weak-coupling: exponent " << F(w.fit.exponent) << " (expected " << F(1.0 / a) << "), c " << F(w.c_fit)
        << " vs " << F(w.c_predicted) << (ok ? "" : "  FAILED") << "\n";
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- heat

int cmd_heat(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out, std::ostream& log) {
    const HeatSpec& h = cfg.heat;
    const RadialGrid grid = make_grid_h0(h.r_max, h.h0, h.grading);
    CsvSection pts{{"alpha", "t", "p", "free"}, {}};
    CsvSection sum{{"alpha", "t_min", "t_max", "slope", "expected_slope", "free_deviation", "envelope"}, {}};
    SvgPlot plot{"Heat kernel at the origin", "t", "p(t;0,0)", {}, {}};
    int status = 0;
    for (double a : h.alphas) {
        const HeatKernelOrigin p(assemble_mode(grid, WeightKind::Smooth, a, kLower, 0));
        const HeatWindow win = p.window();
        SvgSeries s{"alpha=" + F(a), {}, {}, false, true};
        double dev = 0.0;
        for (double t : log_space(win.t_min, win.t_max, h.per_decade)) {
            const double v = p(t), free = 1.0 / (4.0 * std::numbers::pi * t);
            pts.add({F(a), F(t), F(v), F(free)});
            s.x.push_back(t), s.y.push_back(v);
            dev = std::max(dev, rel(v, free));
        }
        plot.series.push_back(s);
        // Large-time slope over the top two decades of the window.
        const double slope = heat_slope(p, std::max(win.t_min, win.t_max / 100.0), win.t_max, 8);
        const double envelope = heat_envelope_constant(p, a);
        sum.add({F(a), F(win.t_min), F(win.t_max), F(slope), F(a - 1.0), a == 0.0 ? F(dev) : "nan", F(envelope)});
        bool ok = std::abs(slope - (a - 1.0)) <= h.slope_tol;
        if (a == 0.0) ok = ok && dev <= h.free_tol;
        if (!ok) status = 1;
        plot.notes.push_back("alpha=" + F(a) + ": large-t slope " + F(slope));
        log << "heat: alpha=" << F(a) << " slope " << F(slope) << " (expected " << F(a - 1.0) << ")"
            << (a == 0.0 ? ", max |4 pi t p - 1| " + F(dev) : std::string()) << (ok ? "" : "  FAILED") << "\n";
    }
    Sink sink("heat", opt, out);
    sink.csv({pts, sum});
    sink.svg(plot);
    return status;
}

// ---------------------------------------------------------------- failure demo

int cmd_failure_demo(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out, std::ostream& log) {
    const FailureSpec& f = cfg.failure;
    std::vector<CsvSection> sections;
    CsvSection sum{{"family", "alpha", "exponent", "rate", "relative_error"}, {}};
    SvgPlot plot{"One-term Sobolev quotients", "family parameter", "quotient", {}, {}};
    int status = 0;
    for (const auto& fam : f.families) {
        const FailureFamily which = fam == "weak" ? FailureFamily::Weak : FailureFamily::Semiclassical;
        CsvSection s{{"family", "alpha", "param", "quotient"}, {}};
        for (double a : f.alphas) {
            const FitResult fit = one_term_failure(a, which, default_failure_params(which));
            for (std::size_t i = 0; i < fit.x.size(); ++i) s.add({fam, F(a), F(fit.x[i]), F(fit.y[i])});
            const double rate = one_term_rate(a, which);
            const double err = rel(fit.exponent, rate);
            sum.add({fam, F(a), F(fit.exponent), F(rate), F(err)});
            if (err > f.tol) status = 1;
            plot.series.push_back({fam + " a=" + F(a), fit.x, fit.y, false, true});
            plot.notes.push_back(fam + " a=" + F(a) + ": slope " + F(fit.exponent) + " (rate " + F(rate) + ")");
            log << "failure-demo: " << fam << " alpha=" << F(a) << " exponent " << F(fit.exponent) << " vs "
                << F(rate) << (err > f.tol ? "  FAILED" : "") << "\n";
        }
        sections.push_back(std::move(s));
    }
    sections.push_back(std::move(sum));
    Sink sink("failure-demo", opt, out);
    sink.csv(sections);
    sink.svg(plot);
    return status;
}

// ---------------------------------------------------------------- counterexample

int cmd_counterexample(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out, std::ostream& log) {
    const CounterSpec& c = cfg.counterexample;
    const FitResult fit = counterexample_ratio(c.alpha, c.radii);
    CsvSection pts{{"alpha", "R", "ratio"}, {}};
    bool monotone = true;
    for (std::size_t i = 0; i < fit.x.size(); ++i) {
        pts.add({F(c.alpha), F(fit.x[i]), F(fit.y[i])});
        if (i > 0 && !(fit.y[i] < fit.y[i - 1])) monotone = false;
    }
    CsvSection sum{{"alpha", "exponent", "monotone_decreasing"}, {}};
    sum.add({F(c.alpha), F(fit.exponent), monotone ? "true" : "false"});
    Sink sink("counterexample", opt, out);
    sink.csv({pts, sum});
    SvgPlot plot{"Chiral over full gradient form", "R", "ratio", {{"alpha=" + F(c.alpha), fit.x, fit.y, false, true}}, {}};
    sink.svg(plot);
    log << "counterexample: alpha=" << F(c.alpha) << " ratio " << F(fit.y.front()) << " -> " << F(fit.y.back())
        << (monotone ? "" : "  NOT MONOTONE") << "\n";
    return monotone ? 0 : 1;
}

// ---------------------------------------------------------------- ac-check

int cmd_ac_check(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out, std::ostream& log) {
    std::vector<FieldSpec> fields = cfg.ac_fields;
    if (fields.empty())
        for (double a : {0.25, 0.5, 0.9})
            for (const char* kind : {"ac-circle", "gaussian"}) {
                FieldSpec f;
                f.kind = kind;
                f.alpha = a;
                fields.push_back(f);
            }
    const auto res = parallel_map<AcCheck>(fields.size(), opt.jobs, [&](std::size_t i) { return ac_check(fields[i].build()); });
    CsvSection s{{"kind", "alpha", "pass", "min_eigenvalue", "form_residual", "resonance_residual", "jump_residual"}, {}};
    int status = 0;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        const auto& r = res[i];
        s.add({fields[i].kind, F(flux_alpha(fields[i].build())), r.pass ? "true" : "false", F(r.min_eigenvalue),
               F(r.form_residual), F(r.resonance_residual), F(r.jump_residual)});
        if (!r.pass) status = 1;
        log << "ac-check: " << fields[i].label() << (r.pass ? " pass" : " FAIL") << "\n";
    }
    Sink("ac-check", opt, out).csv({s});
    return status;
}

using Command = int (*)(const RunConfig&, const CommandOptions&, std::ostream&, std::ostream&);

struct Entry {
    std::string name;
    Command run;
    std::string summary;
};

const std::vector<Entry>& table() {
    static const std::vector<Entry> t{
        {"spectrum", cmd_spectrum, "lowest eigenvalues of H+ and H- per angular mode"},
        {"lt-check", cmd_lt_check, "Lieb-Thirring battery and fitted constants (L1, L2)"},
        {"kernel", cmd_kernel, "resolvent kernel of T_alpha at a point or over a sweep"},
        {"hardy", cmd_hardy, "weighted Hardy quotients per mode and the off-radial constant"},
        {"weak-coupling", cmd_weak_coupling, "ground-state energy against coupling and fitted rate"},
        {"heat", cmd_heat, "heat kernel at the origin and its large-time slope"},
        {"failure-demo", cmd_failure_demo, "decay of the one-term Sobolev quotients"},
        {"counterexample", cmd_counterexample, "ratio family showing the Hardy bound fails for alpha >= 1"},
        {"ac-check", cmd_ac_check, "zero modes and the zero-energy resonance"},
    };
    return t;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& e : table()) n.push_back(e.name);
        return n;
    }();
    return names;
}

std::string command_summary(const std::string& name) {
    for (const auto& e : table())
        if (e.name == name) return e.summary;
    return {};
}

int run_command(const std::string& name, const RunConfig& cfg, const CommandOptions& opt, std::ostream& out,
                std::ostream& log) {
    for (const auto& e : table())
        if (e.name == name) return e.run(cfg, opt, out, log);
    throw ConfigError("unknown command '" + name + "'");
}

}  // namespace radpauli::cli
