#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "radpauli/cli.hpp"
#include "radpauli/errors.hpp"

namespace radpauli::cli {
namespace {

std::string where(const YAML::Node& n) {
    if (!n.IsDefined()) return "";
    const YAML::Mark m = n.Mark();
    return m.line >= 0 ? " (line " + std::to_string(m.line + 1) + ")" : "";
}

[[noreturn]] void fail(const std::string& path, const YAML::Node& n, const std::string& what) {
    throw ConfigError("config: '" + path + "'" + where(n) + ": " + what);
}

// A mapping whose keys are checked against the accepted set as they are read.
class Section {
public:
    Section(YAML::Node node, std::string path, std::set<std::string> keys)
        : node_(std::move(node)), path_(std::move(path)), keys_(std::move(keys)) {
        if (!node_ || node_.IsNull()) return;
        if (!node_.IsMap()) fail(path_, node_, "expected a mapping");
        for (const auto& kv : node_) {
            const std::string k = kv.first.as<std::string>();
            if (!keys_.count(k)) fail(join(k), kv.first, "unknown key");
        }
    }

    template <class T>
    void read(const std::string& key, T& out) const {
        const YAML::Node n = child(key);
        if (!n) return;
        out = convert<T>(n, join(key));
    }

    template <class T>
    void read(const std::string& key, std::optional<T>& out) const {
        const YAML::Node n = child(key);
        if (!n) return;
        out = convert<T>(n, join(key));
    }

    template <class T>
    void read(const std::string& key, std::vector<T>& out) const {
        const YAML::Node n = child(key);
        if (!n) return;
        if (!n.IsSequence()) fail(join(key), n, "expected a list");
        out.clear();
        for (std::size_t i = 0; i < n.size(); ++i)
            out.push_back(convert<T>(n[i], join(key) + "[" + std::to_string(i) + "]"));
    }

    YAML::Node child(const std::string& key) const {
        if (!node_ || !node_.IsMap()) return YAML::Node(YAML::NodeType::Undefined);
        const YAML::Node& n = node_;
        return n[key];
    }
    std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

private:
    template <class T>
    static T convert(const YAML::Node& n, const std::string& path) {
        if (!n.IsScalar()) fail(path, n, "expected a scalar");
        try {
            return n.as<T>();
        } catch (const YAML::Exception&) {
            if constexpr (std::is_same_v<T, double>) fail(path, n, "expected a number, got '" + n.Scalar() + "'");
            else if constexpr (std::is_same_v<T, int>) fail(path, n, "expected an integer, got '" + n.Scalar() + "'");
            else if constexpr (std::is_same_v<T, bool>) fail(path, n, "expected true or false, got '" + n.Scalar() + "'");
            else fail(path, n, "invalid value '" + n.Scalar() + "'");
        }
    }

    YAML::Node node_;
    std::string path_;
    std::set<std::string> keys_;
};

FieldSpec read_field(const YAML::Node& n, const std::string& path, FieldSpec f) {
    const Section s(n, path, {"kind", "alpha", "amplitude", "scale", "decay"});
    s.read("kind", f.kind);
    s.read("alpha", f.alpha);
    s.read("amplitude", f.amplitude);
    s.read("scale", f.scale);
    s.read("decay", f.decay);
    try {
        field_kind_from_string(f.kind);
    } catch (const DomainError&) {
        fail(s.join("kind"), s.child("kind"), "unknown field kind '" + f.kind + "'");
    }
    if (!(f.scale > 0.0)) fail(s.join("scale"), s.child("scale"), "must be positive");
    if (f.kind == "power-tail" && !(f.decay > 2.0)) fail(s.join("decay"), s.child("decay"), "must exceed 2");
    return f;
}

void require(bool ok, const Section& s, const std::string& key, const std::string& what) {
    if (!ok) fail(s.join(key), s.child(key), what);
}

void require_positive(const std::vector<double>& v, const Section& s, const std::string& key) {
    for (double x : v) require(x > 0.0, s, key, "entries must be positive");
}

}  // namespace

FieldProfile FieldSpec::build() const {
    const FieldKind k = field_kind_from_string(kind);
    const double R2 = scale * scale;
    switch (k) {
        case FieldKind::Zero: return FieldProfile::zero();
        case FieldKind::AcCircle: return FieldProfile::ac_circle(alpha, scale);
        case FieldKind::Gaussian:
            return amplitude ? FieldProfile::gaussian(*amplitude, scale) : FieldProfile::gaussian_with_flux(alpha, scale);
        case FieldKind::CompactBump:
            return FieldProfile::compact_bump(amplitude ? *amplitude : 6.0 * alpha / R2, scale);
        case FieldKind::PowerTail:
            return FieldProfile::power_tail(amplitude ? *amplitude : alpha * (decay - 1.0) * (decay - 2.0) / R2,
                                            scale, decay);
    }
    return FieldProfile::zero();
}

std::string FieldSpec::label() const {
    std::ostringstream os;
    os << kind << "(alpha=" << format_number(build().kind == FieldKind::Zero ? 0.0 : flux_alpha(build()))
       << ", R=" << format_number(scale) << ")";
    return os.str();
}

RadialPotential PotentialSpec::build(double lambda) const {
    if (shape == "zero") return RadialPotential::zero();
    if (shape == "step") return RadialPotential::step_well(lambda * depth, radius);
    if (shape == "gaussian") return RadialPotential::gaussian_well(lambda * depth, radius);
    throw DomainError("unknown potential shape '" + shape + "'");
}

RunConfig parse_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError("config: parse error at line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    RunConfig c;
    const Section top(root, "",
                      {"field", "potential", "numeric", "spectrum", "battery", "kernel", "hardy", "weak", "heat",
                       "failure", "counterexample", "ac"});

    c.field = read_field(top.child("field"), "field", c.field);

    {
        const Section s(top.child("potential"), "potential", {"shape", "depth", "radius"});
        s.read("shape", c.potential.shape);
        s.read("depth", c.potential.depth);
        s.read("radius", c.potential.radius);
        const auto& sh = c.potential.shape;
        require(sh == "step" || sh == "gaussian" || sh == "zero", s, "shape", "expected step, gaussian or zero");
        require(c.potential.depth >= 0.0, s, "depth", "must be nonnegative (the well is -depth)");
        require(c.potential.radius > 0.0, s, "radius", "must be positive");
    }
    {
        const Section s(top.child("numeric"), "numeric", {"r_max", "h0", "grading", "mode_tol", "max_modes"});
        auto& n = c.numeric;
        s.read("r_max", n.r_max);
        s.read("h0", n.h0);
        s.read("grading", n.grading);
        s.read("mode_tol", n.mode_tol);
        s.read("max_modes", n.max_modes);
        require(n.r_max >= 10.0 && n.r_max <= 1e8, s, "r_max", "must lie in [10, 1e8]");
        require(n.h0 > 0.0 && n.h0 <= 0.1, s, "h0", "must lie in (0, 0.1]");
        require(n.grading >= 1.0 && n.grading <= 1.1, s, "grading", "must lie in [1, 1.1]");
        require(n.mode_tol > 0.0, s, "mode_tol", "must be positive");
        require(n.max_modes >= 1 && n.max_modes <= 5000, s, "max_modes", "must lie in [1, 5000]");
    }
    {
        const Section s(top.child("spectrum"), "spectrum", {"modes", "lambda"});
        s.read("modes", c.spectrum.modes);
        s.read("lambda", c.spectrum.lambda);
        require(c.spectrum.modes >= 0 && c.spectrum.modes <= 1000, s, "modes", "must lie in [0, 1000]");
    }
    {
        const Section s(top.child("battery"), "battery",
                        {"alphas", "fields", "shapes", "lambdas", "gammas", "critical", "sample"});
        auto& b = c.battery;
        s.read("alphas", b.alphas);
        s.read("fields", b.fields);
        s.read("shapes", b.shapes);
        s.read("lambdas", b.lambdas);
        s.read("gammas", b.gammas);
        s.read("critical", b.critical);
        s.read("sample", b.sample);
        for (double a : b.alphas) require(std::abs(a) < 1.0, s, "alphas", "entries must satisfy |alpha| < 1");
        for (const auto& f : b.fields) {
            try {
                field_kind_from_string(f);
            } catch (const DomainError&) {
                fail(s.join("fields"), s.child("fields"), "unknown field kind '" + f + "'");
            }
        }
        for (const auto& sh : b.shapes)
            require(sh == "step" || sh == "gaussian" || sh == "zero", s, "shapes", "expected step, gaussian or zero");
        require_positive(b.lambdas, s, "lambdas");
        for (double g : b.gammas) require(g >= 0.0, s, "gammas", "entries must be nonnegative");
        require(b.sample >= 0, s, "sample", "must be nonnegative");
    }
    {
        const Section s(top.child("kernel"), "kernel",
                        {"alphas", "sweep", "kappa", "r", "rprime", "kappa_min", "kappa_max", "r_min", "r_max",
                         "per_decade"});
        auto& k = c.kernel;
        s.read("alphas", k.alphas);
        s.read("sweep", k.sweep);
        s.read("kappa", k.kappa);
        s.read("r", k.r);
        s.read("rprime", k.rprime);
        s.read("kappa_min", k.range.kappa_min);
        s.read("kappa_max", k.range.kappa_max);
        s.read("r_min", k.range.r_min);
        s.read("r_max", k.range.r_max);
        s.read("per_decade", k.range.per_decade);
        for (double a : k.alphas) require(a >= 0.0 && a < 1.0, s, "alphas", "entries must lie in [0, 1)");
        require(k.kappa > 0.0, s, "kappa", "must be positive");
        require(k.r > 0.0, s, "r", "must be positive");
        require(k.rprime > 0.0, s, "rprime", "must be positive");
        require(k.range.kappa_min > 0.0 && k.range.kappa_max > k.range.kappa_min, s, "kappa_max",
                "need 0 < kappa_min < kappa_max");
        require(k.range.r_min > 0.0 && k.range.r_max > k.range.r_min, s, "r_max", "need 0 < r_min < r_max");
        require(k.range.per_decade >= 1 && k.range.per_decade <= 50, s, "per_decade", "must lie in [1, 50]");
    }
    {
        const Section s(top.child("hardy"), "hardy", {"alphas", "modes", "r_max", "n", "grading", "tol"});
        auto& h = c.hardy;
        s.read("alphas", h.alphas);
        s.read("modes", h.modes);
        s.read("r_max", h.r_max);
        s.read("n", h.n);
        s.read("grading", h.grading);
        s.read("tol", h.tol);
        for (double a : h.alphas) require(a >= 0.0 && a < 1.0, s, "alphas", "entries must lie in [0, 1)");
        require(h.r_max > 1.0, s, "r_max", "must exceed 1");
        require(h.n >= 16 && h.n <= 20000, s, "n", "must lie in [16, 20000]");
        require(h.grading >= 1.0 && h.grading <= 1.1, s, "grading", "must lie in [1, 1.1]");
        require(h.tol > 0.0, s, "tol", "must be positive");
    }
    {
        const Section s(top.child("weak"), "weak", {"lambdas", "exponent_tol", "prefactor_tol"});
        auto& w = c.weak;
        s.read("lambdas", w.lambdas);
        s.read("exponent_tol", w.exponent_tol);
        s.read("prefactor_tol", w.prefactor_tol);
        require_positive(w.lambdas, s, "lambdas");
        require(w.lambdas.size() >= 2, s, "lambdas", "need at least two couplings");
        require(w.exponent_tol > 0.0, s, "exponent_tol", "must be positive");
        require(w.prefactor_tol > 0.0, s, "prefactor_tol", "must be positive");
    }
    {
        const Section s(top.child("heat"), "heat",
                        {"alphas", "r_max", "h0", "grading", "per_decade", "slope_tol", "free_tol"});
        auto& h = c.heat;
        s.read("alphas", h.alphas);
        s.read("r_max", h.r_max);
        s.read("h0", h.h0);
        s.read("grading", h.grading);
        s.read("per_decade", h.per_decade);
        s.read("slope_tol", h.slope_tol);
        s.read("free_tol", h.free_tol);
        for (double a : h.alphas) require(a >= 0.0 && a < 1.0, s, "alphas", "entries must lie in [0, 1)");
        require(h.r_max >= 10.0, s, "r_max", "must be at least 10");
        require(h.h0 > 0.0 && h.h0 <= 0.1, s, "h0", "must lie in (0, 0.1]");
        require(h.grading >= 1.0 && h.grading <= 1.1, s, "grading", "must lie in [1, 1.1]");
        require(h.per_decade >= 1 && h.per_decade <= 50, s, "per_decade", "must lie in [1, 50]");
        require(h.slope_tol > 0.0, s, "slope_tol", "must be positive");
        require(h.free_tol > 0.0, s, "free_tol", "must be positive");
    }
    {
        const Section s(top.child("failure"), "failure", {"alphas", "families", "tol"});
        auto& f = c.failure;
        s.read("alphas", f.alphas);
        s.read("families", f.families);
        s.read("tol", f.tol);
        for (const auto& fam : f.families)
            require(fam == "semiclassical" || fam == "weak", s, "families", "expected semiclassical or weak");
        require(f.tol > 0.0, s, "tol", "must be positive");
    }
    {
        const Section s(top.child("counterexample"), "counterexample", {"alpha", "radii"});
        s.read("alpha", c.counterexample.alpha);
        s.read("radii", c.counterexample.radii);
        require_positive(c.counterexample.radii, s, "radii");
        require(c.counterexample.radii.size() >= 2, s, "radii", "need at least two radii");
    }
    {
        const Section s(top.child("ac"), "ac", {"fields"});
        const YAML::Node list = s.child("fields");
        if (list) {
            if (!list.IsSequence()) fail("ac.fields", list, "expected a list of field mappings");
            for (std::size_t i = 0; i < list.size(); ++i)
                c.ac_fields.push_back(read_field(list[i], "ac.fields[" + std::to_string(i) + "]", FieldSpec{}));
        }
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string default_config_text() {
    return R"(Configuration (YAML; every key optional, defaults shown):
  field:          {kind: ac-circle, alpha: 0.5, scale: 1, decay: 3}
                  kind: zero | gaussian | compact-bump | power-tail | ac-circle;
                  'amplitude' overrides the amplitude implied by alpha
  potential:      {shape: step, depth: 1, radius: 2}      V = -depth on the well
  numeric:        {r_max: 1e4, h0: 1e-3, grading: 1.01, mode_tol: 1e-6, max_modes: 400}
  spectrum:       {modes: 3, lambda: 1}
  battery:        {alphas: [0.2, 0.5, 0.8], fields: [gaussian, ac-circle],
                   shapes: [gaussian, step], lambdas: [1e-2, 1e-1, 1, 1e1, 1e2, 1e3],
                   gammas: [1], critical: true, sample: 0}
  kernel:         {alphas: [0.5], sweep: false, kappa: 1, r: 0.5, rprime: 2,
                   kappa_min: 1e-3, kappa_max: 30, r_min: 1e-2, r_max: 50, per_decade: 6}
  hardy:          {alphas: [0.5], modes: [-2, -1, 0, 1, 2], r_max: 1e3, n: 1500, grading: 1.01, tol: 1e-3}
  weak:           {lambdas: [1e-4, ..., 1e-2], exponent_tol: 0.05, prefactor_tol: 0.1}
  heat:           {alphas: [0, 0.5], r_max: 1e4, h0: 1e-3, grading: 1.01, per_decade: 4,
                   slope_tol: 0.05, free_tol: 0.02}
  failure:        {alphas: [0.5], families: [semiclassical, weak], tol: 0.15}
  counterexample: {alpha: 1, radii: [1e2, 1e3, 1e4, 1e5, 1e6]}
  ac:             {fields: [...]}   default: ac-circle and gaussian, |alpha| in {0.25, 0.5, 0.9}
)";
}

}  // namespace radpauli::cli
