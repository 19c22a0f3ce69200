#include "symclass_app/problem_spec.hpp"

#include "symclass/errors.hpp"
#include "symclass/polynomial.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace symclass::app {
namespace {

std::string where(const YAML::Node& n) {
    const auto m = n.Mark();
    if (m.is_null()) return "";
    return " (line " + std::to_string(m.line + 1) + ")";
}

// Collects violations while reading typed fields.
class Reader {
public:
    std::vector<std::string> violations;

    void fail(const std::string& msg) { violations.push_back(msg); }

    void check_keys(const YAML::Node& map, const std::string& path, const std::set<std::string>& allowed) {
        for (const auto& kv : map) {
            const auto key = kv.first.as<std::string>("");
            if (!allowed.count(key)) fail(path + "." + key + ": unknown key" + where(kv.first));
        }
    }

    std::optional<double> number(const YAML::Node& n, const std::string& path) {
        if (!n.IsScalar()) {
            fail(path + ": expected a number" + where(n));
            return std::nullopt;
        }
        try {
            return n.as<double>();
        } catch (const YAML::Exception&) {
            fail(path + ": expected a number, got '" + n.Scalar() + "'" + where(n));
            return std::nullopt;
        }
    }

    std::optional<bool> boolean(const YAML::Node& n, const std::string& path) {
        try {
            if (n.IsScalar()) return n.as<bool>();
        } catch (const YAML::Exception&) {
        }
        fail(path + ": expected true or false" + where(n));
        return std::nullopt;
    }

    std::optional<std::uint64_t> unsigned_int(const YAML::Node& n, const std::string& path) {
        try {
            if (n.IsScalar()) return n.as<std::uint64_t>();
        } catch (const YAML::Exception&) {
        }
        fail(path + ": expected a non-negative integer" + where(n));
        return std::nullopt;
    }

    std::optional<std::string> text(const YAML::Node& n, const std::string& path) {
        if (n.IsScalar()) return n.Scalar();
        fail(path + ": expected a string" + where(n));
        return std::nullopt;
    }

    std::vector<double> numbers(const YAML::Node& n, const std::string& path) {
        std::vector<double> out;
        if (!n.IsSequence()) {
            fail(path + ": expected a list of numbers" + where(n));
            return out;
        }
        for (std::size_t i = 0; i < n.size(); ++i)
            if (auto v = number(n[i], path + "[" + std::to_string(i) + "]")) out.push_back(*v);
        return out;
    }

    std::vector<std::string> texts(const YAML::Node& n, const std::string& path) {
        std::vector<std::string> out;
        if (!n.IsSequence()) {
            fail(path + ": expected a list of strings" + where(n));
            return out;
        }
        for (std::size_t i = 0; i < n.size(); ++i)
            if (auto v = text(n[i], path + "[" + std::to_string(i) + "]")) out.push_back(*v);
        return out;
    }

    std::optional<std::pair<double, double>> range(const YAML::Node& n, const std::string& path) {
        const auto v = numbers(n, path);
        if (v.size() != 2 || !(v[1] > v[0])) {
            fail(path + ": expected [lo, hi] with lo < hi" + where(n));
            return std::nullopt;
        }
        return std::make_pair(v[0], v[1]);
    }
};

std::optional<CollineationClass> parse_class(const std::string& tag) {
    const std::string t = normalize_tag(tag);
    if (t == "gradientkv") return CollineationClass::GradientKV;
    if (t == "nongradientkv" || t == "kv") return CollineationClass::NongradientKV;
    if (t == "gradienthv" || t == "hv") return CollineationClass::GradientHV;
    if (t == "affinecollineation" || t == "affine" || t == "ac") return CollineationClass::AffineCollineation;
    if (t == "specialpc" || t == "specialprojective" || t == "pc") return CollineationClass::SpecialPC;
    return std::nullopt;
}

void check_polynomial(Reader& r, const std::string& text, std::size_t dim, const std::string& path) {
    try {
        (void)Polynomial::parse(text, dim);
    } catch (const Error& e) {
        r.fail(path + ": " + e.what());
    }
}

void read_space(Reader& r, const YAML::Node& n, SpaceSpec& s) {
    if (!n.IsMap()) {
        r.fail("space: expected a mapping" + where(n));
        return;
    }
    r.check_keys(n, "space", {"dimension", "family", "metric", "catalog", "shears"});
    if (!n["dimension"]) {
        r.fail("space.dimension: required");
    } else if (auto d = r.unsigned_int(n["dimension"], "space.dimension")) {
        if (*d < 1) r.fail("space.dimension: must be at least 1");
        s.dimension = static_cast<std::size_t>(*d);
    }
    if (n["family"]) {
        if (auto f = r.text(n["family"], "space.family")) {
            const std::string t = normalize_tag(*f);
            if (t == "euclidean")
                s.family = SpaceFamily::Euclidean;
            else if (t == "usercatalog")
                s.family = SpaceFamily::UserCatalog;
            else
                r.fail("space.family: unknown family '" + *f + "' (euclidean, user_catalog)");
        }
    }
    if (n["shears"])
        if (auto b = r.boolean(n["shears"], "space.shears")) s.include_shears = *b;
    const std::size_t dim = s.dimension;
    if (n["metric"]) {
        if (s.family != SpaceFamily::UserCatalog) r.fail("space.metric: only allowed with family user_catalog");
        const auto& m = n["metric"];
        if (!m.IsSequence() || m.size() != dim) {
            r.fail("space.metric: expected " + std::to_string(dim) + " rows" + where(m));
        } else {
            for (std::size_t i = 0; i < dim; ++i) {
                auto row = r.texts(m[i], "space.metric[" + std::to_string(i) + "]");
                if (row.size() != dim) {
                    r.fail("space.metric[" + std::to_string(i) + "]: expected " + std::to_string(dim) + " entries");
                    continue;
                }
                for (std::size_t j = 0; j < dim; ++j)
                    check_polynomial(r, row[j], dim, "space.metric[" + std::to_string(i) + "][" + std::to_string(j) + "]");
                s.metric.push_back(std::move(row));
            }
        }
    }
    if (s.family == SpaceFamily::UserCatalog && !n["catalog"]) r.fail("space.catalog: required for user_catalog");
    if (n["catalog"]) {
        if (s.family != SpaceFamily::UserCatalog) r.fail("space.catalog: only allowed with family user_catalog");
        const auto& c = n["catalog"];
        if (!c.IsSequence()) {
            r.fail("space.catalog: expected a list" + where(c));
            return;
        }
        for (std::size_t k = 0; k < c.size(); ++k) {
            const std::string path = "space.catalog[" + std::to_string(k) + "]";
            const auto& e = c[k];
            if (!e.IsMap()) {
                r.fail(path + ": expected a mapping" + where(e));
                continue;
            }
            r.check_keys(e, path, {"label", "class", "components", "potential", "psi", "factor"});
            CatalogEntrySpec entry;
            entry.label = e["label"] ? r.text(e["label"], path + ".label").value_or("") : "Y" + std::to_string(k + 1);
            if (!e["class"]) {
                r.fail(path + ".class: required");
            } else if (auto t = r.text(e["class"], path + ".class")) {
                if (auto cls = parse_class(*t))
                    entry.cls = *cls;
                else
                    r.fail(path + ".class: unknown class '" + *t + "'");
            }
            if (!e["components"]) {
                r.fail(path + ".components: required");
            } else {
                entry.components = r.texts(e["components"], path + ".components");
                if (entry.components.size() != dim)
                    r.fail(path + ".components: expected " + std::to_string(dim) + " entries");
                for (std::size_t i = 0; i < entry.components.size(); ++i)
                    check_polynomial(r, entry.components[i], dim, path + ".components[" + std::to_string(i) + "]");
            }
            if (e["potential"]) {
                entry.potential = r.text(e["potential"], path + ".potential");
                if (entry.potential) check_polynomial(r, *entry.potential, dim, path + ".potential");
            }
            if (e["factor"]) {
                entry.factor = r.text(e["factor"], path + ".factor");
                if (entry.factor) check_polynomial(r, *entry.factor, dim, path + ".factor");
            }
            if (e["psi"])
                if (auto p = r.number(e["psi"], path + ".psi")) entry.psi = *p;
            s.catalog.push_back(std::move(entry));
        }
    }
}

void read_potential(Reader& r, const YAML::Node& n, std::size_t dim, PotentialSpec& p) {
    if (!n.IsMap()) {
        r.fail("potential: expected a mapping" + where(n));
        return;
    }
    r.check_keys(n, "potential", {"family", "n", "expression"});
    if (!n["family"]) {
        r.fail("potential.family: required");
        return;
    }
    const auto f = r.text(n["family"], "potential.family");
    if (!f) return;
    p.family = normalize_tag(*f);
    if (p.family == "centralpower") {
        if (!n["n"])
            r.fail("potential.n: required for central_power");
        else if (auto v = r.number(n["n"], "potential.n")) {
            if (*v == 0.0) r.fail("potential.n: must be nonzero");
            p.n = *v;
        }
    } else if (p.family == "polynomial") {
        if (!n["expression"])
            r.fail("potential.expression: required for polynomial");
        else if (auto e = r.text(n["expression"], "potential.expression")) {
            p.expression = *e;
            if (dim > 0) check_polynomial(r, *e, dim, "potential.expression");
        }
    } else if (p.family != "kepler" && p.family != "exceptional" && p.family != "quadratic") {
        r.fail("potential.family: unknown family '" + *f + "' (kepler, exceptional, quadratic, central_power, polynomial)");
    }
}

void read_profile(Reader& r, const YAML::Node& n, const std::string& section, ProfileSpec& p) {
    if (!n.IsMap()) {
        r.fail(section + ": expected a mapping" + where(n));
        return;
    }
    r.check_keys(n, section, {"family", "a", "d1", "d2", "gamma", "c", "b", "t", "values", "interval"});
    if (!n["family"]) {
        r.fail(section + ".family: required");
        return;
    }
    const auto f = r.text(n["family"], section + ".family");
    if (!f) return;
    p.family = normalize_tag(*f);
    auto need = [&](const char* key) {
        if (!n[key]) {
            r.fail(section + "." + key + ": required for family " + *f);
            return;
        }
        if (auto v = r.number(n[key], section + "." + key)) p.params[key] = *v;
    };
    auto table = [&]() {
        if (!n["t"] || !n["values"]) {
            r.fail(section + ": tabulated family needs t and values");
            return;
        }
        p.t = r.numbers(n["t"], section + ".t");
        p.values = r.numbers(n["values"], section + ".values");
        if (p.t.size() != p.values.size() || p.t.size() < 2)
            r.fail(section + ": t and values must have the same length, at least 2");
    };
    if (section == "omega") {
        if (p.family == "constant")
            r.fail("omega.family: 'constant' is not allowed; the equation requires omega,t != 0");
        else if (p.family == "powerlaw")
            need("a");
        else if (p.family == "inversesquareaffine") {
            need("d1");
            need("d2");
        } else if (p.family == "inversesquarescaled")
            need("gamma");
        else if (p.family == "tabulated")
            table();
        else
            r.fail("omega.family: unknown family '" + *f +
                   "' (power_law, inverse_square_affine, inverse_square_scaled, tabulated)");
    } else {
        if (p.family == "constant")
            need("c");
        else if (p.family == "powerlaw")
            need("b");
        else if (p.family == "tabulated")
            table();
        else
            r.fail("damping.family: unknown family '" + *f + "' (constant, power_law, tabulated)");
    }
    if (n["interval"]) p.interval = r.range(n["interval"], section + ".interval");
}

void read_analysis(Reader& r, const YAML::Node& n, AnalysisFlags& a) {
    if (!n.IsMap()) {
        r.fail("analysis: expected a mapping" + where(n));
        return;
    }
    r.check_keys(n, "analysis", {"lie", "noether", "reparam"});
    if (n["lie"])
        if (auto b = r.boolean(n["lie"], "analysis.lie")) a.lie = *b;
    if (n["noether"])
        if (auto b = r.boolean(n["noether"], "analysis.noether")) a.noether = *b;
    if (n["reparam"])
        if (auto b = r.boolean(n["reparam"], "analysis.reparam")) a.reparam = *b;
}

void read_verification(Reader& r, const YAML::Node& n, std::size_t dim, VerificationSpec& v) {
    if (!n.IsMap()) {
        r.fail("verification: expected a mapping" + where(n));
        return;
    }
    r.check_keys(n, "verification",
                 {"tolerance", "samples", "t_span", "seed", "initial_conditions", "integral_tolerance",
                  "solver_tolerance"});
    auto positive = [&](const char* key, double& out) {
        if (!n[key]) return;
        if (auto x = r.number(n[key], std::string("verification.") + key)) {
            if (!(*x > 0.0)) r.fail(std::string("verification.") + key + ": must be positive");
            out = *x;
        }
    };
    positive("tolerance", v.tolerance);
    positive("integral_tolerance", v.integral_tolerance);
    positive("solver_tolerance", v.solver_tolerance);
    if (n["samples"])
        if (auto s = r.unsigned_int(n["samples"], "verification.samples")) {
            if (*s < 1) r.fail("verification.samples: must be at least 1");
            v.samples = static_cast<std::size_t>(*s);
        }
    if (n["seed"])
        if (auto s = r.unsigned_int(n["seed"], "verification.seed")) v.seed = *s;
    if (n["t_span"])
        if (auto span = r.range(n["t_span"], "verification.t_span")) v.t_span = *span;
    if (n["initial_conditions"]) {
        const auto& ics = n["initial_conditions"];
        if (!ics.IsSequence()) {
            r.fail("verification.initial_conditions: expected a list" + where(ics));
            return;
        }
        for (std::size_t k = 0; k < ics.size(); ++k) {
            const std::string path = "verification.initial_conditions[" + std::to_string(k) + "]";
            const auto& ic = ics[k];
            if (!ic.IsMap() || !ic["x"] || !ic["v"]) {
                r.fail(path + ": expected a mapping with x and v" + where(ic));
                continue;
            }
            InitialCondition c{r.numbers(ic["x"], path + ".x"), r.numbers(ic["v"], path + ".v")};
            if (c.x.size() != dim || c.v.size() != dim)
                r.fail(path + ": x and v must have " + std::to_string(dim) + " entries");
            v.initial_conditions.push_back(std::move(c));
        }
    }
}

}  // namespace

std::string normalize_tag(const std::string& tag) {
    std::string out;
    for (char c : tag) {
        if (c == '_' || c == '-' || c == ' ') continue;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

ProblemSpec parse_spec_text(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ParseError(e.msg, e.mark.line + 1, e.mark.column + 1);
    }
    ProblemSpec spec;
    spec.source = text;
    Reader r;
    if (!root.IsMap()) throw ValidationError({"problem file: expected a mapping at the top level"});
    r.check_keys(root, "problem", {"space", "potential", "omega", "damping", "analysis", "verification"});
    if (!root["space"])
        r.fail("space: required");
    else
        read_space(r, root["space"], spec.space);
    if (!root["potential"])
        r.fail("potential: required");
    else
        read_potential(r, root["potential"], spec.space.dimension, spec.potential);
    if (root["omega"] && root["damping"]) r.fail("omega and damping are mutually exclusive; give exactly one");
    if (!root["omega"] && !root["damping"]) r.fail("one of omega or damping is required");
    if (root["omega"]) {
        spec.omega.emplace();
        read_profile(r, root["omega"], "omega", *spec.omega);
    }
    if (root["damping"]) {
        spec.damping.emplace();
        read_profile(r, root["damping"], "damping", *spec.damping);
    }
    if (root["analysis"]) read_analysis(r, root["analysis"], spec.analysis);
    if (root["verification"]) read_verification(r, root["verification"], spec.space.dimension, spec.verification);

    // A damping problem only asks for reparametrization unless lie is requested explicitly.
    if (spec.damping && !spec.omega && !(root["analysis"] && root["analysis"].IsMap() && root["analysis"]["lie"]))
        spec.analysis.lie = false;
    if (spec.damping && (spec.analysis.lie || spec.analysis.noether) && !spec.omega)
        r.fail("analysis: lie and noether need an omega profile; use reparam with a damping profile");
    if (spec.analysis.reparam) {
        const auto& prof = spec.omega ? spec.omega : spec.damping;
        if (prof && !prof->interval) r.fail("analysis.reparam: the profile needs an interval");
    }
    // Constructing the objects catches parameter-level violations (a = 0, d1 = 0, ...).
    if (r.violations.empty()) {
        try {
            if (spec.omega) (void)build_omega(*spec.omega);
        } catch (const Error& e) {
            r.fail(std::string("omega: ") + e.what());
        }
        try {
            if (spec.damping) (void)build_damping(*spec.damping);
        } catch (const Error& e) {
            r.fail(std::string("damping: ") + e.what());
        }
        try {
            const auto space = build_space(spec);
            (void)build_potential(spec);
            if (spec.space.family == SpaceFamily::UserCatalog) {
                const auto cat = build_catalog(spec, space);
                if (cat.accepted.empty()) r.fail("space.catalog: no vector passed its class identity check");
            }
        } catch (const Error& e) {
            r.fail(e.what());
        }
    }
    if (!r.violations.empty()) throw ValidationError(r.violations);
    return spec;
}

ProblemSpec parse_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read problem file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec_text(ss.str());
}

MetricSpace build_space(const ProblemSpec& spec) {
    const std::size_t n = spec.space.dimension;
    if (spec.space.family == SpaceFamily::UserCatalog && !spec.space.metric.empty()) {
        std::vector<std::vector<Polynomial>> g(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) g[i].push_back(Polynomial::parse(spec.space.metric[i][j], n));
        return MetricSpace::polynomial_metric(std::move(g));
    }
    return MetricSpace::euclidean(n);
}

ScalarField build_potential(const ProblemSpec& spec) {
    const auto& p = spec.potential;
    if (p.family == "kepler") return ScalarField::kepler();
    if (p.family == "exceptional") return ScalarField::exceptional();
    if (p.family == "quadratic") return ScalarField::quadratic();
    if (p.family == "centralpower") return ScalarField::central_power(p.n);
    if (p.family == "polynomial") return ScalarField::polynomial(Polynomial::parse(p.expression, spec.space.dimension));
    throw InvalidArgument("unknown potential family '" + p.family + "'");
}

OmegaProfile build_omega(const ProfileSpec& p) {
    if (p.family == "powerlaw") return OmegaProfile::power_law(p.params.at("a"));
    if (p.family == "inversesquareaffine") return OmegaProfile::inverse_square_affine(p.params.at("d1"), p.params.at("d2"));
    if (p.family == "inversesquarescaled") return OmegaProfile::inverse_square_scaled(p.params.at("gamma"));
    if (p.family == "tabulated") return OmegaProfile::tabulated(p.t, p.values);
    throw InvalidArgument("unknown omega family '" + p.family + "'");
}

DampingProfile build_damping(const ProfileSpec& p) {
    if (p.family == "constant") return DampingProfile::constant(p.params.at("c"));
    if (p.family == "powerlaw") return DampingProfile::power_law(p.params.at("b"));
    if (p.family == "tabulated") return DampingProfile::tabulated(p.t, p.values);
    throw InvalidArgument("unknown damping family '" + p.family + "'");
}

BuiltCatalog build_catalog(const ProblemSpec& spec, const MetricSpace& space) {
    const std::size_t n = spec.space.dimension;
    if (spec.space.family == SpaceFamily::Euclidean)
        return {euclidean_catalog(n, spec.space.include_shears ? CatalogScope::Full : CatalogScope::WithoutShears), {}};
    std::vector<Collineation> cat;
    for (const auto& e : spec.space.catalog) {
        std::vector<Polynomial> comps;
        for (const auto& c : e.components) comps.push_back(Polynomial::parse(c, n));
        std::optional<Polynomial> pot, fac;
        if (e.potential) pot = Polynomial::parse(*e.potential, n);
        if (e.factor) fac = Polynomial::parse(*e.factor, n);
        cat.emplace_back(e.label, e.cls, std::move(comps), e.psi, pot, fac);
    }
    const auto pts = sample_points(100, n, spec.verification.seed, 3.0, 0.5,
                                   [&space](const Vec& x) { return space.in_chart(x); });
    auto check = verify_catalog(cat, space, pts);
    return {std::move(check.accepted), std::move(check.rejected)};
}

}  // namespace symclass::app
