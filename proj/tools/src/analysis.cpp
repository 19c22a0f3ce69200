#include "symclass_app/analysis.hpp"

#include "symclass/errors.hpp"
#include "symclass/lie_classifier.hpp"
#include "symclass/noether_classifier.hpp"
#include "symclass/verifier.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace symclass::app {
namespace {

Json to_json(const ResidualReport& r) {
    Json j;
    j["max"] = r.max;
    j["mean"] = r.mean;
    j["p95"] = r.p95;
    j["samples"] = r.samples;
    j["tolerance"] = r.tolerance;
    j["passed"] = r.passed;
    Json comps = Json::object();
    for (const auto& [k, v] : r.components) comps[k] = v;
    j["components"] = comps;
    return j;
}

Json to_json(const TimeFunction& f) {
    Json j;
    j["text"] = f.describe();
    switch (f.kind()) {
        case TimeFunction::Kind::Polynomial:
            j["family"] = "polynomial";
            j["coefficients"] = f.coefficients();
            break;
        case TimeFunction::Kind::Evaluator: j["family"] = "closed_form"; break;
        case TimeFunction::Kind::Dense:
            j["family"] = "numeric";
            j["domain"] = {f.t_front(), f.t_back()};
            break;
    }
    return j;
}

Json to_json(const std::map<std::string, double>& m) {
    Json j = Json::object();
    for (const auto& [k, v] : m) j[k] = v;
    return j;
}

Json to_json(const PointSymmetry& s) {
    Json j;
    j["case"] = s.case_tag();
    j["generator"] = s.describe();
    j["closed_form"] = s.closed_form();
    j["constants"] = to_json(s.constants);
    Json coeffs = Json::object();
    for (const auto& [k, f] : s.coefficients) coeffs[k] = to_json(f);
    j["coefficients"] = coeffs;
    return j;
}

Json to_json(const std::vector<Rejection>& rs) {
    Json j = Json::array();
    for (const auto& r : rs) j.push_back({{"case", r.case_tag}, {"generator", r.generator}, {"reason", r.reason}});
    return j;
}

Json vec_json(const Vec& v) {
    Json j = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v(i));
    return j;
}

Vec to_vec(const std::vector<double>& v) { return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())); }

Json profile_json(const OmegaProfile& w) {
    return {{"name", w.name()}, {"family", to_string(w.family())}, {"parameters", w.parameters()},
            {"validity", w.validity().to_string()}};
}

Json profile_json(const DampingProfile& p) {
    return {{"name", p.name()}, {"family", to_string(p.family())}, {"parameters", p.parameters()},
            {"validity", p.validity().to_string()}};
}

Json error_json(const std::string& stage, const std::exception& e) {
    return {{"stage", stage}, {"message", e.what()}};
}

std::string timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

Json header(const ProblemSpec& spec, const char* command) {
    Json j;
    j["schema_version"] = schema_version;
    j["command"] = command;
    j["tool"] = {{"name", tool_name}, {"version", tool_version}};
    j["generated_at"] = timestamp();
    j["seed"] = spec.verification.seed;
    j["tolerance"] = spec.verification.tolerance;
    return j;
}

Json problem_json(const ProblemSpec& spec) {
    Json j;
    j["dimension"] = spec.space.dimension;
    j["space_family"] = to_string(spec.space.family);
    j["potential"] = spec.potential.family;
    j["analysis"] = {{"lie", spec.analysis.lie}, {"noether", spec.analysis.noether}, {"reparam", spec.analysis.reparam}};
    j["source"] = spec.source;
    return j;
}

// Initial conditions from the problem, or a fixed default with angular momentum when n >= 2.
std::vector<std::pair<Vec, Vec>> initial_conditions(const ProblemSpec& spec) {
    std::vector<std::pair<Vec, Vec>> out;
    for (const auto& ic : spec.verification.initial_conditions) out.emplace_back(to_vec(ic.x), to_vec(ic.v));
    if (out.empty()) {
        const std::size_t n = spec.space.dimension;
        Vec x = Vec::Zero(static_cast<Eigen::Index>(n)), v = Vec::Zero(static_cast<Eigen::Index>(n));
        x(0) = 1.0;
        if (n >= 2)
            v(1) = 0.8;
        else
            v(0) = 0.5;
        out.emplace_back(x, v);
    }
    return out;
}

VerifyOptions verify_options(const ProblemSpec& spec) {
    return {spec.verification.samples, spec.verification.seed, spec.verification.tolerance};
}

// X = c (t ∂t + p H) with p = (a + 2) / (2 − n), checked at a few points.
const PointSymmetry* find_scaling_generator(const std::vector<PointSymmetry>& syms, double p, std::size_t dim,
                                            std::uint64_t seed) {
    const auto pts = sample_points(4, dim, seed, 2.0, 0.5);
    for (const auto& s : syms) {
        bool ok = true;
        double c = 0.0;
        for (std::size_t k = 0; k < pts.size() && ok; ++k) {
            const double t = 1.5 + 0.5 * static_cast<double>(k);
            const double xi = s.xi(t, pts[k]);
            if (k == 0) c = xi / t;
            if (std::abs(c) < 1e-8) {
                ok = false;
                break;
            }
            const Vec target = c * p * pts[k];
            ok = std::abs(xi - c * t) <= 1e-6 * std::abs(c * t) &&
                 (s.eta(t, pts[k]) - target).norm() <= 1e-6 * std::max(1.0, target.norm());
        }
        if (ok) return &s;
    }
    return nullptr;
}

struct Section {
    Json json;
    bool passed = true;
};

Section lie_section(const ProblemSpec& spec, const MetricSpace& space, const ScalarField& V, const OmegaProfile& w,
                    const std::vector<Collineation>& catalog, std::vector<PointSymmetry>& out_syms) {
    ClassifierSettings settings;
    settings.seed = spec.verification.seed;
    const auto cls = classify_lie(space, V, w, catalog, settings);
    Section s;
    Json syms = Json::array();
    for (const auto& sym : cls.symmetries) {
        Json e = to_json(sym);
        const auto rep = check_determining_eqs(sym, space, V, w, verify_options(spec));
        e["verification"] = to_json(rep);
        e["passed"] = rep.passed;
        s.passed = s.passed && rep.passed;
        syms.push_back(std::move(e));
    }
    s.json["count"] = cls.symmetries.size();
    s.json["rank"] = cls.symmetries.empty() ? 0 : independence_rank(cls.symmetries, spec.verification.seed);
    s.json["symmetries"] = syms;
    Json rejected = Json::array(), inapplicable = Json::object();
    const std::pair<const char*, const CaseOutcome*> cases[] = {
        {"I", &cls.case_I}, {"II", &cls.case_II}, {"III", &cls.case_III}, {"IV", &cls.case_IV}};
    for (const auto& [tag, c] : cases) {
        for (auto& r : to_json(c->rejected)) rejected.push_back(r);
        if (c->inapplicable) inapplicable[tag] = *c->inapplicable;
    }
    s.json["rejected"] = rejected;
    s.json["inapplicable"] = inapplicable;
    s.json["duplicates"] = to_json(cls.duplicates);
    out_syms = cls.symmetries;
    return s;
}

Json gauge_json(const NoetherSymmetry& sym) {
    Json terms = Json::array();
    for (const auto& t : sym.gauge_terms)
        terms.push_back({{"coefficient", to_json(t.coefficient)}, {"field", t.label.empty() ? "1" : t.label}});
    return terms;
}

Section noether_section(const ProblemSpec& spec, const MetricSpace& space, const ScalarField& V,
                        const OmegaProfile& w, const std::vector<Collineation>& catalog,
                        const std::vector<std::pair<Vec, Vec>>& ics, const std::vector<Trajectory>& trajs) {
    ClassifierSettings settings;
    settings.seed = spec.verification.seed;
    const auto cls = classify_noether(space, V, w, catalog, settings);
    const auto opt = verify_options(spec);
    Section s;
    Json syms = Json::array();
    for (const auto& sym : cls.symmetries) {
        Json e = to_json(sym.generator);
        e["case"] = sym.case_tag;
        e["constants"] = to_json(sym.constants);
        e["gauge"] = gauge_json(sym);
        const auto cond = check_noether_condition(sym, space, V, w, opt);
        const auto split = check_noether_split(sym, space, V, w, opt);
        const auto lie = check_determining_eqs(sym.generator, space, V, w, opt);
        e["verification"] = {{"condition", to_json(cond)}, {"split", to_json(split)}, {"lie", to_json(lie)}};
        bool ok = cond.passed && split.passed && lie.passed;

        const auto I = noether_integral(sym, space, V, w);
        Json drift = Json::array();
        for (std::size_t k = 0; k < ics.size(); ++k) {
            Json d{{"x0", vec_json(ics[k].first)}, {"v0", vec_json(ics[k].second)}};
            if (trajs[k].nodes() == 0) {
                d["status"] = "skipped";
                d["reason"] = "trajectory not available";
            } else {
                const auto rep = check_integral_drift(I, trajs[k], spec.verification.integral_tolerance);
                d["status"] = rep.passed ? "passed" : "failed";
                d["report"] = to_json(rep);
                ok = ok && rep.passed;
            }
            drift.push_back(std::move(d));
        }
        e["first_integral"] = {{"description", I.description}, {"provenance", I.provenance}, {"drift", drift}};
        e["passed"] = ok;
        s.passed = s.passed && ok;
        syms.push_back(std::move(e));
    }
    s.json["count"] = cls.symmetries.size();
    s.json["symmetries"] = syms;
    Json rejected = to_json(cls.case_I.rejected), inapplicable = Json::object();
    for (auto& r : to_json(cls.case_II.rejected)) rejected.push_back(r);
    if (cls.case_I.inapplicable) inapplicable["I"] = *cls.case_I.inapplicable;
    if (cls.case_II.inapplicable) inapplicable["II"] = *cls.case_II.inapplicable;
    s.json["rejected"] = rejected;
    s.json["inapplicable"] = inapplicable;
    s.json["duplicates"] = to_json(cls.duplicates);
    return s;
}

// Central potential V ∝ r^n with ω = t^a: Q = r^(2−n) / t^(a+2) along the orbit of the scaling generator.
std::optional<Section> invariant_section(const ProblemSpec& spec, const MetricSpace& space, const ScalarField& V,
                                         const OmegaProfile& w, const std::vector<PointSymmetry>& syms,
                                         const std::vector<Trajectory>& trajs) {
    const auto n = V.radial_exponent();
    const auto a = w.power_exponent();
    if (!n || !a || *n == 2.0 || !space.is_euclidean() || w.family() != OmegaFamily::PowerLaw) return std::nullopt;
    Section s;
    const double nn = *n, aa = *a;
    const double p = (aa + 2.0) / (2.0 - nn);
    s.json["quantity"] = "r^" + std::to_string(2.0 - nn) + " / t^" + std::to_string(aa + 2.0);
    s.json["exponents"] = {{"n", nn}, {"a", aa}};
    const PointSymmetry* X = find_scaling_generator(syms, p, space.dimension(), spec.verification.seed);
    if (!X) {
        s.json["status"] = "scaling generator not emitted";
        s.passed = false;
        return s;
    }
    s.json["generator"] = X->describe();
    if (trajs.empty() || trajs.front().nodes() == 0) {
        s.json["status"] = "trajectory not available";
        s.passed = false;
        return s;
    }
    PushOptions opt;
    opt.eom_tol = spec.verification.tolerance;
    opt.invariant = [nn, aa](double t, const Vec& x) { return std::pow(x.norm(), 2.0 - nn) / std::pow(t, aa + 2.0); };
    Json pushes = Json::array();
    for (double eps : {0.1, 0.3}) {
        Json e{{"epsilon", eps}};
        try {
            const auto r = push_solution(*X, trajs.front(), eps, space, V, w, opt);
            e["eom"] = to_json(r.eom);
            e["invariant"] = to_json(*r.invariant);
            e["passed"] = r.eom.passed && r.invariant->passed;
        } catch (const Error& err) {
            e["error"] = err.what();
            e["passed"] = false;
        }
        s.passed = s.passed && e["passed"].get<bool>();
        pushes.push_back(std::move(e));
    }
    s.json["pushes"] = pushes;
    s.json["status"] = s.passed ? "passed" : "failed";
    return s;
}

struct ReparamSection {
    Json json;
    std::string csv;
    bool passed = true;
};

constexpr double round_trip_tolerance = 1e-8;

std::string csv_row(std::initializer_list<double> values) {
    std::ostringstream os;
    os << std::setprecision(17);
    bool first = true;
    for (double v : values) {
        if (!first) os << ',';
        os << v;
        first = false;
    }
    os << '\n';
    return os.str();
}

double sup_position_error(const Trajectory& a, const Trajectory& b) {
    const double lo = std::max(a.t_front(), b.t_front()), hi = std::min(a.t_back(), b.t_back());
    double worst = 0.0;
    const std::size_t count = 2000;
    for (std::size_t k = 0; k < count; ++k) {
        const double t = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
        worst = std::max(worst, (a.position(t) - b.position(t)).cwiseAbs().maxCoeff());
    }
    return worst;
}

ReparamSection reparam_section(const ProblemSpec& spec, std::size_t rows) {
    ReparamSection out;
    const auto space = build_space(spec);
    const auto V = build_potential(spec);
    const auto& prof = spec.omega ? *spec.omega : *spec.damping;
    const Interval I = Interval::closed(prof.interval->first, prof.interval->second);
    const auto ic = initial_conditions(spec).front();
    const double tol = spec.verification.solver_tolerance;
    std::ostringstream csv;
    csv << "t,S,dS,omega,phi\n";
    double sup = 0.0, round_trip = 0.0;

    if (spec.damping) {
        const auto phi = build_damping(*spec.damping);
        const auto m = damped_to_timedep(phi, I);
        out.json["direction"] = "damped_to_timedep";
        out.json["input"] = profile_json(phi);
        out.json["paired"] = profile_json(m.omega);
        out.json["time_map"] = {{"t_domain", m.map.t_domain().to_string()}, {"s_domain", m.map.s_domain().to_string()}};
        for (std::size_t k = 0; k < rows; ++k) {
            const double t = I.lo + (I.hi - I.lo) * static_cast<double>(k) / static_cast<double>(rows - 1);
            const double s = m.map.forward(t);
            csv << csv_row({t, s, m.map.derivative(t), m.omega.eval(s), phi.eval(t)});
        }
        round_trip = damping_round_trip_residual(phi, I);
        const auto damped = integrate_damped(space, V, phi, ic.first, ic.second, {I.lo, I.hi}, tol);
        const auto image = map_trajectory(damped, m.map, MapDirection::DampedToTimeDep);
        const Vec v_s = ic.second / m.map.derivative(I.lo);
        const auto twin = integrate(space, V, m.omega, ic.first, v_s, {m.map.s_domain().lo, m.map.s_domain().hi}, tol);
        sup = sup_position_error(image, twin);
    } else {
        const auto w = build_omega(*spec.omega);
        const auto m = timedep_to_damped(w, I);
        out.json["direction"] = "timedep_to_damped";
        out.json["input"] = profile_json(w);
        out.json["paired"] = profile_json(m.damping);
        out.json["time_map"] = {{"t_domain", m.map.t_domain().to_string()}, {"s_domain", m.map.s_domain().to_string()}};
        const auto& td = m.map.t_domain();
        for (std::size_t k = 0; k < rows; ++k) {
            const double t = td.lo + (td.hi - td.lo) * static_cast<double>(k) / static_cast<double>(rows - 1);
            const double s = m.map.forward(t);
            csv << csv_row({t, s, m.map.derivative(t), w.eval(s), m.damping.eval(t)});
        }
        round_trip = omega_round_trip_residual(w, I);
        const auto timedep = integrate(space, V, w, ic.first, ic.second, {I.lo, I.hi}, tol);
        const auto image = map_trajectory(timedep, m.map, MapDirection::TimeDepToDamped);
        const Vec v_t = ic.second * m.map.derivative(td.lo);
        const auto twin = integrate_damped(space, V, m.damping, ic.first, v_t, {td.lo, td.hi}, tol);
        sup = sup_position_error(image, twin);
    }
    const bool rt_ok = round_trip < round_trip_tolerance;
    const bool twin_ok = sup < spec.verification.tolerance;
    out.json["round_trip"] = {{"residual", round_trip}, {"tolerance", round_trip_tolerance}, {"passed", rt_ok}};
    out.json["twin_integration"] = {{"x0", vec_json(ic.first)},
                                    {"v0", vec_json(ic.second)},
                                    {"sup_error", sup},
                                    {"tolerance", spec.verification.tolerance},
                                    {"passed", twin_ok}};
    out.json["rows"] = rows;
    out.passed = rt_ok && twin_ok;
    out.json["passed"] = out.passed;
    out.csv = csv.str();
    return out;
}

}  // namespace

void apply_overrides(ProblemSpec& spec, const Overrides& o) {
    if (o.lie || o.noether) {
        spec.analysis.lie = o.lie.value_or(false);
        spec.analysis.noether = o.noether.value_or(false);
    }
    if (o.seed) spec.verification.seed = *o.seed;
    if (o.tolerance) {
        if (!(*o.tolerance > 0.0)) throw ValidationError({"--tol: must be positive"});
        spec.verification.tolerance = *o.tolerance;
    }
    if ((spec.analysis.lie || spec.analysis.noether) && !spec.omega)
        throw ValidationError({"analysis: lie and noether need an omega profile"});
}

AnalysisResult run_analyze(const ProblemSpec& spec, const std::optional<std::filesystem::path>& trajectory_csv) {
    AnalysisResult res;
    Json& j = res.report;
    j = header(spec, "analyze");
    j["problem"] = problem_json(spec);
    Json errors = Json::array();

    const auto space = build_space(spec);
    const auto V = build_potential(spec);
    const auto cat = build_catalog(spec, space);
    Json rejected = Json::array();
    for (const auto& [label, r] : cat.rejected) rejected.push_back({{"label", label}, {"residual", r}});
    j["problem"]["catalog_size"] = cat.accepted.size();
    j["problem"]["catalog_rejected"] = rejected;

    if (spec.omega) {
        const auto w = build_omega(*spec.omega);
        j["problem"]["omega"] = profile_json(w);
        const auto ics = initial_conditions(spec);
        std::vector<Trajectory> trajs(ics.size());
        for (std::size_t k = 0; k < ics.size(); ++k) {
            try {
                trajs[k] = integrate(space, V, w, ics[k].first, ics[k].second, spec.verification.t_span,
                                     spec.verification.solver_tolerance);
            } catch (const Error& e) {
                errors.push_back(error_json("integrate[" + std::to_string(k) + "]", e));
                res.passed = false;
            }
        }
        if (trajectory_csv && !trajs.empty() && trajs.front().nodes() > 0) {
            std::ofstream os(*trajectory_csv);
            if (!os) throw InvalidArgument("cannot write " + trajectory_csv->string());
            trajs.front().write_csv(os);
        }
        std::vector<PointSymmetry> lie_syms;
        if (spec.analysis.lie) {
            try {
                auto s = lie_section(spec, space, V, w, cat.accepted, lie_syms);
                j["lie"] = std::move(s.json);
                res.passed = res.passed && s.passed;
                if (auto inv = invariant_section(spec, space, V, w, lie_syms, trajs)) {
                    j["invariants"] = std::move(inv->json);
                    res.passed = res.passed && inv->passed;
                }
            } catch (const Error& e) {
                errors.push_back(error_json("lie", e));
                res.passed = false;
            }
        }
        if (spec.analysis.noether) {
            try {
                auto s = noether_section(spec, space, V, w, cat.accepted, ics, trajs);
                j["noether"] = std::move(s.json);
                res.passed = res.passed && s.passed;
            } catch (const Error& e) {
                errors.push_back(error_json("noether", e));
                res.passed = false;
            }
        }
    }
    if (spec.analysis.reparam) {
        try {
            auto s = reparam_section(spec, 201);
            j["reparam"] = std::move(s.json);
            res.passed = res.passed && s.passed;
        } catch (const Error& e) {
            errors.push_back(error_json("reparam", e));
            res.passed = false;
        }
    }
    j["errors"] = errors;
    j["passed"] = res.passed;
    return res;
}

ReparamResult run_reparam(const ProblemSpec& spec, std::size_t rows) {
    const auto& prof = spec.omega ? spec.omega : spec.damping;
    if (!prof || !prof->interval) throw ValidationError({"reparam: the profile needs an interval"});
    ReparamResult res;
    res.report = header(spec, "reparam");
    res.report["problem"] = problem_json(spec);
    Json errors = Json::array();
    try {
        auto s = reparam_section(spec, std::max<std::size_t>(rows, 2));
        res.report["reparam"] = std::move(s.json);
        res.csv = std::move(s.csv);
        res.passed = s.passed;
    } catch (const Error& e) {
        errors.push_back(error_json("reparam", e));
        res.passed = false;
    }
    res.report["errors"] = errors;
    res.report["passed"] = res.passed;
    return res;
}

Json strip_timestamp(Json report) {
    report.erase("generated_at");
    return report;
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

VerifyOutcome verify_report(const Json& report) {
    if (!report.is_object() || !report.contains("problem") || !report["problem"].contains("source"))
        throw ValidationError({"report: missing problem.source"});
    if (!report.contains("schema_version") || report["schema_version"] != schema_version)
        throw ValidationError({"report: unsupported schema_version"});
    auto spec = parse_spec_text(report["problem"]["source"].get<std::string>());
    const auto& flags = report["problem"]["analysis"];
    spec.analysis.lie = flags.value("lie", spec.analysis.lie);
    spec.analysis.noether = flags.value("noether", spec.analysis.noether);
    spec.analysis.reparam = flags.value("reparam", spec.analysis.reparam);
    spec.verification.seed = report.value("seed", spec.verification.seed);
    spec.verification.tolerance = report.value("tolerance", spec.verification.tolerance);

    const bool reparam_only = report.value("command", std::string{"analyze"}) == "reparam";
    Json fresh;
    bool passed;
    if (reparam_only) {
        const std::size_t rows = report["reparam"].value("rows", std::size_t{201});
        auto r = run_reparam(spec, rows);
        fresh = std::move(r.report);
        passed = r.passed;
    } else {
        auto r = run_analyze(spec);
        fresh = std::move(r.report);
        passed = r.passed;
    }
    VerifyOutcome out;
    out.passed = passed;
    const Json a = strip_timestamp(report), b = strip_timestamp(fresh);
    for (const auto& op : Json::diff(a, b)) {
        out.differences.push_back(op.value("op", std::string{}) + " " + op.value("path", std::string{}));
        if (out.differences.size() >= 20) break;
    }
    out.reproduced = out.differences.empty();
    return out;
}

}  // namespace symclass::app
