#pragma once

#include "symclass/collineation.hpp"
#include "symclass/metric_space.hpp"
#include "symclass/omega_profile.hpp"
#include "symclass/reparam.hpp"
#include "symclass/sampling.hpp"
#include "symclass/scalar_field.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace symclass::app {

struct CatalogEntrySpec {
    std::string label;
    CollineationClass cls = CollineationClass::NongradientKV;
    std::vector<std::string> components;
    std::optional<std::string> potential;
    double psi = 0.0;
    std::optional<std::string> factor;
};

struct SpaceSpec {
    std::size_t dimension = 0;
    SpaceFamily family = SpaceFamily::Euclidean;
    // Polynomial metric components for user catalogs; identity when empty.
    std::vector<std::vector<std::string>> metric;
    std::vector<CatalogEntrySpec> catalog;
    bool include_shears = true;
};

struct PotentialSpec {
    std::string family;  // normalized tag
    double n = 0.0;
    std::string expression;
};

// Family tag plus named parameters, shared by omega and damping sections.
struct ProfileSpec {
    std::string family;  // normalized tag
    std::map<std::string, double> params;
    std::vector<double> t, values;
    std::optional<std::pair<double, double>> interval;
};

struct AnalysisFlags {
    bool lie = true;
    bool noether = false;
    bool reparam = false;
};

struct InitialCondition {
    std::vector<double> x, v;
};

struct VerificationSpec {
    double tolerance = 1e-6;
    std::size_t samples = 100;
    std::pair<double, double> t_span{1.0, 10.0};
    std::uint64_t seed = default_seed;
    double integral_tolerance = 1e-7;
    double solver_tolerance = 1e-10;
    std::vector<InitialCondition> initial_conditions;
};

struct ProblemSpec {
    SpaceSpec space;
    PotentialSpec potential;
    std::optional<ProfileSpec> omega;
    std::optional<ProfileSpec> damping;
    AnalysisFlags analysis;
    VerificationSpec verification;
    // Verbatim problem text, embedded in reports so they can be re-run.
    std::string source;
};

// Lower-case with '_', '-' and spaces removed.
std::string normalize_tag(const std::string& tag);

// Throws ParseError for malformed YAML and ValidationError listing every violation.
ProblemSpec parse_spec_text(const std::string& text);
ProblemSpec parse_spec(const std::filesystem::path& path);

MetricSpace build_space(const ProblemSpec& spec);
ScalarField build_potential(const ProblemSpec& spec);
OmegaProfile build_omega(const ProfileSpec& p);
DampingProfile build_damping(const ProfileSpec& p);

struct BuiltCatalog {
    std::vector<Collineation> accepted;
    std::vector<std::pair<std::string, double>> rejected;
};
// Built-in Euclidean catalog, or the user catalog after its identities are checked.
BuiltCatalog build_catalog(const ProblemSpec& spec, const MetricSpace& space);

}  // namespace symclass::app
