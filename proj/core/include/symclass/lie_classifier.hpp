#pragma once

#include "symclass/classifier_common.hpp"
#include "symclass/constraint_solve.hpp"

#include <vector>

namespace symclass {

struct LieClassification {
    // Independent generators, lowest case first.
    std::vector<PointSymmetry> symmetries;
    CaseOutcome case_I, case_II, case_III, case_IV;
    // Generators dropped as linear combinations of earlier ones.
    std::vector<Rejection> duplicates;
};

// Lie point symmetries of  ẍ + Γ ẋẋ + ω(t) V' = 0  from the four collineation cases.
LieClassification classify_lie(const MetricSpace& space, const ScalarField& V, const OmegaProfile& omega,
                               const std::vector<Collineation>& catalog, const ClassifierSettings& settings = {});

// Time-only generators (αt+β)∂t combined with affine collineations.
CaseOutcome lie_case_I(const ProblemContext& ctx);
// Gradient KVs/HV not parallel to V': X = D ∂t + T Y.
CaseOutcome lie_case_II(const ProblemContext& ctx);
// Gradient KV/HV parallel to V' (Y = k V'), plus the HV route with m = 0 where T,t ≡ 0 is rejected.
CaseOutcome lie_case_III(const ProblemContext& ctx);
// Special projective collineations, Euclidean space with V' = κ x only.
CaseOutcome lie_case_IV(const ProblemContext& ctx);

}  // namespace symclass
