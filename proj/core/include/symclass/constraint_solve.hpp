#pragma once

#include "symclass/collineation.hpp"
#include "symclass/metric_space.hpp"
#include "symclass/scalar_field.hpp"

#include <map>
#include <string>
#include <vector>

namespace symclass {

// Linear conditions relating a collineation Y to the potential. Unknown constants in brackets.
enum class ConditionForm {
    BracketGradient,      // L_Y V' + d0 V' + m Y = 0                [d0, m]
    BracketScaling,       // L_Y V' + d1 V' = 0                      [d1]
    DirectionalScaling,   // V_,k Y^k + d V + c = 0                  [d, c]
    DirectionalGradient,  // V_,k Y^k + d V + m S_Y + k = 0          [d, m, k]
    Proportional,         // Y − k V' = 0                            [k]
    ProjectiveFactor      // S_,j V'^j − lambda1 S = 0               [lambda1]
};

std::string to_string(ConditionForm f);

struct ConstraintSolution {
    enum class Status { ExactClosedForm, NumericLeastSquares, Infeasible };

    Status status = Status::Infeasible;
    std::map<std::string, double> constants;
    // Max scaled row residual of the least-squares solution.
    double residual = 0.0;
    // Dimension of the solution set (0 when the constants are unique).
    std::size_t free_parameters = 0;

    bool feasible() const noexcept { return status != Status::Infeasible; }
    double operator[](const std::string& key) const { return constants.at(key); }
};

std::string to_string(ConstraintSolution::Status s);

// Evaluates the condition at the given points as a linear system in the unknown
// constants. Feasible when the scaled residual stays below tol.
ConstraintSolution potential_condition_solve(const Collineation& Y, const ScalarField& V, ConditionForm form,
                                             const MetricSpace& space, const std::vector<Vec>& points,
                                             double tol = 1e-8);

}  // namespace symclass
