#pragma once

#include <string>
#include <vector>

#include "ocplab/problem.hpp"

namespace ocplab {

/// Built-in problems: ex22, ex23, ex31, ex32.
const ProblemSpec& get_problem(const std::string& id);
std::vector<std::string> list_problems();

/// Closed-form value of a registered problem at (x, tau).
double reference_value(const std::string& id, const Vec& x, double tau);

/// Closed-form optimal control (or NoneExists / NonUnique witness family).
RefControl reference_optimal_control(const std::string& id, const Vec& x0, double tau);

}  // namespace ocplab
