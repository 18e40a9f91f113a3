#pragma once

#include <string>

#include "json.hpp"
#include "ocplab/problem.hpp"

namespace ocplab {

/// Build a problem from a structured config. Dynamics and cost come from a
/// fixed parametric catalog:
///   dynamics: { "form": "affine", "A": n x n, "B": n x m, "c": n }  -> f = Ax + Bu + c
///   cost:     { "form": "polynomial", "Q": n x n, "R": m x m, "q": n, "r": m,
///               "constant": real, "abs_x": n }                      -> F = x'Qx + u'Ru
///                                                             + q'x + r'u + const + sum w_i |x_i|
/// Unknown keys are rejected.
ProblemSpec problem_from_config(const nlohmann::json& cfg);
ProblemSpec problem_from_config_file(const std::string& path);

}  // namespace ocplab
