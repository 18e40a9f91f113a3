#pragma once

#include "ocplab/problem.hpp"

namespace ocplab {

/// Integrate xdot = f(x,u,t) from (x0, tau) to T under a piecewise-constant
/// control, accumulating the running cost. Fixed-step RK4, restarted at the
/// control breakpoints so discontinuities never straddle a step. `steps` is
/// the total step budget, distributed over the control intervals.
Trajectory simulate(const ProblemSpec& spec, const Vec& x0, double tau,
                    const ControlSignal& control, int steps);

/// One RK4 step of dy/dt = f(y, t); dt may be negative.
Vec rk4_step(const std::function<Vec(const Vec&, double)>& f, const Vec& y, double t, double dt);

}  // namespace ocplab
