#include "ocplab/simulate.hpp"

#include <cmath>
#include <string>

#include "ocplab/errors.hpp"

namespace ocplab {

Vec rk4_step(const std::function<Vec(const Vec&, double)>& f, const Vec& y, double t, double dt) {
    Vec k1 = f(y, t);
    Vec k2 = f(axpy(dt / 2, k1, y), t + dt / 2);
    Vec k3 = f(axpy(dt / 2, k2, y), t + dt / 2);
    Vec k4 = f(axpy(dt, k3, y), t + dt);
    Vec out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        out[i] = y[i] + dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return out;
}

Trajectory simulate(const ProblemSpec& spec, const Vec& x0, double tau,
                    const ControlSignal& control, int steps) {
    if (steps < 1) throw UsageError("simulate: steps must be >= 1");
    if (tau < spec.t0 - 1e-12 || tau >= spec.T)
        throw DomainError("simulate: tau outside [t0, T)");
    if (!control.covers(tau, spec.T))
        throw DomainError("simulate: control does not cover [tau, T]");
    control.validate(spec.control_domain);

    const int n = spec.state_dim;

    // clip control intervals to [tau, T]
    std::vector<std::pair<double, double>> segs;  // [a, b) per value index
    std::vector<const Vec*> seg_u;
    for (std::size_t k = 0; k < control.values.size(); ++k) {
        double a = std::max(control.breakpoints[k], tau);
        double b = std::min(control.breakpoints[k + 1], spec.T);
        if (b - a > 1e-15) {
            segs.emplace_back(a, b);
            seg_u.push_back(&control.values[k]);
        }
    }
    if (segs.empty()) throw DomainError("simulate: empty effective horizon");
    segs.front().first = tau;
    segs.back().second = spec.T;

    const double total = spec.T - tau;
    Trajectory traj;
    traj.times.push_back(tau);
    traj.states.push_back(x0);
    traj.accumulated_cost.push_back(0.0);

    Vec x = x0;
    double cost = 0.0;
    for (std::size_t s = 0; s < segs.size(); ++s) {
        auto [a, b] = segs[s];
        const Vec& u = *seg_u[s];
        int nseg = std::max(1, static_cast<int>(std::lround(steps * (b - a) / total)));
        double dt = (b - a) / nseg;
        auto rhs = [&](const Vec& aug, double t) {
            Vec xx(aug.begin(), aug.begin() + n);
            Vec d = spec.dynamics(xx, u, t);
            d.push_back(spec.running_cost(xx, u, t));
            return d;
        };
        Vec aug = x;
        aug.push_back(cost);
        for (int i = 0; i < nseg; ++i) {
            double t = a + i * dt;
            aug = rk4_step(rhs, aug, t, dt);
            if (!all_finite(aug))
                throw DivergenceError("simulate: non-finite state at t=" + std::to_string(t + dt),
                                      t + dt);
            double tn = (i + 1 == nseg) ? b : a + (i + 1) * dt;
            traj.times.push_back(tn);
            traj.states.push_back(Vec(aug.begin(), aug.begin() + n));
            traj.accumulated_cost.push_back(aug.back());
        }
        x = Vec(aug.begin(), aug.begin() + n);
        cost = aug.back();
    }
    return traj;
}

}  // namespace ocplab
