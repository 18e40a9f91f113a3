#include "ocplab/problem.hpp"

#include <algorithm>
#include <cmath>

#include "ocplab/errors.hpp"
#include "ocplab/rng.hpp"

namespace ocplab {

int control_dim(const ControlDomain& d) {
    if (const auto* b = std::get_if<BoxDomain>(&d)) return static_cast<int>(b->lower.size());
    if (const auto* f = std::get_if<FiniteSetDomain>(&d))
        return static_cast<int>(f->points.front().size());
    return std::get<EuclideanDomain>(d).dim;
}

bool domain_contains(const ControlDomain& d, const Vec& u, double tol) {
    if (const auto* b = std::get_if<BoxDomain>(&d)) {
        if (u.size() != b->lower.size()) return false;
        for (std::size_t i = 0; i < u.size(); ++i)
            if (u[i] < b->lower[i] - tol || u[i] > b->upper[i] + tol) return false;
        return true;
    }
    if (const auto* f = std::get_if<FiniteSetDomain>(&d)) {
        for (const Vec& p : f->points)
            if (u.size() == p.size() && dist(u, p) <= tol) return true;
        return false;
    }
    return static_cast<int>(u.size()) == std::get<EuclideanDomain>(d).dim;
}

void validate_domain(const ControlDomain& d) {
    if (const auto* b = std::get_if<BoxDomain>(&d)) {
        if (b->lower.empty() || b->lower.size() != b->upper.size())
            throw UsageError("box control domain: bad bounds");
        for (std::size_t i = 0; i < b->lower.size(); ++i)
            if (!(b->lower[i] <= b->upper[i]))
                throw UsageError("box control domain: lower > upper");
        return;
    }
    if (const auto* f = std::get_if<FiniteSetDomain>(&d)) {
        if (f->points.empty()) throw UsageError("finite control set: empty");
        for (std::size_t i = 0; i < f->points.size(); ++i)
            for (std::size_t j = i + 1; j < f->points.size(); ++j)
                if (dist(f->points[i], f->points[j]) <= 1e-12)
                    throw UsageError("finite control set: duplicate points");
        return;
    }
    if (std::get<EuclideanDomain>(d).dim < 1)
        throw UsageError("euclidean control domain: dim < 1");
}

std::vector<Vec> control_mesh_points(const ControlDomain& d, int per_dim) {
    if (const auto* f = std::get_if<FiniteSetDomain>(&d)) return f->points;
    const auto* b = std::get_if<BoxDomain>(&d);
    if (!b)
        throw UsageError("control mesh requires a Box or FiniteSet domain "
                         "(unbounded domains use the analytic argmax path)");
    if (per_dim < 2) per_dim = 2;
    const int m = static_cast<int>(b->lower.size());
    std::vector<Vec> pts;
    std::vector<int> idx(m, 0);
    for (;;) {
        Vec u(m);
        for (int i = 0; i < m; ++i) {
            double f01 = (per_dim == 1) ? 0.0 : double(idx[i]) / double(per_dim - 1);
            u[i] = b->lower[i] + f01 * (b->upper[i] - b->lower[i]);
        }
        pts.push_back(std::move(u));
        int c = 0;
        while (c < m && ++idx[c] == per_dim) idx[c++] = 0;
        if (c == m) break;
    }
    return pts;
}

ControlSignal ControlSignal::constant(double t0, double T, Vec u) {
    ControlSignal s;
    s.breakpoints = {t0, T};
    s.values = {std::move(u)};
    return s;
}

const Vec& ControlSignal::at(double t) const {
    // right-continuous lookup; t >= end returns the last piece
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
    std::size_t k = (it == breakpoints.begin()) ? 0 : (it - breakpoints.begin() - 1);
    if (k >= values.size()) k = values.size() - 1;
    return values[k];
}

void ControlSignal::validate(const ControlDomain& d) const {
    if (breakpoints.size() < 2 || values.size() + 1 != breakpoints.size())
        throw DomainError("control signal: breakpoint/value count mismatch");
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        if (!(breakpoints[i] < breakpoints[i + 1]))
            throw DomainError("control signal: breakpoints not strictly increasing");
    for (const Vec& v : values)
        if (!domain_contains(d, v))
            throw DomainError("control signal: value outside the control domain");
}

bool ControlSignal::covers(double tau, double T, double tol) const {
    return start() <= tau + tol && end() >= T - tol;
}

Vec Trajectory::state_at(double t) const {
    if (t <= times.front()) return states.front();
    if (t >= times.back()) return states.back();
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t k = it - times.begin() - 1;
    double w = (t - times[k]) / (times[k + 1] - times[k]);
    return axpy(w, sub(states[k + 1], states[k]), states[k]);
}

void ProblemSpec::validate() const {
    if (!(t0 < T)) throw UsageError(name + ": horizon requires t0 < T");
    if (state_dim < 1 || state_dim > 3)
        throw UsageError(name + ": state dimension must be 1..3");
    validate_domain(control_domain);
    if (!dynamics || !running_cost) throw UsageError(name + ": missing evaluators");
}

namespace {

Vec sample_control(const ControlDomain& d, Rng& rng) {
    if (const auto* b = std::get_if<BoxDomain>(&d)) {
        Vec u(b->lower.size());
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = rng.uniform(b->lower[i], b->upper[i]);
        return u;
    }
    if (const auto* f = std::get_if<FiniteSetDomain>(&d))
        return f->points[rng.below(f->points.size())];
    const int m = std::get<EuclideanDomain>(d).dim;
    Vec u(m);
    for (int i = 0; i < m; ++i) u[i] = rng.uniform(-1.0, 1.0);
    return u;
}

}  // namespace

void validate_jacobians(const ProblemSpec& spec, int samples, double rel_tol,
                        std::uint64_t seed) {
    if (!spec.has_jacobians()) return;
    const int n = spec.state_dim;
    const double h = 1e-6;
    for (int s = 0; s < samples; ++s) {
        Rng rng(seed, s);
        Vec x(n);
        for (int i = 0; i < n; ++i) {
            double lo = spec.box_lo.empty() ? -1.0 : spec.box_lo[i];
            double hi = spec.box_hi.empty() ? 1.0 : spec.box_hi[i];
            x[i] = rng.uniform(lo, hi);
        }
        Vec u = sample_control(spec.control_domain, rng);
        double t = rng.uniform(spec.t0, spec.T);

        Mat jac = spec.dynamics_jac_x(x, u, t);
        Vec gc = spec.cost_grad_x(x, u, t);
        for (int j = 0; j < n; ++j) {
            Vec xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            Vec fp = spec.dynamics(xp, u, t), fm = spec.dynamics(xm, u, t);
            for (int i = 0; i < n; ++i) {
                double fd = (fp[i] - fm[i]) / (2 * h);
                double scale = std::max(1.0, std::abs(jac[i][j]));
                if (std::abs(fd - jac[i][j]) > rel_tol * scale)
                    throw UsageError(spec.name + ": dynamics_jac_x disagrees with finite differences");
            }
            double cfd = (spec.running_cost(xp, u, t) - spec.running_cost(xm, u, t)) / (2 * h);
            double scale = std::max(1.0, std::abs(gc[j]));
            if (std::abs(cfd - gc[j]) > rel_tol * scale)
                throw UsageError(spec.name + ": cost_grad_x disagrees with finite differences");
        }
    }
}

}  // namespace ocplab
