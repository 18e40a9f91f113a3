#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ocplab/vec.hpp"

namespace ocplab {

// ---------------------------------------------------------------------------
// Control domains
// ---------------------------------------------------------------------------

struct BoxDomain {
    Vec lower, upper;  // componentwise lower <= upper
};

struct FiniteSetDomain {
    std::vector<Vec> points;  // nonempty, pairwise distinct (1e-12)
};

/// Unbounded control space. Accepted only by operations documented to support
/// it (analytic argmax path); grid maximization rejects it.
struct EuclideanDomain {
    int dim = 1;
};

using ControlDomain = std::variant<BoxDomain, FiniteSetDomain, EuclideanDomain>;

int control_dim(const ControlDomain& d);
bool domain_contains(const ControlDomain& d, const Vec& u, double tol = 1e-12);
void validate_domain(const ControlDomain& d);

/// Deterministic mesh of a Box (points per dimension) or the points of a
/// FiniteSet. Throws UsageError for EuclideanDomain.
std::vector<Vec> control_mesh_points(const ControlDomain& d, int per_dim);

// ---------------------------------------------------------------------------
// Controls and trajectories
// ---------------------------------------------------------------------------

/// Piecewise-constant admissible control on [breakpoints.front(), breakpoints.back()].
/// values[k] applies on [breakpoints[k], breakpoints[k+1]).
struct ControlSignal {
    std::vector<double> breakpoints;
    std::vector<Vec> values;

    static ControlSignal constant(double t0, double T, Vec u);

    double start() const { return breakpoints.front(); }
    double end() const { return breakpoints.back(); }
    const Vec& at(double t) const;
    void validate(const ControlDomain& d) const;
    bool covers(double tau, double T, double tol = 1e-12) const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Vec> states;
    std::vector<double> accumulated_cost;  // running integral of F, starts at 0

    Vec state_at(double t) const;
    double final_cost() const { return accumulated_cost.back(); }
    const Vec& final_state() const { return states.back(); }
};

// ---------------------------------------------------------------------------
// Problem specification
// ---------------------------------------------------------------------------

struct WitnessFamily {
    std::string description;
    std::function<ControlSignal(double)> make;  // one control per parameter k
};

/// Result of an optimal-control reference query.
struct RefControl {
    enum class Kind { Control, NoneExists, NonUnique };
    Kind kind = Kind::NoneExists;
    std::optional<ControlSignal> control;   // set iff kind == Control
    std::optional<WitnessFamily> family;    // set iff kind == NonUnique
};

/// Structure metadata for problems with quadratic control cost F = u^T S u and
/// control-affine dynamics f = B u; S is singular with kernel direction u0.
struct QuadraticControlCost {
    Mat S;   // m x m, positive semidefinite
    Vec u0;  // nonzero kernel vector of S
    Mat B;   // n x m
};

/// A complete finite-horizon Lagrange problem instance: minimize
/// integral of running_cost subject to xdot = dynamics, u(t) in the domain.
struct ProblemSpec {
    std::string name;
    int state_dim = 1;
    ControlDomain control_domain;
    double t0 = 0.0, T = 1.0;

    std::function<Vec(const Vec& x, const Vec& u, double t)> dynamics;
    std::function<double(const Vec& x, const Vec& u, double t)> running_cost;

    // optional analytic derivatives (needed by the costate equation)
    std::function<Mat(const Vec&, const Vec&, double)> dynamics_jac_x;
    std::function<Vec(const Vec&, const Vec&, double)> cost_grad_x;

    // optional closed-form references
    std::function<double(const Vec& x, double tau)> reference_value;
    std::function<RefControl(const Vec& x0, double tau)> reference_control;

    std::optional<QuadraticControlCost> quad_structure;

    // documented experiment box in state space
    Vec box_lo, box_hi;

    bool nonnegative_cost = false;

    int control_dim() const { return ocplab::control_dim(control_domain); }
    bool has_jacobians() const { return bool(dynamics_jac_x) && bool(cost_grad_x); }
    void validate() const;
};

/// Spot-check the analytic jacobians against central finite differences at
/// seeded sample points; throws UsageError when they disagree beyond rel_tol.
void validate_jacobians(const ProblemSpec& spec, int samples = 24, double rel_tol = 1e-5,
                        std::uint64_t seed = 12345);

}  // namespace ocplab
