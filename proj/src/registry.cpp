#include "ocplab/registry.hpp"

#include <cmath>
#include <map>

#include "ocplab/errors.hpp"

namespace ocplab {

namespace {

// Gradient convention for |x| kinks: slope 0 inside a small dead zone, so a
// costate integrated along a dwell arc on the kink stays put.
constexpr double kKinkDeadZone = 1e-10;

double sign_dz(double x) {
    if (x > kKinkDeadZone) return 1.0;
    if (x < -kKinkDeadZone) return -1.0;
    return 0.0;
}

// -- ex22: xdot = x + u, u in [0,1], cost |x|, horizon [0,1] ----------------

double ex22_value(double x, double tau) {
    const double T = 1.0;
    if (x >= 0.0) return x * (std::exp(T - tau) - 1.0);
    if ((1.0 + x) * std::exp(T - tau) <= 1.0)
        return 2.0 + x - tau - (1.0 + x) * std::exp(T - tau);
    return x - std::log(1.0 + x);
}

RefControl ex22_control(double x0, double tau) {
    const double T = 1.0;
    RefControl r;
    r.kind = RefControl::Kind::Control;
    if (x0 >= 0.0) {
        r.control = ControlSignal::constant(tau, T, {0.0});
        return r;
    }
    if ((1.0 + x0) * std::exp(T - tau) <= 1.0) {
        r.control = ControlSignal::constant(tau, T, {1.0});
        return r;
    }
    // push up to the rest point, then hold: switch at tau - ln(1+x0)
    double ts = tau - std::log(1.0 + x0);
    if (ts <= tau + 1e-12) {
        r.control = ControlSignal::constant(tau, T, {0.0});
    } else if (ts >= T - 1e-12) {
        r.control = ControlSignal::constant(tau, T, {1.0});
    } else {
        ControlSignal s;
        s.breakpoints = {tau, ts, T};
        s.values = {{1.0}, {0.0}};
        r.control = s;
    }
    return r;
}

ProblemSpec make_ex22() {
    ProblemSpec p;
    p.name = "ex22";
    p.state_dim = 1;
    p.control_domain = BoxDomain{{0.0}, {1.0}};
    p.t0 = 0.0;
    p.T = 1.0;
    p.dynamics = [](const Vec& x, const Vec& u, double) { return Vec{x[0] + u[0]}; };
    p.running_cost = [](const Vec& x, const Vec&, double) { return std::abs(x[0]); };
    p.dynamics_jac_x = [](const Vec&, const Vec&, double) { return Mat{{1.0}}; };
    p.cost_grad_x = [](const Vec& x, const Vec&, double) { return Vec{sign_dz(x[0])}; };
    p.reference_value = [](const Vec& x, double tau) { return ex22_value(x[0], tau); };
    p.reference_control = [](const Vec& x0, double tau) { return ex22_control(x0[0], tau); };
    p.box_lo = {-0.9};
    p.box_hi = {2.0};
    p.nonnegative_cost = true;
    return p;
}

// -- ex23: xdot = u, u in [-1,1], cost x^2 - u^2, horizon [0,1] --------------

double ex23_value(double x, double tau) {
    const double T = 1.0;
    double y = std::abs(x);  // even in x
    if (y + tau >= T) {
        double a = y + tau - T;
        return (y * y * y - a * a * a) / 3.0 + tau - T;
    }
    return y * y * y / 3.0 + tau - T;
}

RefControl ex23_control(double x0, double tau) {
    const double T = 1.0;
    RefControl r;
    if (std::abs(x0) + tau < T) {
        r.kind = RefControl::Kind::NoneExists;
        return r;
    }
    r.kind = RefControl::Kind::Control;
    r.control = ControlSignal::constant(tau, T, {x0 >= 0.0 ? -1.0 : 1.0});
    return r;
}

ProblemSpec make_ex23() {
    ProblemSpec p;
    p.name = "ex23";
    p.state_dim = 1;
    p.control_domain = BoxDomain{{-1.0}, {1.0}};
    p.t0 = 0.0;
    p.T = 1.0;
    p.dynamics = [](const Vec&, const Vec& u, double) { return Vec{u[0]}; };
    p.running_cost = [](const Vec& x, const Vec& u, double) {
        return x[0] * x[0] - u[0] * u[0];
    };
    p.dynamics_jac_x = [](const Vec&, const Vec&, double) { return Mat{{0.0}}; };
    p.cost_grad_x = [](const Vec& x, const Vec&, double) { return Vec{2.0 * x[0]}; };
    p.reference_value = [](const Vec& x, double tau) { return ex23_value(x[0], tau); };
    p.reference_control = [](const Vec& x0, double tau) { return ex23_control(x0[0], tau); };
    p.box_lo = {-2.0};
    p.box_hi = {2.0};
    return p;
}

// -- ex31: xdot = u, u in [-1,1], cost identically C ------------------------

constexpr double kEx31C = 1.0;

ProblemSpec make_ex31() {
    ProblemSpec p;
    p.name = "ex31";
    p.state_dim = 1;
    p.control_domain = BoxDomain{{-1.0}, {1.0}};
    p.t0 = 0.0;
    p.T = 1.0;
    p.dynamics = [](const Vec&, const Vec& u, double) { return Vec{u[0]}; };
    p.running_cost = [](const Vec&, const Vec&, double) { return kEx31C; };
    p.dynamics_jac_x = [](const Vec&, const Vec&, double) { return Mat{{0.0}}; };
    p.cost_grad_x = [](const Vec&, const Vec&, double) { return Vec{0.0}; };
    p.reference_value = [](const Vec&, double tau) { return kEx31C * (1.0 - tau); };
    p.reference_control = [](const Vec&, double tau) {
        RefControl r;
        r.kind = RefControl::Kind::NonUnique;
        r.family = WitnessFamily{
            "every admissible control is optimal; k in [0,1] maps to the constant control "
            "u = -1 + 2k",
            [tau](double k) {
                double u = std::clamp(-1.0 + 2.0 * k, -1.0, 1.0);
                return ControlSignal::constant(tau, 1.0, {u});
            }};
        return r;
    };
    p.box_lo = {-1.0};
    p.box_hi = {1.0};
    p.nonnegative_cost = true;
    return p;
}

// -- ex32: xdot = u1 + u2, u in R^2, cost u^T S u with singular S ------------

ProblemSpec make_ex32() {
    ProblemSpec p;
    p.name = "ex32";
    p.state_dim = 1;
    p.control_domain = EuclideanDomain{2};
    p.t0 = 0.0;
    p.T = 1.0;
    p.dynamics = [](const Vec&, const Vec& u, double) { return Vec{u[0] + u[1]}; };
    p.running_cost = [](const Vec&, const Vec& u, double) { return u[0] * u[0]; };
    p.dynamics_jac_x = [](const Vec&, const Vec&, double) { return Mat{{0.0}}; };
    p.cost_grad_x = [](const Vec&, const Vec&, double) { return Vec{0.0}; };
    p.reference_value = [](const Vec&, double) { return 0.0; };
    p.reference_control = [](const Vec&, double tau) {
        RefControl r;
        r.kind = RefControl::Kind::NonUnique;
        r.family = WitnessFamily{
            "u = k*u0 along the cost-free kernel direction u0 = (0,1)",
            [tau](double k) { return ControlSignal::constant(tau, 1.0, {0.0, k}); }};
        return r;
    };
    p.quad_structure = QuadraticControlCost{
        Mat{{1.0, 0.0}, {0.0, 0.0}},  // S
        Vec{0.0, 1.0},                // u0
        Mat{{1.0, 1.0}},              // B
    };
    p.box_lo = {-1.0};
    p.box_hi = {1.0};
    p.nonnegative_cost = true;
    return p;
}

const std::map<std::string, ProblemSpec>& registry() {
    static const std::map<std::string, ProblemSpec> reg = [] {
        std::map<std::string, ProblemSpec> m;
        for (auto& spec : {make_ex22(), make_ex23(), make_ex31(), make_ex32()}) {
            spec.validate();
            m.emplace(spec.name, spec);
        }
        return m;
    }();
    return reg;
}

}  // namespace

const ProblemSpec& get_problem(const std::string& id) {
    auto it = registry().find(id);
    if (it == registry().end()) throw NotFoundError("unknown problem id: " + id);
    return it->second;
}

std::vector<std::string> list_problems() {
    std::vector<std::string> ids;
    for (const auto& [id, _] : registry()) ids.push_back(id);
    return ids;
}

double reference_value(const std::string& id, const Vec& x, double tau) {
    const ProblemSpec& p = get_problem(id);
    if (tau < p.t0 - 1e-12 || tau > p.T + 1e-12)
        throw DomainError("reference_value: tau outside the horizon");
    return p.reference_value(x, tau);
}

RefControl reference_optimal_control(const std::string& id, const Vec& x0, double tau) {
    const ProblemSpec& p = get_problem(id);
    if (tau < p.t0 - 1e-12 || tau >= p.T)
        throw DomainError("reference_optimal_control: tau outside [t0, T)");
    return p.reference_control(x0, tau);
}

}  // namespace ocplab
