#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ocplab/problem.hpp"

namespace ocplab {

/// Maximizer set of the control Hamiltonian at one (x, p, t).
struct ArgmaxSet {
    std::vector<std::pair<Vec, double>> candidates;  // (u, value) per cluster
    double gap_tolerance = 0;
    bool attained = true;        // false only on unbounded domains (sup along a ray)
    bool covers_domain = false;  // the Hamiltonian is constant in u over the whole mesh
    std::optional<Vec> ray;      // divergence direction when not attained

    const Vec& best_control() const { return candidates.front().first; }
};

struct HamiltonianResult {
    double value = 0;
    ArgmaxSet argmax;
};

enum class Wrt { P, X };

struct DifferentiabilityDiagnosis {
    Wrt wrt = Wrt::P;
    bool differentiable = true;
    Vec witness_vector;                       // collapsed derived vector when differentiable
    std::vector<Vec> witness_controls;        // >= 2 argmax controls otherwise
    std::vector<Vec> witness_vectors;         // their derived vectors
    double spread = 0;                        // max pairwise distance of derived vectors
};

struct ConvexityReport {
    bool holds = true;
    double worst_defect = -1e300;  // signed; <= tolerance when holds
    Vec worst_a, worst_b;          // witness pair
    double worst_lambda = 0;
};

/// Pointwise control Hamiltonian <p, f(x,u,t)> - F(x,u,t).
double control_hamiltonian(const ProblemSpec& spec, const Vec& x, const Vec& p, const Vec& u,
                           double t);

/// Maximized Hamiltonian over the control domain. Box/FiniteSet domains use a
/// mesh with one 10x refinement pass around each coarse maximizer; unbounded
/// domains require the quadratic-cost structure and are solved analytically.
HamiltonianResult hamiltonian(const ProblemSpec& spec, const Vec& x, const Vec& p, double t,
                              int control_mesh = 201);

/// Differentiability of H at (x, p, t) via the derived vectors over the argmax
/// set: f(x,u,t) for wrt=P, (df/dx)^T p - dF/dx for wrt=X.
DifferentiabilityDiagnosis diagnose_differentiability(const ProblemSpec& spec, const Vec& x,
                                                      const Vec& p, double t, Wrt wrt,
                                                      int control_mesh = 201);

/// Midpoint-combination convexity test of p -> H(x, p, t).
ConvexityReport check_convexity_in_p(const ProblemSpec& spec, const Vec& x, double t,
                                     const std::vector<Vec>& p_samples,
                                     const std::vector<double>& lambdas, int control_mesh = 201);

/// Midpoint-combination concavity test of (x, u) -> control Hamiltonian, at
/// fixed p. Requires a Box (convex) control domain.
ConvexityReport check_concavity_in_xu(const ProblemSpec& spec, const Vec& p, double t,
                                      const Vec& region_lo, const Vec& region_hi, int samples,
                                      const std::vector<double>& lambdas,
                                      std::uint64_t seed = 2024);

/// Directional derivative of the maximized Hamiltonian: max over argmax
/// controls of <derived vector, v>.
double directional_derivative_of_max(const ProblemSpec& spec, const Vec& x, const Vec& p, double t,
                                     Wrt wrt, const Vec& v, int control_mesh = 201);

}  // namespace ocplab
