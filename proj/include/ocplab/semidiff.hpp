#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ocplab/vec.hpp"

namespace ocplab {

/// Continuous scalar field on a box times [t0, T].
struct ScalarField {
    std::function<double(const Vec& x, double tau)> eval;
    Vec box_lo, box_hi;
    double t0 = 0.0, T = 1.0;

    int dim() const { return static_cast<int>(box_lo.size()); }
};

enum class SemidiffKind { SuperX, SubX, SuperT, SuperXT, SuperXTRight, SuperXTLeft };
enum class SetVerdict { Empty, NonEmpty };
enum class TimeSide { Interior, Right, Left };

/// Numerical approximation of a super/subdifferential set: a polytope of
/// feasible slopes at the finest sampling radius plus slack tolerance.
struct SemidiffEstimate {
    SemidiffKind kind = SemidiffKind::SuperX;
    SetVerdict verdict = SetVerdict::Empty;
    std::vector<Vec> hull_vertices;       // dimension n, 1, or n+1 depending on kind
    std::vector<double> radius_schedule;  // decreasing radii used
    double tolerance = 0;                 // effective slack (Lipschitz-scaled)
    // one-sided time sets are half-lines in q; the finite end sits in hull_vertices
    bool unbounded_above = false;
    bool unbounded_below = false;

    bool empty() const { return verdict == SetVerdict::Empty; }
    /// min/max of component c over hull vertices
    double lo(int c = 0) const;
    double hi(int c = 0) const;
    bool contains_value(double q, double slack = 0.0) const;  // for 1-d sets
};

/// Semiconcavity scan result: per-gap-level worst normalized defects plus a
/// refinement sweep at the worst witness.
struct ModulusEstimate {
    struct Sample {
        double R;                // ball radius bound for the level
        double D;                // pair gap
        double worst_violation;  // max normalized defect at this gap
    };
    std::vector<Sample> samples;          // coarse scan levels
    std::vector<Sample> refined;          // witness-directed shrinking gaps
    bool is_semiconcave = true;
    double tolerance = 0;
    Vec witness_xi, witness_eta;          // worst pair found (in (x, tau))
    double witness_lambda = 0;
    double witness_defect = 0;
};

struct SemidiffOptions {
    std::vector<double> radii = {1e-3, 3e-4, 1e-4, 3e-5, 1e-5};
    int directions = 0;          // 0 = default (max(2n, 8n) per kind)
    double tolerance = 1e-3;     // base slack, scaled by the local Lipschitz estimate
    double lp_margin = 1e-9;
};

SemidiffEstimate estimate_superdifferential_x(const ScalarField& f, const Vec& x, double tau,
                                              const SemidiffOptions& opt = {});
SemidiffEstimate estimate_subdifferential_x(const ScalarField& f, const Vec& x, double tau,
                                            const SemidiffOptions& opt = {});
SemidiffEstimate estimate_superdifferential_t(const ScalarField& f, const Vec& x, double tau,
                                              TimeSide side, const SemidiffOptions& opt = {});
SemidiffEstimate estimate_superdifferential_xt(const ScalarField& f, const Vec& x, double tau,
                                               TimeSide side, const SemidiffOptions& opt = {});
SemidiffEstimate estimate_subdifferential_xt(const ScalarField& f, const Vec& x, double tau,
                                             TimeSide side, const SemidiffOptions& opt = {});

/// Finite-difference gradients at sampled points near (x, tau), clustered and
/// hulled; approximates the superdifferential of a semiconcave field.
std::vector<Vec> reachable_gradient_hull(const ScalarField& f, const Vec& x, double tau,
                                         int samples, double radius, std::uint64_t seed = 7);

/// Midpoint-combination semiconcavity test over a box region in (x, tau).
ModulusEstimate test_semiconcavity(const ScalarField& f, const Vec& region_lo,
                                   const Vec& region_hi, double t_lo, double t_hi,
                                   int pair_samples, const std::vector<double>& lambdas,
                                   double tolerance = 1e-2, std::uint64_t seed = 99);

/// Deterministic unit direction set in R^n (n = 1..3).
std::vector<Vec> unit_directions(int n, int count);

}  // namespace ocplab
