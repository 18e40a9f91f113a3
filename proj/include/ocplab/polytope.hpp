#pragma once

#include <vector>

#include "ocplab/vec.hpp"

namespace ocplab {

/// Linear feasibility system { z : A[i] . z >= b[i] }.
struct Halfspaces {
    std::vector<Vec> A;
    std::vector<double> b;

    void add(Vec normal, double offset) {
        A.push_back(std::move(normal));
        b.push_back(offset);
    }
};

/// Enumerate the vertices of the feasible region by intersecting d-subsets of
/// constraints and keeping feasible intersection points (margin-relaxed).
/// Intended for d <= 4 and a few dozen constraints. An empty result means the
/// region has no vertex; with normals that positively span R^d (or leave only
/// a pointed recession cone) that is equivalent to infeasibility.
std::vector<Vec> feasible_vertices(const Halfspaces& hs, double margin = 1e-9);

/// Solve M z = rhs by Gaussian elimination with partial pivoting; false when
/// the system is (near-)singular.
bool solve_square(Mat M, Vec rhs, Vec& out);

/// 2-d convex hull (monotone chain), points returned in ccw order.
std::vector<Vec> convex_hull_2d(std::vector<Vec> pts);

}  // namespace ocplab
