#include "ocplab/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace ocplab {

bool solve_square(Mat M, Vec rhs, Vec& out) {
    const int d = static_cast<int>(rhs.size());
    for (int c = 0; c < d; ++c) {
        int piv = c;
        double best = std::abs(M[c][c]);
        for (int r = c + 1; r < d; ++r)
            if (std::abs(M[r][c]) > best) {
                best = std::abs(M[r][c]);
                piv = r;
            }
        if (best < 1e-12) return false;
        std::swap(M[c], M[piv]);
        std::swap(rhs[c], rhs[piv]);
        for (int r = 0; r < d; ++r) {
            if (r == c) continue;
            double f = M[r][c] / M[c][c];
            for (int k = c; k < d; ++k) M[r][k] -= f * M[c][k];
            rhs[r] -= f * rhs[c];
        }
    }
    out.resize(d);
    for (int c = 0; c < d; ++c) out[c] = rhs[c] / M[c][c];
    return true;
}

std::vector<Vec> feasible_vertices(const Halfspaces& hs, double margin) {
    if (hs.A.empty()) return {};
    const int d = static_cast<int>(hs.A[0].size());
    const int m = static_cast<int>(hs.A.size());
    if (m < d) return {};

    std::vector<Vec> verts;
    std::vector<int> idx(d);
    std::function<void(int, int)> rec = [&](int start, int k) {
        if (k == d) {
            Mat M(d);
            Vec rhs(d);
            for (int i = 0; i < d; ++i) {
                M[i] = hs.A[idx[i]];
                rhs[i] = hs.b[idx[i]];
            }
            Vec z;
            if (!solve_square(std::move(M), std::move(rhs), z)) return;
            if (!all_finite(z)) return;
            double scale = 1.0;
            for (double v : z) scale = std::max(scale, std::abs(v));
            for (int i = 0; i < m; ++i) {
                double slack = dot(hs.A[i], z) - hs.b[i];
                if (slack < -margin * std::max(scale, std::abs(hs.b[i]))) return;
            }
            verts.push_back(std::move(z));
            return;
        }
        for (int i = start; i <= m - (d - k); ++i) {
            idx[k] = i;
            rec(i + 1, k + 1);
        }
    };
    rec(0, 0);

    std::sort(verts.begin(), verts.end());
    std::vector<Vec> out;
    for (const Vec& v : verts) {
        bool dup = false;
        for (const Vec& w : out)
            if (dist(v, w) <= 1e-7 * std::max(1.0, norm_inf(v))) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(v);
    }
    return out;
}

std::vector<Vec> convex_hull_2d(std::vector<Vec> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;
    auto cross = [](const Vec& o, const Vec& a, const Vec& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<Vec> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
        hull[k++] = pts[i - 1];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace ocplab
