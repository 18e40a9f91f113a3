#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace ocplab {

/// Dense real vector; state/costate/control dimensions here are tiny (n <= 3).
using Vec = std::vector<double>;
using Mat = std::vector<Vec>;  // row-major, Mat[i][j]

inline double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(const Vec& a) {
    double m = 0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scale(double c, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

/// r = a*x + y
inline Vec axpy(double a, const Vec& x, const Vec& y) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = a * x[i] + y[i];
    return r;
}

inline double dist(const Vec& a, const Vec& b) { return norm(sub(a, b)); }

inline Vec matvec(const Mat& m, const Vec& v) {
    Vec r(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
    return r;
}

/// m^T v for a row-major matrix (rows x cols): result has cols entries.
inline Vec matTvec(const Mat& m, const Vec& v) {
    if (m.empty()) return {};
    Vec r(m[0].size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < r.size(); ++j) r[j] += m[i][j] * v[i];
    return r;
}

inline bool all_finite(const Vec& a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace ocplab
