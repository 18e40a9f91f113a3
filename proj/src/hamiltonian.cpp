#include "ocplab/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ocplab/errors.hpp"
#include "ocplab/rng.hpp"

namespace ocplab {

namespace {

constexpr double kClusterDist = 1e-3;   // distinct-maximizer separation in control space
constexpr double kGapRel = 1e-6;        // argmax gap: 1e-6 * (1 + |H|)

double eval_ch(const ProblemSpec& spec, const Vec& x, const Vec& p, const Vec& u, double t) {
    return dot(p, spec.dynamics(x, u, t)) - spec.running_cost(x, u, t);
}

/// Maximize over the analytic quadratic structure: H = <c,u> - u'Su over R^m,
/// c = B'p. Finite iff c has no component along ker S.
HamiltonianResult analytic_argmax(const ProblemSpec& spec, const Vec& x, const Vec& p, double t) {
    const auto& qs = *spec.quad_structure;
    const int m = static_cast<int>(qs.u0.size());
    Vec c = matTvec(qs.B, p);

    Vec u0 = qs.u0;
    double n0 = norm(u0);
    for (double& v : u0) v /= n0;

    HamiltonianResult out;
    out.argmax.gap_tolerance = kGapRel;

    double kker = dot(c, u0);
    if (std::abs(kker) > 1e-12) {
        out.value = std::numeric_limits<double>::infinity();
        out.argmax.attained = false;
        out.argmax.ray = scale(kker > 0 ? 1.0 : -1.0, u0);
        return out;
    }

    // maximize on the complement of span(u0); m <= 2 supported
    if (m > 2) throw UsageError("analytic argmax supports control dimension <= 2");
    Vec ustar(m, 0.0);
    double val = 0.0;
    if (m == 2) {
        Vec w = {-u0[1], u0[0]};
        double a = dot(c, w);
        double s = dot(w, matvec(qs.S, w));
        if (s > 1e-12) {
            double k = a / (2.0 * s);
            ustar = scale(k, w);
            val = a * k - s * k * k;
        } else if (std::abs(a) > 1e-12) {
            out.value = std::numeric_limits<double>::infinity();
            out.argmax.attained = false;
            out.argmax.ray = scale(a > 0 ? 1.0 : -1.0, w);
            return out;
        }
    }
    double base = dot(p, spec.dynamics(x, Vec(m, 0.0), t));  // affine offset (zero for f = Bu)
    out.value = base + val;
    out.argmax.attained = true;
    out.argmax.covers_domain = false;
    // the maximizer set is the line ustar + R*u0; expose three representatives
    for (double k : {0.0, -1.0, 1.0})
        out.argmax.candidates.emplace_back(axpy(k, u0, ustar), out.value);
    return out;
}

std::vector<Vec> refine_around(const BoxDomain& box, const Vec& u, double h_frac, int pts) {
    const int m = static_cast<int>(u.size());
    std::vector<Vec> mesh;
    std::vector<int> idx(m, 0);
    for (;;) {
        Vec v(m);
        for (int i = 0; i < m; ++i) {
            double h = h_frac * (box.upper[i] - box.lower[i]);
            double f01 = (pts == 1) ? 0.5 : double(idx[i]) / double(pts - 1);
            v[i] = std::clamp(u[i] - h + 2 * h * f01, box.lower[i], box.upper[i]);
        }
        mesh.push_back(std::move(v));
        int c = 0;
        while (c < m && ++idx[c] == pts) idx[c++] = 0;
        if (c == m) break;
    }
    return mesh;
}

}  // namespace

double control_hamiltonian(const ProblemSpec& spec, const Vec& x, const Vec& p, const Vec& u,
                           double t) {
    if (!domain_contains(spec.control_domain, u, 1e-9))
        throw DomainError(spec.name + ": control outside the domain");
    return eval_ch(spec, x, p, u, t);
}

HamiltonianResult hamiltonian(const ProblemSpec& spec, const Vec& x, const Vec& p, double t,
                              int control_mesh) {
    if (std::holds_alternative<EuclideanDomain>(spec.control_domain)) {
        if (!spec.quad_structure)
            throw UsageError(spec.name + ": unbounded control domain without analytic argmax");
        return analytic_argmax(spec, x, p, t);
    }

    std::vector<Vec> mesh = control_mesh_points(spec.control_domain, control_mesh);
    std::vector<double> vals(mesh.size());
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        vals[i] = eval_ch(spec, x, p, mesh[i], t);
        best = std::max(best, vals[i]);
    }

    double gap = kGapRel * (1.0 + std::abs(best));
    std::vector<Vec> coarse;
    std::size_t within = 0;
    for (std::size_t i = 0; i < mesh.size(); ++i)
        if (vals[i] >= best - gap) {
            ++within;
            coarse.push_back(mesh[i]);
        }
    bool covers = (within == mesh.size());

    // one local refinement pass at 10x resolution around each coarse maximizer
    if (const auto* box = std::get_if<BoxDomain>(&spec.control_domain); box && !covers) {
        double coarse_h = 1.0 / std::max(1, control_mesh - 1);
        std::vector<Vec> cand = coarse;
        for (const Vec& u : coarse)
            for (Vec& v : refine_around(*box, u, coarse_h, 21)) cand.push_back(std::move(v));
        coarse.clear();
        for (const Vec& u : cand) {
            double v = eval_ch(spec, x, p, u, t);
            if (v > best) best = v;
        }
        gap = kGapRel * (1.0 + std::abs(best));
        for (const Vec& u : cand)
            if (eval_ch(spec, x, p, u, t) >= best - gap) coarse.push_back(u);
    }

    // cluster maximizers in control space
    HamiltonianResult out;
    out.value = best;
    out.argmax.gap_tolerance = gap;
    out.argmax.covers_domain = covers;
    std::vector<std::pair<Vec, double>> clusters;
    for (const Vec& u : coarse) {
        double v = eval_ch(spec, x, p, u, t);
        bool merged = false;
        for (auto& [cu, cv] : clusters)
            if (dist(cu, u) <= kClusterDist) {
                if (v > cv) {
                    cu = u;
                    cv = v;
                }
                merged = true;
                break;
            }
        if (!merged) clusters.emplace_back(u, v);
    }
    std::sort(clusters.begin(), clusters.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.argmax.candidates = std::move(clusters);
    return out;
}

namespace {

Vec derived_vector(const ProblemSpec& spec, const Vec& x, const Vec& p, const Vec& u, double t,
                   Wrt wrt) {
    if (wrt == Wrt::P) return spec.dynamics(x, u, t);
    Mat jac = spec.dynamics_jac_x(x, u, t);
    Vec g = spec.cost_grad_x(x, u, t);
    Vec jp = matTvec(jac, p);
    return sub(jp, g);
}

}  // namespace

DifferentiabilityDiagnosis diagnose_differentiability(const ProblemSpec& spec, const Vec& x,
                                                      const Vec& p, double t, Wrt wrt,
                                                      int control_mesh) {
    if (wrt == Wrt::X && !spec.has_jacobians())
        throw UsageError(spec.name + ": wrt=X requires dynamics_jac_x and cost_grad_x");
    HamiltonianResult h = hamiltonian(spec, x, p, t, control_mesh);
    if (!h.argmax.attained)
        throw UsageError(spec.name + ": supremum not attained, no derived vectors");

    DifferentiabilityDiagnosis d;
    d.wrt = wrt;
    std::vector<Vec> vecs;
    for (const auto& [u, _] : h.argmax.candidates)
        vecs.push_back(derived_vector(spec, x, p, u, t, wrt));

    double spread = 0;
    std::size_t ia = 0, ib = 0;
    for (std::size_t i = 0; i < vecs.size(); ++i)
        for (std::size_t j = i + 1; j < vecs.size(); ++j) {
            double dd = dist(vecs[i], vecs[j]);
            if (dd > spread) {
                spread = dd;
                ia = i;
                ib = j;
            }
        }
    d.spread = spread;
    d.differentiable = spread <= kClusterDist;
    if (d.differentiable) {
        d.witness_vector = vecs.front();
    } else {
        d.witness_controls = {h.argmax.candidates[ia].first, h.argmax.candidates[ib].first};
        d.witness_vectors = {vecs[ia], vecs[ib]};
    }
    return d;
}

ConvexityReport check_convexity_in_p(const ProblemSpec& spec, const Vec& x, double t,
                                     const std::vector<Vec>& p_samples,
                                     const std::vector<double>& lambdas, int control_mesh) {
    if (p_samples.size() < 2) throw UsageError("check_convexity_in_p: need >= 2 p samples");
    ConvexityReport rep;
    rep.worst_defect = -std::numeric_limits<double>::infinity();
    const double tol = 1e-9;
    for (std::size_t i = 0; i < p_samples.size(); ++i)
        for (std::size_t j = i + 1; j < p_samples.size(); ++j) {
            double hi = hamiltonian(spec, x, p_samples[i], t, control_mesh).value;
            double hj = hamiltonian(spec, x, p_samples[j], t, control_mesh).value;
            for (double lam : lambdas) {
                Vec pm = axpy(lam, p_samples[i], scale(1.0 - lam, p_samples[j]));
                double hm = hamiltonian(spec, x, pm, t, control_mesh).value;
                double rhs = lam * hi + (1.0 - lam) * hj;
                if (std::isinf(rhs)) continue;  // unbounded side never binds
                double defect = hm - rhs;
                if (defect > rep.worst_defect) {
                    rep.worst_defect = defect;
                    rep.worst_a = p_samples[i];
                    rep.worst_b = p_samples[j];
                    rep.worst_lambda = lam;
                }
            }
        }
    if (std::isinf(rep.worst_defect)) rep.worst_defect = 0.0;  // nothing bound
    rep.holds = rep.worst_defect <= tol;
    return rep;
}

ConvexityReport check_concavity_in_xu(const ProblemSpec& spec, const Vec& p, double t,
                                      const Vec& region_lo, const Vec& region_hi, int samples,
                                      const std::vector<double>& lambdas, std::uint64_t seed) {
    const auto* box = std::get_if<BoxDomain>(&spec.control_domain);
    if (!box)
        throw UsageError("check_concavity_in_xu: requires a convex (Box) control domain");
    const int n = spec.state_dim, m = spec.control_dim();

    ConvexityReport rep;
    rep.worst_defect = -std::numeric_limits<double>::infinity();
    auto draw = [&](Rng& rng) {
        Vec z(n + m);
        for (int i = 0; i < n; ++i) z[i] = rng.uniform(region_lo[i], region_hi[i]);
        for (int i = 0; i < m; ++i) z[n + i] = rng.uniform(box->lower[i], box->upper[i]);
        return z;
    };
    auto eval = [&](const Vec& z) {
        Vec x(z.begin(), z.begin() + n), u(z.begin() + n, z.end());
        return eval_ch(spec, x, p, u, t);
    };
    for (int s = 0; s < samples; ++s) {
        Rng rng(seed, s);
        Vec a = draw(rng), b = draw(rng);
        double fa = eval(a), fb = eval(b);
        for (double lam : lambdas) {
            Vec mid = axpy(lam, a, scale(1.0 - lam, b));
            // concavity defect: lam f(a) + (1-lam) f(b) - f(mid) <= 0 required... sign flipped:
            double defect = lam * fa + (1.0 - lam) * fb - eval(mid);
            if (defect > rep.worst_defect) {
                rep.worst_defect = defect;
                rep.worst_a = a;
                rep.worst_b = b;
                rep.worst_lambda = lam;
            }
        }
    }
    rep.holds = rep.worst_defect <= 1e-9;
    return rep;
}

double directional_derivative_of_max(const ProblemSpec& spec, const Vec& x, const Vec& p, double t,
                                     Wrt wrt, const Vec& v, int control_mesh) {
    if (wrt == Wrt::X && !spec.has_jacobians())
        throw UsageError(spec.name + ": wrt=X requires dynamics_jac_x and cost_grad_x");
    HamiltonianResult h = hamiltonian(spec, x, p, t, control_mesh);
    if (!h.argmax.attained)
        throw UsageError(spec.name + ": supremum not attained");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& [u, _] : h.argmax.candidates)
        best = std::max(best, dot(derived_vector(spec, x, p, u, t, wrt), v));
    return best;
}

}  // namespace ocplab
