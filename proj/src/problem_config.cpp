#include "ocplab/problem_config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "ocplab/errors.hpp"

namespace ocplab {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::set<std::string>& required,
                  const std::set<std::string>& optional, const std::string& where) {
    if (!obj.is_object()) throw UsageError("config: " + where + " must be an object");
    for (const auto& k : required)
        if (!obj.contains(k)) throw UsageError("config: " + where + " missing key '" + k + "'");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!required.count(it.key()) && !optional.count(it.key()))
            throw UsageError("config: " + where + " has unknown key '" + it.key() + "'");
}

Vec parse_vec(const json& j, std::size_t n, const std::string& where) {
    if (!j.is_array() || j.size() != n)
        throw UsageError("config: " + where + " must be an array of length " + std::to_string(n));
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = j[i].get<double>();
    return v;
}

Mat parse_mat(const json& j, std::size_t rows, std::size_t cols, const std::string& where) {
    if (!j.is_array() || j.size() != rows)
        throw UsageError("config: " + where + " must have " + std::to_string(rows) + " rows");
    Mat m(rows);
    for (std::size_t i = 0; i < rows; ++i) m[i] = parse_vec(j[i], cols, where + " row");
    return m;
}

}  // namespace

ProblemSpec problem_from_config(const json& cfg) {
    require_keys(cfg, {"name", "state_dim", "horizon", "control_domain", "dynamics", "cost"},
                 {"box"}, "problem");
    ProblemSpec p;
    p.name = cfg.at("name").get<std::string>();
    p.state_dim = cfg.at("state_dim").get<int>();
    if (p.state_dim < 1 || p.state_dim > 3)
        throw UsageError("config: state_dim must be 1..3");
    const std::size_t n = p.state_dim;

    require_keys(cfg.at("horizon"), {"t0", "T"}, {}, "horizon");
    p.t0 = cfg.at("horizon").at("t0").get<double>();
    p.T = cfg.at("horizon").at("T").get<double>();

    const json& cd = cfg.at("control_domain");
    std::string kind = cd.value("kind", "");
    std::size_t m = 0;
    if (kind == "box") {
        require_keys(cd, {"kind", "lower", "upper"}, {}, "control_domain");
        std::size_t mm = cd.at("lower").size();
        p.control_domain = BoxDomain{parse_vec(cd.at("lower"), mm, "lower"),
                                     parse_vec(cd.at("upper"), mm, "upper")};
        m = mm;
    } else if (kind == "finite") {
        require_keys(cd, {"kind", "points"}, {}, "control_domain");
        FiniteSetDomain f;
        for (const auto& pt : cd.at("points")) f.points.push_back(parse_vec(pt, pt.size(), "point"));
        if (f.points.empty()) throw UsageError("config: finite control set is empty");
        m = f.points.front().size();
        p.control_domain = std::move(f);
    } else if (kind == "euclidean") {
        require_keys(cd, {"kind", "dim"}, {}, "control_domain");
        int dim = cd.at("dim").get<int>();
        p.control_domain = EuclideanDomain{dim};
        m = dim;
    } else {
        throw UsageError("config: control_domain.kind must be box|finite|euclidean");
    }
    validate_domain(p.control_domain);

    const json& dyn = cfg.at("dynamics");
    if (dyn.value("form", "") != "affine")
        throw UsageError("config: dynamics.form must be 'affine'");
    require_keys(dyn, {"form", "A", "B"}, {"c"}, "dynamics");
    Mat A = parse_mat(dyn.at("A"), n, n, "A");
    Mat B = parse_mat(dyn.at("B"), n, m, "B");
    Vec c = dyn.contains("c") ? parse_vec(dyn.at("c"), n, "c") : Vec(n, 0.0);
    p.dynamics = [A, B, c](const Vec& x, const Vec& u, double) {
        Vec r = matvec(A, x);
        Vec bu = matvec(B, u);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += bu[i] + c[i];
        return r;
    };
    p.dynamics_jac_x = [A](const Vec&, const Vec&, double) { return A; };

    const json& cost = cfg.at("cost");
    if (cost.value("form", "") != "polynomial")
        throw UsageError("config: cost.form must be 'polynomial'");
    require_keys(cost, {"form"}, {"Q", "R", "q", "r", "constant", "abs_x"}, "cost");
    Mat Q = cost.contains("Q") ? parse_mat(cost.at("Q"), n, n, "Q") : Mat(n, Vec(n, 0.0));
    Mat R = cost.contains("R") ? parse_mat(cost.at("R"), m, m, "R") : Mat(m, Vec(m, 0.0));
    Vec q = cost.contains("q") ? parse_vec(cost.at("q"), n, "q") : Vec(n, 0.0);
    Vec r = cost.contains("r") ? parse_vec(cost.at("r"), m, "r") : Vec(m, 0.0);
    double c0 = cost.value("constant", 0.0);
    Vec w = cost.contains("abs_x") ? parse_vec(cost.at("abs_x"), n, "abs_x") : Vec(n, 0.0);

    p.running_cost = [Q, R, q, r, c0, w](const Vec& x, const Vec& u, double) {
        double v = c0 + dot(q, x) + dot(r, u) + dot(x, matvec(Q, x)) + dot(u, matvec(R, u));
        for (std::size_t i = 0; i < x.size(); ++i) v += w[i] * std::abs(x[i]);
        return v;
    };
    // |x_i| contributes slope 0 inside a small dead zone around the kink
    p.cost_grad_x = [Q, q, w](const Vec& x, const Vec&, double) {
        Vec g = matvec(Q, x);
        Vec gt = matTvec(Q, x);
        for (std::size_t i = 0; i < g.size(); ++i) {
            g[i] += gt[i] + q[i];
            if (x[i] > 1e-10)
                g[i] += w[i];
            else if (x[i] < -1e-10)
                g[i] -= w[i];
        }
        return g;
    };

    if (cfg.contains("box")) {
        require_keys(cfg.at("box"), {"lower", "upper"}, {}, "box");
        p.box_lo = parse_vec(cfg.at("box").at("lower"), n, "box lower");
        p.box_hi = parse_vec(cfg.at("box").at("upper"), n, "box upper");
    } else {
        p.box_lo = Vec(n, -1.0);
        p.box_hi = Vec(n, 1.0);
    }

    p.validate();
    validate_jacobians(p);
    return p;
}

ProblemSpec problem_from_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("config: cannot open file " + path);
    json cfg;
    try {
        in >> cfg;
    } catch (const std::exception& e) {
        throw UsageError("config: parse error in " + path + ": " + e.what());
    }
    return problem_from_config(cfg);
}

}  // namespace ocplab
