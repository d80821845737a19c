#include "icr/polytope.hpp"

#include <algorithm>

#include "icr/lp.hpp"

namespace icr {

namespace {

std::pair<lp::Matrix, std::vector<Rational>> as_matrix(const HPoly& p) {
    lp::Matrix g;
    std::vector<Rational> h;
    for (const auto& r : p.rows) {
        g.push_back(r.coef);
        h.push_back(r.rhs);
    }
    return {g, h};
}

Rational cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1);
}

// Andrew's monotone chain; drops collinear points.
VertexList2 hull_ccw(VertexList2 pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    VertexList2 h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && sgn(cross(h[k - 2], h[k - 1], p)) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && sgn(cross(h[k - 2], h[k - 1], pts[i])) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

void check_dims(const HPoly& a, const HPoly& b) {
    if (a.dims != b.dims) throw std::invalid_argument("polytope dimension mismatch");
}

}  // namespace

bool HPoly::satisfies(const std::vector<Rational>& x, const Rational& slack) const {
    if (x.size() != dims.size()) throw std::invalid_argument("HPoly::satisfies: dimension mismatch");
    for (const auto& v : x)
        if (v < -slack) return false;
    for (const auto& r : rows) {
        Rational s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += r.coef[i] * x[i];
        if (s > r.rhs + slack) return false;
    }
    return true;
}

Binding snap_terms(const TermVector& terms) {
    Binding b;
    for (std::size_t i = 0; i < kNumTerms; ++i) b[term_at(i)] = snap(std::max(0.0, terms.value[i]));
    return b;
}

HPoly bind(const LinearSystem& system, const Binding& binding) {
    HPoly p;
    for (auto v : system.variables()) {
        if (!system.nonneg.count(v))
            throw std::invalid_argument("bind: variable " + std::string(to_string(v)) + " is not nonnegative");
        p.dims.push_back(v);
    }
    for (const auto& r : system.rows) {
        HRow row;
        row.coef.assign(p.dims.size(), 0);
        for (std::size_t i = 0; i < p.dims.size(); ++i) row.coef[i] = r.coeff(p.dims[i]);
        row.rhs = r.rhs.evaluate(binding);
        p.rows.push_back(std::move(row));
    }
    return p;
}

LinearSystem to_system(const HPoly& p) {
    LinearSystem s;
    s.nonneg.insert(p.dims.begin(), p.dims.end());
    for (const auto& r : p.rows) {
        Inequality q;
        for (std::size_t i = 0; i < p.dims.size(); ++i)
            if (sgn(r.coef[i]) != 0) q.lhs[p.dims[i]] = r.coef[i];
        q.rhs = Combo(r.rhs);
        s.add(std::move(q));
    }
    return s;
}

std::optional<Rational> maximize(const HPoly& p, const std::vector<Rational>& objective) {
    if (objective.size() != p.dimension()) throw std::invalid_argument("maximize: dimension mismatch");
    auto [g, h] = as_matrix(p);
    auto res = lp::maximize_leq(g, h, objective);
    if (res.status == lp::Status::Infeasible) return std::nullopt;
    if (res.status == lp::Status::Unbounded) throw UnboundedPolytope("polytope is unbounded");
    return res.objective;
}

bool is_empty(const HPoly& p) {
    auto [g, h] = as_matrix(p);
    return lp::maximize_leq(g, h, std::vector<Rational>(p.dimension(), 0)).status == lp::Status::Infeasible;
}

VertexList2 vertices2(const HPoly& p) {
    if (p.dimension() != 2) throw std::invalid_argument("vertices2: polytope is not two-dimensional");
    if (!maximize(p, {1, 0})) return {};
    maximize(p, {0, 1});

    std::vector<HRow> lines = p.rows;
    lines.push_back({{-1, 0}, 0});
    lines.push_back({{0, -1}, 0});
    VertexList2 pts;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            const auto& a = lines[i];
            const auto& b = lines[j];
            Rational det = a.coef[0] * b.coef[1] - a.coef[1] * b.coef[0];
            if (sgn(det) == 0) continue;
            Point2 x{(a.rhs * b.coef[1] - a.coef[1] * b.rhs) / det, (a.coef[0] * b.rhs - a.rhs * b.coef[0]) / det};
            if (p.satisfies({x.r1, x.r2})) pts.push_back(x);
        }
    return hull_ccw(std::move(pts));
}

bool contains(const HPoly& outer, const HPoly& inner, const Rational& eps) {
    check_dims(outer, inner);
    if (inner.dimension() == 2) {
        for (const auto& v : vertices2(inner))
            if (!outer.satisfies({v.r1, v.r2}, eps)) return false;
        return true;
    }
    if (is_empty(inner)) return true;
    for (const auto& r : outer.rows) {
        auto m = maximize(inner, r.coef);
        if (m && *m > r.rhs + eps) return false;
    }
    return true;
}

bool poly_equal(const HPoly& a, const HPoly& b, const Rational& eps) {
    return contains(a, b, eps) && contains(b, a, eps);
}

Rational area2(const HPoly& p) {
    auto v = vertices2(p);
    Rational twice = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % v.size()];
        twice += a.r1 * b.r2 - b.r1 * a.r2;
    }
    return abs(twice) / 2;
}

HPoly project_out(const HPoly& p, RateVar v) {
    if (std::find(p.dims.begin(), p.dims.end(), v) == p.dims.end())
        throw std::invalid_argument("project_out: variable not in polytope");
    auto s = fm_eliminate(to_system(p), v);
    return icr::bind(s, {});
}

Rational cross_region_eps() { return Rational(1) / Rational(mpz_class(1) << 30); }

}  // namespace icr
