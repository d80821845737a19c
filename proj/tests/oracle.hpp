#pragma once

// Test-only reference implementations, written independently of the library
// code paths they check: flat-index joint products, entropy-route mutual
// information, brute-force vertex enumeration and a Monte Carlo area.

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "icr/dist.hpp"
#include "icr/polytope.hpp"
#include "icr/terms.hpp"

namespace oracle {

using icr::VariableId;

inline std::size_t vid(VariableId v) { return static_cast<std::size_t>(v); }

// Decodes a flat index of the canonical nine-axis tensor.
inline std::array<std::size_t, 9> decode(std::size_t flat, const icr::AlphabetSpec& a) {
    std::array<std::size_t, 9> x{};
    for (std::size_t k = 9; k-- > 0;) {
        x[k] = flat % a.size[k];
        flat /= a.size[k];
    }
    return x;
}

// Joint probabilities, one entry at a time, straight from the factor formula.
inline std::vector<double> naive_joint(const icr::FactorSpec& s) {
    const auto& a = s.alphabets;
    std::size_t total = 1;
    for (auto n : a.size) total *= n;
    std::vector<double> p(total);
    auto at = [](const icr::Table& t, std::initializer_list<std::size_t> idx) {
        std::size_t flat = 0, k = 0;
        for (auto i : idx) flat = flat * t.shape[k++] + i;
        return t.data[flat];
    };
    for (std::size_t f = 0; f < total; ++f) {
        auto x = decode(f, a);
        std::size_t q = x[0], u1 = x[1], w1 = x[2], u2 = x[3], w2 = x[4], x1 = x[5], x2 = x[6], y1 = x[7], y2 = x[8];
        double v = at(s.q, {q}) * at(s.w1, {q, w1}) * at(s.w2, {q, w2});
        switch (s.form) {
            case icr::Form::HK2: v *= at(s.u1, {q, u1}) * at(s.u2, {q, u2}); break;
            case icr::Form::HOD16:
            case icr::Form::General1: v *= at(s.u1, {q, w1, u1}) * at(s.u2, {q, w2, u2}); break;
            case icr::Form::CMG9:
                v *= at(s.u1, {q, w1, u1}) * at(s.u2, {q, w2, u2}) * (x1 == u1 ? 1.0 : 0.0) * (x2 == u2 ? 1.0 : 0.0);
                break;
        }
        if (s.form != icr::Form::CMG9) v *= at(s.x1, {q, u1, w1, x1}) * at(s.x2, {q, u2, w2, x2});
        v *= at(s.channel, {x1, x2, y1, y2});
        p[f] = v;
    }
    return p;
}

// Entropy of the marginal on `vars` via a map keyed by the projected values.
inline double entropy(const std::vector<double>& p, const icr::AlphabetSpec& a, std::vector<VariableId> vars) {
    std::map<std::vector<std::size_t>, double> m;
    for (std::size_t f = 0; f < p.size(); ++f) {
        if (p[f] == 0) continue;
        auto x = decode(f, a);
        std::vector<std::size_t> key;
        for (auto v : vars) key.push_back(x[vid(v)]);
        m[key] += p[f];
    }
    double h = 0;
    for (const auto& [k, q] : m)
        if (q > 0) h -= q * std::log2(q);
    return h;
}

inline std::vector<VariableId> cat(std::vector<VariableId> a, const std::vector<VariableId>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// I(A;B|C) = H(AC) + H(BC) - H(ABC) - H(C).
inline double cmi(const std::vector<double>& p, const icr::AlphabetSpec& a, const std::vector<VariableId>& A,
                   const std::vector<VariableId>& B, const std::vector<VariableId>& C = {}) {
    double hc = C.empty() ? 0.0 : entropy(p, a, C);
    return entropy(p, a, cat(A, C)) + entropy(p, a, cat(B, C)) - entropy(p, a, cat(cat(A, B), C)) - hc;
}

// All 22 terms via the entropy route.
inline std::map<std::string, double> terms(const icr::FactorSpec& s) {
    auto p = naive_joint(s);
    const auto& a = s.alphabets;
    using V = VariableId;
    std::map<std::string, double> t;
    for (int side = 1; side <= 2; ++side) {
        V y = side == 1 ? V::Y1 : V::Y2, u = side == 1 ? V::U1 : V::U2, w = side == 1 ? V::W1 : V::W2,
          o = side == 1 ? V::W2 : V::W1;
        std::string k = std::to_string(side);
        t["a" + k] = cmi(p, a, {y}, {u}, {w, o, V::Q});
        t["b" + k] = cmi(p, a, {y}, {w}, {u, o, V::Q});
        t["c" + k] = cmi(p, a, {y}, {o}, {u, w, V::Q});
        t["d" + k] = cmi(p, a, {y}, {u, w}, {o, V::Q});
        t["e" + k] = cmi(p, a, {y}, {u, o}, {w, V::Q});
        t["f" + k] = cmi(p, a, {y}, {w, o}, {u, V::Q});
        t["g" + k] = cmi(p, a, {y}, {u, w, o}, {V::Q});
        t["rho" + k] = cmi(p, a, {u}, {w}, {V::Q});
        t["B" + k] = t["b" + k] + t["rho" + k];
        t["C" + k] = t["c" + k] + t["rho" + k];
        t["F" + k] = t["f" + k] + t["rho" + k];
    }
    return t;
}

using Pt = std::pair<icr::Rational, icr::Rational>;

// Every feasible intersection of two boundary lines (axes included), as a set.
inline std::set<Pt> brute_vertices(const icr::HPoly& p) {
    struct L { icr::Rational a, b, c; };  // a r1 + b r2 <= c
    std::vector<L> lines;
    for (const auto& r : p.rows) lines.push_back({r.coef[0], r.coef[1], r.rhs});
    lines.push_back({-1, 0, 0});
    lines.push_back({0, -1, 0});
    auto feasible = [&](const icr::Rational& x, const icr::Rational& y) {
        if (x < 0 || y < 0) return false;
        for (const auto& l : lines)
            if (l.a * x + l.b * y > l.c) return false;
        return true;
    };
    std::set<Pt> out;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = 0; j < lines.size(); ++j) {
            if (i == j) continue;
            const auto& l1 = lines[i];
            const auto& l2 = lines[j];
            icr::Rational det = l1.a * l2.b - l2.a * l1.b;
            if (det == 0) continue;
            icr::Rational x = (l1.c * l2.b - l2.c * l1.b) / det;
            icr::Rational y = (l1.a * l2.c - l2.a * l1.c) / det;
            if (feasible(x, y)) out.insert({x, y});
        }
    return out;
}

inline std::set<Pt> as_set(const icr::VertexList2& v) {
    std::set<Pt> s;
    for (const auto& p : v) s.insert({p.r1, p.r2});
    return s;
}

struct McArea {
    double estimate;
    double stderr_;
};

// Hit rate on the bounding box [0, max R1] x [0, max R2].
inline McArea monte_carlo_area(const icr::HPoly& p, std::size_t n, std::uint64_t seed) {
    double xmax = 0, ymax = 0;
    std::vector<std::array<double, 3>> rows;
    for (const auto& r : p.rows) rows.push_back({r.coef[0].get_d(), r.coef[1].get_d(), r.rhs.get_d()});
    for (const auto& v : brute_vertices(p)) {
        xmax = std::max(xmax, v.first.get_d());
        ymax = std::max(ymax, v.second.get_d());
    }
    std::mt19937_64 g(seed);
    std::uniform_real_distribution<double> ux(0, xmax), uy(0, ymax);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double x = ux(g), y = uy(g);
        bool in = true;
        for (const auto& r : rows) in = in && r[0] * x + r[1] * y <= r[2];
        hits += in;
    }
    double box = xmax * ymax, f = static_cast<double>(hits) / static_cast<double>(n);
    return {box * f, box * std::sqrt(f * (1 - f) / static_cast<double>(n))};
}

}  // namespace oracle
