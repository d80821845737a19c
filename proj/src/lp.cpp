#include "icr/lp.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>

namespace icr {

Rational snap(double x) {
    double scaled = std::round(std::ldexp(x, 48));
    Rational r(scaled);
    r /= Rational(mpz_class(1) << 48);
    r.canonicalize();
    return r;
}

double to_double(const Rational& r) { return r.get_d(); }

namespace lp {

namespace {

// Tableau rows hold [coefficients..., rhs]; `basis[i]` is the basic column of row i.
struct Tableau {
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> cost;  // reduced costs, last entry = -objective
    std::vector<std::size_t> basis;
    std::size_t cols = 0;        // structural columns (excludes rhs)

    void pivot(std::size_t r, std::size_t c) {
        auto& pr = rows[r];
        Rational inv = 1 / pr[c];
        for (std::size_t j = 0; j <= cols; ++j)
            if (sgn(pr[j]) != 0) pr[j] *= inv;
        auto eliminate = [&](std::vector<Rational>& row) {
            if (sgn(row[c]) == 0) return;
            Rational f = row[c];
            for (std::size_t j = 0; j <= cols; ++j)
                if (sgn(pr[j]) != 0) row[j] -= f * pr[j];
        };
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r) eliminate(rows[i]);
        eliminate(cost);
        basis[r] = c;
    }

    // Runs simplex on the current cost row restricted to columns < limit.
    // Returns false when unbounded.
    bool optimize(std::size_t limit) {
        for (;;) {
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j < limit; ++j)
                if (sgn(cost[j]) < 0) {
                    enter = j;
                    break;
                }
            if (!enter) return true;
            std::optional<std::size_t> leave;
            Rational best;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const auto& a = rows[i][*enter];
                if (sgn(a) <= 0) continue;
                Rational ratio = rows[i][cols] / a;
                if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (!leave) return false;
            pivot(*leave, *enter);
        }
    }
};

}  // namespace

Result minimize_equality(const Matrix& a, const std::vector<Rational>& b, const std::vector<Rational>& c) {
    const std::size_t m = a.size();
    const std::size_t n = c.size();
    if (b.size() != m) throw std::invalid_argument("lp: row count mismatch");
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("lp: column count mismatch");

    Tableau t;
    t.cols = n + m;
    t.rows.assign(m, std::vector<Rational>(t.cols + 1));
    t.basis.resize(m);
    t.cost.assign(t.cols + 1, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        bool flip = sgn(b[i]) < 0;
        for (std::size_t j = 0; j < n; ++j) t.rows[i][j] = flip ? Rational(-a[i][j]) : a[i][j];
        t.rows[i][n + i] = 1;
        t.rows[i][t.cols] = flip ? Rational(-b[i]) : b[i];
        t.basis[i] = n + i;
        // phase-one cost: sum of artificials, priced out
        for (std::size_t j = 0; j < n; ++j) t.cost[j] -= t.rows[i][j];
        t.cost[t.cols] -= t.rows[i][t.cols];
    }
    t.optimize(t.cols);

    Result res;
    if (sgn(t.cost[t.cols]) != 0) {
        res.status = Status::Infeasible;
        return res;
    }

    // Drive artificials out of the basis; drop rows that are linearly dependent.
    for (std::size_t i = 0; i < t.rows.size();) {
        if (t.basis[i] < n) {
            ++i;
            continue;
        }
        std::optional<std::size_t> col;
        for (std::size_t j = 0; j < n; ++j)
            if (sgn(t.rows[i][j]) != 0) {
                col = j;
                break;
            }
        if (col) {
            t.pivot(i, *col);
            ++i;
        } else {
            t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }

    // Phase two on the original columns.
    t.cost.assign(t.cols + 1, Rational(0));
    for (std::size_t j = 0; j < n; ++j) t.cost[j] = c[j];
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const Rational cb = c[t.basis[i]];
        if (sgn(cb) == 0) continue;
        for (std::size_t j = 0; j <= t.cols; ++j)
            if (sgn(t.rows[i][j]) != 0) t.cost[j] -= cb * t.rows[i][j];
    }
    if (!t.optimize(n)) {
        res.status = Status::Unbounded;
        return res;
    }
    res.status = Status::Optimal;
    res.objective = -t.cost[t.cols];
    res.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < t.rows.size(); ++i) res.x[t.basis[i]] = t.rows[i][t.cols];
    return res;
}

Result maximize_leq(const Matrix& g, const std::vector<Rational>& h, const std::vector<Rational>& c) {
    const std::size_t m = g.size();
    const std::size_t n = c.size();
    Matrix a(m, std::vector<Rational>(n + m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = g[i][j];
        a[i][n + i] = 1;
    }
    std::vector<Rational> cost(n + m);
    for (std::size_t j = 0; j < n; ++j) cost[j] = -c[j];
    Result r = minimize_equality(a, h, cost);
    if (r.status == Status::Optimal) {
        r.objective = -r.objective;
        r.x.resize(n);
    }
    return r;
}

}  // namespace lp
}  // namespace icr
