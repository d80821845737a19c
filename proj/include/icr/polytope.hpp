#pragma once

// Exact rational H-polyhedra in the rate variables, with every coordinate
// implicitly nonnegative.

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "icr/rational.hpp"
#include "icr/symfm.hpp"
#include "icr/terms.hpp"

namespace icr {

struct HRow {
    std::vector<Rational> coef;  // one per dimension
    Rational rhs;
};

struct HPoly {
    std::vector<RateVar> dims;
    std::vector<HRow> rows;  // coef . x <= rhs; x >= 0 implicit

    std::size_t dimension() const { return dims.size(); }
    bool satisfies(const std::vector<Rational>& x, const Rational& slack = 0) const;
};

class UnboundedPolytope : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Every term snapped to the nearest multiple of 2^-48 (negatives clamp to 0).
Binding snap_terms(const TermVector& terms);

// Dimensions follow the canonical rate-variable order of the system's
// variables. Throws MissingSymbol if the binding lacks a symbol.
HPoly bind(const LinearSystem& system, const Binding& binding);

// Back to a (numeric) LinearSystem with constant right-hand sides.
LinearSystem to_system(const HPoly& p);

struct Point2 {
    Rational r1, r2;
    bool operator==(const Point2& o) const { return r1 == o.r1 && r2 == o.r2; }
    bool operator<(const Point2& o) const { return r1 != o.r1 ? r1 < o.r1 : r2 < o.r2; }
};

using VertexList2 = std::vector<Point2>;

// Counterclockwise from the lexicographically smallest vertex. An empty
// polytope yields an empty list; unboundedness throws UnboundedPolytope.
VertexList2 vertices2(const HPoly& p);

// Maximum of objective . x over p (exact LP). nullopt when p is empty; throws
// UnboundedPolytope when unbounded.
std::optional<Rational> maximize(const HPoly& p, const std::vector<Rational>& objective);

bool is_empty(const HPoly& p);

// inner within outer after relaxing every outer row by eps. 2-D uses the
// vertices of inner; other dimensions maximize each outer row over inner.
bool contains(const HPoly& outer, const HPoly& inner, const Rational& eps = 0);
bool poly_equal(const HPoly& a, const HPoly& b, const Rational& eps = 0);

Rational area2(const HPoly& p);

// Numeric Fourier-Motzkin projection onto the remaining dimensions.
HPoly project_out(const HPoly& p, RateVar v);

// 2^-30, the tolerance for comparisons between independently snapped values.
Rational cross_region_eps();

}  // namespace icr
