#pragma once

// Exact rational linear programming: dense two-phase simplex with Bland's
// rule. Sized for the few-dozen-row problems of redundancy proofs and 2-D/4-D
// polytope queries.

#include <vector>

#include "icr/rational.hpp"

namespace icr::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    Rational objective;
    std::vector<Rational> x;
};

using Matrix = std::vector<std::vector<Rational>>;

// minimize c.x  subject to  A x = b, x >= 0
Result minimize_equality(const Matrix& a, const std::vector<Rational>& b, const std::vector<Rational>& c);

// maximize c.x  subject to  G x <= h, x >= 0  (h may have any sign)
Result maximize_leq(const Matrix& g, const std::vector<Rational>& h, const std::vector<Rational>& c);

}  // namespace icr::lp
