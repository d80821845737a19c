#include <doctest.h>

#include "icr/lp.hpp"

using namespace icr;
using namespace icr::lp;

TEST_CASE("bounded maximization") {
    // max x + y  s.t.  x + 2y <= 4, 3x + y <= 6
    auto r = maximize_leq({{1, 2}, {3, 1}}, {4, 6}, {1, 1});
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.objective == Rational(14, 5));
    CHECK(r.x[0] == Rational(8, 5));
    CHECK(r.x[1] == Rational(6, 5));
}

TEST_CASE("negative right-hand sides need phase one") {
    // max -x  s.t.  -x <= -3/2 (x >= 3/2), x <= 5
    auto r = maximize_leq({{-1}, {1}}, {Rational(-3, 2), 5}, {-1});
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.objective == Rational(-3, 2));
}

TEST_CASE("infeasible and unbounded") {
    CHECK(maximize_leq({{1}, {-1}}, {1, -2}, {1}).status == Status::Infeasible);
    CHECK(maximize_leq({{1, -1}}, {1}, {1, 0}).status == Status::Unbounded);
    CHECK(minimize_equality({{1, 1}}, {-1}, {0, 0}).status == Status::Infeasible);
}

TEST_CASE("equality form") {
    // min x + 2y + 3z  s.t.  x + y + z = 1, x - y = 0
    auto r = minimize_equality({{1, 1, 1}, {1, -1, 0}}, {1, 0}, {1, 2, 3});
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.objective == Rational(3, 2));
    CHECK(r.x[0] == Rational(1, 2));
}

TEST_CASE("degenerate vertex terminates under Bland's rule") {
    // Beale-style cycling example.
    Matrix g = {{Rational(1, 4), -8, -1, 9}, {Rational(1, 2), -12, Rational(-1, 2), 3}, {0, 0, 1, 0}};
    auto r = maximize_leq(g, {0, 0, 1}, {Rational(3, 4), -20, Rational(1, 2), -6});
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.objective == Rational(5, 4));
}

TEST_CASE("redundant equality rows") {
    auto r = minimize_equality({{1, 1}, {2, 2}}, {1, 2}, {1, 0});
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.objective == 0);
}
