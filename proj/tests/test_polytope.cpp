#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "icr/polytope.hpp"
#include "icr/regions.hpp"
#include "oracle.hpp"

using namespace icr;
using T = TermSymbol;
using R = RateVar;

namespace {

HPoly box2(Rational a, Rational b) {
    return icr::bind(make_system({"R1 <= a1", "R2 <= a2"}, {R::R1, R::R2}), {{T::a1, a}, {T::a2, b}});
}

}  // namespace

TEST_CASE("snapping") {
    CHECK(snap(0.5) == Rational(1, 2));
    CHECK(snap(std::ldexp(1.0, -49) * 3) == Rational(2, 1) / Rational(mpz_class(1) << 48));
    CHECK(snap(0.0) == 0);
    TermVector t;
    t[T::a1] = -1e-17;
    t[T::b1] = 0.1;
    auto b = snap_terms(t);
    CHECK(b.at(T::a1) == 0);
    CHECK(std::abs(to_double(b.at(T::b1)) - 0.1) <= std::ldexp(1.0, -49));
    Rational scaled = b.at(T::b1) * Rational(mpz_class(1) << 48);
    CHECK(scaled.get_den() == 1);
    CHECK(b.size() == kNumTerms);
}

TEST_CASE("bind fails on a missing symbol") {
    auto s = make_system({"R1 <= a1 + b1"}, {R::R1, R::R2});
    CHECK_THROWS_AS(icr::bind(s, {{T::a1, 1}}), MissingSymbol);
}

TEST_CASE("vertices of a box and a pentagon") {
    auto v = vertices2(box2(2, 3));
    REQUIRE(v.size() == 4);
    CHECK(v[0] == Point2{0, 0});
    CHECK(v[1] == Point2{2, 0});
    CHECK(v[2] == Point2{2, 3});
    CHECK(v[3] == Point2{0, 3});

    auto pent = icr::bind(make_system({"R1 <= a1", "R2 <= a2", "R1 + R2 <= g1"}, {R::R1, R::R2}),
                          {{T::a1, 2}, {T::a2, 2}, {T::g1, 3}});
    auto pv = vertices2(pent);
    CHECK(pv.size() == 5);
    CHECK(area2(pent) == Rational(7, 2));
    CHECK(oracle::as_set(pv) == oracle::brute_vertices(pent));
}

TEST_CASE("degenerate shapes") {
    CHECK(vertices2(box2(0, 0)) == VertexList2{{0, 0}});
    auto seg = vertices2(box2(1, 0));
    CHECK(seg.size() == 2);
    CHECK(area2(box2(1, 0)) == 0);
    auto empty = icr::bind(make_system({"R1 + R2 <= a1"}, {R::R1, R::R2}), {{T::a1, Rational(-1)}});
    CHECK(vertices2(empty).empty());
    CHECK(is_empty(empty));
    CHECK_FALSE(maximize(empty, {1, 0}).has_value());
    auto open = icr::bind(make_system({"R1 <= a1", "R1 - R2 <= b1"}, {R::R1, R::R2}), {{T::a1, 1}, {T::b1, 0}});
    CHECK_THROWS_AS(vertices2(open), UnboundedPolytope);
}

TEST_CASE("maximize") {
    auto pent = icr::bind(make_system({"R1 <= a1", "R2 <= a2", "R1 + R2 <= g1"}, {R::R1, R::R2}),
                          {{T::a1, 2}, {T::a2, 2}, {T::g1, 3}});
    CHECK(*maximize(pent, {1, 1}) == 3);
    CHECK(*maximize(pent, {2, 1}) == 5);
    CHECK(*maximize(pent, {-1, -1}) == 0);
}

TEST_CASE("containment and equality") {
    CHECK(contains(box2(2, 2), box2(1, 2)));
    CHECK_FALSE(contains(box2(1, 2), box2(2, 2)));
    CHECK(contains(box2(1, 2), box2(Rational(1) + Rational(1, 1 << 20), 2), Rational(1, 1 << 19)));
    CHECK(poly_equal(box2(1, 1), box2(1, 1)));
    auto redundant = icr::bind(make_system({"R1 <= a1", "R2 <= a2", "R1 + R2 <= g1"}, {R::R1, R::R2}),
                               {{T::a1, 1}, {T::a2, 1}, {T::g1, 5}});
    CHECK(poly_equal(redundant, box2(1, 1)));
}

TEST_CASE("project_out matches a hand projection") {
    // T1 <= R1, R1 - T1 <= a1, T1 <= b1  onto R1: R1 <= a1 + b1
    auto q = icr::bind(make_system({"T1 - R1 <= 0", "R1 - T1 <= a1", "T1 <= b1", "R2 <= a2"}, {R::T1, R::R1, R::R2}),
                       {{T::a1, 1}, {T::b1, 2}, {T::a2, 1}});
    auto p = project_out(q, R::T1);
    CHECK(p.dims == std::vector<RateVar>{R::R1, R::R2});
    CHECK(poly_equal(p, box2(3, 1)));
}

TEST_CASE("brute-force vertex oracle on bound regions") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        auto hk = snap_terms(eval_terms(build_joint(fx::seeded(Form::HK2, 800 + s))));
        for (auto id : {RegionId::HK_R, RegionId::HK_R_MODIFIED, RegionId::COMPACT_R}) {
            auto p = region_for(hk, id);
            CHECK(oracle::as_set(vertices2(p)) == oracle::brute_vertices(p));
        }
    }
}

TEST_CASE("vertices are counterclockwise") {
    auto p = region_for(snap_terms(eval_terms(build_joint(fx::seeded(Form::HOD16, 901)))), RegionId::HOD_R);
    auto v = vertices2(p);
    REQUIRE(v.size() >= 3);
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[0] < v[i]);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % v.size()];
        const auto& c = v[(i + 2) % v.size()];
        CHECK((b.r1 - a.r1) * (c.r2 - a.r2) - (b.r2 - a.r2) * (c.r1 - a.r1) > 0);
    }
}

TEST_CASE("area agrees with Monte Carlo within three standard errors") {
    for (std::uint64_t s = 0; s < 3; ++s) {
        auto p = region_for(snap_terms(eval_terms(build_joint(fx::seeded(Form::HK2, 950 + s)))), RegionId::HK_R);
        auto mc = oracle::monte_carlo_area(p, 1'000'000, 17 + s);
        double exact = to_double(area2(p));
        INFO("exact ", exact, " mc ", mc.estimate, " se ", mc.stderr_);
        CHECK(std::abs(exact - mc.estimate) <= 3 * mc.stderr_ + 1e-12);
    }
}

TEST_CASE("higher-dimensional containment uses LP") {
    auto b = snap_terms(eval_terms(build_joint(fx::seeded(Form::HK2, 990))));
    auto q = icr::bind(build_system(RegionId::HK_Q), b);
    CHECK(q.dimension() == 4);
    CHECK(contains(q, q));
    auto looser = q;
    for (auto& r : looser.rows) r.rhs += 1;
    CHECK(contains(looser, q));
    CHECK_FALSE(contains(q, looser));
}

TEST_CASE("cross-region tolerance") { CHECK(cross_region_eps() == Rational(1, 1 << 30)); }
