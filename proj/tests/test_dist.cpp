#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "icr/dist.hpp"
#include "oracle.hpp"

using namespace icr;
using V = VariableId;

TEST_CASE("degenerate alphabets give a single unit entry") {
    for (auto f : {Form::HK2, Form::HOD16, Form::CMG9, Form::General1}) {
        auto j = build_joint(fx::degenerate(f));
        REQUIRE(j.entries() == 1);
        CHECK(j.data()[0] == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("uniform binary HK2 factors give 2^-9 everywhere") {
    auto s = fx::seeded(Form::HK2, 5);
    for (Table* t : {&s.q, &s.w1, &s.w2, &s.u1, &s.u2, &s.x1, &s.x2}) std::fill(t->data.begin(), t->data.end(), 0.5);
    std::fill(s.channel.data.begin(), s.channel.data.end(), 0.25);
    auto j = build_joint(s);
    REQUIRE(j.entries() == 512);
    for (double p : j.data()) CHECK(p == doctest::Approx(std::ldexp(1.0, -9)).epsilon(1e-14));
}

TEST_CASE("joint matches the naive factor product") {
    for (auto f : {Form::HOD16, Form::HK2, Form::CMG9}) {
        auto s = fx::seeded(f, 11);
        auto j = build_joint(s);
        auto ref = oracle::naive_joint(s);
        REQUIRE(ref.size() == j.entries());
        for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(ref[i] - j.data()[i]) <= 1e-15);
    }
}

TEST_CASE("marginals") {
    auto s = fx::seeded(Form::HOD16, 12);
    auto j = build_joint(s);
    auto all = marginal(j, VarSet::all());
    CHECK(std::equal(all.data().begin(), all.data().end(), j.data().begin()));

    auto q = marginal(j, {V::Q});
    for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(q.data()[i] - s.q.data[i]) <= 1e-12);

    auto xy = marginal(j, {V::X1, V::Y1});
    double ref[2][2] = {};
    auto p = oracle::naive_joint(s);
    for (std::size_t f = 0; f < p.size(); ++f) {
        auto x = oracle::decode(f, s.alphabets);
        ref[x[5]][x[7]] += p[f];
    }
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) CHECK(std::abs(xy.data()[a * 2 + b] - ref[a][b]) <= 1e-12);
    CHECK(xy.total() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS(marginal(j, {}));
}

namespace {

// X1 uniform, Y1 through a BSC(0.2): p(x1,y1) = [[.4,.1],[.1,.4]].
FactorSpec bsc_spec() {
    auto a = fx::alphabets(1);
    a[V::U1] = 2;
    a[V::X1] = 2;
    a[V::Y1] = 2;
    auto s = sample_spec(a, Form::HK2, 4);
    s.u1.data = {0.5, 0.5};
    s.x1.data = {1, 0, 0, 1};
    s.channel.data = {0.8, 0.2, 0.2, 0.8};
    return s;
}

}  // namespace

TEST_CASE("conditional mutual information") {
    SUBCASE("built-in independence in HK2") {
        auto j = build_joint(fx::seeded(Form::HK2, 13));
        CHECK(cond_mutual_info(j, {V::U1}, {V::W1}, {V::Q}) <= 1e-12);
        CHECK(cond_mutual_info(j, {V::U2}, {V::W2}, {V::Q}) <= 1e-12);
    }
    SUBCASE("noiseless bit") {
        auto j = build_joint(fx::noiseless_orthogonal());
        CHECK(cond_mutual_info(j, {V::X1}, {V::Y1}) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("binary symmetric joint") {
        auto s = bsc_spec();
        auto j = build_joint(s);
        double ref = oracle::cmi(oracle::naive_joint(s), s.alphabets, {V::X1}, {V::Y1});
        CHECK(cond_mutual_info(j, {V::X1}, {V::Y1}) == doctest::Approx(ref).epsilon(1e-12));
        CHECK(cond_mutual_info(j, {V::X1}, {V::Y1}) == doctest::Approx(0.2781).epsilon(1e-4));
    }
    SUBCASE("overlapping sets are rejected") {
        auto j = build_joint(fx::seeded(Form::HK2, 14));
        CHECK_THROWS(cond_mutual_info(j, {V::X1}, {V::X1, V::Y1}));
        CHECK_THROWS(cond_mutual_info(j, {}, {V::Y1}));
    }
}

TEST_CASE("entropy") {
    auto a = fx::alphabets(1);
    a[V::Q] = 4;
    auto s = sample_spec(a, Form::HK2, 1);
    s.q.data = {0.25, 0.25, 0.25, 0.25};
    CHECK(entropy(build_joint(s), {V::Q}) == doctest::Approx(2.0).epsilon(1e-14));
    s.q.data = {0, 1, 0, 0};
    CHECK(entropy(build_joint(s), {V::Q}) == 0.0);

    auto h = fx::seeded(Form::HOD16, 15);
    auto p = oracle::naive_joint(h);
    CHECK(entropy(build_joint(h), {V::X1, V::Y2, V::W1}) ==
          doctest::Approx(oracle::entropy(p, h.alphabets, {V::W1, V::X1, V::Y2})).epsilon(1e-12));
    CHECK_THROWS(entropy(build_joint(h), {}));
}

TEST_CASE("independence projection") {
    auto s = fx::seeded(Form::HOD16, 16);
    auto p = independence_projection(s);
    CHECK(p.form == Form::HK2);
    auto j = build_joint(p);
    CHECK(cond_mutual_info(j, {V::U1}, {V::W1}, {V::Q}) <= 1e-12);
    // mixture oracle
    for (std::size_t q = 0; q < 2; ++q)
        for (std::size_t u = 0; u < 2; ++u) {
            double m = 0;
            for (std::size_t w = 0; w < 2; ++w) m += s.w1.data[q * 2 + w] * s.u1.data[(q * 2 + w) * 2 + u];
            CHECK(std::abs(p.u1.data[q * 2 + u] - m) <= 1e-15);
        }
    // marginals of (Q, U1) agree
    auto mj = marginal(build_joint(s), {V::Q, V::U1});
    auto mp = marginal(j, {V::Q, V::U1});
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(mj.data()[i] - mp.data()[i]) <= 1e-12);

    SUBCASE("fixed point") {
        auto t = s;
        for (std::size_t q = 0; q < 2; ++q)
            for (std::size_t u = 0; u < 2; ++u) t.u1.data[(q * 2 + 1) * 2 + u] = t.u1.data[(q * 2 + 0) * 2 + u];
        auto pt = independence_projection(t);
        for (std::size_t q = 0; q < 2; ++q)
            for (std::size_t u = 0; u < 2; ++u)
                CHECK(std::abs(pt.u1.data[q * 2 + u] - t.u1.data[q * 4 + u]) <= 1e-15);
        CHECK(pt.x1 == t.x1);
        CHECK(pt.channel == t.channel);
    }
    CHECK_THROWS(independence_projection(fx::seeded(Form::HK2, 1)));
}

TEST_CASE("Markov chains of the superposition form") {
    auto r = check_markov_chains(build_joint(fx::seeded(Form::CMG9, 17)));
    CHECK(r.holds());
    auto d = check_markov_chains(build_joint(fx::degenerate(Form::CMG9)));
    CHECK(d.w1_y1_given_q_w2_x1 == 0.0);
    CHECK(d.w2_y2_given_q_w1_x2 == 0.0);

    // Y1 copies W1 directly, bypassing X1.
    auto a = fx::alphabets(1);
    a[V::W1] = 2;
    a[V::Y1] = 2;
    std::vector<double> p(4, 0.0);
    p[0] = 0.5;  // w1 = 0, y1 = 0
    p[3] = 0.5;  // w1 = 1, y1 = 1
    JointDist bad(VarSet::all(), a, p);
    auto br = check_markov_chains(bad);
    CHECK(br.w1_y1_given_q_w2_x1 > 0.5);
    CHECK_FALSE(br.holds());
}

TEST_CASE("joint invariants on seeded specs") {
    std::mt19937_64 g(99);
    for (int k = 0; k < 8; ++k) {
        auto s = fx::seeded(k % 2 ? Form::HOD16 : Form::HK2, 100 + k);
        auto j = build_joint(s);
        CHECK(j.total() == doctest::Approx(1.0).epsilon(1e-10));
        if (s.form == Form::HK2) CHECK(cond_mutual_info(j, {V::U2}, {V::W2}, {V::Q}) <= 1e-12);

        // channel reproduced by the (X1,X2,Y1,Y2) marginal
        auto m = marginal(j, {V::X1, V::X2, V::Y1, V::Y2});
        auto mx = marginal(j, {V::X1, V::X2});
        for (std::size_t x = 0; x < 4; ++x)
            for (std::size_t y = 0; y < 4; ++y)
                CHECK(std::abs(m.data()[x * 4 + y] / mx.data()[x] - s.channel.data[x * 4 + y]) <= 1e-10);

        // chain rule on random disjoint sets
        std::vector<V> vars(kAllVariables.begin(), kAllVariables.end());
        std::shuffle(vars.begin(), vars.end(), g);
        VarSet A{vars[0]}, B1{vars[1]}, B2{vars[2], vars[3]}, C{vars[4]};
        double lhs = cond_mutual_info(j, A, B1 | B2, C);
        double rhs = cond_mutual_info(j, A, B1, C) + cond_mutual_info(j, A, B2, C | B1);
        CHECK(std::abs(lhs - rhs) <= 1e-9);
        CHECK(lhs >= 0);
    }
}

TEST_CASE("spec validation names the factor") {
    auto s = fx::seeded(Form::HOD16, 18);
    s.w1.data[0] += 0.1;
    try {
        validate(s);
        FAIL("expected SpecError");
    } catch (const SpecError& e) {
        CHECK(std::string(e.what()).find("w1_given_q") != std::string::npos);
    }
    auto t = fx::seeded(Form::HK2, 19);
    t.x2.shape = {2, 2, 2};
    CHECK_THROWS_AS(validate(t), SpecError);
    auto c = fx::seeded(Form::CMG9, 20);
    c.alphabets[V::U1] = 3;
    CHECK_THROWS_AS(validate(c), SpecError);
}

TEST_CASE("cmg9 re-expressed as hod16 gives the same joint") {
    auto s = fx::seeded(Form::CMG9, 21);
    auto h = cmg_as_hod16(s);
    CHECK(h.form == Form::HOD16);
    auto a = build_joint(s), b = build_joint(h);
    for (std::size_t i = 0; i < a.entries(); ++i) CHECK(std::abs(a.data()[i] - b.data()[i]) <= 1e-15);
}
