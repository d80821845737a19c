#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "icr/terms.hpp"
#include "oracle.hpp"

using namespace icr;
using T = TermSymbol;

TEST_CASE("term names round-trip") {
    for (std::size_t i = 0; i < kNumTerms; ++i) {
        auto t = term_at(i);
        CHECK(parse_term(to_string(t)) == t);
    }
    CHECK_FALSE(parse_term("h1").has_value());
    CHECK(to_string(T::rho2) == "rho2");
}

TEST_CASE("all terms match the entropy-route oracle") {
    for (auto f : {Form::HK2, Form::HOD16, Form::CMG9}) {
        for (std::uint64_t seed : {31u, 32u, 33u}) {
            auto s = fx::seeded(f, seed);
            auto t = eval_terms(build_joint(s));
            auto ref = oracle::terms(s);
            for (std::size_t i = 0; i < kNumTerms; ++i) {
                auto sym = term_at(i);
                INFO(to_string(sym));
                CHECK(std::abs(t[sym] - ref[std::string(to_string(sym))]) <= 1e-10);
            }
        }
    }
}

TEST_CASE("three-valued alphabets") {
    auto s = fx::seeded(Form::HOD16, 34, 3);
    auto t = eval_terms(build_joint(s));
    auto ref = oracle::terms(s);
    for (std::size_t i = 0; i < kNumTerms; ++i)
        CHECK(std::abs(t[term_at(i)] - ref[std::string(to_string(term_at(i)))]) <= 1e-10);
}

TEST_CASE("degenerate joint has all terms zero") {
    auto t = eval_terms(build_joint(fx::degenerate(Form::HOD16)));
    for (double v : t.value) CHECK(v == 0.0);
}

TEST_CASE("noiseless orthogonal channel") {
    auto t = eval_terms(build_joint(fx::noiseless_orthogonal()));
    CHECK(t[T::a1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t[T::a2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t[T::d1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t[T::g2] == doctest::Approx(1.0).epsilon(1e-12));
    for (auto z : {T::b1, T::c1, T::f1, T::b2, T::c2, T::f2, T::rho1, T::rho2}) CHECK(std::abs(t[z]) <= 1e-12);
}

TEST_CASE("uppercase terms add rho on the same side") {
    for (std::uint64_t seed = 40; seed < 46; ++seed) {
        auto t = eval_terms(build_joint(fx::seeded(Form::HOD16, seed)));
        CHECK(t[T::B1] == doctest::Approx(t[T::b1] + t[T::rho1]).epsilon(1e-12));
        CHECK(t[T::C2] == doctest::Approx(t[T::c2] + t[T::rho2]).epsilon(1e-12));
        CHECK(t[T::F1] == doctest::Approx(t[T::f1] + t[T::rho1]).epsilon(1e-12));
        CHECK(t[T::rho1] > 1e-9);  // generic HOD16 joints correlate U and W
    }
    auto h = eval_terms(build_joint(fx::seeded(Form::HK2, 46)));
    CHECK(std::abs(h[T::rho1]) <= 1e-12);
    CHECK(std::abs(h[T::F2] - h[T::f2]) <= 1e-12);
}

TEST_CASE("chain-rule relations among the lowercase terms") {
    for (std::uint64_t seed = 50; seed < 60; ++seed) {
        auto t = eval_terms(build_joint(fx::seeded(seed % 2 ? Form::HK2 : Form::HOD16, seed)));
        for (int side = 0; side < 2; ++side) {
            auto at = [&](char c) { return t.value[static_cast<std::size_t>(side * 7 + (c - 'a'))]; };
            CHECK(at('g') <= at('d') + at('c') + 1e-9);
            CHECK(at('g') + at('a') <= at('d') + at('e') + 1e-9);
            CHECK(at('e') <= at('a') + at('c') + 1e-9);
            CHECK(at('a') <= at('d') + 1e-12);
            CHECK(at('b') <= at('f') + 1e-12);
            CHECK(at('e') <= at('g') + 1e-12);
            for (char c = 'a'; c <= 'g'; ++c) CHECK(at(c) >= -1e-12);
        }
    }
}

TEST_CASE("CMG identities hold for superposition specs") {
    for (std::uint64_t seed = 60; seed < 64; ++seed) {
        auto rep = cmg_identity_report(build_joint(fx::seeded(Form::CMG9, seed)), Form::CMG9);
        for (const auto& c : rep) {
            INFO(to_string(c.term));
            CHECK(std::abs(c.difference()) <= 1e-12);
        }
    }
    CHECK_THROWS(cmg_identity_report(build_joint(fx::seeded(Form::HK2, 1)), Form::HK2));
}
