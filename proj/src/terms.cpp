#include "icr/terms.hpp"

#include <cmath>
#include <stdexcept>

namespace icr {

namespace {

constexpr std::array<std::string_view, kNumTerms> kTermNames = {
    "a1", "b1", "c1", "d1", "e1", "f1", "g1",
    "a2", "b2", "c2", "d2", "e2", "f2", "g2",
    "B1", "C1", "F1", "B2", "C2", "F2",
    "rho1", "rho2"};

}  // namespace

std::string_view to_string(TermSymbol t) { return kTermNames[index_of(t)]; }

std::optional<TermSymbol> parse_term(std::string_view name) {
    for (std::size_t i = 0; i < kNumTerms; ++i)
        if (kTermNames[i] == name) return term_at(i);
    return std::nullopt;
}

TermVector eval_terms(const JointDist& joint) {
    if (joint.vars() != VarSet::all())
        throw std::invalid_argument("eval_terms: joint must cover all nine variables");
    using V = VariableId;
    using T = TermSymbol;
    const VarSet Q{V::Q};
    TermVector t;

    // Receiver-side roles: own private U, own common W, other common V.
    struct Side {
        V y, u, w, v;
        T a, b, c, d, e, f, g, B, C, F, rho;
    };
    const Side sides[2] = {
        {V::Y1, V::U1, V::W1, V::W2, T::a1, T::b1, T::c1, T::d1, T::e1, T::f1, T::g1, T::B1, T::C1, T::F1, T::rho1},
        {V::Y2, V::U2, V::W2, V::W1, T::a2, T::b2, T::c2, T::d2, T::e2, T::f2, T::g2, T::B2, T::C2, T::F2, T::rho2},
    };
    for (const auto& s : sides) {
        VarSet Y{s.y}, U{s.u}, W{s.w}, Vo{s.v};
        t[s.a] = cond_mutual_info(joint, Y, U, W | Vo | Q);
        t[s.b] = cond_mutual_info(joint, Y, W, U | Vo | Q);
        t[s.c] = cond_mutual_info(joint, Y, Vo, U | W | Q);
        t[s.d] = cond_mutual_info(joint, Y, U | W, Vo | Q);
        t[s.e] = cond_mutual_info(joint, Y, U | Vo, W | Q);
        t[s.f] = cond_mutual_info(joint, Y, W | Vo, U | Q);
        t[s.g] = cond_mutual_info(joint, Y, U | W | Vo, Q);
        t[s.rho] = cond_mutual_info(joint, U, W, Q);
        t[s.B] = t[s.b] + t[s.rho];
        t[s.C] = t[s.c] + t[s.rho];
        t[s.F] = t[s.f] + t[s.rho];
    }
    return t;
}

double IdentityCheck::difference() const { return std::abs(u_side - x_side); }

std::array<IdentityCheck, 8> cmg_identity_report(const JointDist& joint, Form form) {
    if (form != Form::CMG9)
        throw std::invalid_argument("cmg_identity_report: expected a cmg9 joint, got " +
                                    std::string(to_string(form)));
    using V = VariableId;
    using T = TermSymbol;
    const VarSet Q{V::Q};
    auto I = [&](VarSet a, VarSet b, VarSet c) { return cond_mutual_info(joint, a, b, c); };
    VarSet Y1{V::Y1}, Y2{V::Y2}, U1{V::U1}, U2{V::U2}, W1{V::W1}, W2{V::W2}, X1{V::X1}, X2{V::X2};
    return {{
        {T::a1, I(Y1, U1, W1 | W2 | Q), I(Y1, X1, W1 | W2 | Q)},
        {T::d1, I(Y1, U1 | W1, W2 | Q), I(Y1, X1, W2 | Q)},
        {T::e1, I(Y1, U1 | W2, W1 | Q), I(Y1, X1 | W2, W1 | Q)},
        {T::g1, I(Y1, U1 | W1 | W2, Q), I(Y1, X1 | W2, Q)},
        {T::a2, I(Y2, U2, W2 | W1 | Q), I(Y2, X2, W2 | W1 | Q)},
        {T::d2, I(Y2, U2 | W2, W1 | Q), I(Y2, X2, W1 | Q)},
        {T::e2, I(Y2, U2 | W1, W2 | Q), I(Y2, X2 | W1, W2 | Q)},
        {T::g2, I(Y2, U2 | W2 | W1, Q), I(Y2, X2 | W1, Q)},
    }};
}

}  // namespace icr
