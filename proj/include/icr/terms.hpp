#pragma once

// The named information terms bounding the rate-split variables.

#include <array>
#include <cstdint>
#include <cstddef>
#include <optional>
#include <string_view>

#include "icr/dist.hpp"

namespace icr {

// Canonical order; rho_i = I(U_i;W_i|Q).
enum class TermSymbol : std::uint8_t {
    a1, b1, c1, d1, e1, f1, g1,
    a2, b2, c2, d2, e2, f2, g2,
    B1, C1, F1, B2, C2, F2,
    rho1, rho2
};

inline constexpr std::size_t kNumTerms = 22;

std::string_view to_string(TermSymbol t);
std::optional<TermSymbol> parse_term(std::string_view name);
constexpr std::size_t index_of(TermSymbol t) { return static_cast<std::size_t>(t); }
constexpr TermSymbol term_at(std::size_t i) { return static_cast<TermSymbol>(i); }

// Term values in bits.
struct TermVector {
    std::array<double, kNumTerms> value{};

    double operator[](TermSymbol t) const { return value[index_of(t)]; }
    double& operator[](TermSymbol t) { return value[index_of(t)]; }
};

// Evaluates all 22 terms on a full nine-variable joint. B, C, F are the sums
// of the corresponding lowercase term and rho on the same receiver side.
TermVector eval_terms(const JointDist& joint);

struct IdentityCheck {
    TermSymbol term;
    double u_side = 0;        // via U axes
    double x_side = 0;        // via X axes
    double difference() const;
};

// Eight identities of the superposition (CMG) description: each term over U
// equals the same functional written with X in place of U. Requires a joint
// built from a CMG9 spec; `form` guards the contract.
std::array<IdentityCheck, 8> cmg_identity_report(const JointDist& joint, Form form);

}  // namespace icr
