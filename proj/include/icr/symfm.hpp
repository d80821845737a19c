#pragma once

// Linear inequality systems over the rate variables whose right-hand sides are
// formal combinations of term symbols. Fourier-Motzkin elimination and
// redundancy pruning by exact LP certificates.

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "icr/rational.hpp"
#include "icr/terms.hpp"

namespace icr {

enum class RateVar : std::uint8_t { S1, T1, S2, T2, R1, R2 };

inline constexpr std::size_t kNumRateVars = 6;

std::string_view to_string(RateVar v);
std::optional<RateVar> parse_rate_var(std::string_view name);

using Binding = std::map<TermSymbol, Rational>;

class MissingSymbol : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rational combination of term symbols plus a constant. Zero coefficients are
// never stored.
class Combo {
public:
    Combo() = default;
    explicit Combo(const Rational& constant) : constant_(constant) {}
    static Combo term(TermSymbol t, const Rational& k = 1);

    const std::map<TermSymbol, Rational>& terms() const { return terms_; }
    const Rational& constant() const { return constant_; }
    Rational coeff(TermSymbol t) const;
    bool is_zero() const { return terms_.empty() && sgn(constant_) == 0; }
    bool is_constant() const { return terms_.empty(); }

    Combo& add(TermSymbol t, const Rational& k);
    Combo& operator+=(const Combo& o);
    Combo& operator*=(const Rational& k);
    friend Combo operator+(Combo a, const Combo& b) { return a += b; }
    friend Combo operator*(Combo a, const Rational& k) { return a *= k; }

    // Throws MissingSymbol if a term is unbound.
    Rational evaluate(const Binding& b) const;
    std::string to_string() const;

    bool operator==(const Combo& o) const { return terms_ == o.terms_ && constant_ == o.constant_; }

private:
    std::map<TermSymbol, Rational> terms_;
    Rational constant_ = 0;
};

// lhs . rates <= rhs. An empty lhs makes this a pure term fact.
struct Inequality {
    std::map<RateVar, Rational> lhs;
    Combo rhs;

    Rational coeff(RateVar v) const;
    bool is_term_fact() const { return lhs.empty(); }
    std::string to_string() const;
    bool operator==(const Inequality& o) const { return lhs == o.lhs && rhs == o.rhs; }
};

// Positive rescaling: lhs coefficients become coprime integers (or, for a term
// fact, the rhs term coefficients do).
Inequality canonical(Inequality q);

// Deterministic total order on canonical inequalities.
bool canonical_less(const Inequality& a, const Inequality& b);

// "2R1 + R2 <= a1 + g1 + e2", "0 <= a1 - b1", "T1 - R1 <= 0". Throws
// std::invalid_argument on malformed input.
Inequality parse_inequality(std::string_view text);

struct LinearSystem {
    std::vector<Inequality> rows;
    std::set<RateVar> nonneg;

    // Canonicalizes and appends unless already present. Rows of the form
    // -x <= 0 become nonnegativity facts; trivially true rows are dropped.
    void add(Inequality q);
    bool contains(const Inequality& q) const;
    std::set<RateVar> variables() const;
    std::set<TermSymbol> symbols() const;
    void sort();
    std::string to_string() const;
};

LinearSystem make_system(std::initializer_list<std::string_view> rows, std::set<RateVar> nonneg);

// Named pure term fact: combo >= 0. `needs_independence` marks facts that
// hold only when U_i is independent of W_i given Q (rho_i = 0).
struct Fact {
    std::string name;
    Combo combo;
    bool needs_independence = false;
};

struct AxiomSet {
    std::string id;
    int version = 1;
    std::vector<Fact> facts;
};

// Chain-rule facts among a..g plus the T-rate bound facts over B, C, F, which
// hold for every joint of the correlated (U_i, W_i) form. The same bound facts
// over b, c, f are included for the independent family and marked
// needs_independence.
AxiomSet axioms_chain();
// axioms_chain plus the facts that need U_i independent of W_i given Q:
// c_i + g_i <= e_i + f_i (and C_i <= e_i, C_i + g_i <= e_i + F_i).
AxiomSet axioms_hk_indep();
std::optional<AxiomSet> axiom_set(std::string_view id);  // "chain" | "hk-indep"

LinearSystem fm_eliminate(const LinearSystem& system, RateVar v);

// S1 := R1 - T1, S2 := R2 - T2; adds T_i <= R_i and R_i, T_i >= 0.
LinearSystem substitute_rate_sums(const LinearSystem& system);

// Replaces term symbols by combos (e.g. C1 -> c1).
LinearSystem substitute_symbols(const LinearSystem& system, const std::map<TermSymbol, Combo>& map);

// Replaces every term symbol by its bound value; throws MissingSymbol.
LinearSystem bind_symbols(const LinearSystem& system, const Binding& binding);

struct Certificate {
    std::vector<std::size_t> rows;        // indices into the supporting rows
    std::vector<std::string> axioms;      // names of facts with positive weight
};

// Exact Farkas test: is `target` a nonnegative combination of `rows`, the
// nonnegativity of `nonneg` variables and of every term symbol, and `facts`?
std::optional<Certificate> implied_by(const Inequality& target, std::span<const Inequality> rows,
                                      const std::set<RateVar>& nonneg, std::span<const Fact> facts);

struct Removal {
    Inequality inequality;
    std::vector<Inequality> supports;
    std::vector<std::string> axioms;
};

struct PruneResult {
    LinearSystem system;
    std::vector<Removal> removed;
    std::vector<std::string> axioms_used() const;  // union, sorted
};

// Visits rows in canonical order and drops each one implied by the rows still
// kept plus the axioms.
PruneResult prune_redundant(const LinearSystem& system, const AxiomSet& axioms);

struct SystemDiff {
    bool equal = false;
    std::vector<Inequality> only_in_first;
    std::vector<Inequality> only_in_second;
};

// Canonical-set comparison; throws std::invalid_argument if the rate
// variables differ.
SystemDiff system_equal(const LinearSystem& a, const LinearSystem& b);

enum class DerivationId { HK, HK_MODIFIED, CMG, HOD };

std::string_view to_string(DerivationId id);
std::optional<DerivationId> parse_derivation(std::string_view name);  // hk | hk-mod | cmg | hod

struct Derivation {
    DerivationId id;
    LinearSystem quadruple;   // starting (S, T) system
    LinearSystem eliminated;  // after substitution and elimination of T1, T2
    PruneResult pruned;
};

// HOD and CMG derivations skip facts marked needs_independence.
Derivation derive_region(DerivationId id, const AxiomSet& axioms);

}  // namespace icr
