#include "icr/symfm.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "icr/lp.hpp"
#include "icr/regions.hpp"

namespace icr {

namespace {

constexpr std::array<std::string_view, kNumRateVars> kRateNames = {"S1", "T1", "S2", "T2", "R1", "R2"};

// Display and ordering priority of rate variables.
constexpr std::array<RateVar, kNumRateVars> kRateOrder = {RateVar::R1, RateVar::R2, RateVar::S1,
                                                          RateVar::T1, RateVar::S2, RateVar::T2};

void append_term(std::string& out, const Rational& k, std::string_view name) {
    Rational mag = abs(k);
    if (out.empty())
        out += sgn(k) < 0 ? "-" : "";
    else
        out += sgn(k) < 0 ? " - " : " + ";
    if (mag != 1 || name.empty()) out += mag.get_str();
    out += name;
}

mpz_class lcm_of_denominators(const std::vector<const Rational*>& values) {
    mpz_class l = 1;
    for (const auto* v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v->get_den_mpz_t());
    return l;
}

mpz_class gcd_of_numerators(const std::vector<const Rational*>& values) {
    mpz_class g = 0;
    for (const auto* v : values) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v->get_num_mpz_t());
    return g;
}

// -1, 0, 1 comparison of coefficient vectors; larger coefficient first.
template <typename Map, typename Keys>
int compare_desc(const Map& a, const Map& b, const Keys& keys) {
    for (auto k : keys) {
        auto ia = a.find(k);
        auto ib = b.find(k);
        Rational va = ia == a.end() ? Rational(0) : ia->second;
        Rational vb = ib == b.end() ? Rational(0) : ib->second;
        if (va != vb) return va > vb ? -1 : 1;
    }
    return 0;
}

std::array<TermSymbol, kNumTerms> all_terms() {
    std::array<TermSymbol, kNumTerms> t{};
    for (std::size_t i = 0; i < kNumTerms; ++i) t[i] = term_at(i);
    return t;
}

// Parses "c1 x1 + c2 x2 - ..." into (coefficient, name) pairs; a bare number
// has an empty name.
std::vector<std::pair<Rational, std::string>> parse_side(std::string_view s) {
    std::vector<std::pair<Rational, std::string>> out;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    bool first = true;
    for (;;) {
        skip();
        if (i >= s.size()) break;
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (!first) {
            throw std::invalid_argument("expected '+' or '-' in \"" + std::string(s) + "\"");
        }
        first = false;
        std::size_t start = i;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
        Rational k = 1;
        const bool had_number = i > start;
        if (had_number) {
            k = Rational(std::string(s.substr(start, i - start)));
            k.canonicalize();
        }
        skip();
        start = i;
        while (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i]))) ++i;
        std::string name(s.substr(start, i - start));
        if (name.empty() && !had_number)
            throw std::invalid_argument("missing operand in \"" + std::string(s) + "\"");
        out.emplace_back(sign * k, name);
    }
    if (out.empty()) throw std::invalid_argument("empty side in inequality");
    return out;
}

// "hi - lo >= 0" style helper: `text` is "lhs <= rhs" over term symbols.
Fact term_fact(const std::string& text) {
    auto pos = text.find("<=");
    if (pos == std::string::npos) throw std::logic_error("bad fact " + text);
    auto lhs = parse_side(text.substr(0, pos));
    auto rhs = parse_side(text.substr(pos + 2));
    Combo c;
    for (auto& [k, name] : rhs) {
        auto t = parse_term(name);
        if (!t) throw std::logic_error("bad fact symbol " + name);
        c.add(*t, k);
    }
    for (auto& [k, name] : lhs) {
        auto t = parse_term(name);
        if (!t) throw std::logic_error("bad fact symbol " + name);
        c.add(*t, -k);
    }
    return {text, c};
}

// Instantiates a per-side template ("d <= a + B") for sides 1 and 2.
void add_sided(std::vector<Fact>& out, std::string_view tmpl, bool needs_independence = false) {
    for (char side : {'1', '2'}) {
        std::string text;
        for (std::size_t i = 0; i < tmpl.size(); ++i) {
            text += tmpl[i];
            if (std::isalpha(static_cast<unsigned char>(tmpl[i])) &&
                (i + 1 == tmpl.size() || !std::isalnum(static_cast<unsigned char>(tmpl[i + 1]))))
                text += side;
        }
        auto f = term_fact(text);
        f.needs_independence = needs_independence;
        bool dup = std::any_of(out.begin(), out.end(), [&](const Fact& g) { return g.combo == f.combo; });
        if (!dup) out.push_back(std::move(f));
    }
}

struct Coord {
    bool is_rate;
    std::size_t id;
    bool operator<(const Coord& o) const { return std::tie(is_rate, id) < std::tie(o.is_rate, o.id); }
};

}  // namespace

std::string_view to_string(RateVar v) { return kRateNames[static_cast<std::size_t>(v)]; }

std::optional<RateVar> parse_rate_var(std::string_view name) {
    for (std::size_t i = 0; i < kNumRateVars; ++i)
        if (kRateNames[i] == name) return static_cast<RateVar>(i);
    return std::nullopt;
}

// --- Combo ---------------------------------------------------------------

Combo Combo::term(TermSymbol t, const Rational& k) {
    Combo c;
    c.add(t, k);
    return c;
}

Rational Combo::coeff(TermSymbol t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? Rational(0) : it->second;
}

Combo& Combo::add(TermSymbol t, const Rational& k) {
    if (sgn(k) == 0) return *this;
    auto [it, inserted] = terms_.emplace(t, k);
    if (!inserted) {
        it->second += k;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
    return *this;
}

Combo& Combo::operator+=(const Combo& o) {
    for (const auto& [t, k] : o.terms_) add(t, k);
    constant_ += o.constant_;
    return *this;
}

Combo& Combo::operator*=(const Rational& k) {
    if (sgn(k) == 0) {
        terms_.clear();
        constant_ = 0;
        return *this;
    }
    for (auto& [t, v] : terms_) v *= k;
    constant_ *= k;
    return *this;
}

Rational Combo::evaluate(const Binding& b) const {
    Rational v = constant_;
    for (const auto& [t, k] : terms_) {
        auto it = b.find(t);
        if (it == b.end()) throw MissingSymbol("binding has no value for " + std::string(icr::to_string(t)));
        v += k * it->second;
    }
    return v;
}

std::string Combo::to_string() const {
    std::string s;
    for (const auto& [t, k] : terms_) append_term(s, k, icr::to_string(t));
    if (sgn(constant_) != 0 || s.empty()) append_term(s, constant_, "");
    return s;
}

// --- Inequality ------------------------------------------------------------

Rational Inequality::coeff(RateVar v) const {
    auto it = lhs.find(v);
    return it == lhs.end() ? Rational(0) : it->second;
}

std::string Inequality::to_string() const {
    std::string s;
    for (auto v : kRateOrder) {
        auto it = lhs.find(v);
        if (it != lhs.end()) append_term(s, it->second, icr::to_string(v));
    }
    if (s.empty()) s = "0";
    return s + " <= " + rhs.to_string();
}

Inequality canonical(Inequality q) {
    for (auto it = q.lhs.begin(); it != q.lhs.end();)
        it = sgn(it->second) == 0 ? q.lhs.erase(it) : std::next(it);
    std::vector<const Rational*> basis;
    if (!q.lhs.empty()) {
        for (const auto& [v, k] : q.lhs) basis.push_back(&k);
    } else if (!q.rhs.terms().empty()) {
        for (const auto& [t, k] : q.rhs.terms()) basis.push_back(&k);
    } else {
        // 0 <= constant: normalize magnitude to 1
        int s = sgn(q.rhs.constant());
        q.rhs = Combo(Rational(s));
        return q;
    }
    Rational scale = Rational(lcm_of_denominators(basis));
    std::vector<Rational> scaled;
    for (const auto* v : basis) scaled.push_back(*v * scale);
    std::vector<const Rational*> ptrs;
    for (const auto& v : scaled) ptrs.push_back(&v);
    scale /= Rational(gcd_of_numerators(ptrs));
    scale.canonicalize();
    for (auto& [v, k] : q.lhs) k *= scale;
    q.rhs *= scale;
    return q;
}

bool canonical_less(const Inequality& a, const Inequality& b) {
    Rational wa = 0, wb = 0;
    for (const auto& [v, k] : a.lhs) wa += abs(k);
    for (const auto& [v, k] : b.lhs) wb += abs(k);
    if (wa != wb) return wa < wb;
    if (int c = compare_desc(a.lhs, b.lhs, kRateOrder)) return c < 0;
    static const auto terms = all_terms();
    if (int c = compare_desc(a.rhs.terms(), b.rhs.terms(), terms)) return c < 0;
    return a.rhs.constant() < b.rhs.constant();
}

Inequality parse_inequality(std::string_view text) {
    auto pos = text.find("<=");
    if (pos == std::string_view::npos)
        throw std::invalid_argument("inequality needs '<=': \"" + std::string(text) + "\"");
    Inequality q;
    for (auto& [k, name] : parse_side(text.substr(0, pos))) {
        if (name.empty()) {
            if (sgn(k) != 0) throw std::invalid_argument("constant on lhs: \"" + std::string(text) + "\"");
            continue;
        }
        auto v = parse_rate_var(name);
        if (!v) throw std::invalid_argument("unknown rate variable '" + name + "'");
        q.lhs[*v] += k;
    }
    for (auto& [k, name] : parse_side(text.substr(pos + 2))) {
        if (name.empty()) {
            q.rhs += Combo(k);
            continue;
        }
        auto t = parse_term(name);
        if (!t) throw std::invalid_argument("unknown term symbol '" + name + "'");
        q.rhs.add(*t, k);
    }
    for (auto it = q.lhs.begin(); it != q.lhs.end();)
        it = sgn(it->second) == 0 ? q.lhs.erase(it) : std::next(it);
    return q;
}

// --- LinearSystem ------------------------------------------------------------

void LinearSystem::add(Inequality q) {
    q = canonical(std::move(q));
    if (q.lhs.empty() && q.rhs.is_constant() && sgn(q.rhs.constant()) >= 0) return;
    if (q.lhs.size() == 1 && sgn(q.lhs.begin()->second) < 0 && q.rhs.is_zero()) {
        nonneg.insert(q.lhs.begin()->first);
        return;
    }
    if (!contains(q)) rows.push_back(std::move(q));
}

bool LinearSystem::contains(const Inequality& q) const {
    return std::find(rows.begin(), rows.end(), q) != rows.end();
}

std::set<RateVar> LinearSystem::variables() const {
    std::set<RateVar> vars(nonneg.begin(), nonneg.end());
    for (const auto& r : rows)
        for (const auto& [v, k] : r.lhs) vars.insert(v);
    return vars;
}

std::set<TermSymbol> LinearSystem::symbols() const {
    std::set<TermSymbol> out;
    for (const auto& r : rows)
        for (const auto& [t, k] : r.rhs.terms()) out.insert(t);
    return out;
}

void LinearSystem::sort() { std::sort(rows.begin(), rows.end(), canonical_less); }

std::string LinearSystem::to_string() const {
    std::string s;
    for (const auto& r : rows) s += r.to_string() + "\n";
    if (!nonneg.empty()) {
        s += "nonneg:";
        for (auto v : nonneg) s += " " + std::string(icr::to_string(v));
        s += "\n";
    }
    return s;
}

LinearSystem make_system(std::initializer_list<std::string_view> rows, std::set<RateVar> nonneg) {
    LinearSystem s;
    s.nonneg = std::move(nonneg);
    for (auto r : rows) s.add(parse_inequality(r));
    return s;
}

// --- axioms ------------------------------------------------------------------

AxiomSet axioms_chain() {
    AxiomSet set{"chain", 1, {}};
    // Chain-rule and independent-common-message facts among the lowercase terms.
    for (auto t : {"a <= d", "b <= d", "a <= e", "c <= e", "b <= f", "c <= f", "d <= g", "e <= g",
                   "f <= g", "g + a <= d + e", "g + b <= d + f", "g <= d + c", "e <= a + c", "f <= b + c"})
        add_sided(set.facts, t);
    // T-rate bound facts; the binning correction rho is absorbed into B, C, F.
    for (auto t : {"d <= a + B", "g <= e + B", "g <= a + F", "B <= F", "C <= F", "F <= B + C",
                   "g + B <= d + F", "g <= d + C", "e <= a + C"}) {
        add_sided(set.facts, t);
        std::string lower(t);
        for (auto& ch : lower)
            if (ch == 'B' || ch == 'C' || ch == 'F') ch = static_cast<char>(std::tolower(ch));
        add_sided(set.facts, lower, true);
    }
    return set;
}

AxiomSet axioms_hk_indep() {
    AxiomSet set = axioms_chain();
    set.id = "hk-indep";
    for (auto t : {"c + g <= e + f", "C + g <= e + F", "C <= e"}) add_sided(set.facts, t, true);
    return set;
}

std::optional<AxiomSet> axiom_set(std::string_view id) {
    if (id == "chain") return axioms_chain();
    if (id == "hk-indep") return axioms_hk_indep();
    return std::nullopt;
}

// --- transformations -------------------------------------------------------

LinearSystem fm_eliminate(const LinearSystem& system, RateVar v) {
    std::vector<const Inequality*> upper, lower;
    LinearSystem out;
    out.nonneg = system.nonneg;
    out.nonneg.erase(v);
    Inequality v_nonneg;
    v_nonneg.lhs[v] = -1;
    if (system.nonneg.count(v)) lower.push_back(&v_nonneg);
    for (const auto& r : system.rows) {
        int s = sgn(r.coeff(v));
        if (s > 0)
            upper.push_back(&r);
        else if (s < 0)
            lower.push_back(&r);
        else
            out.add(r);
    }
    for (const auto* up : upper)
        for (const auto* lo : lower) {
            Rational p = up->coeff(v);
            Rational n = -lo->coeff(v);
            Inequality q;
            for (const auto& [x, k] : up->lhs) q.lhs[x] += k * n;
            for (const auto& [x, k] : lo->lhs) q.lhs[x] += k * p;
            q.lhs.erase(v);
            q.rhs = up->rhs * n + lo->rhs * p;
            out.add(std::move(q));
        }
    return out;
}

LinearSystem substitute_rate_sums(const LinearSystem& system) {
    auto vars = system.variables();
    if (vars.count(RateVar::R1) || vars.count(RateVar::R2))
        throw std::invalid_argument("substitute_rate_sums: system already contains R variables");
    LinearSystem out;
    for (const auto& r : system.rows) {
        Inequality q;
        q.rhs = r.rhs;
        for (const auto& [v, k] : r.lhs) {
            if (v == RateVar::S1) {
                q.lhs[RateVar::R1] += k;
                q.lhs[RateVar::T1] -= k;
            } else if (v == RateVar::S2) {
                q.lhs[RateVar::R2] += k;
                q.lhs[RateVar::T2] -= k;
            } else {
                q.lhs[v] += k;
            }
        }
        out.add(std::move(q));
    }
    out.add(parse_inequality("T1 - R1 <= 0"));
    out.add(parse_inequality("T2 - R2 <= 0"));
    out.nonneg = {RateVar::R1, RateVar::R2, RateVar::T1, RateVar::T2};
    for (auto v : system.nonneg)
        if (v != RateVar::S1 && v != RateVar::S2) out.nonneg.insert(v);
    return out;
}

LinearSystem substitute_symbols(const LinearSystem& system, const std::map<TermSymbol, Combo>& map) {
    LinearSystem out;
    out.nonneg = system.nonneg;
    for (const auto& r : system.rows) {
        Inequality q;
        q.lhs = r.lhs;
        q.rhs = Combo(r.rhs.constant());
        for (const auto& [t, k] : r.rhs.terms()) {
            auto it = map.find(t);
            if (it == map.end())
                q.rhs.add(t, k);
            else
                q.rhs += it->second * k;
        }
        out.add(std::move(q));
    }
    return out;
}

LinearSystem bind_symbols(const LinearSystem& system, const Binding& binding) {
    LinearSystem out;
    out.nonneg = system.nonneg;
    for (const auto& r : system.rows) {
        Inequality q;
        q.lhs = r.lhs;
        q.rhs = Combo(r.rhs.evaluate(binding));
        out.add(std::move(q));
    }
    return out;
}

// --- redundancy ------------------------------------------------------------

std::optional<Certificate> implied_by(const Inequality& target, std::span<const Inequality> rows,
                                      const std::set<RateVar>& nonneg, std::span<const Fact> facts) {
    // Coordinates: every rate variable and term symbol that occurs anywhere.
    std::map<Coord, std::size_t> coord;
    auto note_rate = [&](RateVar v) { coord.emplace(Coord{true, static_cast<std::size_t>(v)}, 0); };
    auto note_term = [&](TermSymbol t) { coord.emplace(Coord{false, index_of(t)}, 0); };
    auto note = [&](const Inequality& q) {
        for (const auto& [v, k] : q.lhs) note_rate(v);
        for (const auto& [t, k] : q.rhs.terms()) note_term(t);
    };
    note(target);
    for (const auto& r : rows) note(r);
    for (auto v : nonneg) note_rate(v);
    for (const auto& f : facts)
        for (const auto& [t, k] : f.combo.terms()) note_term(t);
    std::size_t m = 0;
    for (auto& [c, i] : coord) i = m++;

    // Columns: rows, variable nonnegativity, term nonnegativity, facts.
    struct Column {
        std::vector<std::pair<std::size_t, Rational>> entries;
        Rational cost;
    };
    std::vector<Column> cols;
    auto row_column = [&](const Inequality& q) {
        Column c;
        for (const auto& [v, k] : q.lhs) c.entries.emplace_back(coord.at({true, static_cast<std::size_t>(v)}), k);
        for (const auto& [t, k] : q.rhs.terms()) c.entries.emplace_back(coord.at({false, index_of(t)}), -k);
        c.cost = q.rhs.constant();
        return c;
    };
    for (const auto& r : rows) cols.push_back(row_column(r));
    for (auto v : nonneg) cols.push_back({{{coord.at({true, static_cast<std::size_t>(v)}), Rational(-1)}}, 0});
    for (const auto& [c, i] : coord)
        if (!c.is_rate) cols.push_back({{{i, Rational(-1)}}, 0});
    const std::size_t first_fact = cols.size();
    for (const auto& f : facts) {
        Column c;
        for (const auto& [t, k] : f.combo.terms()) c.entries.emplace_back(coord.at({false, index_of(t)}), -k);
        c.cost = f.combo.constant();
        cols.push_back(std::move(c));
    }

    lp::Matrix a(m, std::vector<Rational>(cols.size()));
    std::vector<Rational> cost(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (const auto& [i, k] : cols[j].entries) a[i][j] += k;
        cost[j] = cols[j].cost;
    }
    Column goal = row_column(target);
    std::vector<Rational> b(m);
    for (const auto& [i, k] : goal.entries) b[i] += k;

    auto res = lp::minimize_equality(a, b, cost);
    if (res.status == lp::Status::Infeasible) return std::nullopt;
    Certificate cert;
    if (res.status == lp::Status::Optimal) {
        if (res.objective > goal.cost) return std::nullopt;
        for (std::size_t j = 0; j < rows.size(); ++j)
            if (sgn(res.x[j]) > 0) cert.rows.push_back(j);
        for (std::size_t j = first_fact; j < cols.size(); ++j)
            if (sgn(res.x[j]) > 0) cert.axioms.push_back(facts[j - first_fact].name);
    }
    return cert;
}

std::vector<std::string> PruneResult::axioms_used() const {
    std::set<std::string> names;
    for (const auto& r : removed) names.insert(r.axioms.begin(), r.axioms.end());
    return {names.begin(), names.end()};
}

PruneResult prune_redundant(const LinearSystem& system, const AxiomSet& axioms) {
    std::vector<Inequality> kept;
    for (const auto& r : system.rows) kept.push_back(canonical(r));
    std::stable_sort(kept.begin(), kept.end(), canonical_less);

    PruneResult out;
    std::vector<Inequality> order = kept;
    for (const auto& q : order) {
        auto pos = std::find(kept.begin(), kept.end(), q);
        std::vector<Inequality> others(kept.begin(), pos);
        others.insert(others.end(), std::next(pos), kept.end());
        if (auto cert = implied_by(q, others, system.nonneg, axioms.facts)) {
            Removal rm{q, {}, cert->axioms};
            for (auto i : cert->rows) rm.supports.push_back(others[i]);
            out.removed.push_back(std::move(rm));
            kept.erase(pos);
        }
    }
    out.system.nonneg = system.nonneg;
    out.system.rows = std::move(kept);
    return out;
}

SystemDiff system_equal(const LinearSystem& a, const LinearSystem& b) {
    if (a.variables() != b.variables())
        throw std::invalid_argument("system_equal: systems use different rate variables");
    SystemDiff d;
    auto ca = a, cb = b;
    for (auto& r : ca.rows) r = canonical(r);
    for (auto& r : cb.rows) r = canonical(r);
    for (const auto& r : ca.rows)
        if (!cb.contains(r)) d.only_in_first.push_back(r);
    for (const auto& r : cb.rows)
        if (!ca.contains(r)) d.only_in_second.push_back(r);
    std::sort(d.only_in_first.begin(), d.only_in_first.end(), canonical_less);
    std::sort(d.only_in_second.begin(), d.only_in_second.end(), canonical_less);
    d.equal = d.only_in_first.empty() && d.only_in_second.empty();
    return d;
}

// --- derivations -------------------------------------------------------------

std::string_view to_string(DerivationId id) {
    switch (id) {
        case DerivationId::HK: return "hk";
        case DerivationId::HK_MODIFIED: return "hk-mod";
        case DerivationId::CMG: return "cmg";
        case DerivationId::HOD: return "hod";
    }
    return "?";
}

std::optional<DerivationId> parse_derivation(std::string_view name) {
    for (auto id : {DerivationId::HK, DerivationId::HK_MODIFIED, DerivationId::CMG, DerivationId::HOD})
        if (to_string(id) == name) return id;
    return std::nullopt;
}

Derivation derive_region(DerivationId id, const AxiomSet& axioms) {
    Derivation d{id, {}, {}, {}};
    switch (id) {
        case DerivationId::HK: d.quadruple = build_system(RegionId::HK_Q); break;
        case DerivationId::HK_MODIFIED: d.quadruple = hk_q_without_cross_common_bounds(); break;
        case DerivationId::CMG: d.quadruple = build_system(RegionId::CMG_Q); break;
        case DerivationId::HOD: d.quadruple = build_system(RegionId::HOD_Q); break;
    }
    auto sys = substitute_rate_sums(d.quadruple);
    sys = fm_eliminate(sys, RateVar::T1);
    sys = fm_eliminate(sys, RateVar::T2);
    d.eliminated = sys;
    if (id == DerivationId::HOD || id == DerivationId::CMG) {
        AxiomSet usable = axioms;
        std::erase_if(usable.facts, [](const Fact& f) { return f.needs_independence; });
        d.pruned = prune_redundant(sys, usable);
    } else {
        d.pruned = prune_redundant(sys, axioms);
    }
    return d;
}

}  // namespace icr
