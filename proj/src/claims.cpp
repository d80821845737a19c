#include "icr/claims.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "icr/regions.hpp"
#include "icr/sampler.hpp"

namespace icr {

namespace {

using io::json;
using T = TermSymbol;
using V = VariableId;

constexpr double kTermTol = 1e-9;
constexpr double kRhoTol = 1e-12;

using SampleFn = std::function<SampleResult(const FactorSpec&)>;

// Runs fn on every spec on a small thread pool; results keep spec order.
std::vector<SampleResult> evaluate(std::span<const FactorSpec> specs, const SampleFn& fn) {
    std::vector<SampleResult> out(specs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < specs.size();) {
            try {
                out[i] = fn(specs[i]);
            } catch (const std::exception& e) {
                out[i] = SampleResult{};
                out[i].note = std::string("error: ") + e.what();
            }
            out[i].index = i;
            if (!out[i].pass) out[i].spec = io::to_json(specs[i]);
        }
    };
    unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                       static_cast<unsigned>(std::max<std::size_t>(1, specs.size()))));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return out;
}

std::vector<FactorSpec> sample_specs(Form form, std::size_t n, std::uint64_t seed) {
    std::vector<FactorSpec> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(claim_sample(form, seed, i));
    return v;
}

SampleResult form_violation(const FactorSpec& spec, std::string_view expected) {
    SampleResult r;
    r.pass = false;
    r.note = "form violation: expected " + std::string(expected) + ", got " + std::string(to_string(spec.form));
    r.witness = {{"form", std::string(to_string(spec.form))}};
    return r;
}

json rows_json(const std::vector<Inequality>& rows) {
    json a = json::array();
    for (const auto& q : rows) a.push_back(q.to_string());
    return a;
}

double cmi(const JointDist& j, VarSet a, VarSet b, VarSet c) { return cond_mutual_info(j, a, b, c); }

// --- per-sample checks -------------------------------------------------------

SampleResult check_reduction(const FactorSpec& spec) {
    if (spec.form != Form::HK2) return form_violation(spec, "hk2");
    auto t = eval_terms(build_joint(spec));
    auto binding = snap_terms(t);
    auto hod = region_for(binding, RegionId::HOD_R);
    auto hk = region_for(binding, RegionId::HK_R);
    bool equal = poly_equal(hod, hk, cross_region_eps());

    SampleResult r;
    json w;
    bool terms_ok = true;
    for (auto [rho, b, B, c, C, f, F] : {std::array{T::rho1, T::b1, T::B1, T::c1, T::C1, T::f1, T::F1},
                                         std::array{T::rho2, T::b2, T::B2, T::c2, T::C2, T::f2, T::F2}}) {
        std::string side = std::string(to_string(rho)).substr(3);
        w["rho" + side] = t[rho];
        w["B" + side + "-b" + side] = t[B] - t[b];
        w["C" + side + "-c" + side] = t[C] - t[c];
        w["F" + side + "-f" + side] = t[F] - t[f];
        terms_ok = terms_ok && std::abs(t[rho]) <= kRhoTol && std::abs(t[B] - t[b]) <= kTermTol &&
                   std::abs(t[C] - t[c]) <= kTermTol && std::abs(t[F] - t[f]) <= kTermTol;
    }
    w["hod_vertices"] = io::to_json(vertices2(hod));
    w["hk_vertices"] = io::to_json(vertices2(hk));
    w["regions_equal"] = equal;
    r.witness = std::move(w);
    r.pass = terms_ok && equal;
    if (!terms_ok) r.note = "term identities outside tolerance";
    else if (!equal) r.note = "HOD_R and HK_R differ";
    return r;
}

SampleResult check_redundancy(const FactorSpec& spec) {
    auto joint = build_joint(spec);
    auto t = eval_terms(joint);
    SampleResult r;
    json w;
    bool ok = true;
    for (int side = 1; side <= 2; ++side) {
        VarSet y = {side == 1 ? V::Y1 : V::Y2}, u = {side == 1 ? V::U1 : V::U2}, wv = {side == 1 ? V::W1 : V::W2};
        double plain = cmi(joint, y, u, {V::Q});
        double given_w = cmi(joint, y, u, VarSet{V::Q} | wv);
        auto s = std::to_string(side);
        T c = side == 1 ? T::c1 : T::c2, g = side == 1 ? T::g1 : T::g2;
        T e = side == 1 ? T::e1 : T::e2, f = side == 1 ? T::f1 : T::f2;
        double slack7 = t[e] + t[f] - t[c] - t[g];
        w["I(Y" + s + ";U" + s + "|Q)"] = plain;
        w["I(Y" + s + ";U" + s + "|QW" + s + ")"] = given_w;
        w["private_slack" + s] = given_w - plain;
        w["c" + s + "+g" + s] = t[c] + t[g];
        w["e" + s + "+f" + s] = t[e] + t[f];
        w["independence_slack" + s] = slack7;
        ok = ok && given_w - plain >= -kTermTol && slack7 >= -kTermTol;
    }
    auto binding = snap_terms(t);
    auto nine = icr::bind(build_system(RegionId::HK_R), binding);
    auto eleven = icr::bind(hk_r_with_redundant_rows(), binding);
    bool same = poly_equal(nine, eleven, 0);
    w["weighted_rows_redundant"] = same;
    r.witness = std::move(w);
    if (spec.form != Form::HK2) {
        r.pass = true;
        r.note = "out of contract (form " + std::string(to_string(spec.form)) +
                 "): U and W may be correlated, so violations are expected behaviour";
        r.witness["relations_hold"] = ok;
        return r;
    }
    r.pass = ok && same;
    if (!ok) r.note = "relation violated beyond tolerance";
    else if (!same) r.note = "weighted sum-rate rows change the polytope";
    return r;
}

SampleResult check_cmg_subset(const FactorSpec& spec) {
    if (spec.form != Form::CMG9) return form_violation(spec, "cmg9");
    auto hod_spec = cmg_as_hod16(spec);
    auto cmg_t = eval_terms(build_joint(spec));
    auto hod_t = eval_terms(build_joint(hod_spec));
    auto cq = region_for(snap_terms(cmg_t), RegionId::CMG_Q);
    auto hq = region_for(snap_terms(hod_t), RegionId::HOD_Q);
    auto eps = cross_region_eps();
    bool inside = contains(hq, cq, eps);

    SampleResult r;
    json w;
    w["rho1"] = hod_t[T::rho1];
    w["rho2"] = hod_t[T::rho2];
    w["contained"] = inside;
    w["reverse_contained"] = contains(cq, hq, eps);
    json violations = json::array();
    auto sys = build_system(RegionId::HOD_Q);
    for (std::size_t k = 0; k < hq.rows.size(); ++k) {
        auto m = maximize(cq, hq.rows[k].coef);
        if (m && *m > hq.rows[k].rhs + eps)
            violations.push_back({{"hod_row", sys.rows[k].to_string()},
                                  {"max_over_cmg", to_double(*m)},
                                  {"bound", to_double(hq.rows[k].rhs)}});
    }
    w["violated_rows"] = violations;
    w["rate_regions_contained"] =
        contains(region_for(snap_terms(hod_t), RegionId::HOD_R), region_for(snap_terms(cmg_t), RegionId::CMG_R), eps);
    r.witness = std::move(w);
    r.pass = inside;
    if (!inside) r.note = "CMG_Q is not inside HOD_Q";
    return r;
}

SampleResult check_extra_terms(const FactorSpec& spec) {
    if (spec.form != Form::HOD16 && spec.form != Form::General1 && spec.form != Form::HK2)
        return form_violation(spec, "hod16");
    auto joint = build_joint(spec);
    auto t = eval_terms(joint);
    SampleResult r;
    json w;
    bool ok = true;
    for (int side = 1; side <= 2; ++side) {
        bool one = side == 1;
        VarSet y = {one ? V::Y1 : V::Y2}, u = {one ? V::U1 : V::U2}, wi = {one ? V::W1 : V::W2},
               wo = {one ? V::W2 : V::W1};
        auto s = std::to_string(side);
        double rho = cmi(joint, u, wi, {V::Q});
        T rho_t = one ? T::rho1 : T::rho2;
        w["rho" + s] = t[rho_t];
        w["I(U" + s + ";W" + s + "|Q)"] = rho;
        ok = ok && std::abs(t[rho_t] - rho) <= kTermTol;
        for (auto [lo, up, name] : {std::tuple{one ? T::b1 : T::b2, one ? T::B1 : T::B2, "B"},
                                    std::tuple{one ? T::c1 : T::c2, one ? T::C1 : T::C2, "C"},
                                    std::tuple{one ? T::f1 : T::f2, one ? T::F1 : T::F2, "F"}}) {
            double growth = t[up] - t[lo];
            w[std::string(name) + s + "_growth"] = growth;
            ok = ok && std::abs(growth - rho) <= kTermTol;
        }
        VarSet q = {V::Q};
        const std::array<std::pair<T, double>, 4> hk = {{
            {one ? T::a1 : T::a2, cmi(joint, y, u, q | wi | wo)},
            {one ? T::d1 : T::d2, cmi(joint, y, u | wi, q | wo)},
            {one ? T::e1 : T::e2, cmi(joint, y, u | wo, q | wi)},
            {one ? T::g1 : T::g2, cmi(joint, y, u | wi | wo, q)},
        }};
        for (const auto& [sym, direct] : hk) {
            w[std::string(to_string(sym)) + "_difference"] = t[sym] - direct;
            ok = ok && std::abs(t[sym] - direct) <= kTermTol;
        }
    }
    r.witness = std::move(w);
    r.pass = ok;
    if (!ok) r.note = "term growth differs from I(U;W|Q)";
    return r;
}

SampleResult reproduction_item(std::string_view name, const LinearSystem& derived, const LinearSystem& golden,
                               const PruneResult* pruned) {
    auto d = system_equal(derived, golden);
    SampleResult r;
    r.pass = d.equal;
    r.note = std::string(name);
    r.witness["item"] = std::string(name);
    r.witness["derived_count"] = derived.rows.size();
    r.witness["golden_count"] = golden.rows.size();
    r.witness["only_in_derived"] = rows_json(d.only_in_first);
    r.witness["only_in_golden"] = rows_json(d.only_in_second);
    if (pruned) r.witness["axioms_used"] = pruned->axioms_used();
    return r;
}

ClaimReport make_report(std::string id, bool hard, std::string tolerance, std::uint64_t seed,
                        std::vector<SampleResult> samples) {
    ClaimReport rep;
    rep.id = std::move(id);
    rep.hard = hard;
    rep.tolerance = std::move(tolerance);
    rep.seed = seed;
    rep.samples = std::move(samples);
    return rep;
}

}  // namespace

std::size_t ClaimReport::passed() const {
    return static_cast<std::size_t>(std::count_if(samples.begin(), samples.end(), [](auto& s) { return s.pass; }));
}

std::size_t ClaimReport::failed() const { return samples.size() - passed(); }

io::json ClaimReport::to_json() const {
    json j;
    j["claim"] = id;
    j["hard"] = hard;
    j["tolerance"] = tolerance;
    j["seed"] = seed;
    j["passed"] = passed();
    j["failed"] = failed();
    j["ok"] = ok();
    j["summary"] = summary;
    json s = json::array();
    for (const auto& r : samples) {
        json e;
        e["index"] = r.index;
        e["pass"] = r.pass;
        if (!r.note.empty()) e["note"] = r.note;
        e["witness"] = r.witness;
        if (r.spec) e["spec"] = *r.spec;
        s.push_back(std::move(e));
    }
    j["samples"] = std::move(s);
    return j;
}

AlphabetSpec binary_alphabets() {
    AlphabetSpec a;
    for (auto v : kAllVariables) a[v] = 2;
    return a;
}

FactorSpec claim_sample(Form form, std::uint64_t seed, std::size_t index) {
    return sample_spec(binary_alphabets(), form, derive_seed(seed, index));
}

ClaimReport claim_reduction_independence(std::span<const FactorSpec> specs) {
    return make_report("reduction_independence", true, "|rho| <= 1e-12; |B-b|,|C-c|,|F-f| <= 1e-9; eps = 2^-30", 0,
                       evaluate(specs, check_reduction));
}

ClaimReport claim_reduction_independence(std::size_t n, std::uint64_t seed) {
    auto specs = sample_specs(Form::HK2, n, seed);
    auto r = claim_reduction_independence(specs);
    r.seed = seed;
    return r;
}

ClaimReport claim_redundancy_relations(std::span<const FactorSpec> specs) {
    return make_report("redundancy_relations", true, "slack >= -1e-9; polytope eps = 0", 0,
                       evaluate(specs, check_redundancy));
}

ClaimReport claim_redundancy_relations(std::size_t n, std::uint64_t seed) {
    auto specs = sample_specs(Form::HK2, n, seed);
    auto r = claim_redundancy_relations(specs);
    r.seed = seed;
    return r;
}

ClaimReport claim_cmg_subset_hod(std::span<const FactorSpec> specs) {
    auto rep = make_report("cmg_subset_hod", true, "eps = 2^-30", 0, evaluate(specs, check_cmg_subset));
    std::size_t equal = 0, rate_inside = 0;
    for (const auto& s : rep.samples) {
        if (s.witness.value("contained", false) && s.witness.value("reverse_contained", false)) ++equal;
        if (s.witness.value("rate_regions_contained", false)) ++rate_inside;
    }
    rep.summary["equal_regions"] = equal;
    rep.summary["rate_regions_contained"] = rate_inside;
    return rep;
}

ClaimReport claim_cmg_subset_hod(std::size_t n, std::uint64_t seed) {
    auto specs = sample_specs(Form::CMG9, n, seed);
    auto r = claim_cmg_subset_hod(specs);
    r.seed = seed;
    return r;
}

ClaimReport claim_hod_extra_terms(std::span<const FactorSpec> specs) {
    return make_report("hod_extra_terms", true, "1e-9", 0, evaluate(specs, check_extra_terms));
}

ClaimReport claim_hod_extra_terms(std::size_t n, std::uint64_t seed) {
    auto specs = sample_specs(Form::HOD16, n, seed);
    auto r = claim_hod_extra_terms(specs);
    r.seed = seed;
    return r;
}

ClaimReport claim_fm_reproduction() {
    std::vector<SampleResult> items;
    auto chain = axioms_chain();
    auto indep = axioms_hk_indep();

    auto hk_chain = derive_region(DerivationId::HK, chain);
    items.push_back(reproduction_item("hk_before_independence_pruning", hk_chain.pruned.system,
                                      hk_r_with_redundant_rows(), &hk_chain.pruned));
    auto hk = derive_region(DerivationId::HK, indep);
    items.push_back(reproduction_item("hk", hk.pruned.system, build_system(RegionId::HK_R), &hk.pruned));
    auto mod = derive_region(DerivationId::HK_MODIFIED, chain);
    items.push_back(
        reproduction_item("hk_modified", mod.pruned.system, build_system(RegionId::HK_R_MODIFIED), &mod.pruned));
    auto hod = derive_region(DerivationId::HOD, chain);
    auto hod_item = reproduction_item("hod", hod.pruned.system, build_system(RegionId::HOD_R), &hod.pruned);
    bool kept = hod.pruned.system.contains(canonical(parse_inequality("2R1 + R2 <= 2a1 + e2 + F2"))) &&
                hod.pruned.system.contains(canonical(parse_inequality("2R2 + R1 <= 2a2 + e1 + F1")));
    hod_item.witness["weighted_F_rows_retained"] = kept;
    hod_item.pass = hod_item.pass && kept;
    items.push_back(std::move(hod_item));
    auto cmg = derive_region(DerivationId::CMG, chain);
    items.push_back(reproduction_item("cmg", cmg.pruned.system, build_system(RegionId::CMG_R), &cmg.pruned));

    // Golden HK_R against golden CMG_R: they differ only in the two single-rate
    // bounds through the other receiver.
    {
        auto d = system_equal(build_system(RegionId::HK_R), build_system(RegionId::CMG_R));
        std::vector<Inequality> hk_only = {canonical(parse_inequality("R1 <= a1 + c2")),
                                           canonical(parse_inequality("R2 <= a2 + c1"))};
        std::vector<Inequality> cmg_only = {canonical(parse_inequality("R1 <= a1 + e2")),
                                            canonical(parse_inequality("R2 <= a2 + e1"))};
        std::sort(hk_only.begin(), hk_only.end(), canonical_less);
        std::sort(cmg_only.begin(), cmg_only.end(), canonical_less);
        SampleResult r;
        r.note = "hk_vs_cmg_golden";
        r.pass = d.only_in_first == hk_only && d.only_in_second == cmg_only;
        r.witness["item"] = r.note;
        r.witness["only_in_hk"] = rows_json(d.only_in_first);
        r.witness["only_in_cmg"] = rows_json(d.only_in_second);
        items.push_back(std::move(r));
    }

    // HOD_R with C -> c and F -> f, pruned under independence, gives HK_R.
    {
        std::map<TermSymbol, Combo> lower = {{T::C1, Combo::term(T::c1)}, {T::C2, Combo::term(T::c2)},
                                             {T::F1, Combo::term(T::f1)}, {T::F2, Combo::term(T::f2)},
                                             {T::B1, Combo::term(T::b1)}, {T::B2, Combo::term(T::b2)}};
        auto reduced = prune_redundant(substitute_symbols(build_system(RegionId::HOD_R), lower), indep);
        items.push_back(
            reproduction_item("hod_under_independence", reduced.system, build_system(RegionId::HK_R), &reduced));
    }

    for (std::size_t i = 0; i < items.size(); ++i) items[i].index = i;
    return make_report("fm_reproduction", true, "exact", 0, std::move(items));
}

ClaimReport report_compact_equivalence(std::size_t n, std::uint64_t seed) {
    std::vector<SampleResult> out(n);
    std::size_t hk_equal = 0, cmg_equal = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto hk_spec = claim_sample(Form::HK2, seed, i);
        auto cmg_spec = claim_sample(Form::CMG9, seed, i);
        auto hb = snap_terms(eval_terms(build_joint(hk_spec)));
        auto cb = snap_terms(eval_terms(build_joint(cmg_spec)));
        auto hk = region_for(hb, RegionId::HK_R), hk_compact = region_for(hb, RegionId::COMPACT_R);
        auto cmg = region_for(cb, RegionId::CMG_R), cmg_compact = region_for(cb, RegionId::COMPACT_R);
        SampleResult& r = out[i];
        r.index = i;
        bool forced = contains(hk_compact, hk, 0) && contains(cmg_compact, cmg, 0);
        bool he = contains(hk, hk_compact, 0), ce = contains(cmg, cmg_compact, 0);
        hk_equal += he;
        cmg_equal += ce;
        r.witness["hk_inside_compact"] = contains(hk_compact, hk, 0);
        r.witness["cmg_inside_compact"] = contains(cmg_compact, cmg, 0);
        r.witness["hk_equals_compact"] = he;
        r.witness["cmg_equals_compact"] = ce;
        r.witness["compact_minus_hk_area"] = to_double(area2(hk_compact) - area2(hk));
        r.witness["compact_minus_cmg_area"] = to_double(area2(cmg_compact) - area2(cmg));
        r.pass = forced;
        if (!forced) {
            r.note = "forced containment failed";
            r.spec = io::to_json(hk_spec);
        }
    }
    auto rep = make_report("compact_equivalence", false, "eps = 0", seed, std::move(out));
    rep.summary["hk_equal_to_compact"] = hk_equal;
    rep.summary["cmg_equal_to_compact"] = cmg_equal;
    rep.summary["note"] = "per-distribution data only; equivalence is claimed for the union over distributions";
    return rep;
}

ClaimReport report_common_term_relations(std::size_t n, std::uint64_t seed) {
    std::vector<SampleResult> out(n);
    std::size_t e_le_ac[2] = {0, 0};
    for (std::size_t i = 0; i < n; ++i) {
        auto t = eval_terms(build_joint(claim_sample(Form::HK2, seed, i)));
        SampleResult& r = out[i];
        r.index = i;
        r.pass = true;
        for (int side = 0; side < 2; ++side) {
            T a = side == 0 ? T::a1 : T::a2, c = side == 0 ? T::c1 : T::c2, e = side == 0 ? T::e1 : T::e2;
            auto s = std::to_string(side + 1);
            double gap = t[a] + t[c] - t[e];
            r.witness["a" + s] = t[a];
            r.witness["c" + s] = t[c];
            r.witness["e" + s] = t[e];
            r.witness["a" + s + "+c" + s + "-e" + s] = gap;
            r.witness["e" + s + "<=a" + s + "+c" + s] = gap >= -kTermTol;
            if (gap >= -kTermTol) ++e_le_ac[side];
        }
    }
    auto rep = make_report("common_term_relations", false, "1e-9", seed, std::move(out));
    rep.summary["e1_le_a1_plus_c1"] = e_le_ac[0];
    rep.summary["e2_le_a2_plus_c2"] = e_le_ac[1];
    rep.summary["note"] = "observed data only";
    return rep;
}

std::vector<std::string_view> claim_ids() {
    return {"reduction_independence", "redundancy_relations", "cmg_subset_hod", "hod_extra_terms",
            "fm_reproduction",        "compact_equivalence", "common_term_relations"};
}

bool is_hard_claim(std::string_view id) { return id != "compact_equivalence" && id != "common_term_relations"; }

std::vector<ClaimReport> run_claims(std::string_view id, std::size_t n, std::uint64_t seed) {
    std::vector<ClaimReport> out;
    bool any = false;
    for (auto c : claim_ids()) {
        if (id != "all" && id != c) continue;
        any = true;
        if (c == "reduction_independence") out.push_back(claim_reduction_independence(n, seed));
        else if (c == "redundancy_relations") out.push_back(claim_redundancy_relations(n, seed));
        else if (c == "cmg_subset_hod") out.push_back(claim_cmg_subset_hod(n, seed));
        else if (c == "hod_extra_terms") out.push_back(claim_hod_extra_terms(n, seed));
        else if (c == "fm_reproduction") out.push_back(claim_fm_reproduction());
        else if (c == "compact_equivalence") out.push_back(report_compact_equivalence(n, seed));
        else if (c == "common_term_relations") out.push_back(report_common_term_relations(n, seed));
    }
    if (!any) throw std::invalid_argument("unknown claim \"" + std::string(id) + "\"");
    return out;
}

}  // namespace icr
