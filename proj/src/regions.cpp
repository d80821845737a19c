#include "icr/regions.hpp"

#include <array>
#include <string>

namespace icr {

namespace {

const std::set<RateVar> kQuad = {RateVar::S1, RateVar::T1, RateVar::S2, RateVar::T2};
const std::set<RateVar> kRate = {RateVar::R1, RateVar::R2};

constexpr std::array<std::pair<RegionId, std::string_view>, 8> kRegionNames = {{
    {RegionId::HK_Q, "HK_Q"},
    {RegionId::HK_R, "HK_R"},
    {RegionId::HK_R_MODIFIED, "HK_R_MODIFIED"},
    {RegionId::CMG_Q, "CMG_Q"},
    {RegionId::CMG_R, "CMG_R"},
    {RegionId::COMPACT_R, "COMPACT_R"},
    {RegionId::HOD_Q, "HOD_Q"},
    {RegionId::HOD_R, "HOD_R"},
}};

}  // namespace

std::string_view to_string(RegionId id) {
    for (const auto& [r, name] : kRegionNames)
        if (r == id) return name;
    return "?";
}

std::optional<RegionId> parse_region(std::string_view name) {
    for (const auto& [r, n] : kRegionNames)
        if (n == name) return r;
    return std::nullopt;
}

LinearSystem build_system(RegionId id) {
    switch (id) {
        case RegionId::HK_Q:
            return make_system({"S1 <= a1", "T1 <= b1", "T2 <= c1", "S1 + T1 <= d1", "S1 + T2 <= e1",
                                "T1 + T2 <= f1", "S1 + T1 + T2 <= g1", "S2 <= a2", "T2 <= b2", "T1 <= c2",
                                "S2 + T2 <= d2", "S2 + T1 <= e2", "T2 + T1 <= f2", "S2 + T2 + T1 <= g2"},
                               kQuad);
        case RegionId::HK_R:
            return make_system({"R1 <= d1", "R1 <= a1 + c2", "R2 <= d2", "R2 <= a2 + c1", "R1 + R2 <= a1 + g2",
                                "R1 + R2 <= a2 + g1", "R1 + R2 <= e1 + e2", "2R1 + R2 <= a1 + g1 + e2",
                                "2R2 + R1 <= a2 + g2 + e1"},
                               kRate);
        case RegionId::HK_R_MODIFIED:
            return make_system({"R1 <= d1", "R1 <= a1 + e2", "R1 <= a1 + f2", "R2 <= d2", "R2 <= a2 + e1",
                                "R2 <= a2 + f1", "R1 + R2 <= a2 + g1", "R1 + R2 <= a1 + g2", "R1 + R2 <= e1 + e2",
                                "2R1 + R2 <= a1 + g1 + e2", "2R1 + R2 <= 2a1 + e2 + f2",
                                "2R2 + R1 <= a2 + g2 + e1", "2R2 + R1 <= 2a2 + e1 + f1"},
                               kRate);
        case RegionId::CMG_Q:
            return make_system({"S1 <= a1", "S1 + T1 <= d1", "S1 + T2 <= e1", "S1 + T1 + T2 <= g1", "S2 <= a2",
                                "S2 + T2 <= d2", "S2 + T1 <= e2", "S2 + T2 + T1 <= g2"},
                               kQuad);
        case RegionId::CMG_R:
            return make_system({"R1 <= d1", "R1 <= a1 + e2", "R2 <= d2", "R2 <= a2 + e1", "R1 + R2 <= a1 + g2",
                                "R1 + R2 <= a2 + g1", "R1 + R2 <= e1 + e2", "2R1 + R2 <= a1 + g1 + e2",
                                "2R2 + R1 <= a2 + g2 + e1"},
                               kRate);
        case RegionId::COMPACT_R:
            return make_system({"R1 <= d1", "R2 <= d2", "R1 + R2 <= a1 + g2", "R1 + R2 <= a2 + g1",
                                "R1 + R2 <= e1 + e2", "2R1 + R2 <= a1 + g1 + e2", "2R2 + R1 <= a2 + g2 + e1"},
                               kRate);
        case RegionId::HOD_Q:
            return make_system({"S1 <= a1", "T1 <= B1", "T2 <= C1", "S1 + T1 <= d1", "S1 + T2 <= e1",
                                "T1 + T2 <= F1", "S1 + T1 + T2 <= g1", "S2 <= a2", "T2 <= B2", "T1 <= C2",
                                "S2 + T2 <= d2", "S2 + T1 <= e2", "T2 + T1 <= F2", "S2 + T2 + T1 <= g2"},
                               kQuad);
        case RegionId::HOD_R:
            return make_system({"R1 <= d1", "R1 <= a1 + C2", "R1 <= a1 + e2", "R2 <= d2", "R2 <= a2 + C1",
                                "R2 <= a2 + e1", "R1 + R2 <= a2 + g1", "R1 + R2 <= a1 + g2", "R1 + R2 <= e1 + e2",
                                "2R1 + R2 <= a1 + g1 + e2", "2R1 + R2 <= 2a1 + e2 + F2",
                                "2R2 + R1 <= a2 + g2 + e1", "2R2 + R1 <= 2a2 + e1 + F1"},
                               kRate);
    }
    throw std::invalid_argument("build_system: unknown region");
}

LinearSystem hk_r_with_redundant_rows() {
    auto s = build_system(RegionId::HK_R);
    s.add(parse_inequality("2R1 + R2 <= 2a1 + e2 + f2"));
    s.add(parse_inequality("2R2 + R1 <= 2a2 + e1 + f1"));
    return s;
}

LinearSystem hk_q_without_cross_common_bounds() {
    auto s = build_system(RegionId::HK_Q);
    auto drop = [&](std::string_view text) {
        auto q = canonical(parse_inequality(text));
        std::erase(s.rows, q);
    };
    drop("T2 <= c1");
    drop("T1 <= c2");
    return s;
}

bool form_allowed(RegionId id, Form form) {
    switch (id) {
        case RegionId::HK_Q:
        case RegionId::HK_R:
        case RegionId::HK_R_MODIFIED: return form == Form::HK2;
        case RegionId::CMG_Q:
        case RegionId::CMG_R: return form == Form::CMG9;
        case RegionId::COMPACT_R: return form == Form::HK2 || form == Form::CMG9;
        case RegionId::HOD_Q:
        case RegionId::HOD_R: return form == Form::HOD16 || form == Form::General1 || form == Form::HK2;
    }
    return false;
}

HPoly region_for(const Binding& binding, RegionId id) { return icr::bind(build_system(id), binding); }

HPoly region_for(const FactorSpec& spec, RegionId id) {
    if (!form_allowed(id, spec.form)) {
        std::string msg = "region " + std::string(to_string(id)) + " is not defined for form " +
                          std::string(to_string(spec.form));
        if (spec.form == Form::HOD16 || spec.form == Form::General1)
            msg += "; apply independence_projection first to obtain an hk2 spec";
        throw FormMismatch(msg);
    }
    return region_for(snap_terms(eval_terms(build_joint(spec))), id);
}

}  // namespace icr
