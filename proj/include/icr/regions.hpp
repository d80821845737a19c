#pragma once

// The named inequality systems: quadruple (S1, T1, S2, T2) regions and their
// (R1, R2) descriptions, hard-coded as golden data.

#include <optional>
#include <stdexcept>
#include <string_view>

#include "icr/dist.hpp"
#include "icr/polytope.hpp"
#include "icr/symfm.hpp"

namespace icr {

enum class RegionId { HK_Q, HK_R, HK_R_MODIFIED, CMG_Q, CMG_R, COMPACT_R, HOD_Q, HOD_R };

std::string_view to_string(RegionId id);
std::optional<RegionId> parse_region(std::string_view name);

LinearSystem build_system(RegionId id);

// HK_R together with the two weighted sum-rate rows that the independence
// relation c_i + g_i <= e_i + f_i makes redundant.
LinearSystem hk_r_with_redundant_rows();

// HK_Q without the bounds on the other sender's common rate (T2 <= c1,
// T1 <= c2): the starting point of the modified-error derivation.
LinearSystem hk_q_without_cross_common_bounds();

class FormMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Whether a spec of `form` may be bound to region `id`.
bool form_allowed(RegionId id, Form form);

// build_joint -> eval_terms -> snap -> bind. Throws FormMismatch.
HPoly region_for(const FactorSpec& spec, RegionId id);
HPoly region_for(const Binding& binding, RegionId id);

}  // namespace icr
