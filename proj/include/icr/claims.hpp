#pragma once

// Batch checks of the region comparisons on seeded distributions. Each report
// carries enough witness data to redo a check by hand.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "icr/dist.hpp"
#include "icr/io.hpp"

namespace icr {

struct SampleResult {
    std::size_t index = 0;
    bool pass = false;
    std::string note;
    io::json witness;
    std::optional<io::json> spec;  // set when the sample fails
};

struct ClaimReport {
    std::string id;
    bool hard = true;  // exploratory reports never fail a run
    std::string tolerance;
    std::uint64_t seed = 0;
    std::vector<SampleResult> samples;  // sorted by index
    io::json summary = io::json::object();

    std::size_t passed() const;
    std::size_t failed() const;
    bool ok() const { return !hard || failed() == 0; }
    io::json to_json() const;
};

// All-binary alphabets used by the sampled claims.
AlphabetSpec binary_alphabets();

// Spec for sample `index` of a run: sample_spec(binary, form, derive_seed(seed, index)).
FactorSpec claim_sample(Form form, std::uint64_t seed, std::size_t index);

ClaimReport claim_reduction_independence(std::size_t n, std::uint64_t seed);
ClaimReport claim_reduction_independence(std::span<const FactorSpec> specs);

ClaimReport claim_redundancy_relations(std::size_t n, std::uint64_t seed);
ClaimReport claim_redundancy_relations(std::span<const FactorSpec> specs);

ClaimReport claim_cmg_subset_hod(std::size_t n, std::uint64_t seed);
ClaimReport claim_cmg_subset_hod(std::span<const FactorSpec> specs);

ClaimReport claim_hod_extra_terms(std::size_t n, std::uint64_t seed);
ClaimReport claim_hod_extra_terms(std::span<const FactorSpec> specs);

ClaimReport claim_fm_reproduction();

// Exploratory: per-distribution comparison of the HK and CMG (R1, R2) regions
// with the compact seven-inequality description.
ClaimReport report_compact_equivalence(std::size_t n, std::uint64_t seed);
// Exploratory: observed relations among a, c, e per receiver.
ClaimReport report_common_term_relations(std::size_t n, std::uint64_t seed);

// Claim ids accepted by run_claims, in report order.
std::vector<std::string_view> claim_ids();
bool is_hard_claim(std::string_view id);

// `id` is one of claim_ids() or "all". Throws std::invalid_argument.
std::vector<ClaimReport> run_claims(std::string_view id, std::size_t n, std::uint64_t seed);

}  // namespace icr
