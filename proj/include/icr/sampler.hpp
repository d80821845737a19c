#pragma once

// Seeded FactorSpec generation and a random-restart hill climb for specs whose
// HOD (R1, R2) region exceeds the HK region of their independence
// projection.

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "icr/dist.hpp"
#include "icr/polytope.hpp"

namespace icr {

// mt19937_64 with doubles in (0, 1) taken from the top 53 bits of each draw.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform01();
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// Independent stream for item `index` of a run seeded by `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Draw order: q, w1, w2, u1, u2, x1, x2, channel; each table row by row, each
// row from independent uniform(0,1) draws divided by their sum. CMG9 copies
// the X alphabet sizes onto the U axes and has no encoder tables.
FactorSpec sample_spec(const AlphabetSpec& alphabets, Form form, std::uint64_t seed);

// An HK2 spec rewritten with p(u|q,w) = p(u|q); other forms are returned as is
// after a form check (HOD16 and GENERAL1 only).
FactorSpec lift_to_hod16(const FactorSpec& spec);

// Every factor row (channel included) becomes (1 - step) row + step fresh.
FactorSpec perturb(const FactorSpec& spec, double step, Rng& rng);

enum class Objective { AreaGap, SumRateGap };

std::string_view to_string(Objective o);
std::optional<Objective> parse_objective(std::string_view name);  // "area" | "sumrate"

struct SearchConfig {
    AlphabetSpec alphabets;
    std::size_t budget = 100;    // objective evaluations per restart
    std::size_t restarts = 1;
    double step = 0.25;
    std::uint64_t seed = 0;
    Objective objective = Objective::AreaGap;
    std::optional<FactorSpec> start;  // HK2 or HOD16; every restart starts here
};

void validate(const SearchConfig& cfg);

struct RestartTrace {
    std::size_t restart = 0;
    std::vector<Rational> best_so_far;  // one entry per evaluation
    Rational best;
};

struct SearchResult {
    FactorSpec best_spec;            // HOD16
    Rational objective;
    std::size_t best_restart = 0;
    VertexList2 hod_vertices;
    VertexList2 hk_vertices;         // of the independence projection
    std::vector<Rational> trace;     // best over all restarts, per iteration
    std::vector<RestartTrace> restarts;
};

// Gap of a HOD16 (or GENERAL1) spec against its independence projection.
Rational objective_value(const FactorSpec& spec, Objective objective);

SearchResult improvement_search(const SearchConfig& cfg);

}  // namespace icr
