#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "icr/dist.hpp"
#include "icr/sampler.hpp"

namespace fx {

inline icr::AlphabetSpec alphabets(std::size_t n) {
    icr::AlphabetSpec a;
    for (auto v : icr::kAllVariables) a[v] = n;
    return a;
}

inline icr::FactorSpec degenerate(icr::Form form) { return icr::sample_spec(alphabets(1), form, 1); }

inline icr::FactorSpec seeded(icr::Form form, std::uint64_t seed, std::size_t n = 2) {
    return icr::sample_spec(alphabets(n), form, seed);
}

// Q, W trivial; U_i uniform bits; X_i = U_i; Y_i = X_i.
inline icr::FactorSpec noiseless_orthogonal() {
    using V = icr::VariableId;
    auto a = alphabets(1);
    for (auto v : {V::U1, V::U2, V::X1, V::X2, V::Y1, V::Y2}) a[v] = 2;
    icr::FactorSpec s = icr::sample_spec(a, icr::Form::HK2, 3);
    s.u1.data = {0.5, 0.5};
    s.u2.data = {0.5, 0.5};
    s.x1.data = {1, 0, 0, 1};
    s.x2.data = {1, 0, 0, 1};
    // channel [x1][x2][y1][y2]: y1 = x1, y2 = x2
    std::fill(s.channel.data.begin(), s.channel.data.end(), 0.0);
    for (std::size_t x1 = 0; x1 < 2; ++x1)
        for (std::size_t x2 = 0; x2 < 2; ++x2) s.channel.data[((x1 * 2 + x2) * 2 + x1) * 2 + x2] = 1;
    return s;
}

// Fresh directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& tag) {
    static std::mt19937_64 g(std::random_device{}());
    auto p = std::filesystem::temp_directory_path() / ("icr_" + tag + "_" + std::to_string(g()));
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace fx
