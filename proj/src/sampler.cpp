#include "icr/sampler.hpp"

#include <algorithm>
#include <future>

#include "icr/regions.hpp"

namespace icr {

namespace {

void fill_rows(Table& t, Rng& rng) {
    const std::size_t len = t.row_length();
    for (std::size_t r = 0; r < t.rows(); ++r) {
        auto row = t.row(r);
        double sum = 0;
        for (std::size_t k = 0; k < len; ++k) sum += row[k] = rng.uniform01();
        for (auto& p : row) p /= sum;
    }
}

void mix_rows(Table& t, double step, Rng& rng) {
    if (t.empty()) return;
    Table fresh(t.shape, t.outcome_rank);
    fill_rows(fresh, rng);
    for (std::size_t r = 0; r < t.rows(); ++r) {
        auto row = t.row(r);
        auto f = fresh.row(r);
        double sum = 0;
        for (std::size_t k = 0; k < row.size(); ++k) sum += row[k] = (1 - step) * row[k] + step * f[k];
        for (auto& p : row) p /= sum;
    }
}

Rational region_measure(const HPoly& p, Objective o) {
    if (o == Objective::AreaGap) return area2(p);
    auto m = maximize(p, {1, 1});
    return m ? *m : Rational(0);
}

RestartTrace run_restart(const SearchConfig& cfg, std::size_t restart, FactorSpec& best_spec) {
    Rng rng(derive_seed(cfg.seed, restart));
    FactorSpec current = cfg.start ? lift_to_hod16(*cfg.start)
                                   : sample_spec(cfg.alphabets, Form::HOD16, rng.engine()());
    Rational value = objective_value(current, cfg.objective);
    RestartTrace trace;
    trace.restart = restart;
    trace.best_so_far.push_back(value);
    for (std::size_t it = 1; it < cfg.budget; ++it) {
        FactorSpec candidate = perturb(current, cfg.step, rng);
        Rational v = objective_value(candidate, cfg.objective);
        if (v > value) {
            value = v;
            current = std::move(candidate);
        }
        trace.best_so_far.push_back(value);
    }
    trace.best = value;
    best_spec = std::move(current);
    return trace;
}

}  // namespace

double Rng::uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer over a combination of both inputs
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

FactorSpec sample_spec(const AlphabetSpec& alphabets, Form form, std::uint64_t seed) {
    using V = VariableId;
    FactorSpec s;
    s.form = form;
    s.alphabets = alphabets;
    auto& a = s.alphabets;
    if (form == Form::CMG9) {
        a[V::U1] = a[V::X1];
        a[V::U2] = a[V::X2];
    }
    const std::size_t nQ = a[V::Q], nU1 = a[V::U1], nW1 = a[V::W1], nU2 = a[V::U2], nW2 = a[V::W2];
    s.q = Table({nQ});
    s.w1 = Table({nQ, nW1});
    s.w2 = Table({nQ, nW2});
    switch (form) {
        case Form::HK2:
            s.u1 = Table({nQ, nU1});
            s.u2 = Table({nQ, nU2});
            break;
        case Form::HOD16:
        case Form::General1:
        case Form::CMG9:
            s.u1 = Table({nQ, nW1, nU1});
            s.u2 = Table({nQ, nW2, nU2});
            break;
    }
    if (form != Form::CMG9) {
        s.x1 = Table({nQ, nU1, nW1, a[V::X1]});
        s.x2 = Table({nQ, nU2, nW2, a[V::X2]});
    }
    s.channel = Table({a[V::X1], a[V::X2], a[V::Y1], a[V::Y2]}, 2);

    Rng rng(seed);
    for (Table* t : {&s.q, &s.w1, &s.w2, &s.u1, &s.u2, &s.x1, &s.x2, &s.channel})
        if (!t->empty()) fill_rows(*t, rng);
    validate(s);
    return s;
}

FactorSpec lift_to_hod16(const FactorSpec& spec) {
    validate(spec);
    if (spec.form == Form::HOD16 || spec.form == Form::General1) return spec;
    if (spec.form != Form::HK2)
        throw std::invalid_argument("lift_to_hod16: expected an hk2 or hod16 spec, got " +
                                    std::string(to_string(spec.form)));
    using V = VariableId;
    const auto& a = spec.alphabets;
    auto lift = [&](const Table& u, std::size_t nW) {
        const std::size_t nQ = a[V::Q], nU = u.shape[1];
        Table t({nQ, nW, nU});
        for (std::size_t q = 0; q < nQ; ++q)
            for (std::size_t w = 0; w < nW; ++w)
                for (std::size_t k = 0; k < nU; ++k) t.data[(q * nW + w) * nU + k] = u.data[q * nU + k];
        return t;
    };
    FactorSpec out = spec;
    out.form = Form::HOD16;
    out.u1 = lift(spec.u1, a[V::W1]);
    out.u2 = lift(spec.u2, a[V::W2]);
    return out;
}

FactorSpec perturb(const FactorSpec& spec, double step, Rng& rng) {
    FactorSpec out = spec;
    for (Table* t : {&out.q, &out.w1, &out.w2, &out.u1, &out.u2, &out.x1, &out.x2, &out.channel})
        mix_rows(*t, step, rng);
    return out;
}

std::string_view to_string(Objective o) { return o == Objective::AreaGap ? "area" : "sumrate"; }

std::optional<Objective> parse_objective(std::string_view name) {
    if (name == "area") return Objective::AreaGap;
    if (name == "sumrate") return Objective::SumRateGap;
    return std::nullopt;
}

void validate(const SearchConfig& cfg) {
    if (cfg.budget < 1) throw std::invalid_argument("search: budget must be at least 1");
    if (cfg.restarts < 1) throw std::invalid_argument("search: restarts must be at least 1");
    if (!(cfg.step > 0 && cfg.step < 1)) throw std::invalid_argument("search: step must lie in (0, 1)");
    if (cfg.start)
        validate(*cfg.start);
    else
        for (auto v : kAllVariables)
            if (cfg.alphabets[v] == 0) throw std::invalid_argument("search: alphabet sizes must be positive");
}

Rational objective_value(const FactorSpec& spec, Objective objective) {
    auto hod = region_for(spec, RegionId::HOD_R);
    auto hk = region_for(independence_projection(spec), RegionId::HK_R);
    return region_measure(hod, objective) - region_measure(hk, objective);
}

SearchResult improvement_search(const SearchConfig& cfg) {
    validate(cfg);
    std::vector<FactorSpec> specs(cfg.restarts);
    std::vector<std::future<RestartTrace>> jobs;
    for (std::size_t r = 0; r < cfg.restarts; ++r)
        jobs.push_back(std::async(std::launch::async, run_restart, std::cref(cfg), r, std::ref(specs[r])));

    SearchResult res;
    for (auto& j : jobs) res.restarts.push_back(j.get());
    for (const auto& t : res.restarts)
        if (t.restart == 0 || t.best > res.objective) {
            res.objective = t.best;
            res.best_restart = t.restart;
        }
    res.best_spec = specs[res.best_restart];
    res.trace = res.restarts.front().best_so_far;
    for (const auto& t : res.restarts)
        for (std::size_t i = 0; i < cfg.budget; ++i) res.trace[i] = std::max(res.trace[i], t.best_so_far[i]);
    res.hod_vertices = vertices2(region_for(res.best_spec, RegionId::HOD_R));
    res.hk_vertices = vertices2(region_for(independence_projection(res.best_spec), RegionId::HK_R));
    return res;
}

}  // namespace icr
