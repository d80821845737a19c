#include "icr/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>

#include "icr/claims.hpp"
#include "icr/io.hpp"
#include "icr/regions.hpp"
#include "icr/sampler.hpp"

namespace icr::cli {

namespace {

using io::json;

const std::map<std::string, RegionId> kWhich = {
    {"hk", RegionId::HK_R},       {"hk-mod", RegionId::HK_R_MODIFIED}, {"cmg", RegionId::CMG_R},
    {"hod", RegionId::HOD_R},     {"compact", RegionId::COMPACT_R},    {"hk-q", RegionId::HK_Q},
    {"cmg-q", RegionId::CMG_Q},   {"hod-q", RegionId::HOD_Q},
};

class Output {
public:
    Output(std::ostream& out) : out_(out) {}
    void json_to(const std::string& path, const json& j) {
        if (path.empty())
            out_ << j.dump(2) << "\n";
        else
            io::write_json(path, j);
    }

private:
    std::ostream& out_;
};

FactorSpec load_spec(const std::string& path) {
    json j;
    try {
        j = io::read_json(path);
    } catch (const std::runtime_error& e) {
        throw SpecError(e.what());
    }
    return io::spec_from_json(j);
}

json region_json(const LinearSystem& system, const HPoly& poly, const Binding& binding) {
    json j = io::to_json(system);
    j["binding"] = io::to_json(binding);
    if (poly.dimension() == 2) j["vertices"] = io::to_json(vertices2(poly));
    return j;
}

LinearSystem project_numeric(LinearSystem sys, std::vector<RateVar> keep) {
    auto vars = sys.variables();
    bool quadruple = !vars.count(RateVar::R1) && !vars.count(RateVar::R2) &&
                     (vars.count(RateVar::S1) || vars.count(RateVar::S2));
    if (quadruple) {
        sys = substitute_rate_sums(sys);
        vars = sys.variables();
    }
    if (keep.empty()) keep = {RateVar::R1, RateVar::R2};
    for (auto v : vars)
        if (std::find(keep.begin(), keep.end(), v) == keep.end()) sys = fm_eliminate(sys, v);
    auto pruned = prune_redundant(sys, AxiomSet{"none", 1, {}});
    pruned.system.sort();
    return pruned.system;
}

}  // namespace

AlphabetSpec parse_alphabets(std::string_view text) {
    AlphabetSpec a;
    for (auto v : kAllVariables) a[v] = 2;
    std::string s(text);
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto comma = s.find(',', pos);
        std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        pos = comma == std::string::npos ? s.size() + 1 : comma + 1;
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("alphabets: expected key=size, got \"" + item + "\"");
        std::string key = item.substr(0, eq);
        std::size_t used = 0;
        long long n = 0;
        try {
            n = std::stoll(item.substr(eq + 1), &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size() - eq - 1 || n < 1)
            throw std::invalid_argument("alphabets: size for " + key + " must be a positive integer");
        auto size = static_cast<std::size_t>(n);
        static const std::map<std::string, std::pair<VariableId, VariableId>> pairs = {
            {"u", {VariableId::U1, VariableId::U2}}, {"w", {VariableId::W1, VariableId::W2}},
            {"x", {VariableId::X1, VariableId::X2}}, {"y", {VariableId::Y1, VariableId::Y2}}};
        if (key == "q") {
            a[VariableId::Q] = size;
        } else if (auto it = pairs.find(key); it != pairs.end()) {
            a[it->second.first] = size;
            a[it->second.second] = size;
        } else if (auto v = parse_variable(key)) {
            a[*v] = size;
        } else {
            throw std::invalid_argument("alphabets: unknown key \"" + key + "\"");
        }
    }
    return a;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Interference-channel rate regions: terms, regions, derivations and claim checks", "icregion"};
    app.require_subcommand(1);
    Output output(out);

    std::string spec_path, out_path, emit_path, which, system_id, axioms_id = "chain", claim = "all";
    std::string alphabets_text, objective_name = "area", start_path, terms_path, keep_text;
    std::size_t samples = 100, budget = 100, restarts = 1;
    std::uint64_t seed = 0;
    double step = 0.25;
    bool project_first = false;

    auto* terms_cmd = app.add_subcommand("terms", "Evaluate the 22 information terms of a spec");
    terms_cmd->add_option("--spec", spec_path, "FactorSpec JSON")->required();
    terms_cmd->add_option("--out", out_path, "Output JSON");

    auto* region_cmd = app.add_subcommand("region", "Bind a named region to a spec");
    region_cmd->add_option("--spec", spec_path, "FactorSpec JSON")->required();
    region_cmd->add_option("--which", which, "hk|hk-mod|cmg|hod|compact|hk-q|cmg-q|hod-q")
        ->required()
        ->check(CLI::IsMember([] {
            std::vector<std::string> k;
            for (const auto& [name, id] : kWhich) k.push_back(name);
            return k;
        }()));
    region_cmd->add_option("--emit", emit_path, "Vertex CSV (two-dimensional regions)");
    region_cmd->add_option("--out", out_path, "Region JSON");
    region_cmd->add_flag("--project-independent", project_first,
                         "Replace a hod16 spec by its independence projection first");

    auto* derive_cmd = app.add_subcommand("derive", "Fourier-Motzkin derivation of an (R1,R2) region");
    derive_cmd->add_option("--system", system_id, "hk|hk-mod|cmg|hod")
        ->required()
        ->check(CLI::IsMember({"hk", "hk-mod", "cmg", "hod"}));
    derive_cmd->add_option("--axioms", axioms_id, "chain|hk-indep")->check(CLI::IsMember({"chain", "hk-indep"}));
    derive_cmd->add_option("--out", out_path, "Output JSON");

    auto* verify_cmd = app.add_subcommand("verify", "Check claims on seeded samples");
    std::vector<std::string> claim_choices = {"all"};
    for (auto c : claim_ids()) claim_choices.emplace_back(c);
    verify_cmd->add_option("--claim", claim, "all or a claim id")->check(CLI::IsMember(claim_choices));
    verify_cmd->add_option("--samples", samples, "Samples per claim")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", seed, "Seed")->required();
    verify_cmd->add_option("--out", out_path, "Report JSON");

    auto* search_cmd = app.add_subcommand("search", "Random-restart search for specs where HOD_R exceeds HK_R");
    search_cmd->add_option("--alphabets", alphabets_text, "e.g. q=2,u=2,w=2,x=2,y=2");
    search_cmd->add_option("--budget", budget, "Evaluations per restart")->check(CLI::PositiveNumber);
    search_cmd->add_option("--restarts", restarts, "Restarts")->check(CLI::PositiveNumber);
    search_cmd->add_option("--seed", seed, "Seed")->required();
    search_cmd->add_option("--objective", objective_name, "area|sumrate")->check(CLI::IsMember({"area", "sumrate"}));
    search_cmd->add_option("--step", step, "Perturbation step in (0,1)")->check(CLI::Range(0.0, 1.0));
    search_cmd->add_option("--start", start_path, "Start every restart from this hk2/hod16 spec");
    search_cmd->add_option("--out", out_path, "Result JSON");

    auto* project_cmd = app.add_subcommand("project", "Numeric Fourier-Motzkin projection of a system");
    project_cmd->add_option("--system", system_id, "System JSON")->required();
    auto* spec_opt = project_cmd->add_option("--spec", spec_path, "Bind terms from this spec");
    auto* terms_opt = project_cmd->add_option("--terms", terms_path, "Bind terms from this terms/binding JSON");
    spec_opt->excludes(terms_opt);
    project_cmd->add_option("--keep", keep_text, "Variables to keep, e.g. R1,R2 (default R1,R2)");
    project_cmd->add_option("--emit", emit_path, "Vertex CSV (two-dimensional results)");
    project_cmd->add_option("--out", out_path, "Output JSON");

    std::vector<std::string> argv_store = {"icregion"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*terms_cmd) {
            auto spec = load_spec(spec_path);
            output.json_to(out_path, io::to_json(eval_terms(build_joint(spec))));
        } else if (*region_cmd) {
            auto spec = load_spec(spec_path);
            if (project_first && (spec.form == Form::HOD16 || spec.form == Form::General1))
                spec = independence_projection(spec);
            RegionId id = kWhich.at(which);
            auto poly = region_for(spec, id);
            auto binding = snap_terms(eval_terms(build_joint(spec)));
            if (!emit_path.empty()) {
                if (poly.dimension() != 2) throw std::invalid_argument("--emit needs an (R1,R2) region");
                io::write_text(emit_path, io::vertices_csv(vertices2(poly)));
            }
            if (!out_path.empty() || emit_path.empty()) {
                json j = region_json(build_system(id), poly, binding);
                j["region"] = std::string(to_string(id));
                output.json_to(out_path, j);
            }
        } else if (*derive_cmd) {
            auto ax = *axiom_set(axioms_id);
            auto d = derive_region(*parse_derivation(system_id), ax);
            d.pruned.system.sort();
            output.json_to(out_path, io::to_json(d, ax));
        } else if (*verify_cmd) {
            auto reports = run_claims(claim, samples, seed);
            json j;
            j["seed"] = seed;
            j["samples"] = samples;
            json arr = json::array();
            bool ok = true;
            for (const auto& r : reports) {
                arr.push_back(r.to_json());
                ok = ok && r.ok();
                out << r.id << (r.hard ? "" : " (exploratory)") << ": " << r.passed() << "/" << r.samples.size()
                    << (r.ok() ? " ok" : " FAILED") << "\n";
                if (r.hard)
                    for (const auto& s : r.samples)
                        if (!s.pass) {
                            err << r.id << " sample " << s.index << " failed: " << s.note << "\n";
                            if (s.spec) err << s.spec->dump() << "\n";
                        }
            }
            j["reports"] = std::move(arr);
            j["all_hard_claims_pass"] = ok;
            if (!out_path.empty()) io::write_json(out_path, j);
            return ok ? 0 : 1;
        } else if (*search_cmd) {
            SearchConfig cfg;
            cfg.alphabets = parse_alphabets(alphabets_text);
            cfg.budget = budget;
            cfg.restarts = restarts;
            cfg.step = step;
            cfg.seed = seed;
            cfg.objective = *parse_objective(objective_name);
            if (!start_path.empty()) cfg.start = load_spec(start_path);
            if (!cfg.start && cfg.alphabets.joint_entries() > kMaxJointEntries)
                throw SpecError("alphabets: joint distribution would exceed the size limit");
            auto res = improvement_search(cfg);
            json j;
            j["objective"] = std::string(to_string(cfg.objective));
            j["baseline"] = "HK_R of the independence projection of the same spec";
            j["seed"] = seed;
            j["budget"] = budget;
            j["restarts"] = restarts;
            j["step"] = step;
            j["best_value"] = io::to_json(res.objective);
            j["best_value_decimal"] = to_double(res.objective);
            j["best_restart"] = res.best_restart;
            j["best_spec"] = io::to_json(res.best_spec);
            j["hod_vertices"] = io::to_json(res.hod_vertices);
            j["hk_vertices"] = io::to_json(res.hk_vertices);
            json trace = json::array();
            for (const auto& v : res.trace) trace.push_back(to_double(v));
            j["trace"] = trace;
            json per = json::array();
            for (const auto& t : res.restarts)
                per.push_back({{"restart", t.restart}, {"best", io::to_json(t.best)}});
            j["restart_results"] = per;
            output.json_to(out_path, j);
        } else if (*project_cmd) {
            auto sys = io::system_from_json(io::read_json(system_id));
            Binding binding;
            if (!spec_path.empty())
                binding = snap_terms(eval_terms(build_joint(load_spec(spec_path))));
            else if (!terms_path.empty())
                binding = io::binding_from_json(io::read_json(terms_path));
            std::vector<RateVar> keep;
            if (!keep_text.empty())
                for (const auto& name : CLI::detail::split(keep_text, ',')) {
                    auto v = parse_rate_var(name);
                    if (!v) throw std::invalid_argument("--keep: unknown rate variable \"" + name + "\"");
                    keep.push_back(*v);
                }
            auto projected = project_numeric(bind_symbols(sys, binding), keep);
            json j = io::to_json(projected);
            HPoly poly = icr::bind(projected, {});
            if (poly.dimension() == 2) j["vertices"] = io::to_json(vertices2(poly));
            if (!emit_path.empty()) {
                if (poly.dimension() != 2) throw std::invalid_argument("--emit needs a two-dimensional result");
                io::write_text(emit_path, io::vertices_csv(vertices2(poly)));
            }
            if (!out_path.empty() || emit_path.empty()) output.json_to(out_path, j);
        }
    } catch (const SpecError& e) {
        err << "invalid spec: " << e.what() << "\n";
        return kExitInvalidSpec;
    } catch (const FormMismatch& e) {
        err << "form mismatch: " << e.what() << "\n";
        return kExitFormMismatch;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace icr::cli
