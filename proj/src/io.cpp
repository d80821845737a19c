#include "icr/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace icr::io {

namespace {

struct FactorSlot {
    std::string_view name;
    Table FactorSpec::*table;
    std::vector<VariableId> axes;
    std::size_t outcome_rank = 1;
};

std::vector<FactorSlot> slots_for(Form form) {
    using V = VariableId;
    std::vector<FactorSlot> s = {
        {"q", &FactorSpec::q, {V::Q}},
        {"w1_given_q", &FactorSpec::w1, {V::Q, V::W1}},
        {"w2_given_q", &FactorSpec::w2, {V::Q, V::W2}},
    };
    switch (form) {
        case Form::HK2:
            s.push_back({"u1_given_q", &FactorSpec::u1, {V::Q, V::U1}});
            s.push_back({"u2_given_q", &FactorSpec::u2, {V::Q, V::U2}});
            break;
        case Form::HOD16:
        case Form::General1:
            s.push_back({"u1_given_q_w1", &FactorSpec::u1, {V::Q, V::W1, V::U1}});
            s.push_back({"u2_given_q_w2", &FactorSpec::u2, {V::Q, V::W2, V::U2}});
            break;
        case Form::CMG9:
            s.push_back({"x1_given_q_w1", &FactorSpec::u1, {V::Q, V::W1, V::X1}});
            s.push_back({"x2_given_q_w2", &FactorSpec::u2, {V::Q, V::W2, V::X2}});
            break;
    }
    if (form != Form::CMG9) {
        s.push_back({"x1_given_q_u1_w1", &FactorSpec::x1, {V::Q, V::U1, V::W1, V::X1}});
        s.push_back({"x2_given_q_u2_w2", &FactorSpec::x2, {V::Q, V::U2, V::W2, V::X2}});
    }
    s.push_back({"channel_y1y2_given_x1x2", &FactorSpec::channel, {V::X1, V::X2, V::Y1, V::Y2}, 2});
    return s;
}

void read_nested(const json& j, const std::vector<std::size_t>& shape, std::size_t depth, std::string path,
                 std::string_view factor, std::vector<double>& out) {
    if (depth == shape.size()) {
        if (!j.is_number())
            throw SpecError("factor " + std::string(factor) + path + ": expected a number");
        double p = j.get<double>();
        if (!std::isfinite(p)) throw SpecError("factor " + std::string(factor) + path + ": not finite");
        out.push_back(p);
        return;
    }
    if (!j.is_array() || j.size() != shape[depth])
        throw SpecError("factor " + std::string(factor) + path + ": expected an array of length " +
                        std::to_string(shape[depth]));
    for (std::size_t i = 0; i < shape[depth]; ++i)
        read_nested(j[i], shape, depth + 1, path + "[" + std::to_string(i) + "]", factor, out);
}

json write_nested(const std::vector<double>& data, const std::vector<std::size_t>& shape, std::size_t depth,
                  std::size_t& pos) {
    if (depth == shape.size()) return data[pos++];
    json a = json::array();
    for (std::size_t i = 0; i < shape[depth]; ++i) a.push_back(write_nested(data, shape, depth + 1, pos));
    return a;
}

template <typename Key>
json coefficient_map(const std::map<Key, Rational>& m) {
    json o = json::object();
    for (const auto& [k, v] : m) o[std::string(to_string(k))] = to_json(v);
    return o;
}

}  // namespace

json to_json(const Rational& r) {
    if (r.get_den() == 1 && r.get_num().fits_slong_p()) return r.get_num().get_si();
    return r.get_str();
}

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
    if (j.is_number_float()) {
        double d = j.get<double>();
        if (!std::isfinite(d)) throw std::invalid_argument("non-finite number");
        return Rational(d);
    }
    if (j.is_string()) {
        Rational r;
        if (r.set_str(j.get<std::string>(), 10) != 0)
            throw std::invalid_argument("malformed rational \"" + j.get<std::string>() + "\"");
        if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
        r.canonicalize();
        return r;
    }
    throw std::invalid_argument("expected a number or a \"p/q\" string");
}

FactorSpec spec_from_json(const json& j) {
    if (!j.is_object()) throw SpecError("spec: expected a JSON object");
    if (!j.contains("form") || !j["form"].is_string()) throw SpecError("spec: missing \"form\"");
    auto form = parse_form(j["form"].get<std::string>());
    if (!form) throw SpecError("spec: unknown form \"" + j["form"].get<std::string>() + "\"");

    FactorSpec s;
    s.form = *form;
    if (!j.contains("alphabets") || !j["alphabets"].is_object()) throw SpecError("spec: missing \"alphabets\"");
    const auto& al = j["alphabets"];
    for (const auto& [key, value] : al.items())
        if (!parse_variable(key)) throw SpecError("alphabets: unknown variable \"" + key + "\"");
    for (auto v : kAllVariables) {
        std::string name(to_string(v));
        bool mirrored = s.form == Form::CMG9 && (v == VariableId::U1 || v == VariableId::U2);
        if (!al.contains(name)) {
            if (mirrored) continue;
            throw SpecError("alphabets: missing size for " + name);
        }
        if (!al[name].is_number_integer() || al[name].get<long long>() < 1)
            throw SpecError("alphabets: size for " + name + " must be a positive integer");
        s.alphabets[v] = static_cast<std::size_t>(al[name].get<long long>());
    }
    if (s.form == Form::CMG9) {
        if (!al.contains("U1")) s.alphabets[VariableId::U1] = s.alphabets[VariableId::X1];
        if (!al.contains("U2")) s.alphabets[VariableId::U2] = s.alphabets[VariableId::X2];
    }
    if (s.alphabets.joint_entries() > kMaxJointEntries)
        throw SpecError("alphabets: joint distribution would exceed " + std::to_string(kMaxJointEntries) +
                        " entries");

    if (!j.contains("factors") || !j["factors"].is_object()) throw SpecError("spec: missing \"factors\"");
    const auto& f = j["factors"];
    auto slots = slots_for(s.form);
    for (const auto& [key, value] : f.items()) {
        bool known = false;
        for (const auto& slot : slots) known = known || slot.name == key;
        if (!known)
            throw SpecError("factors: unexpected factor \"" + key + "\" for form " + std::string(to_string(s.form)));
    }
    for (const auto& slot : slots) {
        if (!f.contains(slot.name)) throw SpecError("factors: missing factor " + std::string(slot.name));
        std::vector<std::size_t> shape;
        for (auto v : slot.axes) shape.push_back(s.alphabets[v]);
        Table t(shape, slot.outcome_rank);
        t.data.clear();
        read_nested(f[std::string(slot.name)], shape, 0, "", slot.name, t.data);
        s.*(slot.table) = std::move(t);
    }
    validate(s);
    return s;
}

json to_json(const FactorSpec& spec) {
    json j;
    j["form"] = std::string(to_string(spec.form));
    json al = json::object();
    for (auto v : kAllVariables) al[std::string(to_string(v))] = spec.alphabets[v];
    j["alphabets"] = al;
    json f = json::object();
    for (const auto& slot : slots_for(spec.form)) {
        const Table& t = spec.*(slot.table);
        std::size_t pos = 0;
        f[std::string(slot.name)] = write_nested(t.data, t.shape, 0, pos);
    }
    j["factors"] = f;
    return j;
}

json to_json(const TermVector& terms) {
    json o = json::object();
    for (std::size_t i = 0; i < kNumTerms; ++i) o[std::string(to_string(term_at(i)))] = terms.value[i];
    return o;
}

json to_json(const Binding& binding) { return coefficient_map(binding); }

Binding binding_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("binding: expected an object");
    Binding b;
    for (const auto& [key, value] : j.items()) {
        auto t = parse_term(key);
        if (!t) throw std::invalid_argument("binding: unknown term symbol \"" + key + "\"");
        Rational r = value.is_number_float() ? snap(value.get<double>()) : rational_from_json(value);
        if (sgn(r) < 0) throw std::invalid_argument("binding: negative value for " + key);
        b[*t] = r;
    }
    return b;
}

json to_json(const Inequality& q) {
    json o;
    o["lhs"] = coefficient_map(q.lhs);
    o["rhs"] = coefficient_map(q.rhs.terms());
    if (sgn(q.rhs.constant()) != 0) o["constant"] = to_json(q.rhs.constant());
    return o;
}

json to_json(const LinearSystem& system) {
    json o;
    json vars = json::array();
    for (auto v : system.variables()) vars.push_back(std::string(to_string(v)));
    json nn = json::array();
    for (auto v : system.nonneg) nn.push_back(std::string(to_string(v)));
    json rows = json::array();
    for (const auto& r : system.rows) rows.push_back(to_json(r));
    o["variables"] = vars;
    o["nonneg"] = nn;
    o["inequalities"] = rows;
    return o;
}

LinearSystem system_from_json(const json& j) {
    if (!j.is_object() || !j.contains("inequalities") || !j["inequalities"].is_array())
        throw std::invalid_argument("system: expected an object with an \"inequalities\" array");
    LinearSystem s;
    if (j.contains("nonneg")) {
        for (const auto& v : j["nonneg"]) {
            auto r = v.is_string() ? parse_rate_var(v.get<std::string>()) : std::nullopt;
            if (!r) throw std::invalid_argument("system: unknown rate variable in \"nonneg\"");
            s.nonneg.insert(*r);
        }
    }
    for (const auto& row : j["inequalities"]) {
        Inequality q;
        if (row.is_string()) {
            q = parse_inequality(row.get<std::string>());
        } else {
            if (!row.is_object()) throw std::invalid_argument("system: inequality must be an object or a string");
            const json lhs = row.value("lhs", json::object());
            const json rhs = row.value("rhs", json::object());
            for (const auto& [key, value] : lhs.items()) {
                auto v = parse_rate_var(key);
                if (!v) throw std::invalid_argument("system: unknown rate variable \"" + key + "\"");
                q.lhs[*v] += rational_from_json(value);
            }
            for (const auto& [key, value] : rhs.items()) {
                auto t = parse_term(key);
                if (!t) throw std::invalid_argument("system: unknown term symbol \"" + key + "\"");
                q.rhs.add(*t, rational_from_json(value));
            }
            if (row.contains("constant")) q.rhs += Combo(rational_from_json(row["constant"]));
        }
        s.add(std::move(q));
    }
    return s;
}

json to_json(const Derivation& d, const AxiomSet& axioms) {
    json o = to_json(d.pruned.system);
    o["derivation"] = std::string(to_string(d.id));
    o["axioms"] = {{"id", axioms.id}, {"version", axioms.version}};
    json removed = json::array();
    for (const auto& r : d.pruned.removed) {
        json e;
        e["inequality"] = r.inequality.to_string();
        json sup = json::array();
        for (const auto& s : r.supports) sup.push_back(s.to_string());
        e["supports"] = sup;
        e["axioms"] = r.axioms;
        removed.push_back(e);
    }
    json before = json::array();
    for (const auto& r : d.eliminated.rows) before.push_back(to_json(r));
    o["before_pruning"] = before;
    o["removed"] = removed;
    o["axioms_used"] = d.pruned.axioms_used();
    return o;
}

std::string vertices_csv(const VertexList2& v) {
    std::string out = "R1,R2\n";
    char buf[64];
    for (const auto& p : v) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", to_double(p.r1), to_double(p.r2));
        out += buf;
    }
    return out;
}

json to_json(const VertexList2& v) {
    json a = json::array();
    for (const auto& p : v) a.push_back({{"R1", to_json(p.r1)}, {"R2", to_json(p.r2)}});
    return a;
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

}  // namespace icr::io
