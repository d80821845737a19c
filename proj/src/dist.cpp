#include "icr/dist.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace icr {

namespace {

constexpr std::array<std::string_view, kNumVariables> kVariableNames = {
    "Q", "U1", "W1", "U2", "W2", "X1", "X2", "Y1", "Y2"};

constexpr double kRowTolerance = 1e-12;

std::size_t entries_for_shape(const std::vector<std::size_t>& shape) {
    std::size_t n = 1;
    for (auto s : shape) n *= s;
    return n;
}

std::size_t idx(VariableId v) { return static_cast<std::size_t>(v); }

// Strides of the tensor over `vars` (absent variables get stride 0).
std::array<std::size_t, kNumVariables> strides_for(VarSet vars, const AlphabetSpec& a) {
    std::array<std::size_t, kNumVariables> strides{};
    std::size_t s = 1;
    for (std::size_t k = kNumVariables; k-- > 0;) {
        auto v = kAllVariables[k];
        if (vars.contains(v)) {
            strides[k] = s;
            s *= a[v];
        }
    }
    return strides;
}

std::size_t entries_for(VarSet vars, const AlphabetSpec& a) {
    std::size_t n = 1;
    for (auto v : vars.members()) n *= a[v];
    return n;
}

// For every flat index of `from`, the flat index of the same assignment in
// the tensor over `to` (to must be a subset of from).
std::vector<std::size_t> projection_map(VarSet from, VarSet to, const AlphabetSpec& a) {
    auto members = from.members();
    auto to_strides = strides_for(to, a);
    std::vector<std::size_t> out(entries_for(from, a));
    std::vector<std::size_t> counter(members.size(), 0);
    std::size_t target = 0;
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        out[flat] = target;
        // mixed-radix increment, last axis fastest
        for (std::size_t k = members.size(); k-- > 0;) {
            auto v = members[k];
            std::size_t stride = to_strides[idx(v)];
            if (++counter[k] < a[v]) {
                target += stride;
                break;
            }
            target -= stride * (counter[k] - 1);
            counter[k] = 0;
        }
    }
    return out;
}

void check_row_sums(const Table& t, std::string_view name) {
    for (std::size_t r = 0; r < t.rows(); ++r) {
        double sum = 0;
        for (double p : t.row(r)) {
            if (!(p >= 0) || !std::isfinite(p)) {
                std::ostringstream os;
                os << "factor " << name << ": negative or non-finite entry in conditioning row " << r;
                throw SpecError(os.str());
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > kRowTolerance) {
            std::ostringstream os;
            os.precision(17);
            os << "factor " << name << ": conditioning row " << r << " sums to " << sum << ", not 1";
            throw SpecError(os.str());
        }
    }
}

void check_shape(const Table& t, std::string_view name, std::vector<std::size_t> expected,
                 std::size_t outcome_rank = 1) {
    if (t.shape != expected || t.outcome_rank != outcome_rank ||
        t.data.size() != entries_for_shape(expected)) {
        std::ostringstream os;
        os << "factor " << name << ": shape [";
        for (std::size_t i = 0; i < t.shape.size(); ++i) os << (i ? "," : "") << t.shape[i];
        os << "] does not match alphabets [";
        for (std::size_t i = 0; i < expected.size(); ++i) os << (i ? "," : "") << expected[i];
        os << "]";
        throw SpecError(os.str());
    }
    check_row_sums(t, name);
}

}  // namespace

std::string_view to_string(VariableId v) { return kVariableNames[idx(v)]; }

std::optional<VariableId> parse_variable(std::string_view name) {
    for (std::size_t k = 0; k < kNumVariables; ++k)
        if (kVariableNames[k] == name) return kAllVariables[k];
    return std::nullopt;
}

std::vector<VariableId> VarSet::members() const {
    std::vector<VariableId> out;
    for (auto v : kAllVariables)
        if (contains(v)) out.push_back(v);
    return out;
}

std::string VarSet::to_string() const {
    std::string s;
    for (auto v : members()) s += icr::to_string(v);
    return s.empty() ? "{}" : s;
}

std::size_t AlphabetSpec::joint_entries() const {
    std::size_t n = 1;
    for (auto s : size) {
        if (s != 0 && n > std::numeric_limits<std::size_t>::max() / s)
            return std::numeric_limits<std::size_t>::max();
        n *= s;
    }
    return n;
}

std::string_view to_string(Form f) {
    switch (f) {
        case Form::General1: return "general1";
        case Form::HK2: return "hk2";
        case Form::CMG9: return "cmg9";
        case Form::HOD16: return "hod16";
    }
    return "?";
}

std::optional<Form> parse_form(std::string_view name) {
    for (auto f : {Form::General1, Form::HK2, Form::CMG9, Form::HOD16})
        if (to_string(f) == name) return f;
    return std::nullopt;
}

Table::Table(std::vector<std::size_t> shape_, std::size_t outcome_rank_)
    : shape(std::move(shape_)), outcome_rank(outcome_rank_), data(entries_for_shape(shape), 0.0) {}

std::size_t Table::row_length() const {
    std::size_t n = 1;
    for (std::size_t i = shape.size() - outcome_rank; i < shape.size(); ++i) n *= shape[i];
    return n;
}

std::size_t Table::rows() const { return row_length() == 0 ? 0 : data.size() / row_length(); }

std::span<double> Table::row(std::size_t r) {
    return std::span<double>(data).subspan(r * row_length(), row_length());
}

std::span<const double> Table::row(std::size_t r) const {
    return std::span<const double>(data).subspan(r * row_length(), row_length());
}

void validate(const FactorSpec& spec) {
    const auto& a = spec.alphabets;
    for (auto v : kAllVariables)
        if (a[v] == 0)
            throw SpecError("alphabet " + std::string(to_string(v)) + " has size 0");
    using V = VariableId;
    std::size_t Q = a[V::Q], U1 = a[V::U1], W1 = a[V::W1], U2 = a[V::U2], W2 = a[V::W2];
    std::size_t X1 = a[V::X1], X2 = a[V::X2], Y1 = a[V::Y1], Y2 = a[V::Y2];

    check_shape(spec.q, "q", {Q});
    check_shape(spec.w1, "w1_given_q", {Q, W1});
    check_shape(spec.w2, "w2_given_q", {Q, W2});
    switch (spec.form) {
        case Form::HK2:
            check_shape(spec.u1, "u1_given_q", {Q, U1});
            check_shape(spec.u2, "u2_given_q", {Q, U2});
            break;
        case Form::HOD16:
        case Form::General1:
            check_shape(spec.u1, "u1_given_q_w1", {Q, W1, U1});
            check_shape(spec.u2, "u2_given_q_w2", {Q, W2, U2});
            break;
        case Form::CMG9:
            if (U1 != X1 || U2 != X2)
                throw SpecError("cmg9: alphabets U1/U2 must equal X1/X2 (U axes mirror X)");
            check_shape(spec.u1, "x1_given_q_w1", {Q, W1, X1});
            check_shape(spec.u2, "x2_given_q_w2", {Q, W2, X2});
            break;
    }
    if (spec.form == Form::CMG9) {
        if (!spec.x1.empty() || !spec.x2.empty())
            throw SpecError("cmg9: encoder tables must be absent");
    } else {
        check_shape(spec.x1, "x1_given_q_u1_w1", {Q, U1, W1, X1});
        check_shape(spec.x2, "x2_given_q_u2_w2", {Q, U2, W2, X2});
    }
    check_shape(spec.channel, "channel_y1y2_given_x1x2", {X1, X2, Y1, Y2}, 2);
}

JointDist::JointDist(VarSet vars, const AlphabetSpec& alphabets, std::vector<double> data)
    : vars_(vars), alphabets_(alphabets), data_(std::move(data)) {
    if (data_.size() != entries_for(vars_, alphabets_))
        throw std::invalid_argument("JointDist: data size does not match alphabets");
}

double JointDist::total() const {
    double s = 0;
    for (double p : data_) s += p;
    return s;
}

std::size_t JointDist::index(const std::array<std::size_t, kNumVariables>& values) const {
    auto strides = strides_for(vars_, alphabets_);
    std::size_t flat = 0;
    for (std::size_t k = 0; k < kNumVariables; ++k) flat += strides[k] * values[k];
    return flat;
}

double JointDist::at(const std::array<std::size_t, kNumVariables>& values) const {
    return data_[index(values)];
}

JointDist build_joint(const FactorSpec& spec) {
    validate(spec);
    const auto& a = spec.alphabets;
    using V = VariableId;
    const std::size_t nQ = a[V::Q], nU1 = a[V::U1], nW1 = a[V::W1], nU2 = a[V::U2], nW2 = a[V::W2];
    const std::size_t nX1 = a[V::X1], nX2 = a[V::X2], nY1 = a[V::Y1], nY2 = a[V::Y2];
    const bool hk = spec.form == Form::HK2;
    const bool cmg = spec.form == Form::CMG9;

    auto p_u = [&](const Table& t, std::size_t nW, std::size_t nU, std::size_t q, std::size_t w,
                   std::size_t u) {
        return hk ? t.data[q * nU + u] : t.data[(q * nW + w) * nU + u];
    };
    auto p_x = [&](const Table& t, std::size_t nU, std::size_t nW, std::size_t nX, std::size_t q,
                   std::size_t u, std::size_t w, std::size_t x) {
        if (cmg) return u == x ? 1.0 : 0.0;
        return t.data[((q * nU + u) * nW + w) * nX + x];
    };

    std::vector<double> data(a.joint_entries(), 0.0);
    const std::size_t y_block = nY1 * nY2;
    std::size_t flat = 0;
    for (std::size_t q = 0; q < nQ; ++q)
        for (std::size_t u1 = 0; u1 < nU1; ++u1)
            for (std::size_t w1 = 0; w1 < nW1; ++w1) {
                double p1 = spec.q.data[q] * spec.w1.data[q * nW1 + w1] * p_u(spec.u1, nW1, nU1, q, w1, u1);
                for (std::size_t u2 = 0; u2 < nU2; ++u2)
                    for (std::size_t w2 = 0; w2 < nW2; ++w2) {
                        double p2 = p1 * spec.w2.data[q * nW2 + w2] * p_u(spec.u2, nW2, nU2, q, w2, u2);
                        for (std::size_t x1 = 0; x1 < nX1; ++x1) {
                            double p3 = p2 * p_x(spec.x1, nU1, nW1, nX1, q, u1, w1, x1);
                            for (std::size_t x2 = 0; x2 < nX2; ++x2) {
                                double p4 = p3 * p_x(spec.x2, nU2, nW2, nX2, q, u2, w2, x2);
                                auto ch = spec.channel.row(x1 * nX2 + x2);
                                if (p4 != 0.0)
                                    for (std::size_t y = 0; y < y_block; ++y) data[flat + y] = p4 * ch[y];
                                flat += y_block;
                            }
                        }
                    }
            }
    return JointDist(VarSet::all(), a, std::move(data));
}

JointDist marginal(const JointDist& joint, VarSet keep) {
    if (keep.empty()) throw std::invalid_argument("marginal: empty keep set");
    if (!keep.subset_of(joint.vars()))
        throw std::invalid_argument("marginal: keep set " + keep.to_string() + " not in joint");
    if (keep == joint.vars()) return joint;
    auto map = projection_map(joint.vars(), keep, joint.alphabets());
    std::vector<double> out(entries_for(keep, joint.alphabets()), 0.0);
    auto src = joint.data();
    for (std::size_t i = 0; i < src.size(); ++i) out[map[i]] += src[i];
    return JointDist(keep, joint.alphabets(), std::move(out));
}

double entropy(const JointDist& joint, VarSet a) {
    if (a.empty()) throw std::invalid_argument("entropy: empty variable set");
    auto m = marginal(joint, a);
    double h = 0;
    for (double p : m.data())
        if (p > 0) h -= p * std::log2(p);
    return h;
}

double cond_mutual_info(const JointDist& joint, VarSet a, VarSet b, VarSet c) {
    if (a.empty() || b.empty()) throw std::invalid_argument("cond_mutual_info: A and B must be nonempty");
    if (!a.disjoint(b) || !a.disjoint(c) || !b.disjoint(c))
        throw std::invalid_argument("cond_mutual_info: variable sets overlap");

    const auto& alpha = joint.alphabets();
    VarSet abc = a | b | c;
    auto m = marginal(joint, abc);
    auto m_ac = marginal(m, a | c);
    auto m_bc = marginal(m, b | c);
    auto map_ac = projection_map(abc, a | c, alpha);
    auto map_bc = projection_map(abc, b | c, alpha);
    std::vector<std::size_t> map_c;
    std::vector<double> p_c{1.0};
    if (!c.empty()) {
        map_c = projection_map(abc, c, alpha);
        auto mc = marginal(m, c);
        p_c.assign(mc.data().begin(), mc.data().end());
    }

    double info = 0;
    auto p = m.data();
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0) continue;
        double pc = c.empty() ? 1.0 : p_c[map_c[i]];
        double ratio = (p[i] * pc) / (m_ac.data()[map_ac[i]] * m_bc.data()[map_bc[i]]);
        info += p[i] * std::log2(ratio);
    }
    if (info < 0 && info > -1e-12) info = 0;
    return info;
}

FactorSpec independence_projection(const FactorSpec& spec) {
    if (spec.form != Form::HOD16 && spec.form != Form::General1)
        throw std::invalid_argument("independence_projection: expected a hod16 spec, got " +
                                    std::string(to_string(spec.form)));
    validate(spec);
    FactorSpec out = spec;
    out.form = Form::HK2;
    auto mix = [&](const Table& w, const Table& u, std::size_t nQ, std::size_t nW, std::size_t nU) {
        Table t({nQ, nU});
        for (std::size_t q = 0; q < nQ; ++q)
            for (std::size_t wv = 0; wv < nW; ++wv)
                for (std::size_t uv = 0; uv < nU; ++uv)
                    t.data[q * nU + uv] += w.data[q * nW + wv] * u.data[(q * nW + wv) * nU + uv];
        return t;
    };
    const auto& a = spec.alphabets;
    using V = VariableId;
    out.u1 = mix(spec.w1, spec.u1, a[V::Q], a[V::W1], a[V::U1]);
    out.u2 = mix(spec.w2, spec.u2, a[V::Q], a[V::W2], a[V::U2]);
    return out;
}

FactorSpec cmg_as_hod16(const FactorSpec& spec) {
    if (spec.form != Form::CMG9)
        throw std::invalid_argument("cmg_as_hod16: expected a cmg9 spec, got " +
                                    std::string(to_string(spec.form)));
    validate(spec);
    FactorSpec out = spec;
    out.form = Form::HOD16;
    const auto& a = spec.alphabets;
    using V = VariableId;
    auto identity = [](std::size_t nQ, std::size_t nU, std::size_t nW, std::size_t nX) {
        Table t({nQ, nU, nW, nX});
        for (std::size_t q = 0; q < nQ; ++q)
            for (std::size_t u = 0; u < nU; ++u)
                for (std::size_t w = 0; w < nW; ++w) t.data[((q * nU + u) * nW + w) * nX + u] = 1.0;
        return t;
    };
    out.x1 = identity(a[V::Q], a[V::U1], a[V::W1], a[V::X1]);
    out.x2 = identity(a[V::Q], a[V::U2], a[V::W2], a[V::X2]);
    return out;
}

MarkovReport check_markov_chains(const JointDist& joint) {
    using V = VariableId;
    MarkovReport r;
    r.w1_y1_given_q_w2_x1 = cond_mutual_info(joint, {V::W1}, {V::Y1}, {V::Q, V::W2, V::X1});
    r.w2_y2_given_q_w1_x2 = cond_mutual_info(joint, {V::W2}, {V::Y2}, {V::Q, V::W1, V::X2});
    return r;
}

}  // namespace icr
