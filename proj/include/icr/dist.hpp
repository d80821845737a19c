#pragma once

// Finite-alphabet distributions for the two-user interference channel:
// factored input laws, the dense nine-variable joint, and the entropy /
// conditional mutual information functionals evaluated on it.

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace icr {

// Canonical axis order of the joint tensor. Do not reorder.
enum class VariableId : std::uint8_t { Q, U1, W1, U2, W2, X1, X2, Y1, Y2 };

inline constexpr std::size_t kNumVariables = 9;
inline constexpr std::array<VariableId, kNumVariables> kAllVariables = {
    VariableId::Q,  VariableId::U1, VariableId::W1, VariableId::U2, VariableId::W2,
    VariableId::X1, VariableId::X2, VariableId::Y1, VariableId::Y2};

std::string_view to_string(VariableId v);
std::optional<VariableId> parse_variable(std::string_view name);

// Small bitset over the nine variables.
class VarSet {
public:
    constexpr VarSet() = default;
    constexpr VarSet(std::initializer_list<VariableId> vars) {
        for (auto v : vars) bits_ |= bit(v);
    }
    static constexpr VarSet all() { return VarSet(std::uint16_t{0x1ff}); }

    constexpr bool contains(VariableId v) const { return (bits_ & bit(v)) != 0; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::size_t size() const { return static_cast<std::size_t>(__builtin_popcount(bits_)); }
    constexpr VarSet operator|(VarSet o) const { return VarSet(static_cast<std::uint16_t>(bits_ | o.bits_)); }
    constexpr VarSet operator&(VarSet o) const { return VarSet(static_cast<std::uint16_t>(bits_ & o.bits_)); }
    constexpr bool disjoint(VarSet o) const { return (bits_ & o.bits_) == 0; }
    constexpr bool subset_of(VarSet o) const { return (bits_ & ~o.bits_) == 0; }
    constexpr bool operator==(const VarSet&) const = default;
    constexpr std::uint16_t bits() const { return bits_; }

    // Members in canonical order.
    std::vector<VariableId> members() const;
    std::string to_string() const;

private:
    explicit constexpr VarSet(std::uint16_t bits) : bits_(bits) {}
    static constexpr std::uint16_t bit(VariableId v) {
        return static_cast<std::uint16_t>(1u << static_cast<unsigned>(v));
    }
    std::uint16_t bits_ = 0;
};

struct AlphabetSpec {
    std::array<std::size_t, kNumVariables> size{1, 1, 1, 1, 1, 1, 1, 1, 1};

    std::size_t operator[](VariableId v) const { return size[static_cast<std::size_t>(v)]; }
    std::size_t& operator[](VariableId v) { return size[static_cast<std::size_t>(v)]; }
    // Number of entries of the dense joint; saturates at SIZE_MAX.
    std::size_t joint_entries() const;
    bool operator==(const AlphabetSpec&) const = default;
};

// Largest joint the CLI accepts.
inline constexpr std::size_t kMaxJointEntries = 100'000'000;

enum class Form { General1, HK2, CMG9, HOD16 };

std::string_view to_string(Form f);
std::optional<Form> parse_form(std::string_view name);

// Conditional probability table. The trailing `outcome_rank` axes index the
// outcome; the leading axes index the conditioning event (row-major).
struct Table {
    std::vector<std::size_t> shape;
    std::size_t outcome_rank = 1;
    std::vector<double> data;

    Table() = default;
    Table(std::vector<std::size_t> shape, std::size_t outcome_rank = 1);

    std::size_t row_length() const;
    std::size_t rows() const;
    std::span<double> row(std::size_t r);
    std::span<const double> row(std::size_t r) const;
    bool empty() const { return data.empty(); }
    bool operator==(const Table&) const = default;
};

class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Factored input distribution plus encoders and channel.
//
// Table layouts (conditioning axes first, outcome last):
//   q              [Q]
//   w1, w2         [Q][W_i]
//   u1, u2         HK2: [Q][U_i]; HOD16/GENERAL1: [Q][W_i][U_i];
//                  CMG9: [Q][W_i][X_i] (the x_i-given-(q,w_i) superposition law,
//                  stored on the U axis, which mirrors X_i)
//   x1, x2         [Q][U_i][W_i][X_i]; empty for CMG9 (identity encoder)
//   channel        [X1][X2][Y1][Y2], outcome rank 2
struct FactorSpec {
    Form form = Form::HK2;
    AlphabetSpec alphabets;
    Table q;
    Table w1, w2;
    Table u1, u2;
    Table x1, x2;
    Table channel;

    bool operator==(const FactorSpec&) const = default;
};

// Throws SpecError naming the factor and conditioning row on failure.
void validate(const FactorSpec& spec);

// Dense probability tensor over a subset of the nine variables, axes in
// canonical order (the first axis is the most significant).
class JointDist {
public:
    JointDist() = default;
    JointDist(VarSet vars, const AlphabetSpec& alphabets, std::vector<double> data);

    VarSet vars() const { return vars_; }
    const AlphabetSpec& alphabets() const { return alphabets_; }
    std::span<const double> data() const { return data_; }
    std::size_t entries() const { return data_.size(); }
    double total() const;

    // Flat index for a full assignment; values of absent variables are ignored.
    std::size_t index(const std::array<std::size_t, kNumVariables>& values) const;
    double at(const std::array<std::size_t, kNumVariables>& values) const;

private:
    VarSet vars_;
    AlphabetSpec alphabets_;
    std::vector<double> data_;
};

JointDist build_joint(const FactorSpec& spec);

// Sum over dropped axes. `keep` must be nonempty and a subset of joint.vars().
JointDist marginal(const JointDist& joint, VarSet keep);

// Shannon entropy in bits of the marginal on `a`.
double entropy(const JointDist& joint, VarSet a);

// I(A;B|C) in bits with the 0 log 0 = 0 convention.
double cond_mutual_info(const JointDist& joint, VarSet a, VarSet b, VarSet c = {});

// Replaces p(u_i|q,w_i) by its mixture over w_i, yielding an HK2 spec with
// the same marginals of (Q,U_i) and (Q,W_i).
FactorSpec independence_projection(const FactorSpec& spec);

// Re-expresses a CMG9 spec as an explicit HOD16 spec (identity encoders).
FactorSpec cmg_as_hod16(const FactorSpec& spec);

struct MarkovReport {
    double w1_y1_given_q_w2_x1 = 0;  // I(W1;Y1|Q,W2,X1)
    double w2_y2_given_q_w1_x2 = 0;  // I(W2;Y2|Q,W1,X2)
    bool holds(double tol = 1e-10) const {
        return w1_y1_given_q_w2_x1 <= tol && w2_y2_given_q_w1_x2 <= tol;
    }
};

MarkovReport check_markov_chains(const JointDist& joint);

}  // namespace icr
