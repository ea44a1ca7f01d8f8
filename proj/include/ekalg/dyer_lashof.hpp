#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ekalg/bidegree.hpp"
#include "ekalg/errors.hpp"
#include "ekalg/gc_algebra.hpp"
#include "ekalg/prime.hpp"

namespace ekalg {

// Lower-indexed operation symbol. Subscripts are stored doubled so the
// half-integer subscript 1/2 stays integral: Q_j has index2 = 2j, Q_{1/2} has
// index2 = 1.
struct OpSymbol {
    enum class Kind { Q, BetaQ };
    Kind kind = Kind::Q;
    int64_t index2 = 0;

    static OpSymbol q(int64_t j) { return {Kind::Q, 2 * j}; }
    static OpSymbol q_half() { return {Kind::Q, 1}; }
    static OpSymbol beta_q(int64_t j) { return {Kind::BetaQ, 2 * j}; }
    static OpSymbol beta_q_half() { return {Kind::BetaQ, 1}; }

    bool operator==(const OpSymbol& o) const { return kind == o.kind && index2 == o.index2; }

    std::string str() const
    {
        std::string s = kind == Kind::BetaQ ? "bQ_" : "Q_";
        if (index2 % 2 == 0)
            s += std::to_string(index2 / 2);
        else
            s += std::to_string(index2) + "/2";
        return s;
    }
};

// The class an operation word is applied to: (space degree r, weight w).
struct BaseClass {
    std::string name;
    int64_t space_degree = 0;
    int64_t weight = 1;

    BaseClass(std::string name_, int64_t r, int64_t w) : name(std::move(name_)), space_degree(r), weight(w)
    {
        if (r < 0)
            throw InvalidArgument("base class space degree must be non-negative");
        if (w < 1)
            throw InvalidArgument("base class weight must be positive");
    }
};

struct WeightedDegree {
    int64_t r = 0;
    int64_t w = 0;

    bool operator==(const WeightedDegree& o) const { return r == o.r && w == o.w; }
    bool operator!=(const WeightedDegree& o) const { return !(*this == o); }
};

namespace detail {
inline int64_t checked_mul(int64_t a, int64_t b)
{
    int64_t out;
    if (__builtin_mul_overflow(a, b, &out))
        throw DegreeCapExceeded("degree arithmetic overflow");
    return out;
}
inline int64_t checked_add(int64_t a, int64_t b)
{
    int64_t out;
    if (__builtin_add_overflow(a, b, &out))
        throw DegreeCapExceeded("degree arithmetic overflow");
    return out;
}
}  // namespace detail

// One symbol acting on (r, w). At p = 2: Q_i sends (r, w) to (2r + i, 2w). At
// odd p: Q_j sends (r, w) to (pr + 2j(p-1), pw) and the beta variant drops the
// first coordinate by one; 2j is carried as index2.
inline WeightedDegree apply_op(const Prime& p, const OpSymbol& sym, const WeightedDegree& state)
{
    using detail::checked_add;
    using detail::checked_mul;
    const int64_t pv = static_cast<int64_t>(p.value());
    if (p.is_two()) {
        if (sym.kind == OpSymbol::Kind::BetaQ)
            throw BetaAtTwo("beta operations do not exist at p = 2");
        if (sym.index2 % 2 != 0)
            throw InvalidArgument("half-integer subscript at p = 2");
        return {checked_add(checked_mul(2, state.r), sym.index2 / 2), checked_mul(2, state.w)};
    }
    int64_t r = checked_add(checked_mul(pv, state.r), checked_mul(pv - 1, sym.index2));
    if (sym.kind == OpSymbol::Kind::BetaQ)
        r -= 1;
    return {r, checked_mul(pv, state.w)};
}

// Formal composite of symbols applied to a base class. ops[0] is the leftmost
// symbol in the usual notation and therefore acts last.
struct OpWord {
    Prime prime;
    std::vector<OpSymbol> ops;
    BaseClass base;

    OpWord(const Prime& p, std::vector<OpSymbol> ops_, BaseClass base_)
        : prime(p), ops(std::move(ops_)), base(std::move(base_))
    {
    }

    std::string str() const
    {
        std::string s;
        for (const auto& op : ops)
            s += op.str() + " ";
        return s + base.name;
    }
};

inline WeightedDegree eval_word(const OpWord& word)
{
    WeightedDegree state{word.base.space_degree, word.base.weight};
    for (auto it = word.ops.rbegin(); it != word.ops.rend(); ++it)
        state = apply_op(word.prime, *it, state);
    return state;
}

// Chart placement: total degree t = r - w, filtration f = w.
inline Bidegree chart_bidegree(const WeightedDegree& d)
{
    return Bidegree(d.r - d.w, d.w);
}

inline Bidegree chart_bidegree(const OpWord& word)
{
    return chart_bidegree(eval_word(word));
}

enum class Family { h2, v, h, b };

inline std::string family_name(Family f)
{
    switch (f) {
        case Family::h2: return "h";
        case Family::v: return "v";
        case Family::h: return "h";
        case Family::b: return "b";
    }
    return "?";
}

// One named generator from the families indexing free E_2/E_3-algebra
// homology on the sphere class y_1.
struct GeneratorFamily {
    Family family = Family::h2;
    int64_t i = 0;
    int64_t j = 0;
    OpWord word;
    Parity parity = Parity::polynomial;
    std::string name;
    Bidegree chart;  // (t, f) placement
};

inline BaseClass sphere_base()
{
    return BaseClass("y1", 1, 1);
}

// Operation word for a family member. Notation reads right to left: the
// rightmost symbol acts first, and a beta prefixed to an iterated operation
// attaches to the outermost application only.
inline OpWord family_word(const Prime& p, Family family, int64_t i, int64_t j = 0)
{
    std::vector<OpSymbol> ops;
    if (p.is_two()) {
        if (family != Family::h2)
            throw IndexOutOfRange("only the h family exists at p = 2");
        if (i < 1 || j < 0)
            throw IndexOutOfRange("h family needs i >= 1, j >= 0");
        ops.insert(ops.end(), static_cast<size_t>(j), OpSymbol::q(1));
        ops.insert(ops.end(), static_cast<size_t>(i - 1), OpSymbol::q(2));
        return OpWord(p, std::move(ops), sphere_base());
    }
    switch (family) {
        case Family::h2:
            throw IndexOutOfRange("the h2 family exists only at p = 2");
        case Family::v:
            if (i < 0)
                throw IndexOutOfRange("v family needs i >= 0");
            ops.insert(ops.end(), static_cast<size_t>(i), OpSymbol::q(1));
            break;
        case Family::h:
        case Family::b:
            if (i < 1 || j < 0)
                throw IndexOutOfRange("h and b families need i >= 1, j >= 0");
            if (family == Family::b)
                ops.push_back(OpSymbol::beta_q_half());
            ops.insert(ops.end(), static_cast<size_t>(j), OpSymbol::q_half());
            ops.push_back(OpSymbol::beta_q(1));
            ops.insert(ops.end(), static_cast<size_t>(i - 1), OpSymbol::q(1));
            break;
    }
    return OpWord(p, std::move(ops), sphere_base());
}

inline std::string family_member_name(Family family, int64_t i, int64_t j)
{
    if (family == Family::v)
        return "v_" + std::to_string(i);
    return family_name(family) + "_{" + std::to_string(i) + "," + std::to_string(j) + "}";
}

// Generator of the free E_2-algebra homology on an odd sphere class:
// alpha itself, then Q_{1/2}^{(m)} alpha (exterior) and
// beta Q_{1/2}^{(m)} alpha (polynomial) for m >= 1.
struct FreeE2Generator {
    std::string name;
    int64_t degree = 0;
    Parity parity = Parity::exterior;
};

inline std::vector<FreeE2Generator> free_e2_generators_odd(const Prime& p, int64_t n,
                                                           int64_t degree_bound)
{
    if (p.is_two())
        throw OddPrimeRequired("free E_2 generator description requires an odd prime");
    if (n % 2 == 0)
        throw EvenSphere("even sphere classes are not supported");
    if (n < 1)
        throw InvalidArgument("sphere degree must be positive");
    std::vector<FreeE2Generator> out;
    if (n <= degree_bound)
        out.push_back({"alpha", n, Parity::exterior});
    WeightedDegree state{n, 1};
    for (int64_t m = 1;; ++m) {
        WeightedDegree q = apply_op(p, OpSymbol::q_half(), state);
        WeightedDegree bq = apply_op(p, OpSymbol::beta_q_half(), state);
        if (bq.r > degree_bound)
            break;
        std::string sup = "^(" + std::to_string(m) + ")";
        if (q.r <= degree_bound)
            out.push_back({"Q_1/2" + sup + " alpha", q.r, Parity::exterior});
        out.push_back({"bQ_1/2" + sup + " alpha", bq.r, Parity::polynomial});
        state = q;
    }
    return out;
}

}  // namespace ekalg
