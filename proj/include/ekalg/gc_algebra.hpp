#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ekalg/bidegree.hpp"
#include "ekalg/errors.hpp"
#include "ekalg/linalg.hpp"
#include "ekalg/prime.hpp"

namespace ekalg {

enum class Parity { polynomial, exterior };

struct GeneratorSpec {
    std::string name;
    Parity parity = Parity::polynomial;
    Bidegree bidegree;
};

// Monomial in a fixed free algebra: exponent per generator, in declaration order.
struct Monomial {
    std::vector<uint32_t> exponents;

    bool is_unit() const
    {
        for (uint32_t e : exponents)
            if (e != 0)
                return false;
        return true;
    }
    bool operator==(const Monomial& o) const { return exponents == o.exponents; }
    bool operator!=(const Monomial& o) const { return exponents != o.exponents; }
    bool operator<(const Monomial& o) const { return exponents < o.exponents; }
};

// Dimension table over a rectangular bidegree window.
struct PoincareTable {
    Bidegree window;
    std::map<Bidegree, int64_t> entries;

    int64_t dim(const Bidegree& b) const
    {
        auto it = entries.find(b);
        return it == entries.end() ? 0 : it->second;
    }
};

// Free graded-commutative algebra over F_p on bigraded generators.
// Sign rule uses the parity of the first grading t; exterior generators square
// to zero, polynomial generators are unconstrained. Connectivity: every
// generator needs w >= 1 or t >= 1, so graded pieces stay finite dimensional.
class FreeGCAlgebra {
  public:
    FreeGCAlgebra(const Prime& p, std::vector<GeneratorSpec> gens)
        : data_(std::make_shared<Data>(Data{p, std::move(gens)}))
    {
        std::set<std::string> names;
        for (const auto& g : data_->gens) {
            if (!names.insert(g.name).second)
                throw DuplicateGenerator("duplicate generator name: " + g.name);
            if (p.is_two() && g.parity != Parity::polynomial)
                throw ParityViolation("exterior generator " + g.name + " at p = 2");
            if (!p.is_two() && (g.bidegree.t % 2) != 0 && g.parity != Parity::exterior)
                throw ParityViolation("polynomial generator " + g.name +
                                      " has odd degree t at odd prime");
            if (g.bidegree.w < 1 && g.bidegree.t < 1)
                throw NonConnective("generator " + g.name + " has w < 1 and t < 1");
        }
    }

    const Prime& prime() const { return data_->p; }
    const std::vector<GeneratorSpec>& generators() const { return data_->gens; }
    size_t generator_count() const { return data_->gens.size(); }

    size_t gen_index(const std::string& name) const
    {
        for (size_t i = 0; i < data_->gens.size(); ++i)
            if (data_->gens[i].name == name)
                return i;
        throw InvalidArgument("no generator named " + name);
    }

    bool same_as(const FreeGCAlgebra& o) const
    {
        if (data_ == o.data_)
            return true;
        if (!(data_->p == o.data_->p) || data_->gens.size() != o.data_->gens.size())
            return false;
        for (size_t i = 0; i < data_->gens.size(); ++i) {
            const auto &a = data_->gens[i], &b = o.data_->gens[i];
            if (a.name != b.name || a.parity != b.parity || a.bidegree != b.bidegree)
                return false;
        }
        return true;
    }

    Bidegree bidegree_of(const Monomial& m) const
    {
        check_width(m);
        int64_t t = 0, w = 0;
        for (size_t i = 0; i < m.exponents.size(); ++i) {
            t += static_cast<int64_t>(m.exponents[i]) * data_->gens[i].bidegree.t;
            w += static_cast<int64_t>(m.exponents[i]) * data_->gens[i].bidegree.w;
        }
        return Bidegree(t, w);
    }

    Monomial unit_monomial() const { return Monomial{std::vector<uint32_t>(data_->gens.size(), 0)}; }

    Monomial generator_monomial(size_t idx) const
    {
        if (idx >= data_->gens.size())
            throw IndexOutOfRange("generator index out of range");
        Monomial m = unit_monomial();
        m.exponents[idx] = 1;
        return m;
    }

    // Product of two monomials under the sign rule. Returns {coeff, monomial};
    // coeff == 0 when an exterior generator would appear with exponent >= 2.
    std::pair<uint32_t, Monomial> mul_monomials(const Monomial& a, const Monomial& b) const
    {
        check_width(a);
        check_width(b);
        const auto& gens = data_->gens;
        Monomial out = unit_monomial();
        // Koszul sign: moving b_j past a_i for i > j costs (-1)^{a_i b_j} when
        // both generators have odd degree t.
        int64_t swaps = 0;
        int64_t b_odd_prefix = 0;
        for (size_t i = 0; i < gens.size(); ++i) {
            bool odd = (gens[i].bidegree.t % 2) != 0;
            if (odd)
                swaps += static_cast<int64_t>(a.exponents[i]) * b_odd_prefix;
            uint64_t e = static_cast<uint64_t>(a.exponents[i]) + b.exponents[i];
            if (gens[i].parity == Parity::exterior && e >= 2)
                return {0, unit_monomial()};
            if (e > std::numeric_limits<uint32_t>::max())
                throw DegreeCapExceeded("exponent overflow in monomial product");
            out.exponents[i] = static_cast<uint32_t>(e);
            if (odd)
                b_odd_prefix += b.exponents[i];
        }
        uint32_t sign = (swaps % 2 == 0) ? 1u : data_->p.neg(1u);
        return {sign, out};
    }

    // All monomials of the given bidegree, in lexicographic exponent order.
    std::vector<Monomial> basis_in_bidegree(const Bidegree& b) const
    {
        std::vector<Monomial> out;
        Monomial cur = unit_monomial();
        basis_rec(0, b.t, b.w, cur, out);
        return out;
    }

    // Dimension of every bidegree dominated by the window (t <= window.t,
    // w <= window.w, and t bounded below by what negative-degree generators
    // can reach within the weight budget).
    PoincareTable poincare_series(const Bidegree& window) const
    {
        PoincareTable table;
        table.window = window;
        int64_t t_lo = neg_bound(window.w);
        for (int64_t t = t_lo; t <= window.t; ++t)
            for (int64_t w = 0; w <= window.w; ++w)
                table.entries[Bidegree(t, w)] = 0;
        Monomial cur = unit_monomial();
        series_rec(0, 0, 0, window, table);
        return table;
    }

    std::string monomial_str(const Monomial& m) const
    {
        check_width(m);
        if (m.is_unit())
            return "1";
        std::string s;
        for (size_t i = 0; i < m.exponents.size(); ++i) {
            if (m.exponents[i] == 0)
                continue;
            if (!s.empty())
                s += " ";
            s += data_->gens[i].name;
            if (m.exponents[i] > 1)
                s += "^" + std::to_string(m.exponents[i]);
        }
        return s;
    }

  private:
    struct Data {
        Prime p;
        std::vector<GeneratorSpec> gens;
    };
    std::shared_ptr<const Data> data_;

    void check_width(const Monomial& m) const
    {
        if (m.exponents.size() != data_->gens.size())
            throw AmbientMismatch("monomial width does not match generator count");
    }

    // Lower bound for total t reachable with weight budget w_budget, from
    // generators of negative t (each has w >= 1 by connectivity).
    int64_t neg_bound(int64_t w_budget) const
    {
        int64_t lo = 0;
        for (const auto& g : data_->gens)
            if (g.bidegree.t < 0)
                lo += (w_budget / g.bidegree.w) * g.bidegree.t;
        return lo;
    }

    void basis_rec(size_t idx, int64_t t_left, int64_t w_left, Monomial& cur,
                   std::vector<Monomial>& out) const
    {
        if (w_left < 0)
            return;
        if (idx == data_->gens.size()) {
            if (t_left == 0 && w_left == 0)
                out.push_back(cur);
            return;
        }
        const auto& g = data_->gens[idx];
        int64_t cap;
        if (g.bidegree.w >= 1) {
            cap = w_left / g.bidegree.w;
        }
        else {
            // w == 0 forces t >= 1; bound t by what negative contributions can
            // still cancel within the remaining weight budget
            int64_t room = t_left - neg_bound(w_left);
            cap = room >= 0 ? room / g.bidegree.t : 0;
        }
        if (g.parity == Parity::exterior)
            cap = std::min<int64_t>(cap, 1);
        for (int64_t e = 0; e <= cap; ++e) {
            cur.exponents[idx] = static_cast<uint32_t>(e);
            basis_rec(idx + 1, t_left - e * g.bidegree.t, w_left - e * g.bidegree.w, cur, out);
        }
        cur.exponents[idx] = 0;
    }

    void series_rec(size_t idx, int64_t t_acc, int64_t w_acc, const Bidegree& window,
                    PoincareTable& table) const
    {
        if (w_acc > window.w)
            return;
        if (t_acc - neg_bound(window.w - w_acc) > window.t)
            return;
        if (idx == data_->gens.size()) {
            if (t_acc <= window.t)
                table.entries[Bidegree(t_acc, w_acc)] += 1;
            return;
        }
        const auto& g = data_->gens[idx];
        int64_t e = 0;
        while (true) {
            int64_t t = t_acc + e * g.bidegree.t;
            int64_t w = w_acc + e * g.bidegree.w;
            if (w > window.w)
                break;
            if (g.bidegree.w == 0 && t > window.t)
                break;
            if (t - neg_bound(window.w - w) > window.t)
                break;
            series_rec(idx + 1, t, w, window, table);
            if (g.parity == Parity::exterior && e == 1)
                break;
            if (g.bidegree.w == 0 && g.bidegree.t == 0)
                break;  // cannot happen (connectivity), defensive
            ++e;
        }
    }
};

inline FreeGCAlgebra make_algebra(const Prime& p, std::vector<GeneratorSpec> gens)
{
    return FreeGCAlgebra(p, std::move(gens));
}

// F_p-linear combination of monomials of one algebra.
class Element {
  public:
    explicit Element(FreeGCAlgebra alg) : alg_(std::move(alg)) {}

    static Element zero(const FreeGCAlgebra& alg) { return Element(alg); }

    static Element unit(const FreeGCAlgebra& alg)
    {
        Element e(alg);
        e.terms_[alg.unit_monomial()] = 1;
        return e;
    }

    static Element generator(const FreeGCAlgebra& alg, const std::string& name)
    {
        Element e(alg);
        e.terms_[alg.generator_monomial(alg.gen_index(name))] = 1;
        return e;
    }

    static Element monomial(const FreeGCAlgebra& alg, const Monomial& m, uint32_t coeff = 1)
    {
        Element e(alg);
        uint32_t c = coeff % alg.prime().value();
        if (c != 0)
            e.terms_[m] = c;
        return e;
    }

    const FreeGCAlgebra& algebra() const { return alg_; }
    const std::map<Monomial, uint32_t>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_homogeneous() const
    {
        if (terms_.empty())
            return true;
        Bidegree b = alg_.bidegree_of(terms_.begin()->first);
        for (const auto& [m, c] : terms_)
            if (alg_.bidegree_of(m) != b)
                return false;
        return true;
    }

    Bidegree bidegree() const
    {
        if (terms_.empty() || !is_homogeneous())
            throw InhomogeneousRelation("element has no single bidegree");
        return alg_.bidegree_of(terms_.begin()->first);
    }

    Element& add_term(const Monomial& m, uint32_t coeff)
    {
        const Prime& p = alg_.prime();
        uint32_t c = p.add(coeff % p.value(), coeff_of(m));
        if (c == 0)
            terms_.erase(m);
        else
            terms_[m] = c;
        return *this;
    }

    uint32_t coeff_of(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? 0 : it->second;
    }

    Element operator+(const Element& o) const
    {
        check_ambient(o);
        Element out = *this;
        for (const auto& [m, c] : o.terms_)
            out.add_term(m, c);
        return out;
    }

    Element operator-(const Element& o) const
    {
        check_ambient(o);
        Element out = *this;
        const Prime& p = alg_.prime();
        for (const auto& [m, c] : o.terms_)
            out.add_term(m, p.neg(c));
        return out;
    }

    Element scaled(uint32_t c) const
    {
        const Prime& p = alg_.prime();
        Element out(alg_);
        uint32_t s = c % p.value();
        if (s == 0)
            return out;
        for (const auto& [m, v] : terms_)
            out.terms_[m] = p.mul(v, s);
        return out;
    }

    Element operator*(const Element& o) const
    {
        check_ambient(o);
        const Prime& p = alg_.prime();
        Element out(alg_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) {
                auto [sign, m] = alg_.mul_monomials(ma, mb);
                if (sign == 0)
                    continue;
                out.add_term(m, p.mul(p.mul(ca, cb), sign));
            }
        return out;
    }

    Element pow(uint64_t k) const
    {
        Element acc = Element::unit(alg_);
        Element base = *this;
        while (k > 0) {
            if (k & 1)
                acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    bool operator==(const Element& o) const { return alg_.same_as(o.alg_) && terms_ == o.terms_; }
    bool operator!=(const Element& o) const { return !(*this == o); }

    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            if (!s.empty())
                s += " + ";
            if (c != 1 || m.is_unit())
                s += std::to_string(c) + (m.is_unit() ? "" : "*");
            if (!m.is_unit())
                s += alg_.monomial_str(m);
        }
        return s;
    }

  private:
    FreeGCAlgebra alg_;
    std::map<Monomial, uint32_t> terms_;

    void check_ambient(const Element& o) const
    {
        if (!alg_.same_as(o.alg_))
            throw AmbientMismatch("elements live in different algebras");
    }
};

inline Element multiply(const Element& a, const Element& b)
{
    return a * b;
}

inline std::vector<Monomial> basis_in_bidegree(const FreeGCAlgebra& alg, const Bidegree& b)
{
    return alg.basis_in_bidegree(b);
}

inline PoincareTable poincare_series(const FreeGCAlgebra& alg, const Bidegree& window)
{
    return alg.poincare_series(window);
}

// Coordinates of a homogeneous element w.r.t. the sorted monomial basis of its
// bidegree. The basis list must be sorted (as basis_in_bidegree returns it).
inline SparseColumn coordinates(const Element& x, const std::vector<Monomial>& basis)
{
    SparseColumn col;
    for (const auto& [m, c] : x.terms()) {
        auto it = std::lower_bound(basis.begin(), basis.end(), m);
        if (it == basis.end() || *it != m)
            throw DimensionMismatch("monomial not in the given basis");
        col.emplace_back(static_cast<int64_t>(it - basis.begin()), c);
    }
    return col;
}

}  // namespace ekalg
