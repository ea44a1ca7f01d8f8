#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ekalg/bidegree.hpp"
#include "ekalg/dyer_lashof.hpp"
#include "ekalg/errors.hpp"
#include "ekalg/gc_algebra.hpp"
#include "ekalg/linalg.hpp"
#include "ekalg/prime.hpp"

namespace ekalg {

// Monomial tau^E xi^R of the odd-primary dual Steenrod algebra.
struct MilnorMonomial {
    std::vector<uint32_t> tau_set;                       // strictly increasing indices e >= 0
    std::vector<std::pair<uint32_t, uint32_t>> xi_exp;   // (n >= 1, exponent >= 1), n increasing

    bool operator==(const MilnorMonomial& o) const
    {
        return tau_set == o.tau_set && xi_exp == o.xi_exp;
    }

    std::string str() const
    {
        if (tau_set.empty() && xi_exp.empty())
            return "1";
        std::string s;
        for (uint32_t e : tau_set)
            s += (s.empty() ? "" : " ") + std::string("tau") + std::to_string(e);
        for (const auto& [n, k] : xi_exp) {
            s += (s.empty() ? "" : " ") + std::string("xi") + std::to_string(n);
            if (k > 1)
                s += "^" + std::to_string(k);
        }
        return s;
    }
};

// Quotient by the ideal (xi_{n+1}, xi_{n+2}, ..., tau_n, tau_{n+1}, ...),
// either on the plain generators or on their conjugates.
struct QuotientSpec {
    int64_t n = 0;
    bool conjugated = false;

    QuotientSpec(int64_t n_, bool conjugated_) : n(n_), conjugated(conjugated_)
    {
        if (n < 0)
            throw InvalidArgument("quotient index n must be non-negative");
    }
};

// The odd-primary dual Steenrod algebra Lambda[tau_0, tau_1, ...] tensor
// F_p[xi_1, xi_2, ...], materialized up to a degree cap. Generator degrees are
// not hardcoded: they are derived by iterating the weight-halved operation
// degree rules from |tau_0| = 1 and asserted against the Milnor formulas
// |tau_k| = 2p^k - 1, |xi_k| = 2(p^k - 1).
class DualSteenrod {
  public:
    DualSteenrod(const Prime& p, int64_t degree_cap)
        : p_(p), cap_(degree_cap), alg_(build_algebra(p, degree_cap, tau_count_, xi_count_))
    {
        compute_conjugates();
    }

    const Prime& prime() const { return p_; }
    int64_t cap() const { return cap_; }
    const FreeGCAlgebra& algebra() const { return alg_; }
    int64_t tau_count() const { return tau_count_; }  // tau_0 .. tau_{count-1}
    int64_t xi_count() const { return xi_count_; }    // xi_1 .. xi_count

    int64_t tau_degree(int64_t k) const { return gen_spec(tau_gen_index(k)).bidegree.t; }
    int64_t xi_degree(int64_t m) const { return gen_spec(xi_gen_index(m)).bidegree.t; }

    size_t tau_gen_index(int64_t k) const
    {
        if (k < 0 || k >= tau_count_)
            throw IndexOutOfRange("tau index beyond materialized range");
        return static_cast<size_t>(k);
    }
    size_t xi_gen_index(int64_t m) const
    {
        if (m < 1 || m > xi_count_)
            throw IndexOutOfRange("xi index beyond materialized range");
        return static_cast<size_t>(tau_count_ + m - 1);
    }

    Element tau(int64_t k) const
    {
        return Element::monomial(alg_, alg_.generator_monomial(tau_gen_index(k)));
    }
    Element xi(int64_t m) const
    {
        return Element::monomial(alg_, alg_.generator_monomial(xi_gen_index(m)));
    }
    const Element& chi_tau(int64_t k) const { return chi_gens_.at(tau_gen_index(k)); }
    const Element& chi_xi(int64_t m) const { return chi_gens_.at(xi_gen_index(m)); }

    std::vector<Monomial> monomial_basis(int64_t d) const
    {
        if (d < 0)
            return {};
        return alg_.basis_in_bidegree(Bidegree(d, 0));
    }

    std::vector<MilnorMonomial> basis_in_degree(int64_t d) const
    {
        std::vector<MilnorMonomial> out;
        for (const auto& m : monomial_basis(d))
            out.push_back(to_milnor(m));
        return out;
    }

    MilnorMonomial to_milnor(const Monomial& m) const
    {
        MilnorMonomial out;
        for (int64_t k = 0; k < tau_count_; ++k)
            if (m.exponents[static_cast<size_t>(k)] != 0)
                out.tau_set.push_back(static_cast<uint32_t>(k));
        for (int64_t n = 1; n <= xi_count_; ++n) {
            uint32_t e = m.exponents[xi_gen_index(n)];
            if (e != 0)
                out.xi_exp.emplace_back(static_cast<uint32_t>(n), e);
        }
        return out;
    }

    Monomial from_milnor(const MilnorMonomial& mm) const
    {
        Monomial m = alg_.unit_monomial();
        for (uint32_t e : mm.tau_set)
            m.exponents[tau_gen_index(e)] = 1;
        for (const auto& [n, k] : mm.xi_exp)
            m.exponents[xi_gen_index(n)] = k;
        return m;
    }

    // Conjugation, extended multiplicatively from the generators. Every term
    // of x must have degree <= d_max <= cap.
    Element conjugate(const Element& x, int64_t d_max) const
    {
        if (d_max > cap_)
            throw DegreeCapExceeded("conjugation window exceeds materialized cap");
        Element out = Element::zero(alg_);
        for (const auto& [m, c] : x.terms()) {
            if (alg_.bidegree_of(m).t > d_max)
                throw DegreeCapExceeded("element degree exceeds conjugation window");
            out = out + conjugate_monomial(m).scaled(c);
        }
        return out;
    }

    Element conjugate_monomial(const Monomial& m) const
    {
        Element out = Element::unit(alg_);
        for (size_t k = 0; k < m.exponents.size(); ++k)
            if (m.exponents[k] != 0)
                out = out * chi_gens_[k].pow(m.exponents[k]);
        return out;
    }

  private:
    Prime p_;
    int64_t cap_;
    int64_t tau_count_ = 0;
    int64_t xi_count_ = 0;
    FreeGCAlgebra alg_;
    std::vector<Element> chi_gens_;  // indexed like algebra generators

    const GeneratorSpec& gen_spec(size_t idx) const { return alg_.generators()[idx]; }

    static FreeGCAlgebra build_algebra(const Prime& p, int64_t cap, int64_t& tau_count,
                                       int64_t& xi_count)
    {
        if (p.is_two())
            throw OddPrimeRequired("dual Steenrod quotients are implemented for odd primes");
        if (cap < 0)
            throw InvalidArgument("degree cap must be non-negative");
        const int64_t pv = static_cast<int64_t>(p.value());
        // Walk tau degrees by the weight-halved operation rules: Q_{1/2} sends
        // degree |tau_k| to |tau_{k+1}|, its beta variant to |xi_{k+1}|.
        std::vector<int64_t> tau_degs, xi_degs;
        int64_t r = 1;  // |tau_0|
        int64_t pk = 1; // p^k
        for (int64_t k = 0;; ++k) {
            if (r != 2 * pk - 1)
                throw Error("derived tau degree disagrees with the Milnor formula");
            if (r > cap)
                break;
            tau_degs.push_back(r);
            WeightedDegree next = apply_op(p, OpSymbol::q_half(), {r, 1});
            WeightedDegree beta = apply_op(p, OpSymbol::beta_q_half(), {r, 1});
            if (beta.r != next.r - 1 || beta.r != 2 * (pk * pv - 1))
                throw Error("derived xi degree disagrees with the Milnor formula");
            if (beta.r <= cap)
                xi_degs.push_back(beta.r);
            r = next.r;
            pk *= pv;
        }
        std::vector<GeneratorSpec> gens;
        for (size_t k = 0; k < tau_degs.size(); ++k)
            gens.push_back({"tau" + std::to_string(k), Parity::exterior,
                            Bidegree(tau_degs[k], 0)});
        for (size_t m = 0; m < xi_degs.size(); ++m)
            gens.push_back({"xi" + std::to_string(m + 1), Parity::polynomial,
                            Bidegree(xi_degs[m], 0)});
        tau_count = static_cast<int64_t>(tau_degs.size());
        xi_count = static_cast<int64_t>(xi_degs.size());
        return FreeGCAlgebra(p, std::move(gens));
    }

    // Milnor recursions (standard literature; validated by tests, not trusted):
    //   sum_{i=0}^{n} xi_{n-i}^{p^i} chi(xi_i) = 0   (n >= 1, xi_0 = 1)
    //   tau_n + sum_{i=0}^{n} xi_{n-i}^{p^i} chi(tau_i) = 0
    void compute_conjugates()
    {
        chi_gens_.assign(alg_.generator_count(), Element::zero(alg_));
        std::vector<Element> chi_xi(static_cast<size_t>(xi_count_) + 1, Element::zero(alg_));
        chi_xi[0] = Element::unit(alg_);
        auto xi_pow_p = [&](int64_t n_minus_i, int64_t i) {
            // xi_{n-i}^{p^i}; xi_0 = 1
            if (n_minus_i == 0)
                return Element::unit(alg_);
            uint64_t e = 1;
            for (int64_t k = 0; k < i; ++k)
                e *= p_.value();
            return xi(n_minus_i).pow(e);
        };
        for (int64_t n = 1; n <= xi_count_; ++n) {
            Element acc = Element::zero(alg_);
            for (int64_t i = 0; i < n; ++i)
                acc = acc + xi_pow_p(n - i, i) * chi_xi[static_cast<size_t>(i)];
            // xi_0^{p^n} chi(xi_n) = chi(xi_n) = -acc
            chi_xi[static_cast<size_t>(n)] = acc.scaled(p_.neg(1));
            chi_gens_[xi_gen_index(n)] = chi_xi[static_cast<size_t>(n)];
        }
        std::vector<Element> chi_tau(static_cast<size_t>(tau_count_), Element::zero(alg_));
        for (int64_t n = 0; n < tau_count_; ++n) {
            Element acc = tau(n);
            for (int64_t i = 0; i < n; ++i)
                acc = acc + xi_pow_p(n - i, i) * chi_tau[static_cast<size_t>(i)];
            chi_tau[static_cast<size_t>(n)] = acc.scaled(p_.neg(1));
            chi_gens_[tau_gen_index(n)] = chi_tau[static_cast<size_t>(n)];
        }
    }
};

// ---------------------------------------------------------------------------
// Quotients and the subring / freeness checks
// ---------------------------------------------------------------------------

namespace detail {

// Degreewise echelon spans of the ideal (tau_{>=n}, xi_{>=n+1}) or its
// conjugated twin, over the monomial basis of each degree.
struct IdealSpans {
    std::vector<std::vector<Monomial>> basis;  // monomial basis per degree
    std::vector<Echelon> spans;                // ideal span per degree

    IdealSpans(const DualSteenrod& A, const QuotientSpec& q, int64_t d_max)
    {
        const Prime& p = A.prime();
        std::vector<Element> ideal_gens;
        for (int64_t k = q.n; k < A.tau_count(); ++k)
            ideal_gens.push_back(q.conjugated ? A.chi_tau(k) : A.tau(k));
        for (int64_t m = q.n + 1; m <= A.xi_count(); ++m)
            ideal_gens.push_back(q.conjugated ? A.chi_xi(m) : A.xi(m));
        for (int64_t d = 0; d <= d_max; ++d)
            basis.push_back(A.monomial_basis(d));
        for (int64_t d = 0; d <= d_max; ++d) {
            Echelon e(p, static_cast<int64_t>(basis[static_cast<size_t>(d)].size()));
            for (const auto& g : ideal_gens) {
                int64_t gd = g.bidegree().t;
                if (gd > d)
                    continue;
                for (const auto& m : basis[static_cast<size_t>(d - gd)]) {
                    Element prod = g * Element::monomial(A.algebra(), m);
                    e.add(coordinates(prod, basis[static_cast<size_t>(d)]));
                }
            }
            spans.push_back(std::move(e));
        }
    }

    int64_t quotient_dim(int64_t d) const
    {
        return static_cast<int64_t>(basis[static_cast<size_t>(d)].size()) -
               spans[static_cast<size_t>(d)].rank();
    }
};

}  // namespace detail

struct QuotientBasis {
    PoincareTable table;                                // keyed (d, 0)
    std::vector<std::vector<MilnorMonomial>> basis;     // surviving monomials per degree
};

// Degreewise basis of A_* / (tau_{>=n}, xi_{>=n+1}): monomials of A whose
// coordinates are not pivot rows of the ideal span.
inline QuotientBasis quotient_basis(const DualSteenrod& A, const QuotientSpec& q, int64_t d_max)
{
    if (d_max < 0)
        throw InvalidArgument("d_max must be non-negative");
    if (d_max > A.cap())
        throw DegreeCapExceeded("d_max exceeds the materialized cap");
    detail::IdealSpans ideal(A, q, d_max);
    QuotientBasis out;
    out.table.window = Bidegree(d_max, 0);
    for (int64_t d = 0; d <= d_max; ++d) {
        const auto& bas = ideal.basis[static_cast<size_t>(d)];
        std::vector<MilnorMonomial> survivors;
        for (size_t i = 0; i < bas.size(); ++i)
            if (!ideal.spans[static_cast<size_t>(d)].has_pivot(static_cast<int64_t>(i)))
                survivors.push_back(A.to_milnor(bas[i]));
        out.table.entries[Bidegree(d, 0)] = static_cast<int64_t>(survivors.size());
        out.basis.push_back(std::move(survivors));
    }
    return out;
}

struct IsoDegreeLine {
    int64_t d = 0;
    int64_t source_dim = 0;
    int64_t target_dim = 0;
    int64_t rank = 0;
    bool ok = false;
};

struct IsoReport {
    std::vector<IsoDegreeLine> lines;
    bool ok = true;
};

// Monomial of the subalgebra on tau_{<n}, xi_{<=n}, re-expressed as a
// monomial of A (generator-by-generator exponent transfer).
inline Monomial embed_low_monomial(const DualSteenrod& A, const Monomial& sub_monomial, int64_t n)
{
    Monomial am = A.algebra().unit_monomial();
    size_t pos = 0;
    for (int64_t k = 0; k < std::min(n, A.tau_count()); ++k, ++pos)
        am.exponents[A.tau_gen_index(k)] = sub_monomial.exponents[pos];
    for (int64_t m = 1; m <= std::min(n, A.xi_count()); ++m, ++pos)
        am.exponents[A.xi_gen_index(m)] = sub_monomial.exponents[pos];
    return am;
}

// Applies the multiplicative extension of gen -> images[gen] to a monomial of
// src, landing in dst. The result is the ordered product of image powers.
inline Element map_monomial(const FreeGCAlgebra& src, const Monomial& m,
                            const std::vector<Element>& images, const FreeGCAlgebra& dst)
{
    if (images.size() != src.generator_count())
        throw DimensionMismatch("one image per generator required");
    if (m.exponents.size() != src.generator_count())
        throw AmbientMismatch("monomial does not match source algebra");
    Element out = Element::unit(dst);
    for (size_t k = 0; k < m.exponents.size(); ++k)
        if (m.exponents[k] != 0)
            out = out * images[k].pow(m.exponents[k]);
    return out;
}

// Checks that F_p[xi_1..xi_n] tensor Lambda[tau_0..tau_{n-1}] (always on the
// plain generators) maps degreewise isomorphically onto the quotient
// A_*/(tau_{>=n}, xi_{>=n+1}) of the given flavor.
inline IsoReport subring_iso_check(const DualSteenrod& A, const QuotientSpec& q, int64_t d_max)
{
    if (d_max < 0 || d_max > A.cap())
        throw DegreeCapExceeded("d_max outside the materialized cap");
    const Prime& p = A.prime();
    detail::IdealSpans ideal(A, q, d_max);

    // the subring is spanned by monomials of A in the low generators only
    std::vector<GeneratorSpec> sub_gens;
    for (int64_t k = 0; k < std::min(q.n, A.tau_count()); ++k)
        sub_gens.push_back({"t" + std::to_string(k), Parity::exterior,
                            Bidegree(A.tau_degree(k), 0)});
    for (int64_t m = 1; m <= std::min(q.n, A.xi_count()); ++m)
        sub_gens.push_back({"x" + std::to_string(m), Parity::polynomial,
                            Bidegree(A.xi_degree(m), 0)});
    FreeGCAlgebra sub(p, sub_gens);

    IsoReport report;
    for (int64_t d = 0; d <= d_max; ++d) {
        const auto& bas = ideal.basis[static_cast<size_t>(d)];
        IsoDegreeLine line;
        line.d = d;
        line.target_dim = ideal.quotient_dim(d);
        Echelon image(p, static_cast<int64_t>(bas.size()));
        for (const auto& sm : sub.basis_in_bidegree(Bidegree(d, 0))) {
            ++line.source_dim;
            Monomial am = embed_low_monomial(A, sm, q.n);
            SparseColumn col = ideal.spans[static_cast<size_t>(d)].reduce(
                coordinates(Element::monomial(A.algebra(), am), bas));
            image.add(col);
        }
        line.rank = image.rank();
        line.ok = line.source_dim == line.target_dim && line.rank == line.source_dim;
        report.ok = report.ok && line.ok;
        report.lines.push_back(line);
    }
    return report;
}

// Checks that multiplication (complement on the conjugated low generators)
// tensor (base on the conjugated high generators) -> A_* is a degreewise
// isomorphism; this witnesses freeness of A_* over the base subalgebra.
inline IsoReport freeness_check(const DualSteenrod& A, const QuotientSpec& q, int64_t d_max)
{
    if (!q.conjugated)
        throw InvalidArgument("freeness check is stated for the conjugated quotient");
    if (d_max < 0 || d_max > A.cap())
        throw DegreeCapExceeded("d_max outside the materialized cap");
    const Prime& p = A.prime();

    // abstract copies of complement and base, with their generator images in A
    std::vector<GeneratorSpec> c_gens, b_gens;
    std::vector<Element> c_images, b_images;
    for (int64_t k = 0; k < A.tau_count(); ++k) {
        GeneratorSpec g{"t" + std::to_string(k), Parity::exterior, Bidegree(A.tau_degree(k), 0)};
        if (k < q.n) {
            c_gens.push_back(g);
            c_images.push_back(A.chi_tau(k));
        }
        else {
            b_gens.push_back(g);
            b_images.push_back(A.chi_tau(k));
        }
    }
    for (int64_t m = 1; m <= A.xi_count(); ++m) {
        GeneratorSpec g{"x" + std::to_string(m), Parity::polynomial, Bidegree(A.xi_degree(m), 0)};
        if (m <= q.n) {
            c_gens.push_back(g);
            c_images.push_back(A.chi_xi(m));
        }
        else {
            b_gens.push_back(g);
            b_images.push_back(A.chi_xi(m));
        }
    }
    FreeGCAlgebra comp(p, c_gens), base(p, b_gens);

    IsoReport report;
    for (int64_t d = 0; d <= d_max; ++d) {
        std::vector<Monomial> bas = A.monomial_basis(d);
        IsoDegreeLine line;
        line.d = d;
        line.target_dim = static_cast<int64_t>(bas.size());
        Echelon image(p, line.target_dim);
        for (int64_t a = 0; a <= d; ++a) {
            std::vector<Monomial> cm = comp.basis_in_bidegree(Bidegree(a, 0));
            if (cm.empty())
                continue;
            std::vector<Monomial> bm = base.basis_in_bidegree(Bidegree(d - a, 0));
            for (const auto& c : cm)
                for (const auto& b : bm) {
                    ++line.source_dim;
                    Element prod = map_monomial(comp, c, c_images, A.algebra()) *
                                   map_monomial(base, b, b_images, A.algebra());
                    image.add(coordinates(prod, bas));
                }
        }
        line.rank = image.rank();
        line.ok = line.source_dim == line.target_dim && line.rank == line.source_dim;
        report.ok = report.ok && line.ok;
        report.lines.push_back(line);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Tor via the normalized bar complex
// ---------------------------------------------------------------------------

struct TorTable {
    int64_t s_max = 0;
    int64_t d_max = 0;
    std::vector<std::vector<int64_t>> dims;  // dims[s][d]

    int64_t dim(int64_t s, int64_t d) const
    {
        return dims[static_cast<size_t>(s)][static_cast<size_t>(d)];
    }
};

// Tor_B(M, F_p) for a graded algebra map B -> M, from the normalized bar
// complex M tensor Bbar^{tensor s}, truncated by internal degree. Both
// algebras must be graded by t alone (every generator of weight 0) with
// positive generator degrees; images[k] is the image in M of the k-th
// generator of B, homogeneous of the same degree.
inline TorTable bar_tor(const FreeGCAlgebra& M, const FreeGCAlgebra& B,
                        const std::vector<Element>& images, int64_t d_max, int64_t s_max)
{
    if (s_max < 1)
        throw InvalidArgument("s_max must be at least 1");
    if (d_max < 0)
        throw InvalidArgument("d_max must be non-negative");
    if (images.size() != B.generator_count())
        throw DimensionMismatch("one image per base generator required");
    const Prime& p = M.prime();
    for (const auto& g : M.generators())
        if (g.bidegree.w != 0 || g.bidegree.t < 1)
            throw InvalidArgument("bar complex needs positive t-graded generators");
    for (size_t k = 0; k < B.generator_count(); ++k) {
        const auto& g = B.generators()[k];
        if (g.bidegree.w != 0 || g.bidegree.t < 1)
            throw InvalidArgument("bar complex needs positive t-graded generators");
        if (!images[k].is_zero() &&
            (!images[k].is_homogeneous() || images[k].bidegree().t != g.bidegree.t))
            throw InvalidArgument("image of " + g.name + " must be homogeneous of its degree");
        if (!images[k].algebra().same_as(M))
            throw AmbientMismatch("images must live in the module algebra");
    }

    // graded pieces
    std::vector<std::vector<Monomial>> m_basis, b_basis;  // per degree; b_basis[0] unused
    for (int64_t d = 0; d <= d_max; ++d) {
        m_basis.push_back(M.basis_in_bidegree(Bidegree(d, 0)));
        b_basis.push_back(d == 0 ? std::vector<Monomial>{}
                                 : B.basis_in_bidegree(Bidegree(d, 0)));
    }
    // image of every positive B monomial, used by the leftmost face
    std::map<Monomial, Element> b_image;
    for (int64_t d = 1; d <= d_max; ++d)
        for (const auto& bm : b_basis[static_cast<size_t>(d)])
            b_image.emplace(bm, map_monomial(B, bm, images, M));

    // basis of C_s in internal degree d: (M monomial, list of positive B
    // monomials with degree sum making up d)
    struct BarKey {
        int64_t m_deg;
        size_t m_idx;
        std::vector<std::pair<int64_t, size_t>> bars;  // (degree, index) per factor

        bool operator<(const BarKey& o) const
        {
            return std::tie(m_deg, m_idx, bars) < std::tie(o.m_deg, o.m_idx, o.bars);
        }
    };
    // chains[s]: per degree, ordered keys + index lookup
    auto enumerate_chains = [&](int64_t s) {
        std::vector<std::map<BarKey, int64_t>> by_degree(static_cast<size_t>(d_max) + 1);
        std::vector<std::pair<int64_t, size_t>> bars;
        auto rec = [&](auto&& self, int64_t level, int64_t used) -> void {
            if (level == s) {
                for (int64_t md = 0; md + used <= d_max; ++md)
                    for (size_t mi = 0; mi < m_basis[static_cast<size_t>(md)].size(); ++mi) {
                        auto& slot = by_degree[static_cast<size_t>(md + used)];
                        int64_t idx = static_cast<int64_t>(slot.size());
                        slot.emplace(BarKey{md, mi, bars}, idx);
                    }
                return;
            }
            for (int64_t e = 1; used + e <= d_max; ++e)
                for (size_t bi = 0; bi < b_basis[static_cast<size_t>(e)].size(); ++bi) {
                    bars.emplace_back(e, bi);
                    self(self, level + 1, used + e);
                    bars.pop_back();
                }
        };
        rec(rec, 0, 0);
        return by_degree;
    };

    std::vector<std::vector<std::map<BarKey, int64_t>>> chains;  // [s][d]
    for (int64_t s = 0; s <= s_max + 1; ++s)
        chains.push_back(enumerate_chains(s));

    // differential C_s -> C_{s-1} in fixed internal degree
    auto build_matrix = [&](int64_t s, int64_t d) {
        const auto& src = chains[static_cast<size_t>(s)][static_cast<size_t>(d)];
        const auto& dst = chains[static_cast<size_t>(s) - 1][static_cast<size_t>(d)];
        SparseMatrix mat(static_cast<int64_t>(dst.size()), static_cast<int64_t>(src.size()));
        for (const auto& [key, col_idx] : src) {
            SparseColumn col;
            const Monomial& m0 = m_basis[static_cast<size_t>(key.m_deg)][key.m_idx];
            // face 0: multiply the first bar factor into the module
            {
                auto [e1, i1] = key.bars[0];
                const Element& img = b_image.at(b_basis[static_cast<size_t>(e1)][i1]);
                Element prod = Element::monomial(M, m0) * img;
                BarKey rest{key.m_deg + e1, 0, {key.bars.begin() + 1, key.bars.end()}};
                const auto& mb = m_basis[static_cast<size_t>(rest.m_deg)];
                for (const auto& [mono, coeff] : prod.terms()) {
                    auto it = std::lower_bound(mb.begin(), mb.end(), mono);
                    rest.m_idx = static_cast<size_t>(it - mb.begin());
                    col.emplace_back(dst.at(rest), coeff);
                }
            }
            // inner faces i = 1..s-1: multiply adjacent bar factors, sign (-1)^i
            for (int64_t i = 1; i < s; ++i) {
                auto [ea, ia] = key.bars[static_cast<size_t>(i - 1)];
                auto [eb, ib] = key.bars[static_cast<size_t>(i)];
                auto [sign, merged] = B.mul_monomials(b_basis[static_cast<size_t>(ea)][ia],
                                                      b_basis[static_cast<size_t>(eb)][ib]);
                if (sign == 0)
                    continue;
                const auto& eb_basis = b_basis[static_cast<size_t>(ea + eb)];
                auto it = std::lower_bound(eb_basis.begin(), eb_basis.end(), merged);
                BarKey rest{key.m_deg, key.m_idx, {}};
                rest.bars.assign(key.bars.begin(), key.bars.end());
                rest.bars.erase(rest.bars.begin() + static_cast<int64_t>(i));
                rest.bars[static_cast<size_t>(i - 1)] = {ea + eb,
                                                         static_cast<size_t>(it - eb_basis.begin())};
                uint32_t c = (i % 2 == 0) ? sign : p.neg(sign);
                col.emplace_back(dst.at(rest), c);
            }
            mat.set_column(p, col_idx, std::move(col));
        }
        return mat;
    };

    // ranks of all differentials, then Tor by rank arithmetic
    std::vector<std::vector<int64_t>> ranks(static_cast<size_t>(s_max) + 2,
                                            std::vector<int64_t>(static_cast<size_t>(d_max) + 1, 0));
    for (int64_t s = 1; s <= s_max + 1; ++s)
        for (int64_t d = 0; d <= d_max; ++d)
            ranks[static_cast<size_t>(s)][static_cast<size_t>(d)] = rank(p, build_matrix(s, d));

    TorTable table;
    table.s_max = s_max;
    table.d_max = d_max;
    table.dims.assign(static_cast<size_t>(s_max) + 1,
                      std::vector<int64_t>(static_cast<size_t>(d_max) + 1, 0));
    for (int64_t s = 0; s <= s_max; ++s)
        for (int64_t d = 0; d <= d_max; ++d) {
            int64_t dim_cs =
                static_cast<int64_t>(chains[static_cast<size_t>(s)][static_cast<size_t>(d)].size());
            int64_t r_in = ranks[static_cast<size_t>(s) + 1][static_cast<size_t>(d)];
            int64_t r_out = s == 0 ? 0 : ranks[static_cast<size_t>(s)][static_cast<size_t>(d)];
            table.dims[static_cast<size_t>(s)][static_cast<size_t>(d)] = dim_cs - r_out - r_in;
        }
    return table;
}

struct KunnethReport {
    TorTable tor;
    std::vector<int64_t> quotient_dims;
    bool positive_vanish = true;
    bool tor0_matches_quotient = true;

    bool ok() const { return positive_vanish && tor0_matches_quotient; }
};

// Tor over the conjugated base subalgebra Lambda[tb_n, ...] tensor
// F_p[xb_{n+1}, ...] of (A_*, F_p): the Kunneth spectral sequence input. The
// degeneration statement is that Tor vanishes in positive filtration and
// Tor_0 recovers the quotient series.
inline KunnethReport kunneth_e2(const DualSteenrod& A, const QuotientSpec& q, int64_t d_max,
                                int64_t s_max)
{
    if (!q.conjugated)
        throw InvalidArgument("the Kunneth base is the conjugated subalgebra");
    if (d_max > A.cap())
        throw DegreeCapExceeded("d_max exceeds the materialized cap");
    std::vector<GeneratorSpec> b_gens;
    std::vector<Element> images;
    for (int64_t k = q.n; k < A.tau_count(); ++k) {
        if (A.tau_degree(k) > d_max)
            continue;
        b_gens.push_back({"tb" + std::to_string(k), Parity::exterior,
                          Bidegree(A.tau_degree(k), 0)});
        images.push_back(A.chi_tau(k));
    }
    for (int64_t m = q.n + 1; m <= A.xi_count(); ++m) {
        if (A.xi_degree(m) > d_max)
            continue;
        b_gens.push_back({"xb" + std::to_string(m), Parity::polynomial,
                          Bidegree(A.xi_degree(m), 0)});
        images.push_back(A.chi_xi(m));
    }
    FreeGCAlgebra base(A.prime(), std::move(b_gens));

    KunnethReport report;
    report.tor = bar_tor(A.algebra(), base, images, d_max, s_max);
    QuotientBasis qb = quotient_basis(A, q, d_max);
    for (int64_t d = 0; d <= d_max; ++d)
        report.quotient_dims.push_back(qb.table.dim(Bidegree(d, 0)));
    for (int64_t s = 1; s <= s_max; ++s)
        for (int64_t d = 0; d <= d_max; ++d)
            if (report.tor.dim(s, d) != 0)
                report.positive_vanish = false;
    for (int64_t d = 0; d <= d_max; ++d)
        if (report.tor.dim(0, d) != report.quotient_dims[static_cast<size_t>(d)])
            report.tor0_matches_quotient = false;
    return report;
}

// ---------------------------------------------------------------------------
// Steinberger degree bookkeeping
// ---------------------------------------------------------------------------

struct SteinbergerLine {
    int64_t n = 0;
    int64_t tau_deg = 0;        // 2p^n - 1
    int64_t q_image = 0;        // degree of Q_{1/2} on tau_deg
    int64_t tau_next = 0;       // 2p^{n+1} - 1
    int64_t beta_image = 0;     // degree of beta Q_{1/2} on tau_deg
    int64_t xi_next = 0;        // 2p^{n+1} - 2
    bool degrees_ok = false;
    bool e2_generators_ok = false;
};

struct SteinbergerReport {
    std::vector<SteinbergerLine> lines;
    bool ok = true;
};

// Confirms that the operation degree rules send |tau_n| to |tau_{n+1}| (plain)
// and |xi_{n+1}| (beta variant), and that the free E_2-algebra generators on a
// class of degree |tau_n| line up with the tau/xi degrees above n.
inline SteinbergerReport steinberger_consistency(const Prime& p, int64_t n_max)
{
    if (p.is_two())
        throw OddPrimeRequired("Steinberger identities are stated at odd primes");
    const int64_t pv = static_cast<int64_t>(p.value());
    SteinbergerReport report;
    for (int64_t n = 0; n <= n_max; ++n) {
        SteinbergerLine line;
        line.n = n;
        int64_t pn = 1;
        for (int64_t k = 0; k < n; ++k)
            pn = detail::checked_mul(pn, pv);
        line.tau_deg = 2 * pn - 1;
        line.tau_next = 2 * pn * pv - 1;
        line.xi_next = 2 * pn * pv - 2;
        line.q_image = apply_op(p, OpSymbol::q_half(), {line.tau_deg, 1}).r;
        line.beta_image = apply_op(p, OpSymbol::beta_q_half(), {line.tau_deg, 1}).r;
        line.degrees_ok = line.q_image == line.tau_next && line.beta_image == line.xi_next;

        // two more iterations of the same rules, compared with the free
        // E_2-algebra generator list on a sphere class of degree |tau_n|
        int64_t bound = detail::checked_mul(2 * pn, detail::checked_mul(pv, pv));
        std::vector<std::pair<int64_t, Parity>> expected;
        expected.emplace_back(line.tau_deg, Parity::exterior);
        int64_t r = line.tau_deg;
        for (int64_t step = 0; step < 2; ++step) {
            int64_t q = pv * r + (pv - 1);
            if (q <= bound)
                expected.emplace_back(q, Parity::exterior);
            if (q - 1 <= bound)
                expected.emplace_back(q - 1, Parity::polynomial);
            r = q;
        }
        std::vector<std::pair<int64_t, Parity>> got;
        for (const auto& g : free_e2_generators_odd(p, line.tau_deg, bound))
            got.emplace_back(g.degree, g.parity);
        std::sort(expected.begin(), expected.end());
        std::sort(got.begin(), got.end());
        line.e2_generators_ok = expected == got;

        report.ok = report.ok && line.degrees_ok && line.e2_generators_ok;
        report.lines.push_back(line);
    }
    return report;
}

}  // namespace ekalg
