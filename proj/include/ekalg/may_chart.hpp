#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ekalg/bidegree.hpp"
#include "ekalg/dyer_lashof.hpp"
#include "ekalg/errors.hpp"
#include "ekalg/gc_algebra.hpp"
#include "ekalg/prime.hpp"

namespace ekalg {

struct ChartSpec {
    Prime prime;
    int64_t t_max = 0;
    std::optional<int64_t> f_max;

    ChartSpec(const Prime& p, int64_t t_max_, std::optional<int64_t> f_max_ = std::nullopt)
        : prime(p), t_max(t_max_), f_max(f_max_)
    {
        if (t_max < 0)
            throw InvalidArgument("t_max must be non-negative");
        if (f_max && *f_max < 0)
            throw InvalidArgument("f_max must be non-negative");
    }
};

struct Chart {
    std::vector<GeneratorFamily> generators;
    FreeGCAlgebra algebra;
    PoincareTable dims;
    int64_t f_max_used = 0;
};

namespace detail {
inline int64_t checked_pow(int64_t base, int64_t e)
{
    int64_t out = 1;
    for (int64_t k = 0; k < e; ++k)
        out = checked_mul(out, base);
    return out;
}
}  // namespace detail

// Closed-form chart bidegree of a family member.
//   p = 2:  h_{i,j} at (2^{i+j} - 2^j - 1, 2^{i+j-1})
//   odd p:  v_i at (2p^i - 2, p^i)
//           h_{i,j} at (2p^{i+j} - 2p^j - 1, p^{i+j})
//           b_{i,j} at (2p^{i+j+1} - 2p^{j+1} - 2, p^{i+j+1})
inline Bidegree closed_form(const Prime& p, Family family, int64_t i, int64_t j = 0)
{
    using detail::checked_pow;
    const int64_t pv = static_cast<int64_t>(p.value());
    if (p.is_two()) {
        if (family != Family::h2)
            throw IndexOutOfRange("only the h family exists at p = 2");
        if (i < 1 || j < 0)
            throw IndexOutOfRange("h family needs i >= 1, j >= 0");
        return Bidegree(checked_pow(2, i + j) - checked_pow(2, j) - 1, checked_pow(2, i + j - 1));
    }
    switch (family) {
        case Family::h2:
            throw IndexOutOfRange("the h2 family exists only at p = 2");
        case Family::v:
            if (i < 0)
                throw IndexOutOfRange("v family needs i >= 0");
            return Bidegree(2 * checked_pow(pv, i) - 2, checked_pow(pv, i));
        case Family::h:
            if (i < 1 || j < 0)
                throw IndexOutOfRange("h family needs i >= 1, j >= 0");
            return Bidegree(2 * checked_pow(pv, i + j) - 2 * checked_pow(pv, j) - 1,
                            checked_pow(pv, i + j));
        case Family::b:
            if (i < 1 || j < 0)
                throw IndexOutOfRange("b family needs i >= 1, j >= 0");
            return Bidegree(2 * checked_pow(pv, i + j + 1) - 2 * checked_pow(pv, j + 1) - 2,
                            checked_pow(pv, i + j + 1));
    }
    throw IndexOutOfRange("unknown family");
}

inline Parity family_parity(const Prime& p, Family family)
{
    if (p.is_two())
        return Parity::polynomial;
    return family == Family::h ? Parity::exterior : Parity::polynomial;
}

namespace detail {

inline GeneratorFamily make_family(const Prime& p, Family family, int64_t i, int64_t j)
{
    GeneratorFamily g{family, i, j, family_word(p, family, i, j), family_parity(p, family),
                      family_member_name(family, i, j), closed_form(p, family, i, j)};
    return g;
}

// Appends all members of one (i, j)-indexed family inside the window. The
// closed-form t is strictly increasing in i for fixed j and non-decreasing in
// j for fixed i, so both scans terminate on the first overflow.
inline void scan_family(const Prime& p, Family family, int64_t i_min, const ChartSpec& spec,
                        std::vector<GeneratorFamily>& out)
{
    for (int64_t i = i_min;; ++i) {
        if (closed_form(p, family, i, 0).t > spec.t_max)
            break;
        for (int64_t j = 0;; ++j) {
            Bidegree b = closed_form(p, family, i, j);
            if (b.t > spec.t_max)
                break;
            if (!spec.f_max || b.w <= *spec.f_max)
                out.push_back(make_family(p, family, i, j));
        }
    }
}

}  // namespace detail

// Every family member whose closed-form bidegree fits the window, ordered by
// family, then i, then j.
inline std::vector<GeneratorFamily> enumerate_generators(const ChartSpec& spec)
{
    std::vector<GeneratorFamily> out;
    const Prime& p = spec.prime;
    if (p.is_two()) {
        detail::scan_family(p, Family::h2, 1, spec, out);
        return out;
    }
    // v family has no j index
    for (int64_t i = 0;; ++i) {
        Bidegree b = closed_form(p, Family::v, i);
        if (b.t > spec.t_max)
            break;
        if (!spec.f_max || b.w <= *spec.f_max)
            out.push_back(detail::make_family(p, Family::v, i, 0));
    }
    detail::scan_family(p, Family::h, 1, spec, out);
    detail::scan_family(p, Family::b, 1, spec, out);
    return out;
}

// Materializes the chart: the free graded-commutative algebra on the
// enumerated generators with its dimension table over the window. When no
// f_max is given, the table is capped at the largest generator filtration
// (generators of total degree 0 make columns infinite otherwise).
inline Chart build_chart(const ChartSpec& spec)
{
    std::vector<GeneratorFamily> gens = enumerate_generators(spec);
    int64_t f_used;
    if (spec.f_max) {
        f_used = *spec.f_max;
    }
    else {
        f_used = 1;
        for (const auto& g : gens)
            f_used = std::max(f_used, g.chart.w);
    }
    std::vector<GeneratorSpec> specs;
    specs.reserve(gens.size());
    for (const auto& g : gens)
        specs.push_back({g.name, g.parity, g.chart});
    FreeGCAlgebra alg(spec.prime, std::move(specs));
    PoincareTable dims = alg.poincare_series(Bidegree(spec.t_max, f_used));
    return Chart{std::move(gens), std::move(alg), std::move(dims), f_used};
}

struct ChartMismatch {
    Family family;
    int64_t i = 0;
    int64_t j = 0;
    Bidegree closed;
    Bidegree word;
};

struct CrossCheckReport {
    int64_t checked = 0;
    std::vector<ChartMismatch> mismatches;

    bool ok() const { return mismatches.empty(); }
};

// Compares the closed-form bidegrees against independent evaluation of the
// defining operation words, for every family member in the index box.
inline CrossCheckReport cross_check(const Prime& p, int64_t i_max, int64_t j_max)
{
    CrossCheckReport report;
    auto compare = [&](Family family, int64_t i, int64_t j) {
        Bidegree closed = closed_form(p, family, i, j);
        Bidegree word = chart_bidegree(family_word(p, family, i, j));
        ++report.checked;
        if (closed != word)
            report.mismatches.push_back({family, i, j, closed, word});
    };
    if (p.is_two()) {
        for (int64_t i = 1; i <= i_max; ++i)
            for (int64_t j = 0; j <= j_max; ++j)
                compare(Family::h2, i, j);
        return report;
    }
    for (int64_t i = 0; i <= i_max; ++i)
        compare(Family::v, i, 0);
    for (int64_t i = 1; i <= i_max; ++i)
        for (int64_t j = 0; j <= j_max; ++j) {
            compare(Family::h, i, j);
            compare(Family::b, i, j);
        }
    return report;
}

}  // namespace ekalg
