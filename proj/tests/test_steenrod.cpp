#include <catch2/catch_amalgamated.hpp>

#include "ekalg/steenrod.hpp"

using namespace ekalg;

namespace {

const DualSteenrod& algebra_p3()
{
    static DualSteenrod A(Prime(3), 50);
    return A;
}

}  // namespace

TEST_CASE("generator degrees are derived, not hardcoded")
{
    const DualSteenrod& A = algebra_p3();
    REQUIRE(A.tau_count() == 3);  // degrees 1, 5, 17 fit under 50, 53 does not
    REQUIRE(A.xi_count() == 2);   // degrees 4, 16 fit, 52 does not
    int64_t pk = 1;
    for (int64_t k = 0; k < A.tau_count(); ++k) {
        CHECK(A.tau_degree(k) == 2 * pk - 1);
        pk *= 3;
    }
    int64_t pm = 3;
    for (int64_t m = 1; m <= A.xi_count(); ++m) {
        CHECK(A.xi_degree(m) == 2 * (pm - 1));
        pm *= 3;
    }

    DualSteenrod A5(Prime(5), 60);
    CHECK(A5.tau_count() == 3);  // 1, 9, 49
    CHECK(A5.xi_count() == 2);   // 8, 48
    CHECK(A5.tau_degree(2) == 49);
    CHECK(A5.xi_degree(2) == 48);

    CHECK_THROWS_AS(DualSteenrod(Prime(2), 20), OddPrimeRequired);
    CHECK_THROWS_AS(DualSteenrod(Prime(3), -1), InvalidArgument);
    CHECK_THROWS_AS(algebra_p3().tau_degree(3), IndexOutOfRange);
    CHECK_THROWS_AS(algebra_p3().xi_degree(0), IndexOutOfRange);
}

TEST_CASE("milnor monomial bases per degree")
{
    const DualSteenrod& A = algebra_p3();

    auto b0 = A.basis_in_degree(0);
    REQUIRE(b0.size() == 1);
    CHECK(b0[0].str() == "1");

    auto b1 = A.basis_in_degree(1);
    REQUIRE(b1.size() == 1);
    CHECK(b1[0].str() == "tau0");

    CHECK(A.basis_in_degree(2).empty());
    CHECK(A.basis_in_degree(3).empty());

    auto b4 = A.basis_in_degree(4);
    REQUIRE(b4.size() == 1);
    CHECK(b4[0].str() == "xi1");

    auto b5 = A.basis_in_degree(5);
    REQUIRE(b5.size() == 2);
    CHECK(b5[0].str() == "tau1");
    CHECK(b5[1].str() == "tau0 xi1");

    CHECK(A.basis_in_degree(-1).empty());
}

TEST_CASE("milnor round trip and degree formula")
{
    const DualSteenrod& A = algebra_p3();
    for (int64_t d = 0; d <= 30; ++d)
        for (const auto& m : A.monomial_basis(d)) {
            MilnorMonomial mm = A.to_milnor(m);
            CHECK(A.from_milnor(mm) == m);
            int64_t deg = 0;
            for (uint32_t e : mm.tau_set)
                deg += A.tau_degree(e);
            for (const auto& [n, k] : mm.xi_exp)
                deg += static_cast<int64_t>(k) * A.xi_degree(n);
            CHECK(deg == d);
        }
}

TEST_CASE("conjugation of the generators")
{
    const DualSteenrod& A = algebra_p3();
    // chi(tau0) = -tau0, chi(xi1) = -xi1
    CHECK(A.chi_tau(0) == A.tau(0).scaled(2));
    CHECK(A.chi_xi(1) == A.xi(1).scaled(2));
    // chi(xi2) = -xi2 + xi1^{p+1}
    CHECK(A.chi_xi(2) == A.xi(2).scaled(2) + A.xi(1).pow(4));
    // chi(tau1) = -tau1 + tau0 xi1
    CHECK(A.chi_tau(1) == A.tau(1).scaled(2) + A.tau(0) * A.xi(1));
    // conjugates are homogeneous of the generator degree
    for (int64_t k = 0; k < A.tau_count(); ++k)
        CHECK(A.chi_tau(k).bidegree() == Bidegree(A.tau_degree(k), 0));
    for (int64_t m = 1; m <= A.xi_count(); ++m)
        CHECK(A.chi_xi(m).bidegree() == Bidegree(A.xi_degree(m), 0));
}

TEST_CASE("conjugation is an involution and a ring map")
{
    const DualSteenrod& A = algebra_p3();
    // chi(chi(xi2)) = xi2 and the same on every monomial of degree <= 24
    CHECK(A.conjugate(A.chi_xi(2), 20) == A.xi(2));
    for (int64_t d = 0; d <= 24; ++d)
        for (const auto& m : A.monomial_basis(d)) {
            Element x = Element::monomial(A.algebra(), m);
            CHECK(A.conjugate(A.conjugate(x, 24), 24) == x);
        }
    // ring map on sampled pairs
    std::vector<Monomial> sample;
    for (int64_t d = 1; d <= 10; ++d)
        for (const auto& m : A.monomial_basis(d))
            sample.push_back(m);
    for (const auto& ma : sample)
        for (const auto& mb : sample) {
            Element a = Element::monomial(A.algebra(), ma);
            Element b = Element::monomial(A.algebra(), mb);
            CHECK(A.conjugate(a * b, 20) == A.conjugate(a, 20) * A.conjugate(b, 20));
        }
}

TEST_CASE("conjugation window guards")
{
    const DualSteenrod& A = algebra_p3();
    CHECK_THROWS_AS(A.conjugate(A.tau(0), 51), DegreeCapExceeded);
    CHECK_THROWS_AS(A.conjugate(A.xi(2), 10), DegreeCapExceeded);  // degree 16 > 10
}

TEST_CASE("quotient bases of both flavors")
{
    const DualSteenrod& A = algebra_p3();

    // n = 0: everything positive dies
    QuotientBasis q0 = quotient_basis(A, QuotientSpec(0, false), 8);
    CHECK(q0.table.dim(Bidegree(0, 0)) == 1);
    for (int64_t d = 1; d <= 8; ++d)
        CHECK(q0.table.dim(Bidegree(d, 0)) == 0);

    // n = 1: Lambda[tau0] tensor F_3[xi1]
    QuotientBasis q1 = quotient_basis(A, QuotientSpec(1, false), 9);
    std::vector<int64_t> dims;
    for (int64_t d = 0; d <= 9; ++d)
        dims.push_back(q1.table.dim(Bidegree(d, 0)));
    CHECK(dims == std::vector<int64_t>{1, 1, 0, 0, 1, 1, 0, 0, 1, 1});
    // tau0 xi1 survives at d = 5, tau1 dies
    REQUIRE(q1.basis[5].size() == 1);
    CHECK(q1.basis[5][0].str() == "tau0 xi1");
    REQUIRE(q1.basis[1].size() == 1);
    CHECK(q1.basis[1][0].str() == "tau0");

    // conjugated flavor has the same Poincare series
    QuotientBasis q1c = quotient_basis(A, QuotientSpec(1, true), 9);
    for (int64_t d = 0; d <= 9; ++d)
        CHECK(q1c.table.dim(Bidegree(d, 0)) == q1.table.dim(Bidegree(d, 0)));

    QuotientBasis q2 = quotient_basis(A, QuotientSpec(2, false), 20);
    QuotientBasis q2c = quotient_basis(A, QuotientSpec(2, true), 20);
    for (int64_t d = 0; d <= 20; ++d)
        CHECK(q2.table.dim(Bidegree(d, 0)) == q2c.table.dim(Bidegree(d, 0)));

    CHECK_THROWS_AS(quotient_basis(A, QuotientSpec(1, false), 60), DegreeCapExceeded);
    CHECK_THROWS_AS(QuotientSpec(-1, false), InvalidArgument);
}

TEST_CASE("subring maps isomorphically onto the quotient")
{
    const DualSteenrod& A = algebra_p3();
    for (int64_t n : {0, 1, 2})
        for (bool conj : {false, true}) {
            IsoReport report = subring_iso_check(A, QuotientSpec(n, conj), 25);
            INFO("n = " << n << " conjugated = " << conj);
            CHECK(report.ok);
            REQUIRE(report.lines.size() == 26);
            for (const auto& line : report.lines) {
                CHECK(line.ok);
                CHECK(line.source_dim == line.target_dim);
                CHECK(line.rank == line.source_dim);
            }
        }
    // n = 0 source is F_p: one class in degree 0, none above
    IsoReport r0 = subring_iso_check(A, QuotientSpec(0, false), 6);
    CHECK(r0.lines[0].source_dim == 1);
    for (size_t d = 1; d < r0.lines.size(); ++d)
        CHECK(r0.lines[d].source_dim == 0);

    DualSteenrod A5(Prime(5), 30);
    CHECK(subring_iso_check(A5, QuotientSpec(1, false), 30).ok);
    CHECK(subring_iso_check(A5, QuotientSpec(1, true), 30).ok);
}

TEST_CASE("multiplication witnesses freeness over the conjugated base")
{
    const DualSteenrod& A = algebra_p3();
    for (int64_t n : {0, 1, 2}) {
        IsoReport report = freeness_check(A, QuotientSpec(n, true), 25);
        INFO("n = " << n);
        CHECK(report.ok);
        for (const auto& line : report.lines)
            CHECK(line.ok);
    }
    CHECK_THROWS_AS(freeness_check(A, QuotientSpec(1, false), 10), InvalidArgument);

    DualSteenrod A5(Prime(5), 30);
    CHECK(freeness_check(A5, QuotientSpec(0, true), 30).ok);
    CHECK(freeness_check(A5, QuotientSpec(1, true), 30).ok);
}

TEST_CASE("bar Tor of a free module vanishes above filtration zero")
{
    Prime p(3);
    FreeGCAlgebra lam = make_algebra(p, {{"x", Parity::exterior, Bidegree(1, 0)}});
    std::vector<Element> images = {Element::generator(lam, "x")};
    TorTable tor = bar_tor(lam, lam, images, 6, 3);
    CHECK(tor.dim(0, 0) == 1);
    for (int64_t s = 0; s <= 3; ++s)
        for (int64_t d = 0; d <= 6; ++d)
            if (s != 0 || d != 0)
                CHECK(tor.dim(s, d) == 0);
}

TEST_CASE("bar Tor over an exterior algebra is divided powers")
{
    Prime p(3);
    FreeGCAlgebra lam = make_algebra(p, {{"x", Parity::exterior, Bidegree(1, 0)}});
    FreeGCAlgebra triv = make_algebra(p, {});
    std::vector<Element> images = {Element::zero(triv)};
    TorTable tor = bar_tor(triv, lam, images, 5, 4);
    for (int64_t s = 0; s <= 4; ++s)
        for (int64_t d = 0; d <= 5; ++d)
            CHECK(tor.dim(s, d) == (s == d ? 1 : 0));
}

TEST_CASE("bar Tor over a polynomial algebra is exterior")
{
    Prime p(3);
    FreeGCAlgebra poly = make_algebra(p, {{"y", Parity::polynomial, Bidegree(2, 0)}});
    FreeGCAlgebra triv = make_algebra(p, {});
    std::vector<Element> images = {Element::zero(triv)};
    TorTable tor = bar_tor(triv, poly, images, 8, 3);
    for (int64_t s = 0; s <= 3; ++s)
        for (int64_t d = 0; d <= 8; ++d) {
            int64_t expect = (s == 0 && d == 0) || (s == 1 && d == 2) ? 1 : 0;
            CHECK(tor.dim(s, d) == expect);
        }
}

TEST_CASE("bar Tor input validation")
{
    Prime p(3);
    FreeGCAlgebra lam = make_algebra(p, {{"x", Parity::exterior, Bidegree(1, 0)}});
    FreeGCAlgebra triv = make_algebra(p, {});
    FreeGCAlgebra weighted = make_algebra(p, {{"x", Parity::exterior, Bidegree(1, 1)}});
    std::vector<Element> zero = {Element::zero(triv)};
    CHECK_THROWS_AS(bar_tor(triv, lam, zero, 4, 0), InvalidArgument);
    CHECK_THROWS_AS(bar_tor(triv, lam, {}, 4, 2), DimensionMismatch);
    CHECK_THROWS_AS(bar_tor(triv, weighted, zero, 4, 2), InvalidArgument);
    // image of the wrong degree
    FreeGCAlgebra mod = make_algebra(p, {{"u", Parity::polynomial, Bidegree(2, 0)}});
    CHECK_THROWS_AS(bar_tor(mod, lam, {Element::generator(mod, "u")}, 4, 2), InvalidArgument);
    // image in the wrong ambient algebra
    CHECK_THROWS_AS(bar_tor(triv, lam, {Element::generator(lam, "x")}, 4, 2), AmbientMismatch);
}

TEST_CASE("kunneth input degenerates to the quotient")
{
    DualSteenrod A(Prime(3), 12);
    KunnethReport report = kunneth_e2(A, QuotientSpec(1, true), 12, 2);
    CHECK(report.ok());
    CHECK(report.positive_vanish);
    CHECK(report.tor0_matches_quotient);
    std::vector<int64_t> expect = {1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1};
    CHECK(report.quotient_dims == expect);
    for (int64_t d = 0; d <= 12; ++d)
        CHECK(report.tor.dim(0, d) == expect[static_cast<size_t>(d)]);

    CHECK_THROWS_AS(kunneth_e2(A, QuotientSpec(1, false), 12, 2), InvalidArgument);
}

TEST_CASE("steinberger degree bookkeeping")
{
    SteinbergerReport r3 = steinberger_consistency(Prime(3), 3);
    CHECK(r3.ok);
    REQUIRE(r3.lines.size() == 4);
    CHECK(r3.lines[0].tau_deg == 1);
    CHECK(r3.lines[0].q_image == 5);
    CHECK(r3.lines[0].beta_image == 4);
    CHECK(r3.lines[0].degrees_ok);
    CHECK(r3.lines[0].e2_generators_ok);
    CHECK(r3.lines[1].q_image == 17);
    CHECK(r3.lines[1].beta_image == 16);

    SteinbergerReport r5 = steinberger_consistency(Prime(5), 4);
    CHECK(r5.ok);
    CHECK(r5.lines[2].tau_deg == 49);
    CHECK(r5.lines[2].q_image == 249);
    CHECK(r5.lines[2].beta_image == 248);

    CHECK_THROWS_AS(steinberger_consistency(Prime(2), 2), OddPrimeRequired);
}
