#include <catch2/catch_amalgamated.hpp>

#include "ekalg/dyer_lashof.hpp"

using namespace ekalg;

TEST_CASE("single operations shift weighted degrees")
{
    Prime p2(2), p3(3), p5(5);

    // p = 2: Q_j doubles the degree and adds j, doubles the weight
    CHECK(apply_op(p2, OpSymbol::q(2), {1, 1}) == WeightedDegree{4, 2});
    CHECK(apply_op(p2, OpSymbol::q(1), {1, 1}) == WeightedDegree{3, 2});
    CHECK(apply_op(p2, OpSymbol::q(0), {3, 2}) == WeightedDegree{6, 4});

    // odd p: Q_j sends (r, w) to (pr + (p-1) 2j, pw)
    CHECK(apply_op(p3, OpSymbol::q(1), {1, 1}) == WeightedDegree{7, 3});
    CHECK(apply_op(p3, OpSymbol::beta_q(1), {1, 1}) == WeightedDegree{6, 3});
    CHECK(apply_op(p5, OpSymbol::q(2), {3, 1}) == WeightedDegree{31, 5});

    // half-index operations
    CHECK(apply_op(p3, OpSymbol::q_half(), {1, 1}) == WeightedDegree{5, 3});
    CHECK(apply_op(p3, OpSymbol::beta_q_half(), {1, 1}) == WeightedDegree{4, 3});
}

TEST_CASE("operation guards")
{
    Prime p2(2);
    CHECK_THROWS_AS(apply_op(p2, OpSymbol::beta_q(1), {1, 1}), BetaAtTwo);
    CHECK_THROWS_AS(apply_op(p2, OpSymbol::beta_q_half(), {1, 1}), BetaAtTwo);
    // half-integer subscripts exist only at odd primes
    CHECK_THROWS_AS(apply_op(p2, OpSymbol::q_half(), {1, 1}), InvalidArgument);
    CHECK_THROWS_AS(apply_op(p2, OpSymbol{OpSymbol::Kind::Q, 3}, {1, 1}), InvalidArgument);
    CHECK_THROWS_AS(BaseClass("y", -1, 1), InvalidArgument);
    CHECK_THROWS_AS(BaseClass("y", 1, 0), InvalidArgument);
}

TEST_CASE("words act rightmost-first")
{
    Prime p3(3);
    OpWord word{p3, {OpSymbol::q_half(), OpSymbol::beta_q(1)}, BaseClass("y1", 1, 1)};
    // beta Q_1 first: (1,1) -> (6,3); then Q_{1/2}: (6,3) -> (3*6+2, 9) = (20, 9)
    WeightedDegree wd = eval_word(word);
    CHECK(wd == WeightedDegree{20, 9});
    CHECK(chart_bidegree(wd) == Bidegree(11, 9));

    // composing in the other order gives a different answer
    OpWord other{p3, {OpSymbol::beta_q(1), OpSymbol::q_half()}, BaseClass("y1", 1, 1)};
    // Q_{1/2} first: (1,1) -> (5,3); then beta Q_1: (5,3) -> (15+4-1, 9) = (18, 9)
    CHECK(eval_word(other) == WeightedDegree{18, 9});
}

TEST_CASE("word weight is the product of operation weights")
{
    Prime p5(5);
    OpWord word{p5,
                {OpSymbol::q(3), OpSymbol::beta_q_half(), OpSymbol::q(1)},
                BaseClass("y1", 1, 1)};
    CHECK(eval_word(word).w == 125);  // 5^3 * base weight 1
}

TEST_CASE("family words at p = 2")
{
    Prime p2(2);
    // h_{1,0} is the base class itself
    OpWord w10 = family_word(p2, Family::h2, 1, 0);
    CHECK(w10.ops.empty());
    CHECK(eval_word(w10) == WeightedDegree{1, 1});
    CHECK(chart_bidegree(eval_word(w10)) == Bidegree(0, 1));

    // h_{i,j} = Q_1^(j) Q_2^(i-1) y1 with chart bidegree (2^{i+j}-2^j-1, 2^{i+j-1})
    for (int64_t i = 1; i <= 4; ++i)
        for (int64_t j = 0; j <= 3; ++j) {
            OpWord w = family_word(p2, Family::h2, i, j);
            CHECK(static_cast<int64_t>(w.ops.size()) == i - 1 + j);
            Bidegree got = chart_bidegree(eval_word(w));
            int64_t pow_ij = int64_t(1) << (i + j);
            int64_t pow_j = int64_t(1) << j;
            CHECK(got == Bidegree(pow_ij - pow_j - 1, pow_ij / 2));
        }

    CHECK(chart_bidegree(eval_word(family_word(p2, Family::h2, 1, 1))) == Bidegree(1, 2));
    CHECK(chart_bidegree(eval_word(family_word(p2, Family::h2, 2, 1))) == Bidegree(5, 4));
    CHECK(chart_bidegree(eval_word(family_word(p2, Family::h2, 2, 2))) == Bidegree(11, 8));
    CHECK(chart_bidegree(eval_word(family_word(p2, Family::h2, 3, 0))) == Bidegree(6, 4));
}

TEST_CASE("family words at odd primes")
{
    Prime p3(3);

    // v_i = Q_1^(i) y1 -> (2p^i - 2, p^i)
    CHECK(chart_bidegree(eval_word(family_word(p3, Family::v, 0, 0))) == Bidegree(0, 1));
    CHECK(chart_bidegree(eval_word(family_word(p3, Family::v, 1, 0))) == Bidegree(4, 3));
    CHECK(chart_bidegree(eval_word(family_word(p3, Family::v, 2, 0))) == Bidegree(16, 9));

    // h_{i,j} -> (2p^{i+j} - 2p^j - 1, p^{i+j})
    CHECK(chart_bidegree(eval_word(family_word(p3, Family::h, 1, 0))) == Bidegree(3, 3));
    CHECK(chart_bidegree(eval_word(family_word(p3, Family::h, 1, 1))) == Bidegree(11, 9));
    CHECK(chart_bidegree(eval_word(family_word(p3, Family::h, 2, 0))) == Bidegree(15, 9));
    CHECK(chart_bidegree(eval_word(family_word(p3, Family::h, 2, 1))) == Bidegree(47, 27));

    // b_{i,j} -> (2p^{i+j+1} - 2p^{j+1} - 2, p^{i+j+1})
    CHECK(chart_bidegree(eval_word(family_word(p3, Family::b, 1, 0))) == Bidegree(10, 9));
    CHECK(chart_bidegree(eval_word(family_word(p3, Family::b, 1, 1))) == Bidegree(34, 27));
    CHECK(chart_bidegree(eval_word(family_word(p3, Family::b, 2, 0))) == Bidegree(46, 27));

    Prime p5(5);
    CHECK(chart_bidegree(eval_word(family_word(p5, Family::v, 1, 0))) == Bidegree(8, 5));
    CHECK(chart_bidegree(eval_word(family_word(p5, Family::h, 1, 0))) == Bidegree(7, 5));
    CHECK(chart_bidegree(eval_word(family_word(p5, Family::b, 1, 0))) == Bidegree(38, 25));
}

TEST_CASE("family word guards")
{
    Prime p2(2), p3(3);
    CHECK_THROWS_AS(family_word(p2, Family::h2, 0, 0), IndexOutOfRange);
    CHECK_THROWS_AS(family_word(p2, Family::h2, 1, -1), IndexOutOfRange);
    CHECK_THROWS_AS(family_word(p2, Family::v, 1, 0), IndexOutOfRange);  // p = 2 has only h
    CHECK_THROWS_AS(family_word(p3, Family::h2, 1, 0), IndexOutOfRange);
    CHECK_THROWS_AS(family_word(p3, Family::v, -1, 0), IndexOutOfRange);
    CHECK_THROWS_AS(family_word(p3, Family::h, 0, 0), IndexOutOfRange);
    CHECK_THROWS_AS(family_word(p3, Family::b, 0, 0), IndexOutOfRange);
}

TEST_CASE("operation symbols print with half indices")
{
    CHECK(OpSymbol::q(2).str() == "Q_2");
    CHECK(OpSymbol::q_half().str() == "Q_1/2");
    CHECK(OpSymbol::beta_q(1).str() == "bQ_1");
    CHECK(OpSymbol::beta_q_half().str() == "bQ_1/2");
}

TEST_CASE("generator list for a free algebra on an odd sphere")
{
    Prime p3(3);
    auto gens = free_e2_generators_odd(p3, 1, 6);
    REQUIRE(gens.size() == 3);
    CHECK(gens[0].name == "alpha");
    CHECK(gens[0].degree == 1);
    CHECK(gens[0].parity == Parity::exterior);
    CHECK(gens[1].name == "Q_1/2^(1) alpha");
    CHECK(gens[1].degree == 5);
    CHECK(gens[1].parity == Parity::exterior);
    CHECK(gens[2].name == "bQ_1/2^(1) alpha");
    CHECK(gens[2].degree == 4);
    CHECK(gens[2].parity == Parity::polynomial);

    // widen the bound: next level appears, Q entry before beta entry
    auto wide = free_e2_generators_odd(p3, 1, 17);
    REQUIRE(wide.size() == 5);
    CHECK(wide[3].name == "Q_1/2^(2) alpha");
    CHECK(wide[3].degree == 17);
    CHECK(wide[4].name == "bQ_1/2^(2) alpha");
    CHECK(wide[4].degree == 16);

    // bound below a Q entry but not the beta entry at the same level
    auto cut = free_e2_generators_odd(p3, 1, 16);
    REQUIRE(cut.size() == 4);
    CHECK(cut[3].name == "bQ_1/2^(2) alpha");

    // degrees alternate parity: odd degree <-> exterior
    for (const auto& g : free_e2_generators_odd(Prime(5), 3, 500))
        CHECK((g.degree % 2 == 1) == (g.parity == Parity::exterior));
}

TEST_CASE("generator list guards")
{
    CHECK_THROWS_AS(free_e2_generators_odd(Prime(2), 1, 10), OddPrimeRequired);
    CHECK_THROWS_AS(free_e2_generators_odd(Prime(3), 2, 10), EvenSphere);
    CHECK_THROWS_AS(free_e2_generators_odd(Prime(3), -3, 10), InvalidArgument);
    CHECK(free_e2_generators_odd(Prime(3), 7, 5).empty());  // bound below the sphere
}
