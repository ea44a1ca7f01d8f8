#include <catch2/catch_amalgamated.hpp>

#include "ekalg/may_chart.hpp"

using namespace ekalg;

TEST_CASE("closed formulas match the operation words")
{
    Prime p2(2), p3(3), p5(5);
    CHECK(closed_form(p2, Family::h2, 1, 2) == Bidegree(3, 4));
    CHECK(closed_form(p3, Family::v, 0, 0) == Bidegree(0, 1));
    CHECK(closed_form(p3, Family::b, 1, 0) == Bidegree(10, 9));

    CrossCheckReport r2 = cross_check(p2, 6, 6);
    CHECK(r2.ok());
    CHECK(r2.checked == 42);  // i in 1..6, j in 0..6

    CrossCheckReport r3 = cross_check(p3, 4, 4);
    CHECK(r3.ok());
    CHECK(r3.checked == 5 + 2 * 20);  // v_0..v_4 plus h and b boxes

    CHECK(cross_check(p5, 3, 3).ok());
}

TEST_CASE("generator enumeration at p = 2")
{
    auto gens = enumerate_generators(ChartSpec{Prime(2), 3, std::nullopt});
    REQUIRE(gens.size() == 4);
    auto expect = [&](size_t k, int64_t i, int64_t j, int64_t t, int64_t f) {
        CHECK(gens[k].i == i);
        CHECK(gens[k].j == j);
        CHECK(gens[k].chart == Bidegree(t, f));
        CHECK(gens[k].parity == Parity::polynomial);
    };
    expect(0, 1, 0, 0, 1);
    expect(1, 1, 1, 1, 2);
    expect(2, 1, 2, 3, 4);
    expect(3, 2, 0, 2, 2);
    CHECK(gens[0].name == "h_{1,0}");
}

TEST_CASE("generator enumeration at p = 3")
{
    auto gens = enumerate_generators(ChartSpec{Prime(3), 4, std::nullopt});
    REQUIRE(gens.size() == 3);
    CHECK(gens[0].family == Family::v);
    CHECK(gens[0].name == "v_0");
    CHECK(gens[0].chart == Bidegree(0, 1));
    CHECK(gens[0].parity == Parity::polynomial);
    CHECK(gens[1].name == "v_1");
    CHECK(gens[1].chart == Bidegree(4, 3));
    CHECK(gens[2].family == Family::h);
    CHECK(gens[2].name == "h_{1,0}");
    CHECK(gens[2].chart == Bidegree(3, 3));
    CHECK(gens[2].parity == Parity::exterior);

    // widen to catch b_{1,0} at t = 10
    auto wide = enumerate_generators(ChartSpec{Prime(3), 10, std::nullopt});
    bool has_b = false;
    for (const auto& g : wide)
        if (g.family == Family::b) {
            has_b = true;
            CHECK(g.chart == Bidegree(10, 9));
            CHECK(g.parity == Parity::polynomial);
        }
    CHECK(has_b);
}

TEST_CASE("f_max filters generators by filtration")
{
    auto all = enumerate_generators(ChartSpec{Prime(2), 3, std::nullopt});
    auto low = enumerate_generators(ChartSpec{Prime(2), 3, int64_t(2)});
    CHECK(low.size() == 3);  // drops h_{1,2} at f = 4
    for (const auto& g : low)
        CHECK(g.chart.w <= 2);
    CHECK(all.size() == low.size() + 1);
}

TEST_CASE("chart dimensions at p = 2")
{
    Chart chart = build_chart(ChartSpec{Prime(2), 6, int64_t(6)});
    // powers of h_{1,0} give one class in every (0, f)
    for (int64_t f = 0; f <= 6; ++f)
        CHECK(chart.dims.dim(Bidegree(0, f)) == 1);
    CHECK(chart.dims.dim(Bidegree(0, 0)) == 1);
    // (1,3) holds h_{1,1} h_{1,0}
    CHECK(chart.dims.dim(Bidegree(1, 3)) == 1);
    CHECK(chart.dims.dim(Bidegree(1, 2)) == 1);
    CHECK(chart.dims.dim(Bidegree(1, 1)) == 0);
    // (2,2): h_{2,0}; (2,3): h_{1,1}h_{1,0}^... t=1+0+... -> h_{2,0} h_{1,0} at (2,3)
    CHECK(chart.dims.dim(Bidegree(2, 2)) == 1);
    CHECK(chart.dims.dim(Bidegree(2, 3)) == 1);
}

TEST_CASE("chart dimensions at p = 3")
{
    Chart chart = build_chart(ChartSpec{Prime(3), 8, int64_t(8)});
    for (int64_t f = 0; f <= 8; ++f) {
        CHECK(chart.dims.dim(Bidegree(0, f)) == 1);  // powers of v_0
        CHECK(chart.dims.dim(Bidegree(1, f)) == 0);  // t = 1 unreachable
        CHECK(chart.dims.dim(Bidegree(2, f)) == 0);
    }
    // v_1 and its v_0-multiples
    CHECK(chart.dims.dim(Bidegree(4, 3)) == 1);
    CHECK(chart.dims.dim(Bidegree(4, 4)) == 1);
    // h_{1,0} line
    CHECK(chart.dims.dim(Bidegree(3, 3)) == 1);
    CHECK(chart.dims.dim(Bidegree(3, 4)) == 1);
    // h_{1,0} v_1 at (7, 6)
    CHECK(chart.dims.dim(Bidegree(7, 6)) == 1);
    // h_{1,0}^2 = 0 (exterior square), and t = 6 is unreachable altogether
    for (int64_t f = 0; f <= 8; ++f)
        CHECK(chart.dims.dim(Bidegree(6, f)) == 0);
    // v_1^2 at (8, 6)
    CHECK(chart.dims.dim(Bidegree(8, 6)) == 1);
}

TEST_CASE("chart bidegrees respect the word weight")
{
    for (uint32_t pv : {2u, 3u, 5u}) {
        Prime p(pv);
        auto gens = enumerate_generators(ChartSpec{p, 30, std::nullopt});
        CHECK_FALSE(gens.empty());
        for (const auto& g : gens) {
            WeightedDegree wd = eval_word(g.word);
            CHECK(chart_bidegree(wd) == g.chart);
            CHECK(wd.w == g.chart.w);
            CHECK(g.chart.t <= 30);
            CHECK(g.chart.t >= 0);
        }
    }
}

TEST_CASE("default f ceiling covers every enumerated generator")
{
    Chart chart = build_chart(ChartSpec{Prime(3), 12, std::nullopt});
    int64_t max_w = 0;
    for (const auto& g : chart.generators)
        max_w = std::max(max_w, g.chart.w);
    CHECK(chart.f_max_used >= max_w);
    // every generator appears as a 1-dimensional cell at its own bidegree
    for (const auto& g : chart.generators)
        CHECK(chart.dims.dim(g.chart) >= 1);
}

TEST_CASE("chart parameter guards")
{
    CHECK_THROWS_AS(build_chart(ChartSpec{Prime(2), -1, std::nullopt}), InvalidArgument);
    CHECK_THROWS_AS(build_chart(ChartSpec{Prime(2), 4, int64_t(-2)}), InvalidArgument);
    CHECK_THROWS_AS(closed_form(Prime(3), Family::h, 0, 0), IndexOutOfRange);
    CHECK_THROWS_AS(closed_form(Prime(2), Family::v, 1, 0), IndexOutOfRange);
}
