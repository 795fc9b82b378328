#include "smetric/catalog.hpp"
#include "smetric/mapping.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace smetric;

namespace {

double at(const PiecewiseMap& m, double x) { return apply_map(m, make_point({x}))(0); }

std::vector<double> fixed_on_grid(const PiecewiseMap& m, const SMetricSpec& s, double lo, double hi, int res)
{
    std::vector<double> out;
    for (const auto& p : fixed_point_set(m, s, grid_points(Box{make_point({lo}), make_point({hi})}, res)))
        out.push_back(p(0));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("parsing and applying catalog maps")
{
    const auto& t1 = catalog_entry("T1").map;
    CHECK(at(t1, 0.5) == 10);
    CHECK(at(t1, -1) == -1);
    CHECK(at(t1, 1) == 1);
    const auto& t5 = catalog_entry("T5").map;
    CHECK(at(t5, 0) == 0);
    CHECK(at(t5, 2) == 2);
    CHECK(at(t5, 7) == 3);
    const auto& e1 = catalog_entry("exm1").map;
    CHECK(at(e1, 3) == 5);
    CHECK(at(e1, -4) == -2);
    CHECK(at(e1, 2.5) == 2.5);
    const auto& t3 = catalog_entry("T3").map;
    CHECK(at(t3, 1.5) == 3.5);
    CHECK(at(t3, -1.5) == -3.5);
    CHECK(at(t3, 0) == 7);
}

TEST_CASE("intro map is z -> 1 / conj(z)")
{
    const auto& m = catalog_entry("intro").map;
    for (auto z : {std::complex<double>(0.6, 0.8), std::complex<double>(2, -1), std::complex<double>(-0.3, 0.1)}) {
        const auto w = 1.0 / std::conj(z);
        const Point out = apply_map(m, make_point({z.real(), z.imag()}));
        CHECK(out(0) == doctest::Approx(w.real()).epsilon(1e-14));
        CHECK(out(1) == doctest::Approx(w.imag()).epsilon(1e-14));
    }
    CHECK(apply_map(m, make_point({0.6, 0.8})).isApprox(make_point({0.6, 0.8}), 1e-14));
    CHECK_THROWS_AS(apply_map(m, make_point({0, 0})), DomainError);
}

TEST_CASE("guards")
{
    const auto skew2 = make_spec("symskew2d");
    const auto t2 = parse_map("on_circle((0, 0), 1) -> x1, x2 ; otherwise -> 1, 0", 2, &skew2);
    CHECK(apply_map(t2, make_point({0.25, 0.25})).isApprox(make_point({0.25, 0.25})));
    CHECK(apply_map(t2, make_point({0.1, 0.1})) == make_point({1, 0}));
    CHECK(matching_rule(t2, make_point({0.5, 0})) == 0);
    CHECK(matching_rule(t2, make_point({0.9, 0})) == 1);

    const auto usual = make_spec("usual1d");
    const auto ball = parse_map("in_ball(0, 1) -> x ; otherwise -> 0", 1, &usual);
    CHECK(at(ball, 0.5) == 0.5);
    CHECK(at(ball, 0.6) == 0);

    const auto abs_lt = parse_map("abs(x) < 3 -> x ; otherwise -> x + 2", 1);
    CHECK(at(abs_lt, 2.9) == 2.9);
    CHECK(at(abs_lt, -3) == -1);

    const auto coord = parse_map("x2 = 0 -> x1, 1 ; otherwise -> x1, x2", 2);
    CHECK(apply_map(coord, make_point({4, 0})) == make_point({4, 1}));
    CHECK(apply_map(coord, make_point({4, 2})) == make_point({4, 2}));

    const auto tuples = parse_map("x in {(0, 1), (1, 0)} -> 0, 0 ; otherwise -> x1, x2", 2);
    CHECK(apply_map(tuples, make_point({1, 0})) == make_point({0, 0}));
}

TEST_CASE("map syntax errors")
{
    CHECK_THROWS_AS(parse_map("x in {1} -> x", 1), ParseError);
    CHECK_THROWS_AS(parse_map("otherwise -> x ; x = 1 -> 2", 1), ParseError);
    CHECK_THROWS_AS(parse_map("otherwise -> x1", 2), ParseError);
    CHECK_THROWS_AS(parse_map("otherwise -> x, 1", 1), ParseError);
    CHECK_THROWS_AS(parse_map("on_circle(0, 1) -> x ; otherwise -> 0", 1), ParseError);
    CHECK_THROWS(parse_map("x in {1, 2 -> x ; otherwise -> 0", 1));
    try {
        parse_map("x = 1 -> x ;\notherwise => 3", 1);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("print_map round-trips every catalog map")
{
    for (const auto& e : catalog()) {
        CAPTURE(e.name);
        const auto printed = print_map(e.map);
        CHECK(parse_map(printed, e.metric.dimension, &e.metric) == e.map);
        CHECK(parse_map(e.dsl, e.metric.dimension, &e.metric) == e.map);
        CHECK(print_map(parse_map(printed, e.metric.dimension, &e.metric)) == printed);
    }
}

TEST_CASE("domain errors name the rule")
{
    const auto m = parse_map("x = 0 -> ln(x) ; otherwise -> x", 1, nullptr, "L");
    try {
        apply_map(m, make_point({0}));
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        const std::string what = e.what();
        CHECK(what.find("L") != std::string::npos);
        CHECK(what.find("rule 1") != std::string::npos);
    }
}

TEST_CASE("fixed point sets")
{
    const auto usual = make_spec("usual1d");
    CHECK(fixed_on_grid(catalog_entry("T1").map, usual, -3, 3, 24) == std::vector<double>{-1, 1});
    const auto exm1 = fixed_on_grid(catalog_entry("exm1").map, usual, -5, 5, 40);
    REQUIRE_FALSE(exm1.empty());
    CHECK(exm1.front() == -2.75);
    CHECK(exm1.back() == 2.75);
    CHECK(exm1.size() == 23);
    CHECK(fixed_on_grid(parse_map("otherwise -> x + 1", 1), usual, -3, 3, 24).empty());
}

TEST_CASE("catalog entries")
{
    CHECK(catalog().size() == 13);
    CHECK_THROWS_AS(catalog_entry("T99"), InvalidArgument);
    const auto& t1 = catalog_entry("T1");
    REQUIRE(t1.circles.size() == 2);
    CHECK(t1.circles[1].center(0) == 4.5);
    CHECK(t1.circles[1].radius == 11);
    const auto& t4 = catalog_entry("T4");
    REQUIRE(t4.expected.size() == 2);
    CHECK(t4.expected[0] == std::pair{ConditionId::Thm1S1, false});
    CHECK(t4.expected[1] == std::pair{ConditionId::Thm1S2, true});
    const auto e2 = make_exm2_entry(2.0);
    CHECK(e2.circles.back().radius == 2.0);
    CHECK_THROWS_AS(make_exm2_entry(0), InvalidArgument);
    CHECK_THROWS_AS(make_t9_entry(1), InvalidArgument);
}

TEST_CASE("multi-circle constructor")
{
    const auto skew = make_spec("symskew1d");
    const std::vector<Circle> two{make_circle(skew, make_point({0}), 2), make_circle(skew, make_point({0}), 4)};
    const auto t9 = make_multi_circle_map(two, make_point({5}), "T9");
    CHECK(fixed_on_grid(t9, skew, -4, 4, 32) == std::vector<double>{-2, -1, 1, 2});
    CHECK(at(t9, 0) == 5);
    CHECK(at(t9, 5) == 5);

    std::vector<Circle> three = two;
    three.push_back(make_circle(skew, make_point({0}), 6));
    const auto m3 = make_multi_circle_map(three, make_point({10}));
    std::vector<Point> sample;
    for (const auto& c : three)
        for (const auto& p : sample_circle(c).points) sample.push_back(p);
    CHECK(sample.size() == 6);
    CHECK(fixed_point_set(m3, skew, sample).size() == 6);

    CHECK_THROWS_AS(make_multi_circle_map(two, make_point({1})), InvalidArgument);
    CHECK_THROWS_AS(make_multi_circle_map({two[0], make_circle(make_spec("usual1d"), make_point({0}), 1)},
                                          make_point({9})),
                    InvalidArgument);
}
