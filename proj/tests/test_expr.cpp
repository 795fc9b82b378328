#include "smetric/expr.hpp"

#include <doctest.h>

#include <cmath>

using namespace smetric;

namespace {

double eval1(const std::string& src, double x)
{
    const Point p = make_point({x});
    return parse_expression(src, {"x", 1}).evaluate({&p, nullptr, nullptr});
}

} // namespace

TEST_CASE("expression evaluation")
{
    CHECK(eval1("x + 2", 5) == 7);
    CHECK(eval1("2 * x - 2", 2) == 2);
    CHECK(eval1("exp(x) - 1", 0) == 0);
    CHECK(eval1("-x * 3", 2) == -6);
    CHECK(eval1("abs(x - 4) / 2", 1) == 1.5);
    CHECK(eval1("ln(2)", 0) == doctest::Approx(std::log(2.0)));
    CHECK(eval1("1 - 2 - 3", 0) == -4);
    CHECK(eval1("8 / 4 / 2", 0) == 1);
    CHECK(eval1("2 + 3 * 4", 0) == 14);
    CHECK(eval1("-(1 + 2)", 0) == -3);

    const Point p = make_point({0.6, 0.8});
    const auto e = parse_expression("x1 / (x1 * x1 + x2 * x2)", {"x", 2});
    CHECK(e.evaluate({&p, nullptr, nullptr}) == doctest::Approx(0.6));
}

TEST_CASE("expression domain errors")
{
    CHECK_THROWS_AS(eval1("1 / x", 0), DomainError);
    CHECK_THROWS_AS(eval1("ln(x)", 0), DomainError);
    CHECK_THROWS_AS(eval1("ln(x)", -1), DomainError);
    CHECK_THROWS_AS(eval1("exp(x)", 1000), DomainError);
}

TEST_CASE("printing round-trips")
{
    for (const char* src : {"x + 2", "exp(x) - 1", "-3.5 * x", "abs(x) / (1 + x * x)", "-(x - 1)", "ln(2)",
                            "x - -1", "1 - (2 - 3)"}) {
        CAPTURE(src);
        const auto e = parse_expression(src, {"x", 1});
        const auto again = parse_expression(e.to_string(), {"x", 1});
        CHECK(again == e);
        CHECK(again.to_string() == e.to_string());
    }
}

TEST_CASE("syntax errors carry line and column")
{
    try {
        parse_expression("x +\n  * 2", {"x", 1});
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
    }
    try {
        parse_expression("abs(x", {"x", 1});
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 6);
    }
    CHECK_THROWS_AS(parse_expression("x $ 1", {"x", 1}), ParseError);
    CHECK_THROWS_AS(parse_expression("sin(x)", {"x", 1}), ParseError);
}

TEST_CASE("variable validation")
{
    CHECK_THROWS_AS(parse_expression("x3", {"x", 2}), ParseError);
    CHECK_THROWS_AS(parse_expression("x", {"x", 2}), ParseError);
    CHECK_THROWS_AS(parse_expression("y", {"x", 1}), ParseError);
    CHECK_NOTHROW(parse_expression("x1 + y1 - z", {"xyz", 1}));
    CHECK_THROWS_AS(parse_expression("x2 * y", {"xyz", 1}), ParseError);
}
