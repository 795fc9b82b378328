#include "smetric/geometry.hpp"
#include "smetric/mapping.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace smetric;

namespace {

std::vector<double> xs(const CircleSolution& s)
{
    std::vector<double> out;
    for (const auto& p : s.points) out.push_back(p(0));
    return out;
}

} // namespace

TEST_CASE("circle membership")
{
    const auto usual = make_spec("usual1d");
    const auto c = make_circle(usual, make_point({0}), 2);
    const auto m = circle_membership(c, make_point({-1}));
    CHECK(m.member);
    CHECK(m.residual == 0.0);
    CHECK_FALSE(circle_membership(c, make_point({0.5})).member);
    CHECK(circle_membership(c, make_point({0.5})).residual == -1.0);

    const auto exp2 = make_spec("exp2d");
    CHECK(circle_membership(make_circle(exp2, make_point({0, 0}), 2), make_point({std::log(2.0), 0})).member);

    const auto ball = make_ball(usual, make_point({0}), 1);
    CHECK(ball_membership(ball, make_point({0.5})));
    CHECK_FALSE(ball_membership(ball, make_point({0.75})));

    CHECK_THROWS_AS(make_circle(usual, make_point({0}), 0), InvalidArgument);
    CHECK_THROWS_AS(make_circle(usual, make_point({0}), -1), InvalidArgument);
    CHECK_THROWS_AS(make_circle(usual, make_point({0, 0}), 1), InvalidArgument);
}

TEST_CASE("analytic circles on the line")
{
    const auto usual = make_spec("usual1d");
    CHECK(xs(solve_circle_1d(usual, make_point({0}), 2)) == std::vector<double>{-1, 1});
    CHECK(xs(solve_circle_1d(usual, make_point({4.5}), 11)) == std::vector<double>{-1, 10});
    CHECK(xs(solve_circle_1d(usual, make_point({1}), 2)) == std::vector<double>{0, 2});
    CHECK(xs(solve_circle_1d(make_spec("symskew1d"), make_point({0}), 3)) == std::vector<double>{-1.5, 1.5});
    const auto s = solve_circle_1d(usual, make_point({0}), 2);
    CHECK(s.kind == CircleSolution::Kind::FinitePointSet);
    for (double r : s.residuals) CHECK(r == 0.0);

    CHECK(has_analytic_circles(make_spec("generated:abs")));
    CHECK_FALSE(has_analytic_circles(make_spec("generated:discrete")));
    CHECK_THROWS_AS(solve_circle_1d(make_spec("generated:discrete"), make_point({0}), 1), InvalidArgument);
}

TEST_CASE("1D tracing agrees with the analytic solution")
{
    const auto usual = make_spec("usual1d");
    for (double r : {0.5, 2.0, 3.3, 11.0}) {
        CAPTURE(r);
        const auto exact = solve_circle_1d(usual, make_point({0.25}), r);
        const auto traced = trace_circle_1d(usual, make_point({0.25}), r, -20, 20, 1000);
        REQUIRE(traced.points.size() == exact.points.size());
        for (std::size_t i = 0; i < exact.points.size(); ++i)
            CHECK(std::abs(traced.points[i](0) - exact.points[i](0)) <= 1e-9);
        for (double res : traced.residuals) CHECK(std::abs(res) <= 1e-8);
    }
    // The discrete S-metric has no zero crossings for radius 1.5.
    CHECK(trace_circle_1d(make_spec("generated:discrete"), make_point({0}), 1.5, -2, 2, 64).empty());
}

TEST_CASE("2D tracing of the skew unit circle")
{
    const auto skew = make_spec("symskew2d");
    const Box w{make_point({-1, -1}), make_point({1, 1})};
    const auto cloud = trace_circle_2d(skew, make_point({0, 0}), 1, w, 64);
    CHECK(cloud.kind == CircleSolution::Kind::TracedPointCloud);
    REQUIRE(cloud.points.size() >= 60);
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        CHECK(std::abs(cloud.residuals[i]) <= 1e-8);
        // S(x, x, 0) = 2(|x1| + |x2|) for this family: a diamond.
        CHECK(std::abs(2 * cloud.points[i].cwiseAbs().sum() - 1) <= 1e-8);
    }
    for (std::size_t i = 1; i < cloud.points.size(); ++i) CHECK(lex_less(cloud.points[i - 1], cloud.points[i]));
    CHECK_THROWS_AS(trace_circle_2d(skew, make_point({0, 0}), 1, w, 4), InvalidArgument);
}

TEST_CASE("circle sampling descriptors")
{
    const auto usual = make_spec("usual1d");
    const auto s = sample_circle(make_circle(usual, make_point({0}), 2));
    CHECK(s.exhaustive);
    CHECK(s.points.size() == 2);
    TraceSettings t;
    t.resolution = 32;
    const auto s2 = sample_circle(make_circle(make_spec("halfsum"), make_point({0, 0}), 1), t);
    CHECK_FALSE(s2.exhaustive);
    CHECK_FALSE(s2.points.empty());
    CHECK(s2.descriptor.find("traced") != std::string::npos);
}

TEST_CASE("diameter")
{
    const auto usual = make_spec("usual1d");
    CHECK_THROWS_AS(diameter(usual, {}), InvalidArgument);
    CHECK(diameter(usual, {make_point({3})}) == 0.0);
    CHECK(diameter(usual, {make_point({-1}), make_point({10})}) == 22.0);
    CHECK(diameter(usual, {make_point({-1}), make_point({0}), make_point({1})}) == 4.0);
    // Adding points never decreases the diameter.
    std::vector<Point> pts;
    double last = 0.0;
    for (double v : {0.0, 0.5, -2.0, 1.0, 4.0}) {
        pts.push_back(make_point({v}));
        const double d = diameter(usual, pts);
        CHECK(d >= last);
        last = d;
    }
}

TEST_CASE("orbits")
{
    const auto usual = make_spec("usual1d");
    const auto t1 = parse_map("x in {-1, 1} -> x ; otherwise -> 10", 1);
    const auto o = orbit(usual, t1, make_point({5}));
    REQUIRE(o.iterates.size() == 1);
    CHECK(o.iterates[0](0) == 10);
    CHECK(o.diameter == 0.0);
    CHECK_FALSE(o.unbounded);

    const auto shift = parse_map("otherwise -> x + 2", 1);
    OrbitOptions opts;
    opts.escape_bound = 100;
    const auto esc = orbit(usual, shift, make_point({3}), opts);
    CHECK(esc.unbounded);
    CHECK(esc.diameter == std::numeric_limits<double>::infinity());

    OrbitOptions shortrun;
    shortrun.n_max = 5;
    const auto cut = orbit(usual, shift, make_point({3}), shortrun);
    CHECK(cut.truncated);
    CHECK(cut.iterates.size() == 5);
    CHECK(cut.diameter == 16.0);
}
