#include "smetric/kernels.hpp"
#include "smetric/metric.hpp"

#include <doctest.h>

#include <Eigen/Core>

#include <cmath>
#include <random>

using namespace smetric;

namespace {

// Scalar oracles written coordinate by coordinate, independent of the kernels.
double oracle_usual(double x, double y, double z) { return std::abs(x - z) + std::abs(y - z); }

double oracle_skew(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& z)
{
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(x[i] - z[i]) + std::abs(x[i] + z[i] - 2.0 * y[i]);
    return s;
}

double oracle_exp(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& z)
{
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double a = std::exp(x[i]), b = std::exp(y[i]), c = std::exp(z[i]);
        s += std::abs(a - c) + std::abs(a + c - 2.0 * b);
    }
    return s;
}

double oracle_half(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& z)
{
    return (std::hypot(x[0] - z[0], x[1] - z[1]) + std::hypot(y[0] - z[0], y[1] - z[1])) / 2.0;
}

} // namespace

TEST_CASE("kernels agree with coordinate-wise oracles")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int t = 0; t < 200; ++t) {
        const std::vector<double> x{u(rng), u(rng)}, y{u(rng), u(rng)}, z{u(rng), u(rng)};
        const Point px = make_point(x), py = make_point(y), pz = make_point(z);
        CHECK(eval_s(make_spec("symskew2d"), px, py, pz) == doctest::Approx(oracle_skew(x, y, z)).epsilon(1e-14));
        CHECK(eval_s(make_spec("exp2d"), px, py, pz) == doctest::Approx(oracle_exp(x, y, z)).epsilon(1e-14));
        CHECK(eval_s(make_spec("halfsum"), px, py, pz) == doctest::Approx(oracle_half(x, y, z)).epsilon(1e-14));
        CHECK(eval_s(make_spec("usual1d"), make_point({x[0]}), make_point({y[0]}), make_point({z[0]})) ==
              oracle_usual(x[0], y[0], z[0]));
        CHECK(eval_s(make_spec("symskew1d"), make_point({x[0]}), make_point({y[0]}), make_point({z[0]})) ==
              doctest::Approx(oracle_skew({x[0]}, {y[0]}, {z[0]})).epsilon(1e-14));
    }
}

TEST_CASE("kernels are generic in the scalar type")
{
    Eigen::Vector2f x(1.0f, -1.0f), y(0.5f, 0.0f), z(0.0f, 2.0f);
    const float s = kernels::sym_skew(x, y, z);
    CHECK(s == doctest::Approx(oracle_skew({1, -1}, {0.5, 0}, {0, 2})));
    Eigen::Matrix<long double, 1, 1> a, b, c;
    a << 3;
    b << -1;
    c << 0.5L;
    CHECK(kernels::usual(a, b, c) == 2.5L + 1.5L);
}

TEST_CASE("self-distances of the documented families")
{
    CHECK(self_distance(make_spec("usual1d"), make_point({-1}), make_point({0})) == 2.0);
    CHECK(self_distance(make_spec("symskew1d"), make_point({1.5}), make_point({0})) == 3.0);
    // S(x, x, z) = 2 sum |exp(x_i) - exp(z_i)| for the exponential family.
    CHECK(self_distance(make_spec("exp2d"), make_point({std::log(2.0), 0.0}), make_point({0, 0})) ==
          doctest::Approx(2.0).epsilon(1e-15));
    // Half-sum metric: S(z, z, 0) = |z|.
    const auto half = make_spec("halfsum");
    CHECK(self_distance(half, make_point({0.6, 0.8}), make_point({0, 0})) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(self_distance(half, make_point({3, 4}), make_point({0, 0})) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("generated S-metrics")
{
    const auto gen_abs = generate_from_metric(BaseMetric::Absolute, 1);
    const auto usual = make_spec("usual1d");
    for (double x = -2; x <= 2; x += 0.5)
        for (double y = -2; y <= 2; y += 0.5)
            for (double z = -2; z <= 2; z += 0.5) {
                const auto px = make_point({x}), py = make_point({y}), pz = make_point({z});
                CHECK(eval_s(gen_abs, px, py, pz) == eval_s(usual, px, py, pz));
            }

    const auto gen_euc = make_spec("generated:euclidean", {{"dim", 2}});
    CHECK(gen_euc.dimension == 2);
    const Point a = make_point({0, 0}), b = make_point({3, 4});
    CHECK(self_distance(gen_euc, b, a) == doctest::Approx(10.0));

    const auto disc = make_spec("generated:discrete");
    CHECK(eval_s(disc, make_point({1}), make_point({1}), make_point({1})) == 0.0);
    CHECK(eval_s(disc, make_point({1}), make_point({2}), make_point({1})) == 1.0);
    CHECK(eval_s(disc, make_point({1}), make_point({2}), make_point({3})) == 2.0);
}

TEST_CASE("make_spec validation")
{
    CHECK_THROWS_AS(make_spec("nope"), InvalidArgument);
    CHECK_THROWS_AS(make_spec("usual1d", {{"dim", 2}}), InvalidArgument);
    CHECK_THROWS_AS(make_spec("halfsum", {{"dim", 0}}), InvalidArgument);
    CHECK_THROWS_AS(make_spec("halfsum", {{"scale", 2}}), InvalidArgument);
    CHECK_THROWS_AS(eval_s(make_spec("usual1d"), make_point({1, 2}), make_point({1}), make_point({1})),
                    InvalidArgument);
    for (const auto& n : family_names()) {
        if (n == "dsl") continue;
        CHECK(make_spec(n).name() == n);
    }
}

TEST_CASE("user DSL metrics")
{
    const auto s = make_dsl_spec("S(x,y,z) = abs(x - z) + abs(y - z)", 1);
    CHECK(s.family == Family::UserDSL);
    CHECK(eval_s(s, make_point({1}), make_point({-2}), make_point({0.5})) == oracle_usual(1, -2, 0.5));
    CHECK(make_spec("dsl", {}, "abs(x - z) + abs(y - z)") == s);

    const auto s2 = make_spec("dsl", {{"dim", 2}}, "abs(x1 - z1) + abs(x2 - z2) + abs(y1 - z1) + abs(y2 - z2)");
    CHECK(s2.dimension == 2);
    CHECK(eval_s(s2, make_point({1, 1}), make_point({0, 0}), make_point({0, 0})) == 2.0);

    CHECK_THROWS(make_dsl_spec("abs(x - w)", 1));
    CHECK_THROWS(make_dsl_spec("x3 - z1", 2));
    CHECK_THROWS(make_dsl_spec("abs(x - z", 1));
}

TEST_CASE("axiom checks accept the built-in families")
{
    std::vector<Point> line;
    for (double v = -3; v <= 3; v += 0.5) line.push_back(make_point({v}));
    for (const char* n : {"usual1d", "symskew1d", "generated:abs", "generated:discrete"}) {
        CAPTURE(n);
        CHECK(check_axioms(make_spec(n), line).ok());
        CHECK(check_symmetry(make_spec(n), line).ok());
    }
    std::vector<Point> plane;
    for (double a = -1; a <= 1; a += 0.5)
        for (double b = -1; b <= 1; b += 0.5) plane.push_back(make_point({a, b}));
    for (const char* n : {"symskew2d", "exp2d", "halfsum"}) {
        CAPTURE(n);
        CHECK(check_axioms(make_spec(n), plane).ok());
    }
}

TEST_CASE("axiom checks catch a broken candidate")
{
    // |x - z| - |y - z| is negative for some triples and not an S-metric.
    const auto bad = make_dsl_spec("abs(x - z) - abs(y - z)", 1);
    std::vector<Point> line;
    for (double v = -2; v <= 2; v += 1) line.push_back(make_point({v}));
    const auto rep = check_axioms(bad, line);
    REQUIRE_FALSE(rep.ok());
    bool negative = false;
    for (const auto& v : rep.violations) negative = negative || v.axiom == Axiom::Nonnegativity;
    CHECK(negative);

    // Squared distance breaks the triangle-type inequality.
    const auto sq = make_dsl_spec("(x - z) * (x - z) + (y - z) * (y - z)", 1);
    const auto rep2 = check_axioms(sq, line);
    bool triangle = false;
    for (const auto& v : rep2.violations) triangle = triangle || v.axiom == Axiom::Triangle;
    CHECK(triangle);
}

TEST_CASE("axiom fuzzing is seeded")
{
    FuzzOptions o;
    o.trials = 2000;
    const auto bad = make_dsl_spec("(x - z) * (x - z) + (y - z) * (y - z)", 1);
    const auto a = fuzz_axioms(bad, o);
    const auto b = fuzz_axioms(bad, o);
    REQUIRE(a.violations.size() == b.violations.size());
    for (std::size_t i = 0; i < a.violations.size(); ++i) CHECK(a.violations[i].lhs == b.violations[i].lhs);
    for (const auto& n : family_names()) {
        if (n == "dsl") continue;
        CAPTURE(n);
        CHECK(fuzz_axioms(make_spec(n), o).ok());
    }
}
