#include "smetric/catalog.hpp"

#include <cmath>

namespace smetric {

namespace {

Box box1(double lo, double hi) { return Box{make_point({lo}), make_point({hi})}; }
Box box2(double lo, double hi) { return Box{make_point({lo, lo}), make_point({hi, hi})}; }

MapCatalogEntry entry(std::string name, std::string example, const SMetricSpec& metric, std::string dsl)
{
    MapCatalogEntry e;
    e.name = std::move(name);
    e.example = std::move(example);
    e.metric = metric;
    e.dsl = std::move(dsl);
    e.map = parse_map(e.dsl, metric.dimension, &e.metric, e.name);
    return e;
}

Circle circle1(const SMetricSpec& m, double c, double r) { return make_circle(m, make_point({c}), r); }

using enum ConditionId;

std::vector<MapCatalogEntry> build()
{
    const auto usual = make_spec("usual1d");
    const auto skew1 = make_spec("symskew1d");
    const auto skew2 = make_spec("symskew2d");
    const auto exp2 = make_spec("exp2d");
    const auto half = make_spec("halfsum");

    std::vector<MapCatalogEntry> out;

    {
        auto e = entry("T1", "exm6", usual, "x in {-1, 1} -> x ; otherwise -> 10");
        e.circles = {circle1(usual, 0, 2), circle1(usual, 4.5, 11)};
        e.theorem = TheoremFamily::Thm1;
        e.expected = {{Thm1S1, true}, {Thm1S2, true}};
        e.window = box1(-12, 12);
        e.resolution = 96;
        out.push_back(std::move(e));
    }
    {
        auto e = entry("T2", "exm13", skew2, "on_circle((0, 0), 1) -> x1, x2 ; otherwise -> 1, 0");
        e.circles = {make_circle(skew2, make_point({0, 0}), 1)};
        e.theorem = TheoremFamily::Thm1;
        e.expected = {{Thm1S1, true}, {Thm1S2, true}};
        e.window = box2(-1, 1);
        e.resolution = 16;
        e.trace_window = box2(-1, 1);
        out.push_back(std::move(e));
    }
    {
        auto e = entry("T3", "exm7", skew1, "x = -3/2 -> -7/2 ; x = 3/2 -> 7/2 ; otherwise -> 7");
        e.circles = {circle1(skew1, 0, 3)};
        e.theorem = TheoremFamily::Thm1;
        e.expected = {{Thm1S1, true}, {Thm1S2, false}};
        e.window = box1(-8, 8);
        e.resolution = 64;
        out.push_back(std::move(e));
    }
    {
        auto e = entry("T4", "exm8", usual, "otherwise -> 0");
        e.circles = {circle1(usual, 0, 2)};
        e.theorem = TheoremFamily::Thm1;
        e.expected = {{Thm1S1, false}, {Thm1S2, true}};
        e.window = box1(-4, 4);
        e.resolution = 32;
        out.push_back(std::move(e));
    }
    {
        auto e = entry("T5", "exm9", usual, "x = 0 -> exp(x) - 1 ; x = 2 -> 2 * x - 2 ; otherwise -> 3");
        e.circles = {circle1(usual, 1, 2)};
        e.theorem = TheoremFamily::Thm2;
        e.expected = {{Thm2S1, true}, {Thm2S2, true}};
        e.window = box1(-4, 4);
        e.resolution = 32;
        out.push_back(std::move(e));
    }
    {
        auto e = entry("T6", "exm14", exp2, "on_circle((0, 0), 2) -> x1, x2 ; otherwise -> ln(2), 0");
        e.circles = {make_circle(exp2, make_point({0, 0}), 2)};
        e.theorem = TheoremFamily::Thm2;
        e.expected = {{Thm2S1, true}, {Thm2S2, true}};
        e.window = box2(-4, 1);
        e.resolution = 20;
        e.trace_window = box2(-4, 1);
        out.push_back(std::move(e));
    }
    {
        auto e = entry("T7", "exm10", usual, "otherwise -> 0");
        e.circles = {circle1(usual, 0, 2)};
        e.theorem = TheoremFamily::Thm2;
        e.expected = {{Thm2S1, true}, {Thm2S2, false}};
        e.window = box1(-4, 4);
        e.resolution = 32;
        out.push_back(std::move(e));
    }
    {
        auto e = entry("T8", "exm11", skew1, "otherwise -> 1");
        e.circles = {circle1(skew1, 0, 1)};
        e.theorem = TheoremFamily::Thm2;
        e.expected = {{Thm2S1, false}, {Thm2S2, true}};
        e.window = box1(-4, 4);
        e.resolution = 32;
        out.push_back(std::move(e));
    }
    out.push_back(make_t9_entry(5.0));
    {
        // Two circles that share the point 1, sent elsewhere to the constant 10.
        const std::vector<Circle> circles{circle1(usual, 0, 2), circle1(usual, 2, 2)};
        const auto map = make_multi_circle_map(circles, make_point({10}), "T10");
        auto e = entry("T10", "exm15", usual, print_map(map));
        e.circles = circles;
        e.theorem = TheoremFamily::Thm2;
        e.expected = {{Thm2S1, true}, {Thm2S2, true}};
        e.window = box1(-12, 12);
        e.resolution = 96;
        out.push_back(std::move(e));
    }
    {
        auto e = entry("exm1", "exm1", usual, "abs(x) >= 3 -> x + 2 ; otherwise -> x");
        e.circles = {circle1(usual, 0, 4)};
        e.theorem = TheoremFamily::Thm6;
        e.expected = {{Eqn1, true}, {Eqn2, true}};
        e.thm6_center = make_point({0});
        e.window = box1(-6, 6);
        e.resolution = 48;
        out.push_back(std::move(e));
    }
    out.push_back(make_exm2_entry(1.0));
    {
        auto e = entry("intro", "intro", half, "otherwise -> x1 / (x1 * x1 + x2 * x2), x2 / (x1 * x1 + x2 * x2)");
        e.circles = {make_circle(half, make_point({0, 0}), 1)};
        e.theorem = TheoremFamily::None;
        // An odd resolution keeps the origin, where the map is undefined, off the grid.
        e.window = box2(-1.5, 1.5);
        e.resolution = 15;
        e.trace_window = box2(-2, 2);
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace

MapCatalogEntry make_t9_entry(double alpha)
{
    const auto skew1 = make_spec("symskew1d");
    auto e = entry("T9", "exm12", skew1, "x in {-2, -1, 1, 2} -> x ; otherwise -> " + format_number(alpha));
    e.circles = {circle1(skew1, 0, 2), circle1(skew1, 0, 4)};
    for (const auto& c : e.circles)
        if (circle_membership(c, make_point({alpha})).member)
            throw InvalidArgument("T9: alpha must lie on neither circle");
    e.theorem = TheoremFamily::Thm1;
    e.expected = {{Thm1S1, true}, {Thm1S2, true}};
    e.window = box1(-6, 6);
    e.resolution = 48;
    return e;
}

MapCatalogEntry make_exm2_entry(double mu)
{
    if (!(mu > 0.0)) throw InvalidArgument("exm2: mu must be positive");
    const auto usual = make_spec("usual1d");
    auto e = entry("exm2", "exm2", usual, "in_ball(0, " + format_number(mu) + ") -> x ; otherwise -> 0");
    for (double frac : {0.25, 0.5, 0.75, 1.0}) e.circles.push_back(circle1(usual, 0, frac * mu));
    e.theorem = TheoremFamily::Thm6;
    e.expected = {{Eqn1, false}};
    e.thm6_center = make_point({0});
    e.window = box1(-3 * mu, 3 * mu);
    e.resolution = 48;
    return e;
}

const std::vector<MapCatalogEntry>& catalog()
{
    static const std::vector<MapCatalogEntry> entries = build();
    return entries;
}

bool has_catalog_entry(const std::string& name)
{
    for (const auto& e : catalog())
        if (e.name == name) return true;
    return false;
}

const MapCatalogEntry& catalog_entry(const std::string& name)
{
    for (const auto& e : catalog())
        if (e.name == name) return e;
    throw InvalidArgument("unknown catalog map '" + name + "'");
}

} // namespace smetric
