#include "smetric/mapping.hpp"

#include "lexer.hpp"

#include <cmath>

namespace smetric {

bool matches(const Predicate& p, const Point& x)
{
    struct Visitor {
        const Point& x;
        bool operator()(const guard::InFiniteSet& g) const
        {
            for (const auto& q : g.points)
                if (q.size() == x.size() && max_coord_distance(q, x) <= g.tol) return true;
            return false;
        }
        bool operator()(const guard::OnCircle& g) const { return circle_membership(g.circle, x, g.tol).member; }
        bool operator()(const guard::InClosedBall& g) const { return ball_membership(g.ball, x, g.tol); }
        bool operator()(const guard::AbsAtLeast& g) const { return std::abs(x(0)) >= g.threshold; }
        bool operator()(const guard::AbsLessThan& g) const { return std::abs(x(0)) < g.threshold; }
        bool operator()(const guard::CoordEquals& g) const { return std::abs(x(g.index) - g.value) <= g.tol; }
        bool operator()(const guard::Otherwise&) const { return true; }
    };
    return std::visit(Visitor{x}, p);
}

namespace {

std::string print_center(const Point& c)
{
    return c.size() == 1 ? format_number(c(0)) : format_point(c);
}

std::string print_guard(const Predicate& p)
{
    struct Visitor {
        std::string operator()(const guard::InFiniteSet& g) const
        {
            std::string s = "x in {";
            for (std::size_t i = 0; i < g.points.size(); ++i) {
                if (i) s += ", ";
                s += print_center(g.points[i]);
            }
            return s + "}";
        }
        std::string operator()(const guard::OnCircle& g) const
        {
            return "on_circle(" + print_center(g.circle.center) + ", " + format_number(g.circle.radius) + ")";
        }
        std::string operator()(const guard::InClosedBall& g) const
        {
            return "in_ball(" + print_center(g.ball.center) + ", " + format_number(g.ball.radius) + ")";
        }
        std::string operator()(const guard::AbsAtLeast& g) const { return "abs(x) >= " + format_number(g.threshold); }
        std::string operator()(const guard::AbsLessThan& g) const { return "abs(x) < " + format_number(g.threshold); }
        std::string operator()(const guard::CoordEquals& g) const
        {
            return (g.bare ? std::string("x") : "x" + std::to_string(g.index + 1)) + " = " + format_number(g.value);
        }
        std::string operator()(const guard::Otherwise&) const { return "otherwise"; }
    };
    return std::visit(Visitor{}, p);
}

using detail::Tok;
using detail::TokenStream;

Point parse_point_literal(TokenStream& ts, int dimension)
{
    if (dimension == 1 && !ts.is_symbol("(")) return make_point({detail::parse_signed_number(ts)});
    const auto open = ts.peek();
    ts.expect_symbol("(");
    std::vector<double> coords{detail::parse_signed_number(ts)};
    while (ts.accept_symbol(",")) coords.push_back(detail::parse_signed_number(ts));
    ts.expect_symbol(")");
    if (static_cast<int>(coords.size()) != dimension)
        ts.fail_at(open, "dimension mismatch: point has " + std::to_string(coords.size()) + " coordinates, map has " +
                             std::to_string(dimension));
    return make_point(coords);
}

Predicate parse_guard(TokenStream& ts, int dimension, const SMetricSpec* metric)
{
    const auto start = ts.peek();
    if (ts.is_ident("otherwise")) {
        ts.next();
        return guard::Otherwise{};
    }
    if (ts.is_ident("on_circle") || ts.is_ident("in_ball")) {
        const bool circle = ts.next().text == "on_circle";
        if (!metric) ts.fail_at(start, std::string(circle ? "on_circle" : "in_ball") + " guard requires a metric");
        if (metric->dimension != dimension)
            ts.fail_at(start, "dimension mismatch: metric dimension " + std::to_string(metric->dimension) +
                                  " differs from map dimension " + std::to_string(dimension));
        ts.expect_symbol("(");
        Point c = parse_point_literal(ts, dimension);
        ts.expect_symbol(",");
        const auto rtok = ts.peek();
        const double r = detail::parse_signed_number(ts);
        ts.expect_symbol(")");
        if (!(r > 0.0)) ts.fail_at(rtok, "radius must be positive");
        if (circle) return guard::OnCircle{make_circle(*metric, c, r)};
        return guard::InClosedBall{make_ball(*metric, c, r)};
    }
    if (ts.is_ident("abs")) {
        if (dimension != 1) ts.fail_at(start, "dimension mismatch: abs(x) guard is one-dimensional");
        ts.next();
        ts.expect_symbol("(");
        ts.expect_ident("x");
        ts.expect_symbol(")");
        if (ts.accept_symbol(">=")) return guard::AbsAtLeast{detail::parse_signed_number(ts)};
        if (ts.accept_symbol("<")) return guard::AbsLessThan{detail::parse_signed_number(ts)};
        ts.fail("expected '>=' or '<' after abs(x)");
    }
    if (ts.peek().kind == Tok::Ident) {
        char letter = 0;
        int sub = 0;
        if (detail::split_variable(ts.peek().text, "x", letter, sub)) {
            const auto var = ts.next();
            if (sub == 0 && ts.is_ident("in")) {
                ts.next();
                ts.expect_symbol("{");
                guard::InFiniteSet g;
                if (!ts.is_symbol("}")) {
                    g.points.push_back(parse_point_literal(ts, dimension));
                    while (ts.accept_symbol(",")) g.points.push_back(parse_point_literal(ts, dimension));
                }
                ts.expect_symbol("}");
                return g;
            }
            if (sub == 0 && dimension != 1)
                ts.fail_at(var, "dimension mismatch: bare 'x' guard requires dimension 1");
            if (sub > dimension)
                ts.fail_at(var, "dimension mismatch: '" + var.text + "' exceeds dimension " + std::to_string(dimension));
            if (!ts.accept_symbol("=") && !ts.accept_symbol("==")) ts.fail("expected '=' in coordinate guard");
            guard::CoordEquals g;
            g.index = sub == 0 ? 0 : sub - 1;
            g.bare = sub == 0;
            g.value = detail::parse_signed_number(ts);
            return g;
        }
    }
    ts.fail("expected a guard, found '" + start.text + "'");
}

} // namespace

PiecewiseMap parse_map(const std::string& source, int dimension, const SMetricSpec* metric, const std::string& name)
{
    if (dimension < 1) throw InvalidArgument("parse_map: dimension must be positive");
    TokenStream ts(detail::tokenize(source));
    PiecewiseMap map;
    map.name = name;
    map.dimension = dimension;
    const ExprContext ctx{"x", dimension};

    bool seen_otherwise = false;
    while (!ts.at_end()) {
        if (seen_otherwise) ts.fail("'otherwise' must be the last rule");
        Rule rule;
        rule.guard = parse_guard(ts, dimension, metric);
        ts.expect_symbol("->");
        const auto first = ts.peek();
        rule.exprs.push_back(detail::parse_expr(ts, ctx));
        while (ts.accept_symbol(",")) rule.exprs.push_back(detail::parse_expr(ts, ctx));
        if (static_cast<int>(rule.exprs.size()) != dimension)
            ts.fail_at(first, "dimension mismatch: rule yields " + std::to_string(rule.exprs.size()) +
                                  " coordinates, map has " + std::to_string(dimension));
        seen_otherwise = std::holds_alternative<guard::Otherwise>(rule.guard);
        map.rules.push_back(std::move(rule));
        if (!ts.at_end()) ts.expect_symbol(";");
    }
    if (!seen_otherwise) ts.fail("missing terminal 'otherwise' rule");
    return map;
}

std::string print_map(const PiecewiseMap& map)
{
    std::string out;
    for (std::size_t i = 0; i < map.rules.size(); ++i) {
        if (i) out += " ;\n";
        out += print_guard(map.rules[i].guard) + " -> ";
        for (std::size_t k = 0; k < map.rules[i].exprs.size(); ++k) {
            if (k) out += ", ";
            out += map.rules[i].exprs[k].to_string();
        }
    }
    return out;
}

std::size_t matching_rule(const PiecewiseMap& map, const Point& x)
{
    require_point(x, map.dimension, "apply_map");
    for (std::size_t i = 0; i < map.rules.size(); ++i)
        if (matches(map.rules[i].guard, x)) return i;
    throw InvalidArgument("map '" + map.name + "' has no matching rule (missing 'otherwise')");
}

Point apply_map(const PiecewiseMap& map, const Point& x)
{
    const std::size_t idx = matching_rule(map, x);
    const Rule& rule = map.rules[idx];
    Point out(map.dimension);
    try {
        for (int k = 0; k < map.dimension; ++k) out(k) = rule.exprs[static_cast<std::size_t>(k)].evaluate({&x});
    } catch (const DomainError& e) {
        throw DomainError("map '" + map.name + "', rule " + std::to_string(idx + 1) + " (" + print_guard(rule.guard) +
                          ") at " + format_point(x) + ": " + e.what());
    }
    return out;
}

StepFunction as_step(const PiecewiseMap& map)
{
    return [&map](const Point& x) { return apply_map(map, x); };
}

OrbitSet orbit(const SMetricSpec& spec, const PiecewiseMap& map, const Point& seed, const OrbitOptions& opts)
{
    return orbit(spec, as_step(map), seed, opts);
}

std::vector<Point> fixed_point_set(const PiecewiseMap& map, const SMetricSpec& spec, const std::vector<Point>& sample,
                                   double tol)
{
    std::vector<Point> out;
    for (const auto& x : sample) {
        try {
            if (self_distance(spec, x, apply_map(map, x)) <= tol) out.push_back(x);
        } catch (const DomainError&) {
        }
    }
    return out;
}

std::vector<Expr> identity_exprs(int dimension)
{
    std::vector<Expr> out;
    if (dimension == 1) {
        out.push_back(Expr::variable('x', 0));
        return out;
    }
    for (int k = 1; k <= dimension; ++k) out.push_back(Expr::variable('x', k));
    return out;
}

std::vector<Expr> constant_exprs(const Point& p)
{
    std::vector<Expr> out;
    for (Eigen::Index k = 0; k < p.size(); ++k) out.push_back(Expr::number(p(k)));
    return out;
}

PiecewiseMap make_multi_circle_map(const std::vector<Circle>& circles, const Point& alpha, const std::string& name,
                                   double tol)
{
    if (circles.empty()) throw InvalidArgument("make_multi_circle_map: at least one circle required");
    const SMetricSpec& metric = circles.front().metric;
    require_point(alpha, metric.dimension, "make_multi_circle_map alpha");
    for (const auto& c : circles) {
        if (!(c.metric == metric)) throw InvalidArgument("make_multi_circle_map: circles must share one metric");
        require_point(c.center, metric.dimension, "make_multi_circle_map center");
        if (circle_membership(c, alpha, tol).member)
            throw InvalidArgument("make_multi_circle_map: alpha " + format_point(alpha) + " lies on circle C(" +
                                  format_point(c.center) + ", " + format_number(c.radius) + ")");
    }
    PiecewiseMap map;
    map.name = name;
    map.dimension = metric.dimension;
    for (const auto& c : circles) map.rules.push_back({guard::OnCircle{c, tol}, identity_exprs(metric.dimension)});
    map.rules.push_back({guard::Otherwise{}, constant_exprs(alpha)});
    return map;
}

} // namespace smetric
