#include "smetric/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace smetric {

Circle make_circle(const SMetricSpec& metric, const Point& center, double radius)
{
    require_point(center, metric.dimension, "circle center");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("circle radius must be positive and finite");
    return Circle{center, radius, metric};
}

ClosedBall make_ball(const SMetricSpec& metric, const Point& center, double radius)
{
    require_point(center, metric.dimension, "ball center");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("ball radius must be positive and finite");
    return ClosedBall{center, radius, metric};
}

Membership circle_membership(const Circle& c, const Point& x, double tol)
{
    const double residual = self_distance(c.metric, x, c.center) - c.radius;
    return {std::abs(residual) <= tol, residual};
}

bool ball_membership(const ClosedBall& b, const Point& x, double tol)
{
    return self_distance(b.metric, x, b.center) <= b.radius + tol;
}

std::string to_string(CircleSolution::Kind k)
{
    switch (k) {
    case CircleSolution::Kind::FinitePointSet: return "finite";
    case CircleSolution::Kind::TracedPointCloud: return "traced";
    case CircleSolution::Kind::Empty: return "empty";
    }
    return "unknown";
}

bool has_analytic_circles(const SMetricSpec& spec)
{
    if (spec.dimension != 1) return false;
    switch (spec.family) {
    case Family::Usual1D:
    case Family::SymSkew1D:
        return true;
    case Family::GeneratedFromMetric:
        return spec.base == BaseMetric::Absolute || spec.base == BaseMetric::Euclidean;
    default:
        return false;
    }
}

namespace {

CircleSolution finish(const SMetricSpec& spec, const Point& x0, double r, std::vector<Point> pts,
                      CircleSolution::Kind kind)
{
    sort_unique(pts, 1e-12);
    CircleSolution sol;
    if (pts.empty()) return sol;
    sol.kind = kind;
    sol.residuals.reserve(pts.size());
    for (const auto& p : pts) sol.residuals.push_back(self_distance(spec, p, x0) - r);
    sol.points = std::move(pts);
    return sol;
}

void check_radius(double r)
{
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("circle radius must be positive and finite");
}

/// Bisects f on the segment [a, b] given f(a) and f(b) of opposite signs.
/// Runs until the bracket stops shrinking, then returns the endpoint with
/// the smaller residual.
template <typename F>
std::pair<Point, double> bisect(const F& f, Point a, Point b, double fa, double fb)
{
    for (int it = 0; it < 200; ++it) {
        Point m = (a + b) / 2.0;
        if ((m.array() == a.array()).all() || (m.array() == b.array()).all()) break;
        const double fm = f(m);
        if (fm == 0.0) return {m, 0.0};
        if ((fm < 0.0) == (fa < 0.0)) {
            a = std::move(m);
            fa = fm;
        } else {
            b = std::move(m);
            fb = fm;
        }
    }
    return std::abs(fa) <= std::abs(fb) ? std::pair{a, fa} : std::pair{b, fb};
}

} // namespace

CircleSolution solve_circle_1d(const SMetricSpec& spec, const Point& x0, double r)
{
    require_point(x0, spec.dimension, "solve_circle_1d center");
    check_radius(r);
    if (!has_analytic_circles(spec))
        throw InvalidArgument("solve_circle_1d: metric '" + spec.name() +
                              "' has no closed-form circles; use trace_circle_1d or trace_circle_2d");
    const double c = x0(0);
    return finish(spec, x0, r, {make_point({c - r / 2.0}), make_point({c + r / 2.0})},
                  CircleSolution::Kind::FinitePointSet);
}

CircleSolution trace_circle_1d(const SMetricSpec& spec, const Point& x0, double r, double lo, double hi,
                               int resolution, double band_tol)
{
    require_point(x0, 1, "trace_circle_1d center");
    if (spec.dimension != 1) throw InvalidArgument("trace_circle_1d: metric must be one-dimensional");
    check_radius(r);
    if (!(hi > lo)) throw InvalidArgument("trace_circle_1d: interval must have positive length");
    if (resolution < 8) throw InvalidArgument("trace_circle_1d: resolution must be at least 8");

    auto f = [&](const Point& p) { return self_distance(spec, p, x0) - r; };
    std::vector<Point> nodes;
    std::vector<double> vals;
    for (int i = 0; i <= resolution; ++i) {
        nodes.push_back(make_point({grid_coord(lo, hi, i, resolution)}));
        vals.push_back(f(nodes.back()));
    }
    std::vector<Point> pts;
    for (int i = 0; i <= resolution; ++i) {
        if (vals[i] == 0.0) pts.push_back(nodes[i]);
        if (i < resolution && ((vals[i] < 0.0 && vals[i + 1] > 0.0) || (vals[i] > 0.0 && vals[i + 1] < 0.0))) {
            auto [p, fp] = bisect(f, nodes[i], nodes[i + 1], vals[i], vals[i + 1]);
            if (std::abs(fp) <= band_tol) pts.push_back(std::move(p));
        }
    }
    return finish(spec, x0, r, std::move(pts), CircleSolution::Kind::TracedPointCloud);
}

CircleSolution trace_circle_2d(const SMetricSpec& spec, const Point& x0, double r, const Box& window,
                               int resolution, double band_tol)
{
    if (spec.dimension != 2) throw InvalidArgument("trace_circle_2d: metric must be two-dimensional");
    require_point(x0, 2, "trace_circle_2d center");
    check_radius(r);
    if (window.dimension() != 2 || !window.valid())
        throw InvalidArgument("trace_circle_2d: window must be a 2D box with positive area");
    if (resolution < 8) throw InvalidArgument("trace_circle_2d: resolution must be at least 8");

    auto f = [&](const Point& p) { return self_distance(spec, p, x0) - r; };
    const int n = resolution + 1;
    auto node = [&](int i, int j) {
        return make_point({grid_coord(window.lo(0), window.hi(0), i, resolution),
                           grid_coord(window.lo(1), window.hi(1), j, resolution)});
    };
    std::vector<double> vals(static_cast<std::size_t>(n) * n);
    auto at = [&](int i, int j) -> double& { return vals[static_cast<std::size_t>(i) * n + j]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) at(i, j) = f(node(i, j));

    auto crosses = [](double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); };
    std::vector<Point> pts;
    auto refine = [&](int i0, int j0, int i1, int j1) {
        auto [p, fp] = bisect(f, node(i0, j0), node(i1, j1), at(i0, j0), at(i1, j1));
        if (std::abs(fp) <= band_tol) pts.push_back(std::move(p));
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (at(i, j) == 0.0) pts.push_back(node(i, j));
            if (i + 1 < n && crosses(at(i, j), at(i + 1, j))) refine(i, j, i + 1, j);
            if (j + 1 < n && crosses(at(i, j), at(i, j + 1))) refine(i, j, i, j + 1);
        }
    }
    return finish(spec, x0, r, std::move(pts), CircleSolution::Kind::TracedPointCloud);
}

double diameter(const SMetricSpec& spec, const std::vector<Point>& pts)
{
    if (pts.empty()) throw InvalidArgument("diameter: point set must be nonempty");
    double d = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            d = std::max({d, self_distance(spec, pts[i], pts[j]), self_distance(spec, pts[j], pts[i])});
    return d;
}

CircleSample explicit_circle_sample(std::vector<Point> pts, std::string descriptor)
{
    CircleSample s;
    s.points = std::move(pts);
    s.exhaustive = false;
    s.descriptor = std::move(descriptor);
    return s;
}

CircleSample sample_circle(const Circle& c, const TraceSettings& settings)
{
    CircleSample s;
    const auto& spec = c.metric;
    const double half = std::max(2.0 * c.radius, 1.0);
    auto describe = [&](const char* what, const CircleSolution& sol) {
        return std::string(what) + " circle C(" + format_point(c.center) + ", " + format_number(c.radius) +
               ") under " + spec.name() + ": " + std::to_string(sol.points.size()) + " points";
    };

    if (has_analytic_circles(spec)) {
        auto sol = solve_circle_1d(spec, c.center, c.radius);
        s.descriptor = describe("analytic", sol) + " (exhaustive)";
        s.points = std::move(sol.points);
        s.exhaustive = true;
        return s;
    }
    if (spec.dimension == 1) {
        double lo = c.center(0) - half, hi = c.center(0) + half;
        if (settings.window) {
            lo = settings.window->lo(0);
            hi = settings.window->hi(0);
        }
        auto sol = trace_circle_1d(spec, c.center, c.radius, lo, hi, settings.resolution, settings.band_tol);
        s.descriptor = describe("traced", sol) + " on [" + format_number(lo) + ", " + format_number(hi) + "]";
        s.points = std::move(sol.points);
        return s;
    }
    if (spec.dimension == 2) {
        Box w = settings.window.value_or(
            Box{c.center - Point::Constant(2, half), c.center + Point::Constant(2, half)});
        auto sol = trace_circle_2d(spec, c.center, c.radius, w, settings.resolution, settings.band_tol);
        s.descriptor = describe("traced", sol) + " at resolution " + std::to_string(settings.resolution);
        s.points = std::move(sol.points);
        return s;
    }
    throw InvalidArgument("sample_circle: no solver for dimension " + std::to_string(spec.dimension) +
                          "; supply an explicit sample");
}

OrbitSet orbit(const SMetricSpec& spec, const StepFunction& step, const Point& seed, const OrbitOptions& opts)
{
    if (opts.n_max < 1) throw InvalidArgument("orbit: n_max must be at least 1");
    require_point(seed, spec.dimension, "orbit seed");
    OrbitSet out;
    out.seed = seed;
    Point cur = seed;
    bool cycled = false;
    for (int n = 1; n <= opts.n_max; ++n) {
        cur = step(cur);
        if (!cur.allFinite() || cur.cwiseAbs().maxCoeff() > opts.escape_bound) {
            out.unbounded = true;
            break;
        }
        const bool seen = std::any_of(out.iterates.begin(), out.iterates.end(),
                                      [&](const Point& q) { return max_coord_distance(q, cur) <= opts.cycle_tol; });
        if (seen) {
            cycled = true;
            break;
        }
        out.iterates.push_back(cur);
    }
    out.truncated = !cycled && !out.unbounded;
    out.diameter = out.unbounded ? std::numeric_limits<double>::infinity()
                                 : (out.iterates.empty() ? 0.0 : diameter(spec, out.iterates));
    return out;
}

} // namespace smetric
