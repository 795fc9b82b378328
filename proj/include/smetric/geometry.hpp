#ifndef SMETRIC_GEOMETRY_HPP
#define SMETRIC_GEOMETRY_HPP

#include "smetric/metric.hpp"
#include "smetric/point.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace smetric {

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kDefaultBandTol = 1e-8;
inline constexpr int kDefaultResolution = 512;

/// C = {x : S(x, x, center) = radius}.
struct Circle {
    Point center;
    double radius = 1.0;
    SMetricSpec metric;

    bool operator==(const Circle& o) const
    {
        return same_point(center, o.center) && radius == o.radius && metric == o.metric;
    }
};

/// B[center, radius] = {x : S(x, x, center) <= radius}.
struct ClosedBall {
    Point center;
    double radius = 1.0;
    SMetricSpec metric;

    bool operator==(const ClosedBall& o) const
    {
        return same_point(center, o.center) && radius == o.radius && metric == o.metric;
    }
};

/// Validating constructors: radius > 0 and center of the metric's dimension.
Circle make_circle(const SMetricSpec& metric, const Point& center, double radius);
ClosedBall make_ball(const SMetricSpec& metric, const Point& center, double radius);

struct Membership {
    bool member = false;
    /// S(x, x, center) - radius: negative inside, positive outside.
    double residual = 0.0;
};

Membership circle_membership(const Circle& c, const Point& x, double tol = kDefaultTol);
bool ball_membership(const ClosedBall& b, const Point& x, double tol = kDefaultTol);

/// Concrete representation of a circle: the exact finite set on the line,
/// or a traced cloud of points on the zero level set in the plane.
struct CircleSolution {
    enum class Kind { FinitePointSet, TracedPointCloud, Empty };

    Kind kind = Kind::Empty;
    std::vector<Point> points;
    std::vector<double> residuals;

    bool empty() const { return points.empty(); }
};

std::string to_string(CircleSolution::Kind k);

/// True when S(x, x, x0) reduces to 2|x - x0| on the line.
bool has_analytic_circles(const SMetricSpec& spec);

/// Exact solution set of S(x, x, x0) = r for the 2|x - x0| families:
/// {x0 - r/2, x0 + r/2}. Other families throw InvalidArgument pointing to
/// the tracing solvers.
CircleSolution solve_circle_1d(const SMetricSpec& spec, const Point& x0, double r);

/// Zero crossings of S(x, x, x0) - r on a 1D grid over [lo, hi], refined by
/// bisection on each bracketing cell.
CircleSolution trace_circle_1d(const SMetricSpec& spec, const Point& x0, double r, double lo, double hi,
                               int resolution = kDefaultResolution, double band_tol = kDefaultBandTol);

/// Zero level set of f(x) = S(x, x, x0) - r on a resolution x resolution
/// cell grid over `window`. Every grid edge with a sign change is bisected
/// and every grid vertex with f = 0 is emitted; points whose refined |f|
/// exceeds band_tol are dropped. Output is lexicographically sorted.
CircleSolution trace_circle_2d(const SMetricSpec& spec, const Point& x0, double r, const Box& window,
                               int resolution = kDefaultResolution, double band_tol = kDefaultBandTol);

/// sup S(x, x, y) over pairs of `pts`.
double diameter(const SMetricSpec& spec, const std::vector<Point>& pts);

struct TraceSettings {
    std::optional<Box> window;  // defaults to center +/- max(2r, 1)
    int resolution = kDefaultResolution;
    double band_tol = kDefaultBandTol;
};

/// Points of a circle used to evaluate "for all x in C" conditions.
struct CircleSample {
    std::vector<Point> points;
    bool exhaustive = false;  // points are the whole (finite) circle
    std::string descriptor;
};

/// Analytic solution where available (exhaustive), otherwise 1D or 2D
/// tracing (sampled).
CircleSample sample_circle(const Circle& c, const TraceSettings& settings = {});

/// A circle sample made of explicit points; they are not checked here.
CircleSample explicit_circle_sample(std::vector<Point> pts, std::string descriptor);

struct OrbitOptions {
    int n_max = 64;
    double escape_bound = 1e9;
    double cycle_tol = 1e-9;
};

/// U_x = {T^n x : n = 1..n_max}, cut short at the first revisited point or
/// when a coordinate leaves [-escape_bound, escape_bound].
struct OrbitSet {
    Point seed;
    std::vector<Point> iterates;
    bool truncated = false;  // n_max reached without a cycle
    bool unbounded = false;  // escaped the bound
    double diameter = 0.0;   // +inf when unbounded
};

using StepFunction = std::function<Point(const Point&)>;

OrbitSet orbit(const SMetricSpec& spec, const StepFunction& step, const Point& seed, const OrbitOptions& opts = {});

} // namespace smetric

#endif // SMETRIC_GEOMETRY_HPP
