#ifndef SMETRIC_MAPPING_HPP
#define SMETRIC_MAPPING_HPP

#include "smetric/expr.hpp"
#include "smetric/geometry.hpp"
#include "smetric/metric.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace smetric {

namespace guard {

struct InFiniteSet {
    std::vector<Point> points;
    double tol = kDefaultTol;
    bool operator==(const InFiniteSet& o) const
    {
        if (tol != o.tol || points.size() != o.points.size()) return false;
        for (std::size_t i = 0; i < points.size(); ++i)
            if (!same_point(points[i], o.points[i])) return false;
        return true;
    }
};

struct OnCircle {
    Circle circle;
    double tol = kDefaultTol;
    bool operator==(const OnCircle&) const = default;
};

struct InClosedBall {
    ClosedBall ball;
    double tol = kDefaultTol;
    bool operator==(const InClosedBall&) const = default;
};

struct AbsAtLeast {
    double threshold = 0.0;
    bool operator==(const AbsAtLeast&) const = default;
};

struct AbsLessThan {
    double threshold = 0.0;
    bool operator==(const AbsLessThan&) const = default;
};

/// x_index == value (index is 0-based; `bare` records the spelling `x`).
struct CoordEquals {
    int index = 0;
    double value = 0.0;
    double tol = kDefaultTol;
    bool bare = true;
    bool operator==(const CoordEquals&) const = default;
};

struct Otherwise {
    bool operator==(const Otherwise&) const = default;
};

} // namespace guard

using Predicate = std::variant<guard::InFiniteSet, guard::OnCircle, guard::InClosedBall, guard::AbsAtLeast,
                               guard::AbsLessThan, guard::CoordEquals, guard::Otherwise>;

bool matches(const Predicate& p, const Point& x);

struct Rule {
    Predicate guard;
    std::vector<Expr> exprs;  // one per output coordinate
    bool operator==(const Rule&) const = default;
};

/// A self-mapping of R^n given by ordered (guard, expression) rules; the
/// first matching rule applies and the last rule is always "otherwise".
struct PiecewiseMap {
    std::string name;
    int dimension = 1;
    std::vector<Rule> rules;

    /// Rule/expression equality; the display name is ignored.
    bool operator==(const PiecewiseMap& o) const { return dimension == o.dimension && rules == o.rules; }
};

/// Parses the map DSL:
///
///     map      := rule (";" rule)* [";"]      last rule: "otherwise -> exprlist"
///     rule     := guard "->" exprlist
///     guard    := "x in {" pointlist "}" | "on_circle(" center "," r ")"
///               | "in_ball(" center "," r ")" | "abs(x)" (">=" | "<") num
///               | "x" ("=" | "==") num | "x" INDEX ("=" | "==") num | "otherwise"
///
/// Circle and ball guards need `metric`. `#` starts a comment.
PiecewiseMap parse_map(const std::string& source, int dimension, const SMetricSpec* metric = nullptr,
                       const std::string& name = {});

/// DSL text that parses back to an equal map (given the same metric).
std::string print_map(const PiecewiseMap& map);

/// Value of the first matching rule at x. Throws DomainError naming the
/// rule when its expression leaves its domain.
Point apply_map(const PiecewiseMap& map, const Point& x);

/// Index of the rule that applies at x.
std::size_t matching_rule(const PiecewiseMap& map, const Point& x);

StepFunction as_step(const PiecewiseMap& map);

OrbitSet orbit(const SMetricSpec& spec, const PiecewiseMap& map, const Point& seed, const OrbitOptions& opts = {});

/// Sample points with S(x, x, Tx) <= tol. Points where the map is undefined
/// are not fixed.
std::vector<Point> fixed_point_set(const PiecewiseMap& map, const SMetricSpec& spec,
                                   const std::vector<Point>& sample, double tol = kDefaultTol);

/// Map fixing every given circle pointwise and sending all other points to
/// alpha. All circles must share a metric; alpha must lie on none of them.
PiecewiseMap make_multi_circle_map(const std::vector<Circle>& circles, const Point& alpha,
                                   const std::string& name = "multi_circle", double tol = kDefaultTol);

/// Expression vector reproducing x itself.
std::vector<Expr> identity_exprs(int dimension);
/// Expression vector for a constant point.
std::vector<Expr> constant_exprs(const Point& p);

} // namespace smetric

#endif // SMETRIC_MAPPING_HPP
