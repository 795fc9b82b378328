#ifndef SMETRIC_POINT_HPP
#define SMETRIC_POINT_HPP

#include <Eigen/Core>

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace smetric {

template <typename Scalar>
using PointT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// A finite coordinate vector in R^n.
using Point = PointT<double>;

/// Thrown for malformed input: dimension mismatches, non-finite values,
/// out-of-range parameters.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a map or metric expression is evaluated outside its domain.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Point make_point(std::initializer_list<double> coords)
{
    Point p(static_cast<Eigen::Index>(coords.size()));
    Eigen::Index i = 0;
    for (double c : coords) p(i++) = c;
    return p;
}

inline Point make_point(const std::vector<double>& coords)
{
    return Eigen::Map<const Point>(coords.data(), static_cast<Eigen::Index>(coords.size()));
}

inline std::vector<double> to_vector(const Point& p)
{
    return {p.data(), p.data() + p.size()};
}

inline int dimension(const Point& p) { return static_cast<int>(p.size()); }

inline bool is_finite(const Point& p) { return p.size() > 0 && p.allFinite(); }

/// Rejects empty or non-finite points and dimension mismatches.
inline void require_point(const Point& p, int dim, const char* what)
{
    if (p.size() == 0)
        throw InvalidArgument(std::string(what) + ": empty point");
    if (!p.allFinite())
        throw InvalidArgument(std::string(what) + ": non-finite coordinate");
    if (dim > 0 && p.size() != dim)
        throw InvalidArgument(std::string(what) + ": dimension " + std::to_string(p.size()) +
                              " does not match " + std::to_string(dim));
}

/// Lexicographic order on coordinates; shorter points first on a common prefix.
inline bool lex_less(const Point& a, const Point& b)
{
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

inline bool same_point(const Point& a, const Point& b)
{
    return a.size() == b.size() && (a.size() == 0 || a == b);
}

/// Max-norm distance between two points of equal dimension.
inline double max_coord_distance(const Point& a, const Point& b)
{
    return (a - b).cwiseAbs().maxCoeff();
}

inline void sort_canonical(std::vector<Point>& pts)
{
    std::sort(pts.begin(), pts.end(), lex_less);
}

/// Sorts and removes points closer than `tol` (max-norm) to their predecessor.
inline void sort_unique(std::vector<Point>& pts, double tol)
{
    sort_canonical(pts);
    std::vector<Point> out;
    out.reserve(pts.size());
    for (auto& p : pts) {
        if (!out.empty() && max_coord_distance(out.back(), p) <= tol) continue;
        out.push_back(std::move(p));
    }
    pts = std::move(out);
}

/// Axis-aligned box [lo, hi].
struct Box {
    Point lo;
    Point hi;

    int dimension() const { return static_cast<int>(lo.size()); }

    bool valid() const
    {
        return lo.size() > 0 && lo.size() == hi.size() && lo.allFinite() && hi.allFinite() &&
               (hi.array() > lo.array()).all();
    }

    bool operator==(const Box& o) const { return same_point(lo, o.lo) && same_point(hi, o.hi); }
};

/// All vertices of a regular grid with `resolution` cells per axis.
/// Coordinates are computed as lo + (hi - lo) * i / resolution so that
/// values on dyadic windows land exactly.
std::vector<Point> grid_points(const Box& window, int resolution);

/// Coordinate i of a regular grid along [lo, hi].
inline double grid_coord(double lo, double hi, int i, int resolution)
{
    if (i == resolution) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(resolution);
}

std::string format_number(double v);
std::string format_point(const Point& p);

} // namespace smetric

#endif // SMETRIC_POINT_HPP
