#include "smetric/point.hpp"

#include <charconv>
#include <cmath>

namespace smetric {

std::vector<Point> grid_points(const Box& window, int resolution)
{
    if (!window.valid()) throw InvalidArgument("grid_points: window must have positive extent");
    if (resolution < 1) throw InvalidArgument("grid_points: resolution must be positive");

    const int dim = window.dimension();
    std::vector<int> idx(static_cast<std::size_t>(dim), 0);
    std::vector<Point> out;
    for (;;) {
        Point p(dim);
        for (int k = 0; k < dim; ++k)
            p(k) = grid_coord(window.lo(k), window.hi(k), idx[static_cast<std::size_t>(k)], resolution);
        out.push_back(std::move(p));

        int k = dim - 1;
        while (k >= 0 && idx[static_cast<std::size_t>(k)] == resolution) {
            idx[static_cast<std::size_t>(k)] = 0;
            --k;
        }
        if (k < 0) break;
        ++idx[static_cast<std::size_t>(k)];
    }
    return out;
}

std::string format_number(double v)
{
    if (v == 0.0) return "0";  // folds -0
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, res.ptr};
}

std::string format_point(const Point& p)
{
    if (p.size() == 1) return format_number(p(0));
    std::string s = "(";
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (i) s += ", ";
        s += format_number(p(i));
    }
    return s + ")";
}

} // namespace smetric
