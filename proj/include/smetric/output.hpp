#ifndef SMETRIC_OUTPUT_HPP
#define SMETRIC_OUTPUT_HPP

#include "smetric/geometry.hpp"
#include "smetric/point.hpp"

#include <string>
#include <vector>

namespace smetric {

/// Thrown when an output file cannot be written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// CSV text: header x1[,x2...],residual then one row per point.
/// `dimension` sets the header when there are no points.
std::string render_csv(const std::vector<Point>& points, const std::vector<double>& residuals, int dimension);
std::string render_csv(const CircleSolution& solution, int dimension);

void emit_csv(const CircleSolution& solution, int dimension, const std::string& path);
void emit_csv(const std::vector<Point>& points, const std::vector<double>& residuals, int dimension,
              const std::string& path);

struct LabeledCloud {
    std::string label;
    std::vector<Point> points;
};

struct SvgOptions {
    double point_size = 0.004;  // radius in unit-box coordinates
    int pixels = 640;
};

/// Standalone SVG 1.1 scatter plot of the clouds over `window` (1D or 2D),
/// mapped onto a unit viewBox with axes, a frame and a legend.
std::string render_svg(const std::vector<LabeledCloud>& clouds, const Box& window, const SvgOptions& opts = {});
void emit_svg(const std::vector<LabeledCloud>& clouds, const Box& window, const std::string& path,
              const SvgOptions& opts = {});

/// Writes `content` to `path`, creating parent directories.
void write_file(const std::string& path, const std::string& content);

} // namespace smetric

#endif // SMETRIC_OUTPUT_HPP
