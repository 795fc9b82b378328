#include "smetric/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace smetric {

std::string render_csv(const std::vector<Point>& points, const std::vector<double>& residuals, int dimension)
{
    if (points.size() != residuals.size()) throw InvalidArgument("render_csv: one residual per point required");
    std::string out;
    for (int k = 1; k <= dimension; ++k) out += "x" + std::to_string(k) + ",";
    out += "residual\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        require_point(points[i], dimension, "render_csv");
        for (int k = 0; k < dimension; ++k) out += format_number(points[i](k)) + ",";
        out += format_number(residuals[i]) + "\n";
    }
    return out;
}

std::string render_csv(const CircleSolution& solution, int dimension)
{
    return render_csv(solution.points, solution.residuals, dimension);
}

void write_file(const std::string& path, const std::string& content)
{
    const std::filesystem::path p(path);
    std::error_code ec;
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw IoError("failed writing '" + path + "'");
}

void emit_csv(const CircleSolution& solution, int dimension, const std::string& path)
{
    write_file(path, render_csv(solution, dimension));
}

void emit_csv(const std::vector<Point>& points, const std::vector<double>& residuals, int dimension,
              const std::string& path)
{
    write_file(path, render_csv(points, residuals, dimension));
}

namespace {

std::string fixed6(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    std::string s(buf);
    return s == "-0.000000" ? "0.000000" : s;
}

std::string escape_xml(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

} // namespace

std::string render_svg(const std::vector<LabeledCloud>& clouds, const Box& window, const SvgOptions& opts)
{
    if (!window.valid() || window.dimension() > 2)
        throw InvalidArgument("render_svg: window must be a 1D or 2D box with positive extent");
    const bool planar = window.dimension() == 2;
    auto ux = [&](double x) { return (x - window.lo(0)) / (window.hi(0) - window.lo(0)); };
    auto uy = [&](double y) { return planar ? 1.0 - (y - window.lo(1)) / (window.hi(1) - window.lo(1)) : 0.5; };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(opts.pixels) +
         "\" height=\"" + std::to_string(opts.pixels) + "\" viewBox=\"0 0 1 1\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"1\" height=\"1\" fill=\"white\" stroke=\"#808080\" stroke-width=\"0.002\"/>\n";

    s += "<g stroke=\"#b0b0b0\" stroke-width=\"0.0015\">\n";
    if (window.lo(0) <= 0.0 && 0.0 <= window.hi(0)) {
        const std::string x = fixed6(ux(0.0));
        s += "<line x1=\"" + x + "\" y1=\"0\" x2=\"" + x + "\" y2=\"1\"/>\n";
    }
    if (!planar || (window.lo(1) <= 0.0 && 0.0 <= window.hi(1))) {
        const std::string y = fixed6(uy(0.0));
        s += "<line x1=\"0\" y1=\"" + y + "\" x2=\"1\" y2=\"" + y + "\"/>\n";
    }
    s += "</g>\n";

    const std::string r = fixed6(opts.point_size);
    for (std::size_t c = 0; c < clouds.size(); ++c) {
        const char* color = kPalette[c % std::size(kPalette)];
        s += "<g fill=\"" + std::string(color) + "\"><title>" + escape_xml(clouds[c].label) + "</title>\n";
        for (const auto& p : clouds[c].points) {
            if (p.size() != window.dimension()) throw InvalidArgument("render_svg: point dimension differs from window");
            s += "<circle cx=\"" + fixed6(ux(p(0))) + "\" cy=\"" + fixed6(uy(planar ? p(1) : 0.0)) + "\" r=\"" + r +
                 "\"/>\n";
        }
        s += "</g>\n";
        s += "<text x=\"0.02\" y=\"" + fixed6(0.04 + 0.035 * static_cast<double>(c)) +
             "\" font-family=\"sans-serif\" font-size=\"0.028\" fill=\"" + color + "\">" +
             escape_xml(clouds[c].label) + "</text>\n";
    }

    const std::string range = "[" + format_number(window.lo(0)) + ", " + format_number(window.hi(0)) + "]" +
                              (planar ? " x [" + format_number(window.lo(1)) + ", " + format_number(window.hi(1)) + "]"
                                      : std::string());
    s += "<text x=\"0.98\" y=\"0.98\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"0.022\" "
         "fill=\"#606060\">" +
         escape_xml(range) + "</text>\n";
    s += "</svg>\n";
    return s;
}

void emit_svg(const std::vector<LabeledCloud>& clouds, const Box& window, const std::string& path,
              const SvgOptions& opts)
{
    write_file(path, render_svg(clouds, window, opts));
}

} // namespace smetric
