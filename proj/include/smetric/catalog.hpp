#ifndef SMETRIC_CATALOG_HPP
#define SMETRIC_CATALOG_HPP

#include "smetric/geometry.hpp"
#include "smetric/mapping.hpp"
#include "smetric/metric.hpp"
#include "smetric/theorems.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace smetric {

/// Which existence theorem an entry's documented circles are checked against.
enum class TheoremFamily { Thm1, Thm2, Thm6, None };

/// A documented self-mapping together with its metric, circles and the
/// condition verdicts recorded for it.
struct MapCatalogEntry {
    std::string name;      // "T1", ..., "exm1", "exm2", "intro"
    std::string example;   // source example label
    std::string dsl;       // map source
    SMetricSpec metric;
    PiecewiseMap map;
    std::vector<Circle> circles;
    TheoremFamily theorem = TheoremFamily::None;
    /// Expected verdicts; each applies to every documented circle.
    std::vector<std::pair<ConditionId, bool>> expected;
    /// Center used by the thm6 checker (exm1, exm2).
    std::optional<Point> thm6_center;
    /// Default domain sample window and grid resolution.
    Box window;
    int resolution = 48;
    /// Window for tracing 2D circles.
    std::optional<Box> trace_window;
};

/// All thirteen catalog entries in a fixed order.
const std::vector<MapCatalogEntry>& catalog();

/// Throws InvalidArgument for unknown names.
const MapCatalogEntry& catalog_entry(const std::string& name);

bool has_catalog_entry(const std::string& name);

/// Example exm2's map for an arbitrary mu > 0 (center 0, usual metric).
MapCatalogEntry make_exm2_entry(double mu);

/// Example exm12's map for an arbitrary alpha (default catalog alpha is 5).
MapCatalogEntry make_t9_entry(double alpha);

} // namespace smetric

#endif // SMETRIC_CATALOG_HPP
