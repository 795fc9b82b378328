#ifndef SMETRIC_SCENARIO_HPP
#define SMETRIC_SCENARIO_HPP

#include "smetric/catalog.hpp"
#include "smetric/geometry.hpp"
#include "smetric/mapping.hpp"
#include "smetric/metric.hpp"
#include "smetric/theorems.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace smetric {

inline constexpr const char* kToolVersion = "1.0.0";

using Coords = std::vector<double>;

// Scenario documents are JSON. The structs below mirror the document
// one-to-one so that print_scenario/load_scenario round-trip exactly;
// coordinates stay plain vectors until a scenario is resolved.

struct MetricRef {
    std::string family;  // empty: take the catalog map's metric
    std::map<std::string, double> params;
    std::string dsl;
    bool operator==(const MetricRef&) const = default;
};

struct MapRef {
    std::string catalog;  // catalog name, or empty
    std::string dsl;      // DSL source, or empty
    std::string name;
    std::map<std::string, double> params;  // "mu" (exm2), "alpha" (T9)
    bool operator==(const MapRef&) const = default;
};

struct BoxSpec {
    Coords lo;
    Coords hi;
    bool operator==(const BoxSpec&) const = default;
};

struct DomainSpec {
    std::optional<BoxSpec> window;
    int resolution = 0;  // 0: catalog default, else 64
    std::vector<Coords> points;  // explicit sample; overrides the grid
    bool operator==(const DomainSpec&) const = default;
};

struct TraceSpec {
    std::optional<BoxSpec> window;
    int resolution = kDefaultResolution;
    double band_tol = kDefaultBandTol;
    bool operator==(const TraceSpec&) const = default;
};

struct CircleSpec {
    Coords center;
    double radius = 1.0;
    std::string label;
    bool operator==(const CircleSpec&) const = default;
};

/// One requested check. `kind` is one of: solve, fixed_points, fixed_circle,
/// thm1, thm2, thm2_sweep, identity, rhoades, diameter, thm6, discover,
/// axioms. `expect` holds the declared outcome (see README).
struct CheckSpec {
    std::string kind;
    std::optional<CircleSpec> circle;
    std::optional<Coords> center;
    std::vector<Coords> centers;
    std::optional<double> h;
    std::vector<double> h_grid;
    double tol = kDefaultTol;
    double tol_strict = 0.0;
    int n_max = 64;
    std::size_t trials = 10000;
    nlohmann::json expect = nlohmann::json::object();
    bool operator==(const CheckSpec&) const = default;
};

/// kind: "csv" (source "circle" with `circle` index, or "fixed_points"),
/// "svg" (all scenario circles plus the sampled fixed points) or "report".
struct OutputSpec {
    std::string kind;
    std::string path;
    std::string source = "circle";
    int circle = 0;
    double point_size = 0.004;
    bool operator==(const OutputSpec&) const = default;
};

struct Scenario {
    std::string name;
    std::string description;
    std::uint64_t seed = 7;
    MetricRef metric;
    MapRef map;
    DomainSpec domain;
    TraceSpec trace;
    std::vector<CircleSpec> circles;
    std::vector<CheckSpec> checks;
    std::vector<OutputSpec> outputs;
    bool operator==(const Scenario&) const = default;
};

/// Parses and validates a scenario document: unknown families, catalog
/// names and check kinds are rejected, tolerances must be positive and
/// resolutions at least 8. Parse errors carry the JSON byte offset.
Scenario load_scenario_text(const std::string& text);
Scenario load_scenario(const std::string& path);

nlohmann::json scenario_to_json(const Scenario& s);
std::string print_scenario(const Scenario& s);

/// Runtime objects a scenario refers to.
struct ResolvedScenario {
    SMetricSpec metric;
    std::optional<PiecewiseMap> map;
    std::vector<Point> domain;
    TraceSettings trace;
    std::vector<Circle> circles;
    std::optional<MapCatalogEntry> entry;
};

ResolvedScenario resolve(const Scenario& s);

struct RunReport {
    nlohmann::json document;
    bool passed = true;
    std::size_t checks = 0;
    std::size_t failed_checks = 0;
};

/// Runs every check, writes the declared outputs under `out_dir` (paths are
/// relative to it) and returns the structured report. The report contains
/// no timestamps or paths outside the scenario, so identical scenarios and
/// seeds give identical bytes.
RunReport run_scenario(const Scenario& s, const std::string& out_dir);

nlohmann::json to_json(const ConditionReport& r);
nlohmann::json to_json(const FixedCircleVerdict& v);
nlohmann::json to_json(const AxiomReport& r);

/// Scenarios shipped with the tool, in reproduction order.
struct BundledScenario {
    std::string file;
    std::string text;
};
const std::vector<BundledScenario>& bundled_scenarios();

struct ReproductionRow {
    std::string scenario;
    std::size_t checks = 0;
    std::size_t failed = 0;
    bool passed = false;
    std::string error;
};

/// Runs every bundled scenario with the given seed, writing each scenario's
/// outputs and report into `out_dir` plus a combined summary.json.
std::vector<ReproductionRow> reproduce_paper(const std::string& out_dir, std::uint64_t seed);

} // namespace smetric

#endif // SMETRIC_SCENARIO_HPP
