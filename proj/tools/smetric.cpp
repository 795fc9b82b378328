#include "smetric/output.hpp"
#include "smetric/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

using namespace smetric;
using nlohmann::json;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

/// Thrown for flag values that cannot form a valid scenario.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Coords parse_coords(const std::string& s, const std::string& flag)
{
    Coords out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(flag + ": '" + s + "' is not a comma-separated list of numbers");
        }
    }
    if (out.empty()) throw UsageError(flag + ": empty point");
    return out;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& items, const std::string& flag)
{
    std::map<std::string, double> out;
    for (const auto& it : items) {
        const auto eq = it.find('=');
        if (eq == std::string::npos) throw UsageError(flag + ": expected key=value, got '" + it + "'");
        const auto v = parse_coords(it.substr(eq + 1), flag);
        if (v.size() != 1) throw UsageError(flag + ": '" + it + "' needs a single number");
        out[it.substr(0, eq)] = v[0];
    }
    return out;
}

/// "c1,c2:r" -> circle
CircleSpec parse_circle(const std::string& s)
{
    const auto colon = s.rfind(':');
    if (colon == std::string::npos) throw UsageError("--circle: expected center:radius, got '" + s + "'");
    CircleSpec c;
    c.center = parse_coords(s.substr(0, colon), "--circle");
    const auto r = parse_coords(s.substr(colon + 1), "--circle");
    if (r.size() != 1) throw UsageError("--circle: radius must be one number");
    c.radius = r[0];
    return c;
}

std::uint64_t default_seed()
{
    const char* env = std::getenv("SMETRIC_SEED");
    if (env == nullptr || *env == '\0') return 7;
    try {
        std::size_t used = 0;
        const auto v = std::stoull(env, &used);
        if (env[used] != '\0') throw std::invalid_argument(env);
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string("SMETRIC_SEED: '") + env + "' is not a non-negative integer");
    }
}

/// Flags shared by the subcommands that build a scenario from the command line.
struct MetricFlags {
    std::string family;
    std::vector<std::string> params;
    std::string dsl;

    void add(CLI::App* app, bool required)
    {
        auto* o = app->add_option("--metric", family, "S-metric family (" + [] {
            std::string s;
            for (const auto& n : family_names()) s += (s.empty() ? "" : ", ") + n;
            return s;
        }() + ")");
        if (required) o->required();
        app->add_option("--param", params, "metric parameter key=value (repeatable)");
        app->add_option("--metric-dsl", dsl, "S(x,y,z) expression for the dsl family");
    }

    MetricRef ref() const { return {family, parse_params(params, "--param"), dsl}; }
};

struct MapFlags {
    std::string catalog;
    std::string dsl;
    std::vector<std::string> params;

    void add(CLI::App* app)
    {
        app->add_option("--catalog", catalog, "catalog map name (T1..T10, exm1, exm2, intro)");
        app->add_option("--map", dsl, "map DSL source");
        app->add_option("--map-param", params, "catalog map parameter key=value (mu, alpha)");
    }

    MapRef ref() const { return {catalog, dsl, {}, parse_params(params, "--map-param")}; }
};

struct BoxFlags {
    std::string lo;
    std::string hi;

    void add(CLI::App* app, const std::string& prefix, const std::string& what)
    {
        app->add_option("--" + prefix + "lo", lo, "lower corner of the " + what + " window (comma-separated)");
        app->add_option("--" + prefix + "hi", hi, "upper corner of the " + what + " window (comma-separated)");
    }

    std::optional<BoxSpec> spec(const std::string& prefix) const
    {
        if (lo.empty() && hi.empty()) return std::nullopt;
        if (lo.empty() || hi.empty()) throw UsageError("--" + prefix + "lo and --" + prefix + "hi go together");
        return BoxSpec{parse_coords(lo, "--" + prefix + "lo"), parse_coords(hi, "--" + prefix + "hi")};
    }
};

struct Common {
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out_dir = ".";
    bool echo = false;
    int verbose = 0;

    void add(CLI::App* app)
    {
        app->add_option("--seed", seed, "random seed (default: $SMETRIC_SEED, else 7)")
            ->each([this](const std::string&) { seed_given = true; });
        app->add_option("--out", out_dir, "directory for emitted files")->capture_default_str();
        app->add_flag("--echo", echo, "print the scenario this invocation runs");
        app->add_flag("-v,--verbose", verbose, "print the full JSON report");
    }

    std::uint64_t resolved_seed() const { return seed_given ? seed : default_seed(); }
};

std::string join_points(const json& pts)
{
    std::string s = "{";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) s += ", ";
        const auto& p = pts[i];
        if (p.is_number()) {
            s += format_number(p.get<double>());
        } else {
            s += "(";
            for (std::size_t k = 0; k < p.size(); ++k) s += (k ? ", " : "") + format_number(p[k].get<double>());
            s += ")";
        }
    }
    return s + "}";
}

std::string circle_text(const json& c)
{
    const auto& center = c.at("center");
    std::string s = "C(";
    if (center.is_number()) {
        s += format_number(center.get<double>());
    } else {
        s += "(";
        for (std::size_t k = 0; k < center.size(); ++k) s += (k ? ", " : "") + format_number(center[k].get<double>());
        s += ")";
    }
    return s + ", " + format_number(c.at("radius").get<double>()) + ")";
}

/// One line describing a check result.
std::string summarize(const json& result)
{
    if (result.contains("error")) return "error: " + result.at("error").get<std::string>();
    std::vector<std::string> parts;
    if (result.contains("reports"))
        for (const auto& r : result.at("reports"))
            parts.push_back(r.at("id").get<std::string>() + " " + r.at("verdict").get<std::string>());
    if (result.contains("r")) parts.push_back("r = " + format_number(result.at("r").get<double>()));
    if (result.contains("points")) {
        const auto& pts = result.at("points");
        parts.push_back(pts.size() <= 12 ? join_points(pts) : std::to_string(pts.size()) + " points");
    }
    if (result.contains("n_points")) parts.push_back(std::to_string(result.at("n_points").get<std::size_t>()) + " points");
    if (result.contains("max_residual"))
        parts.push_back("max residual " + format_number(result.at("max_residual").get<double>()));
    if (result.contains("verdicts") && !result.contains("reports")) {
        std::vector<std::string> circles;
        for (const auto& v : result.at("verdicts"))
            if (v.at("fixed").get<bool>()) circles.push_back(circle_text(v.at("circle")));
        std::string s = "fixed circles:";
        for (const auto& c : circles) s += " " + c;
        if (circles.empty()) s += " none";
        parts.push_back(s);
    } else if (result.contains("verdicts")) {
        parts.push_back(result.at("verdicts")[0].at("fixed").get<bool>() ? "circle fixed" : "circle not fixed");
    }
    if (result.contains("first_h_both_hold")) {
        const auto& h = result.at("first_h_both_hold");
        parts.push_back(h.is_null() ? "no h in grid satisfies both" : "first h = " + format_number(h.get<double>()));
    }
    if (result.contains("identity_on_sample"))
        parts.push_back(result.at("identity_on_sample").get<bool>() ? "identity on sample" : "not identity");
    if (result.contains("ok")) {
        std::size_t n = result.at("fuzz").at("violations").size();
        if (result.contains("domain")) n += result.at("domain").at("violations").size();
        if (result.contains("symmetry")) n += result.at("symmetry").at("violations").size();
        parts.push_back(std::to_string(n) + " violations");
    }
    std::string s;
    for (const auto& p : parts) s += (s.empty() ? "" : "; ") + p;
    for (const auto& e : result.at("expectations"))
        if (!e.at("met").get<bool>())
            s += "; expected " + e.at("key").get<std::string>() + " = " + e.at("expected").dump() + ", got " +
                 e.at("actual").dump();
    return s;
}

void print_report(const RunReport& rep, int verbose)
{
    const auto& doc = rep.document;
    std::printf("scenario %s (seed %llu)\n", doc.at("scenario").at("name").get<std::string>().c_str(),
                static_cast<unsigned long long>(doc.at("seed").get<std::uint64_t>()));
    for (const auto& c : doc.at("checks")) {
        for (const auto& r : c.at("results")) {
            std::string head = "[" + std::to_string(c.at("index").get<std::size_t>()) + "] " +
                               c.at("kind").get<std::string>();
            if (r.contains("circle")) head += " " + circle_text(r.at("circle"));
            std::printf("  %-28s %-4s  %s\n", head.c_str(), r.at("passed").get<bool>() ? "PASS" : "FAIL",
                        summarize(r).c_str());
        }
    }
    std::printf("%zu/%zu checks passed\n", rep.checks - rep.failed_checks, rep.checks);
    if (verbose > 0) std::printf("%s\n", doc.dump(2).c_str());
}

int run_and_report(Scenario s, const Common& common)
{
    s.seed = common.resolved_seed();
    if (common.echo) std::printf("%s", print_scenario(s).c_str());
    const auto rep = run_scenario(s, common.out_dir);
    print_report(rep, common.verbose);
    return rep.passed ? 0 : kExitFailure;
}

/// Loads `--scenario`: a file path, or the name of a bundled scenario.
Scenario load_named(const std::string& arg)
{
    if (std::filesystem::exists(arg)) return load_scenario(arg);
    const std::string file = std::filesystem::path(arg).filename().string();
    for (const auto& b : bundled_scenarios())
        if (b.file == file || b.file == file + ".json") return load_scenario_text(b.text);
    throw IoError("no scenario file or bundled scenario named '" + arg + "'");
}

Scenario validated(Scenario s)
{
    try {
        resolve(s);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    return s;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"S-metric circles, fixed-circle theorem checkers and the bundled example scenarios", "smetric"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    // verify
    auto* verify = app.add_subcommand("verify", "run a scenario file and compare against its declared expectations");
    std::string scenario_path;
    Common verify_common;
    verify->add_option("--scenario", scenario_path, "scenario JSON file or bundled scenario name")->required();
    verify_common.add(verify);

    // solve
    auto* solve = app.add_subcommand("solve", "solve a circle C(center, radius) and print its points");
    MetricFlags solve_metric;
    std::string solve_center;
    double solve_radius = 0.0;
    std::string solve_csv;
    BoxFlags solve_window;
    int solve_resolution = kDefaultResolution;
    Common solve_common;
    solve_metric.add(solve, true);
    solve->add_option("--center", solve_center, "circle center (comma-separated)")->required();
    solve->add_option("--radius", solve_radius, "circle radius")->required();
    solve_window.add(solve, "", "tracing");
    solve->add_option("--resolution", solve_resolution, "tracing grid resolution")->capture_default_str();
    solve->add_option("--csv", solve_csv, "write the points as CSV");
    solve_common.add(solve);

    // trace
    auto* trace = app.add_subcommand("trace", "trace a circle on a grid and emit CSV/SVG");
    MetricFlags trace_metric;
    std::string trace_center;
    double trace_radius = 0.0;
    BoxFlags trace_window;
    int trace_resolution = kDefaultResolution;
    double trace_band = kDefaultBandTol;
    std::string trace_csv;
    std::string trace_svg;
    Common trace_common;
    trace_metric.add(trace, true);
    trace->add_option("--center", trace_center, "circle center (comma-separated)")->required();
    trace->add_option("--radius", trace_radius, "circle radius")->required();
    trace_window.add(trace, "", "tracing");
    trace->add_option("--resolution", trace_resolution, "grid resolution")->capture_default_str();
    trace->add_option("--band-tol", trace_band, "residual tolerance of emitted points")->capture_default_str();
    trace->add_option("--csv", trace_csv, "CSV output path");
    trace->add_option("--svg", trace_svg, "SVG output path");
    trace_common.add(trace);

    // discover
    auto* discover = app.add_subcommand("discover", "search a sampled domain for fixed circles of a map");
    MetricFlags disc_metric;
    MapFlags disc_map;
    std::vector<std::string> disc_centers;
    BoxFlags disc_window;
    int disc_resolution = 0;
    double disc_tol = kDefaultTol;
    Common disc_common;
    disc_metric.add(discover, false);
    disc_map.add(discover);
    discover->add_option("--center", disc_centers, "candidate center (repeatable, comma-separated)");
    disc_window.add(discover, "", "domain");
    discover->add_option("--resolution", disc_resolution, "domain grid resolution");
    discover->add_option("--tol", disc_tol, "fixed-point tolerance")->capture_default_str();
    disc_common.add(discover);

    // fuzz
    auto* fuzz = app.add_subcommand("fuzz", "randomized check of the S-metric axioms");
    MetricFlags fuzz_metric;
    std::size_t fuzz_trials = 10000;
    Common fuzz_common;
    fuzz_metric.add(fuzz, true);
    fuzz->add_option("--trials", fuzz_trials, "number of random tuples per axiom")->capture_default_str();
    fuzz_common.add(fuzz);

    // plot
    auto* plot = app.add_subcommand("plot", "render circles (and optionally a map's fixed points) as SVG");
    MetricFlags plot_metric;
    MapFlags plot_map;
    std::vector<std::string> plot_circles;
    BoxFlags plot_window;
    int plot_resolution = kDefaultResolution;
    std::string plot_svg;
    double plot_point_size = 0.004;
    bool plot_fixed = false;
    Common plot_common;
    plot_metric.add(plot, false);
    plot_map.add(plot);
    plot->add_option("--circle", plot_circles, "circle as center:radius (repeatable)")->required();
    plot_window.add(plot, "", "plot");
    plot->add_option("--resolution", plot_resolution, "tracing grid resolution")->capture_default_str();
    plot->add_option("--svg", plot_svg, "SVG output path")->required();
    plot->add_option("--point-size", plot_point_size, "marker radius in unit-box coordinates")->capture_default_str();
    plot->add_flag("--fixed-points", plot_fixed, "also plot the map's fixed points on the domain");
    plot_common.add(plot);

    // reproduce-paper
    auto* repro = app.add_subcommand("reproduce-paper", "run every bundled example scenario and print a pass/fail table");
    Common repro_common;
    repro_common.out_dir = "reproduction";
    repro_common.add(repro);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (verify->parsed()) {
            Scenario s;
            try {
                s = load_named(scenario_path);
            } catch (const std::exception& e) {
                std::fprintf(stderr, "smetric: %s\n", e.what());
                return kExitFailure;
            }
            return run_and_report(std::move(s), verify_common);
        }

        if (solve->parsed() || trace->parsed()) {
            const bool is_solve = solve->parsed();
            Scenario s;
            s.name = is_solve ? "solve" : "trace";
            s.metric = (is_solve ? solve_metric : trace_metric).ref();
            s.trace.window = (is_solve ? solve_window : trace_window).spec("");
            s.trace.resolution = is_solve ? solve_resolution : trace_resolution;
            if (!is_solve) s.trace.band_tol = trace_band;
            s.circles.push_back(
                CircleSpec{parse_coords(is_solve ? solve_center : trace_center, "--center"),
                           is_solve ? solve_radius : trace_radius, {}});
            CheckSpec c;
            c.kind = "solve";
            c.circle = s.circles.front();
            s.checks.push_back(c);
            const std::string& csv = is_solve ? solve_csv : trace_csv;
            if (!csv.empty()) s.outputs.push_back(OutputSpec{"csv", csv, "circle", 0, 0.004});
            if (!is_solve && !trace_svg.empty()) s.outputs.push_back(OutputSpec{"svg", trace_svg, "circle", 0, 0.004});
            s = validated(std::move(s));
            Common& common = is_solve ? solve_common : trace_common;
            if (!is_solve) return run_and_report(std::move(s), common);

            s.seed = common.resolved_seed();
            if (common.echo) std::printf("%s", print_scenario(s).c_str());
            const auto rep = run_scenario(s, common.out_dir);
            const auto& result = rep.document.at("checks")[0].at("results")[0];
            if (result.contains("error")) {
                std::fprintf(stderr, "smetric: %s\n", result.at("error").get<std::string>().c_str());
                return kExitFailure;
            }
            if (result.contains("points"))
                std::printf("%s\n", join_points(result.at("points")).c_str());
            else
                std::printf("%zu traced points (%s); max residual %s\n", result.at("n_points").get<std::size_t>(),
                            result.at("sample_descriptor").get<std::string>().c_str(),
                            format_number(result.at("max_residual").get<double>()).c_str());
            if (common.verbose > 0) std::printf("%s\n", rep.document.dump(2).c_str());
            return 0;
        }

        if (discover->parsed()) {
            Scenario s;
            s.name = "discover";
            s.metric = disc_metric.ref();
            s.map = disc_map.ref();
            s.domain.window = disc_window.spec("");
            s.domain.resolution = disc_resolution;
            CheckSpec c;
            c.kind = "discover";
            c.tol = disc_tol;
            for (const auto& p : disc_centers) c.centers.push_back(parse_coords(p, "--center"));
            s.checks.push_back(c);
            return run_and_report(validated(std::move(s)), disc_common);
        }

        if (fuzz->parsed()) {
            Scenario s;
            s.name = "fuzz";
            s.metric = fuzz_metric.ref();
            CheckSpec c;
            c.kind = "axioms";
            c.trials = fuzz_trials;
            c.expect = {{"ok", true}};
            s.checks.push_back(c);
            s = validated(std::move(s));
            return run_and_report(std::move(s), fuzz_common);
        }

        if (plot->parsed()) {
            Scenario s;
            s.name = "plot";
            s.metric = plot_metric.ref();
            s.map = plot_map.ref();
            s.trace.window = plot_window.spec("");
            s.trace.resolution = plot_resolution;
            for (const auto& c : plot_circles) s.circles.push_back(parse_circle(c));
            s.outputs.push_back(
                OutputSpec{"svg", plot_svg, plot_fixed ? "fixed_points" : "circle", 0, plot_point_size});
            s = validated(std::move(s));
            s.seed = plot_common.resolved_seed();
            if (plot_common.echo) std::printf("%s", print_scenario(s).c_str());
            run_scenario(s, plot_common.out_dir);
            std::printf("wrote %s\n", (std::filesystem::path(plot_common.out_dir) / plot_svg).string().c_str());
            return 0;
        }

        if (repro->parsed()) {
            const auto seed = repro_common.resolved_seed();
            const auto rows = reproduce_paper(repro_common.out_dir, seed);
            std::printf("%-12s %6s %6s  %s\n", "example", "checks", "failed", "result");
            std::size_t ok = 0;
            for (const auto& r : rows) {
                std::printf("%-12s %6zu %6zu  %s%s\n", r.scenario.c_str(), r.checks, r.failed,
                            r.passed ? "PASS" : "FAIL", r.error.empty() ? "" : ("  " + r.error).c_str());
                if (r.passed) ++ok;
            }
            std::printf("%zu/%zu scenarios passed (seed %llu)\n", ok, rows.size(), static_cast<unsigned long long>(seed));
            return ok == rows.size() ? 0 : kExitFailure;
        }
    } catch (const UsageError& e) {
        std::fprintf(stderr, "smetric: %s\n\n", e.what());
        std::fprintf(stderr, "%s", app.help().c_str());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "smetric: %s\n", e.what());
        return kExitFailure;
    }
    return kExitUsage;
}
