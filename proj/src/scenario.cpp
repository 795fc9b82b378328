#include "smetric/scenario.hpp"

#include "smetric/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace smetric {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------- parsing

[[noreturn]] void invalid(const std::string& where, const std::string& msg)
{
    throw InvalidArgument("scenario: " + where + ": " + msg);
}

void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys)
{
    if (!j.is_object()) invalid(where, "expected an object");
    for (const auto& [k, v] : j.items()) {
        if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; }))
            invalid(where, "unknown key '" + k + "'");
    }
}

double number(const json& j, const std::string& where)
{
    if (!j.is_number()) invalid(where, "expected a number");
    return j.get<double>();
}

std::string text(const json& j, const std::string& where)
{
    if (!j.is_string()) invalid(where, "expected a string");
    return j.get<std::string>();
}

int integer(const json& j, const std::string& where)
{
    if (!j.is_number_integer()) invalid(where, "expected an integer");
    return j.get<int>();
}

/// A point is either a bare number (1D) or an array of numbers.
Coords coords(const json& j, const std::string& where)
{
    if (j.is_number()) return {j.get<double>()};
    if (!j.is_array() || j.empty()) invalid(where, "expected a number or a non-empty array of numbers");
    Coords c;
    for (const auto& v : j) c.push_back(number(v, where));
    return c;
}

std::vector<Coords> coords_list(const json& j, const std::string& where)
{
    if (!j.is_array()) invalid(where, "expected an array of points");
    std::vector<Coords> out;
    for (const auto& v : j) out.push_back(coords(v, where));
    return out;
}

std::map<std::string, double> params(const json& j, const std::string& where)
{
    if (!j.is_object()) invalid(where, "expected an object of numbers");
    std::map<std::string, double> out;
    for (const auto& [k, v] : j.items()) out[k] = number(v, where + "." + k);
    return out;
}

BoxSpec box(const json& j, const std::string& where)
{
    allow_keys(j, where, {"lo", "hi"});
    if (!j.contains("lo") || !j.contains("hi")) invalid(where, "box needs 'lo' and 'hi'");
    BoxSpec b{coords(j.at("lo"), where + ".lo"), coords(j.at("hi"), where + ".hi")};
    if (b.lo.size() != b.hi.size()) invalid(where, "'lo' and 'hi' differ in dimension");
    for (std::size_t i = 0; i < b.lo.size(); ++i)
        if (!(b.lo[i] < b.hi[i])) invalid(where, "empty box");
    return b;
}

CircleSpec circle_spec(const json& j, const std::string& where)
{
    allow_keys(j, where, {"center", "radius", "label"});
    if (!j.contains("center") || !j.contains("radius")) invalid(where, "circle needs 'center' and 'radius'");
    CircleSpec c;
    c.center = coords(j.at("center"), where + ".center");
    c.radius = number(j.at("radius"), where + ".radius");
    if (!(c.radius > 0.0)) invalid(where, "radius must be positive");
    if (j.contains("label")) c.label = text(j.at("label"), where + ".label");
    return c;
}

const std::vector<std::string>& check_kinds()
{
    static const std::vector<std::string> kinds{"solve",      "fixed_points", "fixed_circle", "thm1",
                                                "thm2",       "thm2_sweep",   "identity",     "rhoades",
                                                "diameter",   "thm6",         "discover",     "axioms"};
    return kinds;
}

bool needs_circle(const std::string& kind)
{
    return kind == "solve" || kind == "fixed_circle" || kind == "thm1" || kind == "thm2" || kind == "thm2_sweep" ||
           kind == "rhoades" || kind == "diameter";
}

bool needs_map(const std::string& kind) { return kind != "solve" && kind != "axioms"; }

std::vector<std::string> expect_keys(const std::string& kind)
{
    if (kind == "solve") return {"points", "count", "min_points", "max_residual"};
    if (kind == "fixed_points") return {"points", "count"};
    if (kind == "fixed_circle") return {"fixed"};
    if (kind == "thm1") return {"thm1_S1", "thm1_S2", "fixed"};
    if (kind == "thm2") return {"thm2_S1", "thm2_S2", "fixed"};
    if (kind == "thm2_sweep") return {"first_h"};
    if (kind == "identity") return {"I_S", "identity_on_sample"};
    if (kind == "rhoades") return {"Rhoades_S25", "witness"};
    if (kind == "diameter") return {"Diam_S25a", "witness"};
    if (kind == "thm6") return {"r", "r_sample_approximate", "eqn1", "eqn2", "eqn2_inner", "fixed", "ball_fixed"};
    if (kind == "discover") return {"circles", "count", "min_count"};
    return {"ok"};
}

CheckSpec check_spec(const json& j, const std::string& where, const std::vector<CircleSpec>& circles)
{
    allow_keys(j, where,
               {"kind", "circle", "center", "centers", "h", "h_grid", "tol", "tol_strict", "n_max", "trials", "expect"});
    CheckSpec c;
    if (!j.contains("kind")) invalid(where, "missing 'kind'");
    c.kind = text(j.at("kind"), where + ".kind");
    const auto& kinds = check_kinds();
    if (std::find(kinds.begin(), kinds.end(), c.kind) == kinds.end()) invalid(where, "unknown check kind '" + c.kind + "'");

    if (j.contains("circle")) {
        const auto& jc = j.at("circle");
        if (jc.is_number_integer()) {
            const int idx = jc.get<int>();
            if (idx < 0 || idx >= static_cast<int>(circles.size()))
                invalid(where, "circle index " + std::to_string(idx) + " out of range");
            c.circle = circles[static_cast<std::size_t>(idx)];
        } else {
            c.circle = circle_spec(jc, where + ".circle");
        }
    }
    if (j.contains("center")) c.center = coords(j.at("center"), where + ".center");
    if (j.contains("centers")) c.centers = coords_list(j.at("centers"), where + ".centers");
    if (j.contains("h")) c.h = number(j.at("h"), where + ".h");
    if (j.contains("h_grid")) {
        if (!j.at("h_grid").is_array()) invalid(where, "'h_grid' must be an array");
        for (const auto& v : j.at("h_grid")) c.h_grid.push_back(number(v, where + ".h_grid"));
    }
    if (j.contains("tol")) c.tol = number(j.at("tol"), where + ".tol");
    if (j.contains("tol_strict")) c.tol_strict = number(j.at("tol_strict"), where + ".tol_strict");
    if (j.contains("n_max")) c.n_max = integer(j.at("n_max"), where + ".n_max");
    if (j.contains("trials")) {
        const int t = integer(j.at("trials"), where + ".trials");
        if (t < 1) invalid(where, "'trials' must be positive");
        c.trials = static_cast<std::size_t>(t);
    }
    if (j.contains("expect")) {
        c.expect = j.at("expect");
        if (!c.expect.is_object()) invalid(where, "'expect' must be an object");
        const auto keys = expect_keys(c.kind);
        for (const auto& [k, v] : c.expect.items())
            if (std::find(keys.begin(), keys.end(), k) == keys.end())
                invalid(where, "'" + k + "' is not an expectation of a " + c.kind + " check");
    }

    if (!(c.tol > 0.0)) invalid(where, "tolerances must be positive");
    if (c.tol_strict < 0.0) invalid(where, "'tol_strict' must be non-negative");
    if (c.n_max < 1) invalid(where, "'n_max' must be positive");
    if (c.kind == "thm2" && c.h && !(*c.h >= 0.0 && *c.h < 1.0)) invalid(where, "h must lie in [0, 1)");
    if (c.kind == "identity" && c.h && !(*c.h > 2.0)) invalid(where, "h must exceed 2");
    for (double h : c.h_grid)
        if (!(h >= 0.0 && h < 1.0)) invalid(where, "every h_grid value must lie in [0, 1)");
    return c;
}

OutputSpec output_spec(const json& j, const std::string& where, std::size_t n_circles)
{
    allow_keys(j, where, {"kind", "path", "source", "circle", "point_size"});
    OutputSpec o;
    if (!j.contains("kind") || !j.contains("path")) invalid(where, "output needs 'kind' and 'path'");
    o.kind = text(j.at("kind"), where + ".kind");
    o.path = text(j.at("path"), where + ".path");
    if (o.kind != "csv" && o.kind != "svg" && o.kind != "report") invalid(where, "unknown output kind '" + o.kind + "'");
    if (o.path.empty()) invalid(where, "empty path");
    if (j.contains("source")) o.source = text(j.at("source"), where + ".source");
    if (o.source != "circle" && o.source != "fixed_points") invalid(where, "unknown source '" + o.source + "'");
    if (j.contains("circle")) o.circle = integer(j.at("circle"), where + ".circle");
    if (j.contains("point_size")) o.point_size = number(j.at("point_size"), where + ".point_size");
    if (!(o.point_size > 0.0)) invalid(where, "'point_size' must be positive");
    if (o.kind == "csv" && o.source == "circle" && (o.circle < 0 || static_cast<std::size_t>(o.circle) >= n_circles))
        invalid(where, "circle index " + std::to_string(o.circle) + " out of range");
    return o;
}

Scenario scenario_from_json(const json& j)
{
    allow_keys(j, "document",
               {"name", "description", "seed", "metric", "map", "domain", "trace", "circles", "checks", "outputs"});
    Scenario s;
    if (!j.contains("name")) invalid("document", "missing 'name'");
    s.name = text(j.at("name"), "name");
    if (j.contains("description")) s.description = text(j.at("description"), "description");
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) invalid("seed", "expected a non-negative integer");
        s.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("metric")) {
        const auto& m = j.at("metric");
        allow_keys(m, "metric", {"family", "params", "dsl"});
        if (m.contains("family")) s.metric.family = text(m.at("family"), "metric.family");
        if (m.contains("params")) s.metric.params = params(m.at("params"), "metric.params");
        if (m.contains("dsl")) s.metric.dsl = text(m.at("dsl"), "metric.dsl");
    }
    if (j.contains("map")) {
        const auto& m = j.at("map");
        allow_keys(m, "map", {"catalog", "dsl", "name", "params"});
        if (m.contains("catalog")) s.map.catalog = text(m.at("catalog"), "map.catalog");
        if (m.contains("dsl")) s.map.dsl = text(m.at("dsl"), "map.dsl");
        if (m.contains("name")) s.map.name = text(m.at("name"), "map.name");
        if (m.contains("params")) s.map.params = params(m.at("params"), "map.params");
    }
    if (j.contains("domain")) {
        const auto& d = j.at("domain");
        allow_keys(d, "domain", {"window", "resolution", "points"});
        if (d.contains("window")) s.domain.window = box(d.at("window"), "domain.window");
        if (d.contains("resolution")) {
            s.domain.resolution = integer(d.at("resolution"), "domain.resolution");
            if (s.domain.resolution < 8) invalid("domain.resolution", "resolution must be at least 8");
        }
        if (d.contains("points")) s.domain.points = coords_list(d.at("points"), "domain.points");
    }
    if (j.contains("trace")) {
        const auto& t = j.at("trace");
        allow_keys(t, "trace", {"window", "resolution", "band_tol"});
        if (t.contains("window")) s.trace.window = box(t.at("window"), "trace.window");
        if (t.contains("resolution")) s.trace.resolution = integer(t.at("resolution"), "trace.resolution");
        if (t.contains("band_tol")) s.trace.band_tol = number(t.at("band_tol"), "trace.band_tol");
        if (s.trace.resolution < 8) invalid("trace.resolution", "resolution must be at least 8");
        if (!(s.trace.band_tol > 0.0)) invalid("trace.band_tol", "tolerances must be positive");
    }
    if (j.contains("circles")) {
        if (!j.at("circles").is_array()) invalid("circles", "expected an array");
        std::size_t i = 0;
        for (const auto& c : j.at("circles")) s.circles.push_back(circle_spec(c, "circles[" + std::to_string(i++) + "]"));
    }
    if (j.contains("checks")) {
        if (!j.at("checks").is_array()) invalid("checks", "expected an array");
        std::size_t i = 0;
        for (const auto& c : j.at("checks"))
            s.checks.push_back(check_spec(c, "checks[" + std::to_string(i++) + "]", s.circles));
    }
    if (j.contains("outputs")) {
        if (!j.at("outputs").is_array()) invalid("outputs", "expected an array");
        std::size_t i = 0;
        for (const auto& o : j.at("outputs"))
            s.outputs.push_back(output_spec(o, "outputs[" + std::to_string(i++) + "]", s.circles.size()));
    }
    return s;
}

std::pair<int, int> line_column(const std::string& text, std::size_t byte)
{
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

// ---------------------------------------------------------------- printing

json coords_json(const Coords& c) { return c.size() == 1 ? json(c[0]) : json(c); }

json coords_json(const Point& p) { return coords_json(to_vector(p)); }

json box_json(const BoxSpec& b) { return {{"lo", coords_json(b.lo)}, {"hi", coords_json(b.hi)}}; }

json circle_json(const CircleSpec& c)
{
    json j{{"center", coords_json(c.center)}, {"radius", c.radius}};
    if (!c.label.empty()) j["label"] = c.label;
    return j;
}

json check_json(const CheckSpec& c)
{
    const CheckSpec d;
    json j{{"kind", c.kind}};
    if (c.circle) j["circle"] = circle_json(*c.circle);
    if (c.center) j["center"] = coords_json(*c.center);
    if (!c.centers.empty()) {
        j["centers"] = json::array();
        for (const auto& p : c.centers) j["centers"].push_back(coords_json(p));
    }
    if (c.h) j["h"] = *c.h;
    if (!c.h_grid.empty()) j["h_grid"] = c.h_grid;
    if (c.tol != d.tol) j["tol"] = c.tol;
    if (c.tol_strict != d.tol_strict) j["tol_strict"] = c.tol_strict;
    if (c.n_max != d.n_max) j["n_max"] = c.n_max;
    if (c.trials != d.trials) j["trials"] = c.trials;
    if (!c.expect.empty()) j["expect"] = c.expect;
    return j;
}

json output_json(const OutputSpec& o)
{
    const OutputSpec d;
    json j{{"kind", o.kind}, {"path", o.path}};
    if (o.source != d.source) j["source"] = o.source;
    if (o.circle != d.circle) j["circle"] = o.circle;
    if (o.point_size != d.point_size) j["point_size"] = o.point_size;
    return j;
}

// ---------------------------------------------------------------- running

Point to_point(const Coords& c) { return make_point(c); }

Box to_box(const BoxSpec& b) { return Box{make_point(b.lo), make_point(b.hi)}; }

Box cube(int dim, double lo, double hi)
{
    return Box{Point::Constant(dim, lo), Point::Constant(dim, hi)};
}

Circle to_circle(const SMetricSpec& metric, const CircleSpec& c)
{
    return make_circle(metric, to_point(c.center), c.radius);
}

std::string circle_label(const CircleSpec& c)
{
    if (!c.label.empty()) return c.label;
    return "C(" + format_point(to_point(c.center)) + ", " + format_number(c.radius) + ")";
}

json points_json(const std::vector<Point>& pts)
{
    json a = json::array();
    for (const auto& p : pts) a.push_back(coords_json(p));
    return a;
}

json witness_json(const Witness& w)
{
    return {{"points", points_json(w.points)}, {"lhs", w.lhs}, {"rhs", w.rhs}, {"margin", w.margin}};
}

/// Collects expectation outcomes for one check result.
class Expectations {
public:
    explicit Expectations(const json& expect) : expect_(expect) {}

    bool has(const std::string& key) const { return expect_.contains(key); }

    void verdict(const std::string& key, Verdict actual)
    {
        if (!has(key)) return;
        const auto& e = expect_.at(key);
        bool met = false;
        if (e.is_boolean())
            met = holds(actual) == e.get<bool>();
        else if (e.is_string())
            met = to_string(actual) == e.get<std::string>();
        record(key, e, to_string(actual), met);
    }

    void flag(const std::string& key, bool actual)
    {
        if (!has(key)) return;
        const auto& e = expect_.at(key);
        record(key, e, actual, e.is_boolean() && e.get<bool>() == actual);
    }

    void value(const std::string& key, double actual, double tol)
    {
        if (!has(key)) return;
        const auto& e = expect_.at(key);
        record(key, e, actual, e.is_number() && std::abs(e.get<double>() - actual) <= tol);
    }

    void at_most(const std::string& key, double actual)
    {
        if (!has(key)) return;
        const auto& e = expect_.at(key);
        record(key, e, actual, e.is_number() && actual <= e.get<double>());
    }

    void at_least(const std::string& key, std::size_t actual)
    {
        if (!has(key)) return;
        const auto& e = expect_.at(key);
        record(key, e, actual, e.is_number() && static_cast<double>(actual) >= e.get<double>());
    }

    void count(const std::string& key, std::size_t actual)
    {
        if (!has(key)) return;
        const auto& e = expect_.at(key);
        record(key, e, actual, e.is_number_integer() && e.get<std::int64_t>() == static_cast<std::int64_t>(actual));
    }

    /// Same point set up to `tol` per coordinate.
    void point_set(const std::string& key, std::vector<Point> actual, double tol)
    {
        if (!has(key)) return;
        const auto& e = expect_.at(key);
        std::vector<Point> want;
        for (const auto& c : coords_list(e, "expect." + key)) want.push_back(to_point(c));
        sort_canonical(want);
        sort_canonical(actual);
        bool met = want.size() == actual.size();
        for (std::size_t i = 0; met && i < want.size(); ++i)
            met = want[i].size() == actual[i].size() && max_coord_distance(want[i], actual[i]) <= tol;
        record(key, e, points_json(actual), met);
    }

    /// Ordered point list equality up to `tol`.
    void point_list(const std::string& key, const std::vector<Point>& actual, double tol)
    {
        if (!has(key)) return;
        const auto& e = expect_.at(key);
        const auto want = coords_list(e, "expect." + key);
        bool met = want.size() == actual.size();
        for (std::size_t i = 0; met && i < want.size(); ++i)
            met = static_cast<int>(want[i].size()) == actual[i].size() &&
                  max_coord_distance(to_point(want[i]), actual[i]) <= tol;
        record(key, e, points_json(actual), met);
    }

    void raw(const std::string& key, const json& actual, bool met)
    {
        if (has(key)) record(key, expect_.at(key), actual, met);
    }

    json take() { return std::move(list_); }
    bool passed() const { return passed_; }

private:
    void record(const std::string& key, const json& expected, const json& actual, bool met)
    {
        list_.push_back({{"key", key}, {"expected", expected}, {"actual", actual}, {"met", met}});
        passed_ = passed_ && met;
    }

    const json& expect_;
    json list_ = json::array();
    bool passed_ = true;
};

struct Runner {
    const Scenario& s;
    const ResolvedScenario& r;

    CheckOptions options(const CheckSpec& c) const
    {
        CheckOptions o;
        o.tol = c.tol;
        o.tol_strict = c.tol_strict;
        return o;
    }

    const PiecewiseMap& map() const
    {
        if (!r.map) throw InvalidArgument("check needs a map");
        return *r.map;
    }

    std::vector<CircleSpec> circles_of(const CheckSpec& c) const
    {
        if (c.circle) return {*c.circle};
        return s.circles;
    }

    json run_on_circle(const CheckSpec& c, const CircleSpec& cs, Expectations& ex) const
    {
        const Circle circle = to_circle(r.metric, cs);
        json out{{"circle", circle_json(cs)}};
        const auto sample = sample_circle(circle, r.trace);
        const auto opts = options(c);

        if (c.kind == "solve") {
            double max_res = 0.0;
            for (const auto& p : sample.points)
                max_res = std::max(max_res, std::abs(self_distance(r.metric, p, circle.center) - circle.radius));
            out["n_points"] = sample.points.size();
            out["exhaustive"] = sample.exhaustive;
            out["sample_descriptor"] = sample.descriptor;
            out["max_residual"] = max_res;
            if (sample.points.size() <= 32) out["points"] = points_json(sample.points);
            ex.point_set("points", sample.points, c.tol);
            ex.count("count", sample.points.size());
            ex.at_least("min_points", sample.points.size());
            ex.at_most("max_residual", max_res);
        } else if (c.kind == "fixed_circle") {
            const auto v = check_fixed_circle(map(), circle, sample, opts);
            out["verdicts"] = json::array({to_json(v)});
            ex.flag("fixed", v.fixed);
        } else if (c.kind == "thm1" || c.kind == "thm2") {
            const bool first = c.kind == "thm1";
            const auto res = first ? check_thm1(map(), circle, sample, opts)
                                   : check_thm2(map(), circle, sample, c.h.value_or(0.0), opts);
            out["reports"] = json::array({to_json(res.first), to_json(res.second)});
            out["verdicts"] = json::array({to_json(res.verdict)});
            ex.verdict(to_string(res.first.id), res.first.verdict);
            ex.verdict(to_string(res.second.id), res.second.verdict);
            ex.flag("fixed", res.verdict.fixed);
        } else if (c.kind == "thm2_sweep") {
            const auto grid = c.h_grid.empty() ? default_h_grid() : c.h_grid;
            const auto sweep = sweep_thm2(map(), circle, sample, grid, opts);
            json rows = json::array();
            for (std::size_t i = 0; i < sweep.h_values.size(); ++i)
                rows.push_back({{"h", sweep.h_values[i]},
                                {"thm2_S1", to_string(sweep.results[i].first.verdict)},
                                {"thm2_S2", to_string(sweep.results[i].second.verdict)}});
            out["sweep"] = rows;
            out["first_h_both_hold"] = sweep.first_h_both_hold ? json(*sweep.first_h_both_hold) : json(nullptr);
            if (ex.has("first_h")) {
                const json& e = c.expect.at("first_h");
                bool met = false;
                if (e.is_null())
                    met = !sweep.first_h_both_hold;
                else if (e.is_number() && sweep.first_h_both_hold)
                    met = std::abs(e.get<double>() - *sweep.first_h_both_hold) <= 1e-12;
                ex.raw("first_h", out["first_h_both_hold"], met);
            }
        } else if (c.kind == "rhoades" || c.kind == "diameter") {
            ConditionReport rep;
            if (c.kind == "rhoades") {
                rep = check_rhoades_uniqueness(map(), circle, sample, r.domain, opts);
            } else {
                OrbitOptions oo;
                oo.n_max = c.n_max;
                rep = check_diameter_uniqueness(map(), circle, sample, r.domain, oo, opts);
            }
            out["reports"] = json::array({to_json(rep)});
            ex.verdict(to_string(rep.id), rep.verdict);
            if (ex.has("witness")) {
                const std::vector<Point> pts = rep.witnesses.empty() ? std::vector<Point>{} : rep.witnesses.front().points;
                ex.point_list("witness", pts, c.tol);
            }
        }
        return out;
    }

    json run_plain(const CheckSpec& c, Expectations& ex) const
    {
        const auto opts = options(c);
        json out = json::object();
        if (c.kind == "fixed_points") {
            auto fixed = fixed_point_set(map(), r.metric, r.domain, c.tol);
            sort_canonical(fixed);
            out["domain_points"] = r.domain.size();
            out["points"] = points_json(fixed);
            ex.point_set("points", fixed, c.tol);
            ex.count("count", fixed.size());
        } else if (c.kind == "identity") {
            const Point center = c.center ? to_point(*c.center) : Point(Point::Zero(r.metric.dimension));
            const auto res = check_identity_condition(map(), r.metric, center, c.h.value_or(3.0), r.domain, opts);
            out["reports"] = json::array({to_json(res.report)});
            out["identity_on_sample"] = res.identity_on_sample;
            ex.verdict("I_S", res.report.verdict);
            ex.flag("identity_on_sample", res.identity_on_sample);
        } else if (c.kind == "thm6") {
            const Point center = c.center ? to_point(*c.center) : *r.entry->thm6_center;
            const auto res = check_thm6(map(), r.metric, center, r.domain, r.trace, opts);
            out["r"] = res.r;
            out["r_sample_approximate"] = res.r_sample_approximate;
            out["reports"] = json::array({to_json(res.eqn1), to_json(res.eqn2), to_json(res.eqn2_inner)});
            out["verdicts"] = json::array({to_json(res.verdict)});
            ex.value("r", res.r, c.tol);
            ex.flag("r_sample_approximate", res.r_sample_approximate);
            ex.verdict("eqn1", res.eqn1.verdict);
            ex.verdict("eqn2", res.eqn2.verdict);
            ex.verdict("eqn2_inner", res.eqn2_inner.verdict);
            ex.flag("fixed", res.verdict.fixed);
            ex.flag("ball_fixed", res.verdict.ball_fixed.value_or(false));
        } else if (c.kind == "discover") {
            std::vector<Point> centers;
            for (const auto& p : c.centers) centers.push_back(to_point(p));
            if (centers.empty())
                for (const auto& cs : s.circles) centers.push_back(to_point(cs.center));
            if (centers.empty()) centers.push_back(Point::Zero(r.metric.dimension));
            sort_unique(centers, 0.0);
            const auto found = discover_fixed_circles(map(), r.metric, r.domain, centers, opts);
            json list = json::array();
            for (const auto& v : found) list.push_back(to_json(v));
            out["centers"] = points_json(centers);
            out["verdicts"] = list;
            ex.count("count", found.size());
            ex.at_least("min_count", found.size());
            if (ex.has("circles")) {
                bool met = c.expect.at("circles").is_array();
                if (met) {
                    for (const auto& jc : c.expect.at("circles")) {
                        const auto want = circle_spec(jc, "expect.circles");
                        const Point wc = to_point(want.center);
                        const bool hit = std::any_of(found.begin(), found.end(), [&](const FixedCircleVerdict& v) {
                            return v.circle.center.size() == wc.size() &&
                                   max_coord_distance(v.circle.center, wc) <= c.tol &&
                                   std::abs(v.circle.radius - want.radius) <= c.tol;
                        });
                        met = met && hit;
                    }
                }
                json actual = json::array();
                for (const auto& v : found)
                    actual.push_back({{"center", coords_json(v.circle.center)}, {"radius", v.circle.radius}});
                ex.raw("circles", actual, met);
            }
        } else if (c.kind == "axioms") {
            FuzzOptions fo;
            fo.trials = c.trials;
            fo.seed = s.seed;
            fo.tol = c.tol;
            const auto fuzz = fuzz_axioms(r.metric, fo);
            out["fuzz"] = to_json(fuzz);
            bool ok = fuzz.ok();
            if (!r.domain.empty()) {
                AxiomCheckOptions ao;
                ao.tol = c.tol;
                ao.seed = s.seed;
                ao.budget = std::max<std::size_t>(c.trials, 1000);
                const auto grid = check_axioms(r.metric, r.domain, ao);
                const auto sym = check_symmetry(r.metric, r.domain, ao);
                out["domain"] = to_json(grid);
                out["symmetry"] = to_json(sym);
                ok = ok && grid.ok() && sym.ok();
            }
            out["ok"] = ok;
            ex.flag("ok", ok);
        }
        return out;
    }

    json run_check(std::size_t index, const CheckSpec& c, bool& passed) const
    {
        json results = json::array();
        bool all = true;
        auto one = [&](const std::optional<CircleSpec>& cs) {
            Expectations ex(c.expect);
            json res;
            try {
                res = cs ? run_on_circle(c, *cs, ex) : run_plain(c, ex);
            } catch (const std::exception& e) {
                res = json::object();
                if (cs) res["circle"] = circle_json(*cs);
                res["error"] = e.what();
                all = false;
            }
            res["expectations"] = ex.take();
            res["passed"] = ex.passed() && !res.contains("error");
            all = all && res["passed"].get<bool>();
            results.push_back(std::move(res));
        };
        if (needs_circle(c.kind)) {
            for (const auto& cs : circles_of(c)) one(cs);
        } else {
            one(std::nullopt);
        }
        passed = all;
        return {{"index", index}, {"kind", c.kind}, {"results", results}, {"passed", all}};
    }

    Box plot_window() const
    {
        if (r.trace.window) return *r.trace.window;
        if (s.domain.window) return to_box(*s.domain.window);
        if (r.entry) return r.entry->window;
        if (!r.circles.empty()) {
            const auto& c = r.circles.front();
            const double w = std::max(2.0 * c.radius, 1.0);
            return Box{(c.center.array() - w).matrix(), (c.center.array() + w).matrix()};
        }
        return cube(r.metric.dimension, -1.0, 1.0);
    }

    std::vector<Point> circle_points(const Circle& c) const { return sample_circle(c, r.trace).points; }

    void write_outputs(const std::string& out_dir, const std::string& report_text) const
    {
        auto full = [&](const std::string& p) { return out_dir.empty() ? p : out_dir + "/" + p; };
        for (const auto& o : s.outputs) {
            if (o.kind == "report") {
                write_file(full(o.path), report_text);
            } else if (o.kind == "csv") {
                std::vector<Point> pts;
                std::vector<double> res;
                if (o.source == "fixed_points") {
                    pts = fixed_point_set(map(), r.metric, r.domain);
                    sort_canonical(pts);
                    for (const auto& p : pts) res.push_back(self_distance(r.metric, p, apply_map(map(), p)));
                } else {
                    const auto& c = r.circles[static_cast<std::size_t>(o.circle)];
                    pts = circle_points(c);
                    sort_canonical(pts);
                    for (const auto& p : pts) res.push_back(self_distance(r.metric, p, c.center) - c.radius);
                }
                emit_csv(pts, res, r.metric.dimension, full(o.path));
            } else {
                std::vector<LabeledCloud> clouds;
                for (std::size_t i = 0; i < r.circles.size(); ++i)
                    clouds.push_back({circle_label(s.circles[i]), circle_points(r.circles[i])});
                if (o.source == "fixed_points" && r.map) {
                    auto fixed = fixed_point_set(*r.map, r.metric, r.domain);
                    sort_canonical(fixed);
                    clouds.push_back({"fixed points of " + r.map->name, fixed});
                }
                SvgOptions so;
                so.point_size = o.point_size;
                emit_svg(clouds, plot_window(), full(o.path), so);
            }
        }
    }
};

} // namespace

// ---------------------------------------------------------------- public API

Scenario load_scenario_text(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte);
        throw ParseError("scenario JSON: " + std::string(e.what()), line, column);
    }
    Scenario s = scenario_from_json(j);
    resolve(s);
    return s;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read scenario '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return load_scenario_text(ss.str());
}

json scenario_to_json(const Scenario& s)
{
    json j{{"name", s.name}};
    if (!s.description.empty()) j["description"] = s.description;
    j["seed"] = s.seed;

    json m = json::object();
    if (!s.metric.family.empty()) m["family"] = s.metric.family;
    if (!s.metric.params.empty()) m["params"] = s.metric.params;
    if (!s.metric.dsl.empty()) m["dsl"] = s.metric.dsl;
    if (!m.empty()) j["metric"] = m;

    json mp = json::object();
    if (!s.map.catalog.empty()) mp["catalog"] = s.map.catalog;
    if (!s.map.dsl.empty()) mp["dsl"] = s.map.dsl;
    if (!s.map.name.empty()) mp["name"] = s.map.name;
    if (!s.map.params.empty()) mp["params"] = s.map.params;
    if (!mp.empty()) j["map"] = mp;

    json d = json::object();
    if (s.domain.window) d["window"] = box_json(*s.domain.window);
    if (s.domain.resolution != 0) d["resolution"] = s.domain.resolution;
    if (!s.domain.points.empty()) {
        d["points"] = json::array();
        for (const auto& p : s.domain.points) d["points"].push_back(coords_json(p));
    }
    if (!d.empty()) j["domain"] = d;

    const TraceSpec td;
    json t = json::object();
    if (s.trace.window) t["window"] = box_json(*s.trace.window);
    if (s.trace.resolution != td.resolution) t["resolution"] = s.trace.resolution;
    if (s.trace.band_tol != td.band_tol) t["band_tol"] = s.trace.band_tol;
    if (!t.empty()) j["trace"] = t;

    j["circles"] = json::array();
    for (const auto& c : s.circles) j["circles"].push_back(circle_json(c));
    j["checks"] = json::array();
    for (const auto& c : s.checks) j["checks"].push_back(check_json(c));
    j["outputs"] = json::array();
    for (const auto& o : s.outputs) j["outputs"].push_back(output_json(o));
    return j;
}

std::string print_scenario(const Scenario& s) { return scenario_to_json(s).dump(2) + "\n"; }

ResolvedScenario resolve(const Scenario& s)
{
    ResolvedScenario r;

    if (!s.map.catalog.empty() && !s.map.dsl.empty()) invalid("map", "give either 'catalog' or 'dsl', not both");
    if (!s.map.catalog.empty()) {
        if (!has_catalog_entry(s.map.catalog)) invalid("map.catalog", "unknown catalog map '" + s.map.catalog + "'");
        for (const auto& [k, v] : s.map.params) {
            if (k == "mu" && s.map.catalog == "exm2") continue;
            if (k == "alpha" && s.map.catalog == "T9") continue;
            invalid("map.params", "'" + k + "' is not a parameter of " + s.map.catalog);
        }
        if (s.map.params.count("mu"))
            r.entry = make_exm2_entry(s.map.params.at("mu"));
        else if (s.map.params.count("alpha"))
            r.entry = make_t9_entry(s.map.params.at("alpha"));
        else
            r.entry = catalog_entry(s.map.catalog);
    } else if (!s.map.params.empty()) {
        invalid("map.params", "parameters apply to catalog maps only");
    }

    if (!s.metric.family.empty()) {
        const auto families = family_names();
        if (std::find(families.begin(), families.end(), s.metric.family) == families.end())
            invalid("metric.family", "unknown family '" + s.metric.family + "'");
        if (!s.metric.dsl.empty() && s.metric.family != "dsl") invalid("metric.dsl", "only the dsl family takes a source");
        r.metric = make_spec(s.metric.family, s.metric.params, s.metric.dsl);
        if (r.entry && !(r.metric == r.entry->metric))
            invalid("metric", "differs from the metric of catalog map " + r.entry->name);
    } else if (r.entry) {
        if (!s.metric.params.empty() || !s.metric.dsl.empty()) invalid("metric", "params or dsl given without a family");
        r.metric = r.entry->metric;
    } else {
        invalid("metric", "a metric family is required unless the map comes from the catalog");
    }
    const int dim = r.metric.dimension;

    if (r.entry) {
        r.map = r.entry->map;
    } else if (!s.map.dsl.empty()) {
        r.map = parse_map(s.map.dsl, dim, &r.metric, s.map.name.empty() ? "T" : s.map.name);
    }
    if (r.map && !s.map.name.empty()) r.map->name = s.map.name;

    auto check_dim = [&](const Coords& c, const std::string& where) {
        if (static_cast<int>(c.size()) != dim)
            invalid(where, "point has dimension " + std::to_string(c.size()) + ", metric has " + std::to_string(dim));
    };

    if (!s.domain.points.empty()) {
        for (const auto& p : s.domain.points) {
            check_dim(p, "domain.points");
            r.domain.push_back(to_point(p));
        }
    } else {
        Box w = s.domain.window ? to_box(*s.domain.window) : r.entry ? r.entry->window : cube(dim, -4.0, 4.0);
        if (w.dimension() != dim) invalid("domain.window", "dimension differs from the metric");
        const int res = s.domain.resolution != 0 ? s.domain.resolution : r.entry ? r.entry->resolution : 32;
        r.domain = grid_points(w, res);
    }

    if (s.trace.window) {
        check_dim(s.trace.window->lo, "trace.window");
        r.trace.window = to_box(*s.trace.window);
    } else if (r.entry && r.entry->trace_window) {
        r.trace.window = r.entry->trace_window;
    }
    r.trace.resolution = s.trace.resolution;
    r.trace.band_tol = s.trace.band_tol;

    for (std::size_t i = 0; i < s.circles.size(); ++i) {
        check_dim(s.circles[i].center, "circles[" + std::to_string(i) + "]");
        r.circles.push_back(to_circle(r.metric, s.circles[i]));
    }

    for (std::size_t i = 0; i < s.checks.size(); ++i) {
        const auto& c = s.checks[i];
        const std::string where = "checks[" + std::to_string(i) + "]";
        if (needs_map(c.kind) && !r.map) invalid(where, c.kind + " needs a map");
        if (needs_circle(c.kind) && !c.circle && s.circles.empty()) invalid(where, c.kind + " needs a circle");
        if (c.circle) check_dim(c.circle->center, where + ".circle");
        if (c.center) check_dim(*c.center, where + ".center");
        for (const auto& p : c.centers) check_dim(p, where + ".centers");
        if (c.kind == "thm6" && !c.center && !(r.entry && r.entry->thm6_center))
            invalid(where, "thm6 needs a center");
    }
    for (std::size_t i = 0; i < s.outputs.size(); ++i) {
        const auto& o = s.outputs[i];
        if (o.kind == "csv" && o.source == "fixed_points" && !r.map)
            invalid("outputs[" + std::to_string(i) + "]", "fixed_points output needs a map");
        if (o.kind == "svg" && dim > 2) invalid("outputs[" + std::to_string(i) + "]", "svg needs a 1D or 2D metric");
    }
    return r;
}

json to_json(const ConditionReport& r)
{
    json w = json::array();
    for (const auto& x : r.witnesses) w.push_back(witness_json(x));
    json j{{"id", to_string(r.id)}, {"verdict", to_string(r.verdict)}};
    j["h"] = r.h ? json(*r.h) : json(nullptr);
    j["witnesses"] = w;
    j["checked"] = r.checked;
    j["failures"] = r.failures;
    j["sample_descriptor"] = r.sample_descriptor;
    return j;
}

json to_json(const FixedCircleVerdict& v)
{
    json j{{"circle", {{"center", coords_json(v.circle.center)}, {"radius", v.circle.radius}}},
           {"fixed", v.fixed},
           {"checked_points", v.checked_points},
           {"max_displacement", v.max_displacement}};
    j["uniqueness"] = v.uniqueness ? to_json(*v.uniqueness) : json(nullptr);
    j["ball_fixed"] = v.ball_fixed ? json(*v.ball_fixed) : json(nullptr);
    return j;
}

json to_json(const AxiomReport& r)
{
    json v = json::array();
    for (const auto& x : r.violations)
        v.push_back({{"axiom", to_string(x.axiom)},
                     {"points", points_json(x.points)},
                     {"lhs", x.lhs},
                     {"rhs", x.rhs},
                     {"margin", x.margin()}});
    return {{"n_trials", r.n_trials}, {"violations", v}, {"ok", r.ok()}};
}

RunReport run_scenario(const Scenario& s, const std::string& out_dir)
{
    const ResolvedScenario r = resolve(s);
    const Runner runner{s, r};

    RunReport rep;
    json checks = json::array();
    for (std::size_t i = 0; i < s.checks.size(); ++i) {
        bool ok = true;
        checks.push_back(runner.run_check(i, s.checks[i], ok));
        ++rep.checks;
        if (!ok) ++rep.failed_checks;
    }
    rep.passed = rep.failed_checks == 0;
    rep.document = {{"tool", "smetric"},
                    {"version", kToolVersion},
                    {"seed", s.seed},
                    {"scenario", scenario_to_json(s)},
                    {"checks", checks},
                    {"passed", rep.passed}};
    runner.write_outputs(out_dir, rep.document.dump(2) + "\n");
    return rep;
}

std::vector<ReproductionRow> reproduce_paper(const std::string& out_dir, std::uint64_t seed)
{
    std::vector<ReproductionRow> rows;
    json summary = json::array();
    for (const auto& b : bundled_scenarios()) {
        ReproductionRow row;
        row.scenario = b.file;
        try {
            Scenario s = load_scenario_text(b.text);
            row.scenario = s.name;
            s.seed = seed;
            const auto rep = run_scenario(s, out_dir);
            row.checks = rep.checks;
            row.failed = rep.failed_checks;
            row.passed = rep.passed;
        } catch (const std::exception& e) {
            row.error = e.what();
            row.passed = false;
        }
        json j{{"scenario", row.scenario}, {"checks", row.checks}, {"failed", row.failed}, {"passed", row.passed}};
        if (!row.error.empty()) j["error"] = row.error;
        summary.push_back(j);
        rows.push_back(std::move(row));
    }
    write_file(out_dir.empty() ? "summary.json" : out_dir + "/summary.json",
               json{{"tool", "smetric"}, {"version", kToolVersion}, {"seed", seed}, {"scenarios", summary}}.dump(2) +
                   "\n");
    return rows;
}

} // namespace smetric
