#include "smetric/catalog.hpp"
#include "smetric/geometry.hpp"
#include "smetric/mapping.hpp"
#include "smetric/metric.hpp"
#include "smetric/scenario.hpp"
#include "smetric/theorems.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace smetric;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    const char* id;
    const char* title;
    std::function<bool(std::string&)> run;
};

std::string cli_path;

std::vector<Point> grid1(double lo, double hi, int res) { return grid_points(Box{make_point({lo}), make_point({hi})}, res); }

bool same_values(const std::vector<Point>& pts, std::vector<double> want, double tol)
{
    if (pts.size() != want.size()) return false;
    std::vector<double> got;
    for (const auto& p : pts) got.push_back(p(0));
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (std::size_t i = 0; i < got.size(); ++i)
        if (std::abs(got[i] - want[i]) > tol) return false;
    return true;
}

std::string values(const std::vector<Point>& pts)
{
    std::string s = "{";
    for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? ", " : "") + format_point(pts[i]);
    return s + "}";
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

bool ac1_circle_solving(std::string& note)
{
    struct Case {
        const char* family;
        double center;
        double radius;
        std::vector<double> want;
    };
    const std::vector<Case> cases{{"usual1d", 0, 2, {-1, 1}},
                                  {"usual1d", 4.5, 11, {-1, 10}},
                                  {"usual1d", 1, 2, {0, 2}},
                                  {"symskew1d", 0, 3, {-1.5, 1.5}}};
    bool ok = true;
    for (const auto& c : cases) {
        const auto spec = make_spec(c.family);
        const auto sol = solve_circle_1d(spec, make_point({c.center}), c.radius);
        bool good = same_values(sol.points, c.want, 1e-12);
        for (const auto& p : sol.points)
            good = good && std::abs(self_distance(spec, p, make_point({c.center})) - c.radius) <= 1e-12;
        note += std::string(c.family) + " C(" + format_number(c.center) + "," + format_number(c.radius) +
                ")=" + values(sol.points) + " ";
        ok = ok && good;
    }
    return ok;
}

bool ac2_verdict_matrix(std::string& note)
{
    struct Row {
        const char* map;
        bool first;
        bool second;
    };
    const std::vector<Row> rows{{"T1", true, true},  {"T2", true, true},  {"T3", true, false}, {"T4", false, true},
                                {"T5", true, true},  {"T6", true, true},  {"T7", true, false}, {"T8", false, true}};
    int verdicts = 0;
    int mismatches = 0;
    for (const auto& row : rows) {
        const auto& e = catalog_entry(row.map);
        const auto& c = e.circles.front();
        TraceSettings t;
        t.window = e.trace_window;
        const auto sample = sample_circle(c, t);
        const auto r = e.theorem == TheoremFamily::Thm1 ? check_thm1(e.map, c, sample)
                                                        : check_thm2(e.map, c, sample, 0.0);
        verdicts += 2;
        if (holds(r.first.verdict) != row.first || holds(r.second.verdict) != row.second) {
            ++mismatches;
            note += std::string(row.map) + " mismatch (" + to_string(r.first.verdict) + ", " +
                    to_string(r.second.verdict) + ") ";
        }
    }
    note += std::to_string(verdicts) + " verdicts, " + std::to_string(mismatches) + " mismatches";
    return verdicts == 16 && mismatches == 0;
}

bool ac3_closed_ball(std::string& note)
{
    const auto usual = make_spec("usual1d");
    const auto& e = catalog_entry("exm1");
    const auto dom = grid1(-6, 6, 48);  // step 0.25
    const auto r = check_thm6(e.map, usual, make_point({0}), dom);
    const auto circle = solve_circle_1d(usual, make_point({0}), r.r);

    std::size_t ball_points = 0;
    bool ball_fixed = true;
    bool margins_positive = true;
    std::size_t moved = 0;
    for (const auto& x : dom) {
        const Point tx = apply_map(e.map, x);
        const double disp = self_distance(usual, x, tx);
        if (self_distance(usual, x, make_point({0})) <= 4.0) {
            ++ball_points;
            ball_fixed = ball_fixed && disp == 0.0;
        }
        if (disp > 0.0) {
            ++moved;
            margins_positive = margins_positive && compute_R_S(e.map, usual, x, make_point({0})) - disp > 0.0;
        }
    }
    note = "r=" + format_number(r.r) + " circle=" + values(circle.points) + " ball points fixed " +
           std::to_string(ball_points) + ", eqn1 " + to_string(r.eqn1.verdict) + " on " + std::to_string(moved) +
           " moved points";
    return r.r == 4.0 && same_values(circle.points, {-2, 2}, 0.0) && r.verdict.fixed && r.verdict.ball_fixed &&
           *r.verdict.ball_fixed && ball_fixed && ball_points == 17 && holds(r.eqn1.verdict) && r.eqn1.failures == 0 &&
           margins_positive && moved > 0;
}

bool ac4_converse(std::string& note)
{
    const auto usual = make_spec("usual1d");
    const auto e = make_exm2_entry(1.0);
    const auto dom = grid1(-3, 3, 48);
    const auto r = check_thm6(e.map, usual, make_point({0}), dom);
    const auto found = discover_fixed_circles(e.map, usual, dom, {make_point({0})});
    bool all = true;
    for (double rho : {0.25, 0.5, 0.75, 1.0}) {
        bool hit = false;
        for (const auto& v : found) hit = hit || (v.fixed && v.circle.radius == rho && v.circle.center(0) == 0.0);
        all = all && hit;
    }
    note = "eqn1 " + to_string(r.eqn1.verdict) + ", " + std::to_string(found.size()) + " fixed circles found";
    return r.eqn1.verdict == Verdict::Fails && all;
}

bool ac5_non_uniqueness(std::string& note)
{
    const auto usual = make_spec("usual1d");
    const auto& e = catalog_entry("T1");
    const auto dom = grid1(-12, 12, 96);
    const auto found = discover_fixed_circles(e.map, usual, dom, {make_point({0}), make_point({4.5})});
    bool c0 = false, c45 = false;
    for (const auto& v : found) {
        c0 = c0 || (v.circle.center(0) == 0 && v.circle.radius == 2);
        c45 = c45 || (v.circle.center(0) == 4.5 && v.circle.radius == 11);
    }

    const auto& circle = e.circles.front();
    const auto sample = sample_circle(circle);
    const auto scan = check_rhoades_uniqueness(e.map, circle, sample, dom);
    bool concrete = scan.verdict == Verdict::Fails && !scan.witnesses.empty();
    if (concrete) {
        // Recompute the reported pair independently.
        const auto& w = scan.witnesses.front();
        const Point& x = w.points[0];
        const Point& y = w.points[1];
        const double lhs = self_distance(usual, apply_map(e.map, x), apply_map(e.map, y));
        const double rhs = compute_R_S(e.map, usual, x, y);
        concrete = circle_membership(circle, x).member && !circle_membership(circle, y).member && lhs == w.lhs &&
                   rhs == w.rhs && lhs >= rhs;
        note = "first scanned witness (" + format_point(x) + ", " + format_point(y) + ") margin " +
               format_number(w.margin) + "; ";
    }
    const auto pair = check_rhoades_uniqueness(e.map, circle, sample, {make_point({10})});
    const bool paper_pair = pair.verdict == Verdict::Fails && pair.witnesses.front().points[0](0) == -1 &&
                            pair.witnesses.front().points[1](0) == 10 && pair.witnesses.front().margin == 0.0;
    note += std::to_string(found.size()) + " circles found, pair (-1, 10) margin " +
            format_number(pair.witnesses.front().margin);
    return found.size() >= 2 && c0 && c45 && concrete && paper_pair;
}

bool ac6_multi_circle(std::string& note)
{
    const auto skew = make_spec("symskew1d");
    const std::vector<Circle> two{make_circle(skew, make_point({0}), 2), make_circle(skew, make_point({0}), 4)};
    const auto built = make_multi_circle_map(two, make_point({5}), "T9");
    const auto dom = grid1(-6, 6, 48);
    const auto fixed = fixed_point_set(built, skew, dom);
    const auto catalog_fixed = fixed_point_set(catalog_entry("T9").map, skew, dom);
    std::vector<Point> off_alpha;
    for (const auto& p : fixed)
        if (p(0) != 5.0) off_alpha.push_back(p);

    std::vector<Circle> three = two;
    three.push_back(make_circle(skew, make_point({0}), 6));
    const auto m3 = make_multi_circle_map(three, make_point({10}));
    std::vector<Point> circle_points;
    for (const auto& c : three)
        for (const auto& p : sample_circle(c).points) circle_points.push_back(p);
    const auto fixed3 = fixed_point_set(m3, skew, circle_points);

    note = "two circles fix " + values(off_alpha) + " plus alpha; three circles fix " + std::to_string(fixed3.size()) +
           "/" + std::to_string(circle_points.size()) + " points";
    return same_values(off_alpha, {-2, -1, 1, 2}, 0.0) && same_values(fixed, {-2, -1, 1, 2, 5}, 0.0) &&
           same_values(catalog_fixed, {-2, -1, 1, 2, 5}, 0.0) && circle_points.size() == 6 && fixed3.size() == 6;
}

/// Random 1D piecewise map in the DSL; about a third are the identity.
std::string random_map(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> small(-3, 3);
    std::uniform_int_distribution<int> pick(0, 5);
    auto num = [&] { return std::to_string(small(rng)); };
    auto expr = [&](bool identity) -> std::string {
        if (identity) return "x";
        switch (pick(rng)) {
        case 0: return num();
        case 1: return "x + " + num();
        case 2: return num() + " * x";
        case 3: return "abs(x) - " + num();
        case 4: return "-x";
        default: return "x";
        }
    };
    std::bernoulli_distribution ident(0.35);
    const bool all_identity = ident(rng);
    std::string src;
    const int rules = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int i = 0; i < rules; ++i) {
        if (pick(rng) % 2 == 0)
            src += "x in {" + num() + ", " + num() + "} -> " + expr(all_identity) + " ; ";
        else
            src += "abs(x) < " + std::to_string(std::abs(small(rng)) + 1) + " -> " + expr(all_identity) + " ; ";
    }
    return src + "otherwise -> " + expr(all_identity);
}

bool ac7_identity(std::string& note)
{
    const auto usual = make_spec("usual1d");
    const auto id = parse_map("otherwise -> x", 1);
    const auto sample = grid1(-5, 5, 999);  // 1000 points
    const auto r = check_identity_condition(id, usual, make_point({0}), 3.0, sample);
    bool margins_zero = true;
    for (const auto& x : sample) {
        const double lhs = self_distance(usual, x, apply_map(id, x));
        const double rhs = (self_distance(usual, x, make_point({0})) -
                            self_distance(usual, apply_map(id, x), make_point({0}))) / 3.0;
        margins_zero = margins_zero && rhs - lhs == 0.0;
    }
    const bool identity_ok = r.report.verdict != Verdict::Fails && r.report.failures == 0 && r.identity_on_sample &&
                             r.report.checked == 1000 && margins_zero;

    std::size_t catalog_fail = 0, catalog_total = 0;
    for (const auto& e : catalog()) {
        auto dom = grid_points(e.window, e.resolution);
        for (const auto& c : e.circles)
            for (const auto& p : sample_circle(c, TraceSettings{e.trace_window, 64, kDefaultBandTol}).points)
                dom.push_back(p);
        const Point center = e.circles.front().center;
        const auto rep = check_identity_condition(e.map, e.metric, center, 3.0, dom);
        ++catalog_total;
        if (rep.report.verdict == Verdict::Fails && !rep.report.witnesses.empty()) ++catalog_fail;
        else note += e.name + " did not fail; ";
    }

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> hdist(2.0001, 6.0);
    std::uniform_int_distribution<int> cdist(-2, 2);
    const auto fuzz_sample = grid1(-4, 4, 16);
    std::size_t holds_count = 0, counterexamples = 0;
    for (int t = 0; t < 10000; ++t) {
        const auto m = parse_map(random_map(rng), 1);
        const auto res = check_identity_condition(m, usual, make_point({double(cdist(rng))}), hdist(rng), fuzz_sample);
        if (holds(res.report.verdict)) {
            ++holds_count;
            if (!res.identity_on_sample) ++counterexamples;
        }
    }
    note += "identity margins all 0 on " + std::to_string(r.report.checked) + " points; catalog " +
            std::to_string(catalog_fail) + "/" + std::to_string(catalog_total) + " fail; fuzz: I_S held on " +
            std::to_string(holds_count) + "/10000 maps, " + std::to_string(counterexamples) + " counterexamples";
    return identity_ok && catalog_fail == catalog_total && counterexamples == 0 && holds_count > 0;
}

bool ac8_axioms(std::string& note)
{
    bool ok = true;
    FuzzOptions fo;
    fo.trials = 10000;
    fo.seed = 7;
    fo.tol = 1e-9;
    std::vector<SMetricSpec> specs;
    for (const auto& n : family_names())
        if (n != "dsl") specs.push_back(make_spec(n));
    specs.push_back(make_spec("dsl", {}, "abs(x - z) + abs(y - z)"));
    for (const auto& s : specs) {
        const auto rep = fuzz_axioms(s, fo);
        if (!rep.ok()) note += s.name() + " has " + std::to_string(rep.violations.size()) + " violations; ";
        ok = ok && rep.ok() && rep.n_trials > 0;
    }
    const auto gen = generate_from_metric(BaseMetric::Absolute, 1);
    const auto usual = make_spec("usual1d");
    double worst = 0.0;
    std::size_t triples = 0;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            for (int k = 0; k < 10; ++k) {
                const auto x = make_point({-2.0 + 0.45 * i}), y = make_point({-2.0 + 0.45 * j}),
                           z = make_point({-2.0 + 0.45 * k});
                worst = std::max(worst, std::abs(eval_s(gen, x, y, z) - eval_s(usual, x, y, z)));
                ++triples;
            }
    note += std::to_string(specs.size()) + " families fuzzed x 10^4; generated:abs vs usual1d max diff " +
            format_number(worst) + " over " + std::to_string(triples) + " triples";
    return ok && worst <= 1e-12 && triples == 1000;
}

bool ac9_figures(std::string& note)
{
    const int res5 = 512;
    const auto fig5 = trace_circle_2d(make_spec("symskew2d"), make_point({0, 0}), 1.0,
                                      Box{make_point({-1, -1}), make_point({1, 1})}, res5);
    double worst_res = 0.0, worst_dist = 0.0;
    for (std::size_t i = 0; i < fig5.points.size(); ++i) {
        worst_res = std::max(worst_res, std::abs(fig5.residuals[i]));
        // Max-norm distance from p to the diamond |x1| + |x2| = 1/2.
        worst_dist = std::max(worst_dist, std::abs(fig5.points[i].cwiseAbs().sum() - 0.5) / 2.0);
    }
    const auto fig6 = trace_circle_2d(make_spec("exp2d"), make_point({0, 0}), 2.0,
                                      Box{make_point({-4, -4}), make_point({1, 1})}, 640);
    double nearest = std::numeric_limits<double>::infinity();
    const Point target = make_point({std::numbers::ln2, 0});
    for (const auto& p : fig6.points) nearest = std::min(nearest, (p - target).norm());
    note = "fig5 " + std::to_string(fig5.points.size()) + " points, max residual " + format_number(worst_res) +
           ", max distance " + format_number(worst_dist) + "; fig6 " + std::to_string(fig6.points.size()) +
           " points, nearest to (ln 2, 0) " + format_number(nearest);
    return fig5.points.size() >= 500 && worst_res <= 1e-8 && worst_dist <= 2.0 / res5 && nearest <= 1e-6;
}

bool ac10_intro(std::string& note)
{
    const auto& e = catalog_entry("intro");
    const auto circle = e.circles.front();
    std::size_t fixed = 0;
    double worst = 0.0;
    for (int k = 0; k < 64; ++k) {
        const double th = 2.0 * std::numbers::pi * k / 64.0;
        const Point p = make_point({std::cos(th), std::sin(th)});
        const bool on = circle_membership(circle, p, 1e-9).member;
        const double d = (apply_map(e.map, p) - p).cwiseAbs().maxCoeff();
        worst = std::max(worst, d);
        if (on && d <= 1e-9) ++fixed;
    }
    note = std::to_string(fixed) + "/64 unit-circle points fixed, max displacement " + format_number(worst);
    return fixed == 64;
}

bool ac11_determinism(std::string& note)
{
    const auto base = fs::temp_directory_path() / "smetric_acceptance_repro";
    fs::remove_all(base);
    const auto a = base / "a";
    const auto b = base / "b";
    fs::create_directories(base);
    if (!cli_path.empty()) {
        for (const auto& dir : {a, b}) {
            const std::string cmd = "\"" + cli_path + "\" reproduce-paper --seed 7 --out \"" + dir.string() +
                                    "\" > \"" + dir.string() + ".stdout\"";
            if (std::system(cmd.c_str()) != 0) {
                note = "reproduce-paper exited nonzero";
                return false;
            }
        }
    } else {
        reproduce_paper(a.string(), 7);
        reproduce_paper(b.string(), 7);
    }
    std::size_t files = 0, differing = 0, svg = 0, csv = 0;
    for (const auto& entry : fs::recursive_directory_iterator(a)) {
        if (!entry.is_regular_file()) continue;
        ++files;
        const auto rel = fs::relative(entry.path(), a);
        if (rel.extension() == ".svg") ++svg;
        if (rel.extension() == ".csv") ++csv;
        if (!fs::exists(b / rel) || slurp(entry.path()) != slurp(b / rel)) ++differing;
    }
    bool stdout_same = true;
    if (!cli_path.empty()) stdout_same = slurp(base / "a.stdout") == slurp(base / "b.stdout");
    note = std::to_string(files) + " files (" + std::to_string(svg) + " svg, " + std::to_string(csv) + " csv), " +
           std::to_string(differing) + " differ" + (cli_path.empty() ? "" : stdout_same ? ", stdout identical" : ", stdout differs");
    fs::remove_all(base);
    return files > 0 && svg > 0 && csv > 0 && differing == 0 && stdout_same;
}

} // namespace

int main(int argc, char** argv)
{
    if (argc > 1) cli_path = argv[1];

    const std::vector<Criterion> criteria{
        {"AC1", "exact circle solving", ac1_circle_solving},
        {"AC2", "existence-theorem verdict matrix", ac2_verdict_matrix},
        {"AC3", "closed-ball theorem on exm1", ac3_closed_ball},
        {"AC4", "exm2 fails eqn1 yet fixes its circles", ac4_converse},
        {"AC5", "non-uniqueness detection on T1", ac5_non_uniqueness},
        {"AC6", "multi-circle constructor", ac6_multi_circle},
        {"AC7", "identity condition", ac7_identity},
        {"AC8", "axiom suite", ac8_axioms},
        {"AC9", "figure reproduction", ac9_figures},
        {"AC10", "intro inversion fixes the unit circle", ac10_intro},
        {"AC11", "reproduce-paper determinism", ac11_determinism},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        std::string note;
        bool ok = false;
        try {
            ok = c.run(note);
        } catch (const std::exception& e) {
            note += std::string("exception: ") + e.what();
        }
        if (!ok) ++failed;
        std::printf("%s %-5s %s: %s\n", ok ? "PASS" : "FAIL", c.id, c.title, note.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
