#include "smetric/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace smetric {

std::string to_string(ConditionId id)
{
    switch (id) {
    case ConditionId::Thm1S1: return "thm1_S1";
    case ConditionId::Thm1S2: return "thm1_S2";
    case ConditionId::Thm2S1: return "thm2_S1";
    case ConditionId::Thm2S2: return "thm2_S2";
    case ConditionId::IS: return "I_S";
    case ConditionId::RhoadesS25: return "Rhoades_S25";
    case ConditionId::DiamS25a: return "Diam_S25a";
    case ConditionId::Eqn1: return "eqn1";
    case ConditionId::Eqn2: return "eqn2";
    case ConditionId::Eqn2Inner: return "eqn2_inner";
    }
    return "unknown";
}

ConditionId condition_from_string(const std::string& s)
{
    for (auto id : {ConditionId::Thm1S1, ConditionId::Thm1S2, ConditionId::Thm2S1, ConditionId::Thm2S2, ConditionId::IS,
                    ConditionId::RhoadesS25, ConditionId::DiamS25a, ConditionId::Eqn1, ConditionId::Eqn2,
                    ConditionId::Eqn2Inner})
        if (to_string(id) == s) return id;
    throw InvalidArgument("unknown condition id '" + s + "'");
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::HoldsOnSample: return "holds_on_sample";
    case Verdict::Vacuous: return "vacuous";
    }
    return "unknown";
}

namespace {

enum class Relation { LessEq, GreaterEq, Strict, Equal };

bool witness_less(const Witness& a, const Witness& b)
{
    if (a.margin != b.margin) return a.margin < b.margin;
    for (std::size_t i = 0; i < std::min(a.points.size(), b.points.size()); ++i) {
        if (lex_less(a.points[i], b.points[i])) return true;
        if (lex_less(b.points[i], a.points[i])) return false;
    }
    return a.points.size() < b.points.size();
}

/// Collects instances of one inequality and turns them into a report.
class Inequality {
public:
    Inequality(ConditionId id, Relation rel, const CheckOptions& opts) : id_(id), rel_(rel), opts_(opts) {}

    void add(std::vector<Point> pts, double lhs, double rhs)
    {
        Witness w{std::move(pts), lhs, rhs, 0.0};
        bool fail = false;
        switch (rel_) {
        case Relation::LessEq:
            w.margin = rhs - lhs;
            fail = w.margin < -opts_.tol;
            break;
        case Relation::GreaterEq:
            w.margin = lhs - rhs;
            fail = w.margin < -opts_.tol;
            break;
        case Relation::Strict:
            w.margin = rhs - lhs;
            fail = !(w.margin > opts_.tol_strict);
            break;
        case Relation::Equal:
            w.margin = -std::abs(lhs - rhs);
            fail = -w.margin > opts_.tol;
            break;
        }
        ++checked_;
        if (fail) {
            ++failures_;
            failing_.push_back(std::move(w));
        } else if (!tightest_ || witness_less(w, *tightest_)) {
            tightest_ = std::move(w);
        }
    }

    ConditionReport finish(bool exhaustive, std::string descriptor, std::optional<double> h = std::nullopt)
    {
        ConditionReport r;
        r.id = id_;
        r.h = h;
        r.checked = checked_;
        r.failures = failures_;
        r.sample_descriptor = std::move(descriptor);
        if (checked_ == 0) {
            r.verdict = Verdict::Vacuous;
        } else if (failures_ > 0) {
            r.verdict = Verdict::Fails;
            std::sort(failing_.begin(), failing_.end(), witness_less);
            if (failing_.size() > opts_.max_witnesses) failing_.resize(opts_.max_witnesses);
            r.witnesses = std::move(failing_);
        } else {
            r.verdict = exhaustive ? Verdict::Holds : Verdict::HoldsOnSample;
            if (tightest_) r.witnesses.push_back(*tightest_);
        }
        return r;
    }

private:
    ConditionId id_;
    Relation rel_;
    CheckOptions opts_;
    std::size_t checked_ = 0;
    std::size_t failures_ = 0;
    std::vector<Witness> failing_;
    std::optional<Witness> tightest_;
};

void require_on_circle(const Circle& circle, const CircleSample& sample, const CheckOptions& opts)
{
    const double tol = std::max(opts.tol, kDefaultBandTol);
    for (const auto& p : sample.points) {
        require_point(p, circle.metric.dimension, "circle sample");
        const auto m = circle_membership(circle, p, tol);
        if (!m.member)
            throw InvalidArgument("circle sample point " + format_point(p) + " is off the circle (residual " +
                                  format_number(m.residual) + ")");
    }
}

FixedCircleVerdict fixedness(const PiecewiseMap& map, const Circle& circle, const std::vector<Point>& pts,
                             double tol)
{
    FixedCircleVerdict v;
    v.circle = circle;
    v.checked_points = pts.size();
    for (const auto& x : pts) {
        double d = std::numeric_limits<double>::infinity();
        try {
            d = self_distance(circle.metric, x, apply_map(map, x));
        } catch (const DomainError&) {
        }
        v.max_displacement = std::max(v.max_displacement, d);
    }
    v.fixed = !pts.empty() && v.max_displacement <= tol;
    return v;
}

std::optional<Box> bounding_box(const std::vector<Point>& pts)
{
    if (pts.empty()) return std::nullopt;
    Box b{pts.front(), pts.front()};
    for (const auto& p : pts) {
        b.lo = b.lo.cwiseMin(p);
        b.hi = b.hi.cwiseMax(p);
    }
    if (!b.valid()) return std::nullopt;
    return b;
}

/// Known points of C(c, r): the exact set when available, otherwise sampled
/// domain points on the circle plus traced points in the plane.
CircleSample known_circle_points(const Circle& c, const std::vector<Point>& domain, const TraceSettings& trace,
                                 double tol)
{
    if (has_analytic_circles(c.metric)) return sample_circle(c);
    CircleSample s;
    for (const auto& p : domain)
        if (circle_membership(c, p, tol).member) s.points.push_back(p);
    const std::size_t from_domain = s.points.size();
    std::size_t traced = 0;
    if (c.metric.dimension == 2) {
        auto window = trace.window ? trace.window : bounding_box(domain);
        if (window) {
            auto sol = trace_circle_2d(c.metric, c.center, c.radius, *window, trace.resolution, trace.band_tol);
            traced = sol.points.size();
            for (auto& p : sol.points) s.points.push_back(std::move(p));
        }
    }
    sort_unique(s.points, 1e-12);
    s.descriptor = std::to_string(from_domain) + " sampled + " + std::to_string(traced) + " traced points of C(" +
                   format_point(c.center) + ", " + format_number(c.radius) + ")";
    return s;
}

std::string skipped_note(std::size_t skipped)
{
    return skipped ? "; " + std::to_string(skipped) + " points skipped (map undefined)" : std::string();
}

} // namespace

ExistenceResult check_thm1(const PiecewiseMap& map, const Circle& circle, const CircleSample& sample,
                           const CheckOptions& opts)
{
    require_on_circle(circle, sample, opts);
    const auto& S = circle.metric;
    const double r = circle.radius;
    Inequality s1(ConditionId::Thm1S1, Relation::LessEq, opts);
    Inequality s2(ConditionId::Thm1S2, Relation::LessEq, opts);
    for (const auto& x : sample.points) {
        const Point tx = apply_map(map, x);
        const double disp = self_distance(S, x, tx);
        const double phi_x = self_distance(S, x, circle.center);
        const double phi_tx = self_distance(S, tx, circle.center);
        s1.add({x, tx}, disp, phi_x + phi_tx - 2.0 * r);
        s2.add({x, tx}, disp + phi_tx, r);
    }
    return {s1.finish(sample.exhaustive, sample.descriptor), s2.finish(sample.exhaustive, sample.descriptor),
            fixedness(map, circle, sample.points, opts.tol)};
}

ExistenceResult check_thm2(const PiecewiseMap& map, const Circle& circle, const CircleSample& sample, double h,
                           const CheckOptions& opts)
{
    if (!(h >= 0.0 && h < 1.0)) throw InvalidArgument("check_thm2: h must lie in [0, 1)");
    require_on_circle(circle, sample, opts);
    const auto& S = circle.metric;
    const double r = circle.radius;
    Inequality s1(ConditionId::Thm2S1, Relation::LessEq, opts);
    Inequality s2(ConditionId::Thm2S2, Relation::GreaterEq, opts);
    for (const auto& x : sample.points) {
        const Point tx = apply_map(map, x);
        const double disp = self_distance(S, x, tx);
        const double phi_x = self_distance(S, x, circle.center);
        const double phi_tx = self_distance(S, tx, circle.center);
        s1.add({x, tx}, disp, phi_x - phi_tx);
        s2.add({x, tx}, h * disp + phi_tx, r);
    }
    return {s1.finish(sample.exhaustive, sample.descriptor), s2.finish(sample.exhaustive, sample.descriptor, h),
            fixedness(map, circle, sample.points, opts.tol)};
}

std::vector<double> default_h_grid()
{
    return {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
}

HSweep sweep_thm2(const PiecewiseMap& map, const Circle& circle, const CircleSample& sample,
                  const std::vector<double>& h_grid, const CheckOptions& opts)
{
    HSweep out;
    for (double h : h_grid) {
        out.h_values.push_back(h);
        out.results.push_back(check_thm2(map, circle, sample, h, opts));
        const auto& res = out.results.back();
        if (!out.first_h_both_hold && holds(res.first.verdict) && holds(res.second.verdict)) out.first_h_both_hold = h;
    }
    return out;
}

IdentityResult check_identity_condition(const PiecewiseMap& map, const SMetricSpec& spec, const Point& center,
                                        double h, const std::vector<Point>& sample, const CheckOptions& opts)
{
    if (!(h > 2.0)) throw InvalidArgument("check_identity_condition: h must exceed 2");
    require_point(center, spec.dimension, "check_identity_condition center");
    Inequality is(ConditionId::IS, Relation::LessEq, opts);
    bool identity = true;
    std::size_t skipped = 0;
    for (const auto& x : sample) {
        Point tx;
        try {
            tx = apply_map(map, x);
        } catch (const DomainError&) {
            ++skipped;
            continue;
        }
        const double disp = self_distance(spec, x, tx);
        identity = identity && disp <= opts.tol;
        is.add({x, tx}, disp, (self_distance(spec, x, center) - self_distance(spec, tx, center)) / h);
    }
    IdentityResult out;
    out.report = is.finish(false, std::to_string(sample.size()) + " domain points, center " + format_point(center) +
                                      skipped_note(skipped),
                           h);
    out.identity_on_sample = identity && skipped == 0;
    return out;
}

double compute_R_S(const PiecewiseMap& map, const SMetricSpec& spec, const Point& x, const Point& y)
{
    const Point tx = apply_map(map, x);
    const Point ty = apply_map(map, y);
    return std::max({self_distance(spec, x, y), self_distance(spec, tx, x), self_distance(spec, ty, y),
                     self_distance(spec, ty, x), self_distance(spec, tx, y)});
}

ConditionReport check_rhoades_uniqueness(const PiecewiseMap& map, const Circle& circle, const CircleSample& on_circle,
                                         const std::vector<Point>& domain, const CheckOptions& opts)
{
    require_on_circle(circle, on_circle, opts);
    const auto& S = circle.metric;
    Inequality ineq(ConditionId::RhoadesS25, Relation::Strict, opts);
    std::size_t off = 0, skipped = 0;
    for (const auto& y : domain) {
        if (circle_membership(circle, y, opts.tol).member) continue;
        Point ty;
        try {
            ty = apply_map(map, y);
        } catch (const DomainError&) {
            ++skipped;
            continue;
        }
        ++off;
        for (const auto& x : on_circle.points) {
            if (same_point(x, y)) continue;
            const Point tx = apply_map(map, x);
            const double rhs = std::max({self_distance(S, x, y), self_distance(S, tx, x), self_distance(S, ty, y),
                                         self_distance(S, ty, x), self_distance(S, tx, y)});
            ineq.add({x, y}, eval_s(S, tx, tx, ty), rhs);
        }
    }
    return ineq.finish(false, std::to_string(on_circle.points.size()) + " circle points x " + std::to_string(off) +
                                  " off-circle points" + skipped_note(skipped));
}

ConditionReport check_diameter_uniqueness(const PiecewiseMap& map, const Circle& circle,
                                          const CircleSample& on_circle, const std::vector<Point>& domain,
                                          const OrbitOptions& orbit_opts, const CheckOptions& opts)
{
    require_on_circle(circle, on_circle, opts);
    const auto& S = circle.metric;
    Inequality ineq(ConditionId::DiamS25a, Relation::Strict, opts);

    std::vector<OrbitSet> x_orbits;
    for (const auto& x : on_circle.points) x_orbits.push_back(orbit(S, map, x, orbit_opts));

    std::size_t off = 0, unbounded_pairs = 0, skipped = 0;
    for (const auto& y : domain) {
        if (circle_membership(circle, y, opts.tol).member) continue;
        OrbitSet uy;
        try {
            uy = orbit(S, map, y, orbit_opts);
        } catch (const DomainError&) {
            ++skipped;
            continue;
        }
        ++off;
        const Point ty = apply_map(map, y);
        for (std::size_t i = 0; i < on_circle.points.size(); ++i) {
            const Point& x = on_circle.points[i];
            if (same_point(x, y)) continue;
            const OrbitSet& ux = x_orbits[i];
            if (ux.unbounded || uy.unbounded) {
                ++unbounded_pairs;
                continue;
            }
            std::vector<Point> uni = ux.iterates;
            uni.insert(uni.end(), uy.iterates.begin(), uy.iterates.end());
            const Point tx = apply_map(map, x);
            ineq.add({x, y}, eval_s(S, tx, tx, ty), uni.empty() ? 0.0 : diameter(S, uni));
        }
    }
    std::string desc = std::to_string(on_circle.points.size()) + " circle points x " + std::to_string(off) +
                       " off-circle points, n_max " + std::to_string(orbit_opts.n_max);
    if (unbounded_pairs) desc += "; " + std::to_string(unbounded_pairs) + " pairs skipped (unbounded orbit)";
    return ineq.finish(false, desc + skipped_note(skipped));
}

FixedCircleVerdict check_fixed_circle(const PiecewiseMap& map, const Circle& circle, const CircleSample& sample,
                                      const CheckOptions& opts)
{
    require_on_circle(circle, sample, opts);
    return fixedness(map, circle, sample.points, opts.tol);
}

Thm6Result check_thm6(const PiecewiseMap& map, const SMetricSpec& spec, const Point& center,
                      const std::vector<Point>& domain, const TraceSettings& trace, const CheckOptions& opts)
{
    if (domain.empty()) throw InvalidArgument("check_thm6: domain sample must be nonempty");
    require_point(center, spec.dimension, "check_thm6 center");

    struct Moved {
        Point x, tx;
        double disp;
    };
    std::vector<Moved> moved;
    std::vector<Point> defined;
    std::size_t skipped = 0;
    for (const auto& x : domain) {
        Point tx;
        try {
            tx = apply_map(map, x);
        } catch (const DomainError&) {
            ++skipped;
            continue;
        }
        defined.push_back(x);
        const double d = self_distance(spec, tx, x);
        if (d > opts.tol) moved.push_back({x, tx, d});
    }
    if (moved.empty()) throw InvalidArgument("r undefined (map is identity on sample)");

    Thm6Result out;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& m : moved) {
        lo = std::min(lo, m.disp);
        hi = std::max(hi, m.disp);
    }
    out.r = lo;
    out.r_sample_approximate = hi - lo > opts.tol;

    const std::string dom_desc = std::to_string(domain.size()) + " domain points" + skipped_note(skipped);
    Inequality eqn1(ConditionId::Eqn1, Relation::Strict, opts);
    for (const auto& m : moved) eqn1.add({m.x, m.tx}, self_distance(spec, m.x, m.tx), compute_R_S(map, spec, m.x, center));
    out.eqn1 = eqn1.finish(false, dom_desc + ", " + std::to_string(moved.size()) + " with positive displacement");

    const Circle circle = make_circle(spec, center, out.r);
    const CircleSample cs = known_circle_points(circle, defined, trace, opts.tol);
    Inequality eqn2(ConditionId::Eqn2, Relation::Equal, opts);
    for (const auto& x : cs.points) {
        const Point tx = apply_map(map, x);
        eqn2.add({x, tx}, self_distance(spec, tx, center), out.r);
    }
    out.eqn2 = eqn2.finish(cs.exhaustive, cs.descriptor);

    std::vector<Point> ball = cs.points;
    Inequality inner(ConditionId::Eqn2Inner, Relation::Equal, opts);
    for (const auto& x : defined) {
        const double rho = self_distance(spec, x, center);
        if (rho > out.r + opts.tol) continue;
        ball.push_back(x);
        if (rho > opts.tol && rho < out.r - opts.tol)
            inner.add({x, apply_map(map, x)}, self_distance(spec, apply_map(map, x), center), rho);
    }
    sort_unique(ball, 1e-12);
    out.eqn2_inner = inner.finish(false, "sampled inner circles C(" + format_point(center) + ", rho), rho < " +
                                             format_number(out.r));

    out.verdict = fixedness(map, circle, cs.points, opts.tol);
    const auto ball_verdict = fixedness(map, circle, ball, opts.tol);
    out.verdict.ball_fixed = ball_verdict.fixed;
    return out;
}

std::vector<FixedCircleVerdict> discover_fixed_circles(const PiecewiseMap& map, const SMetricSpec& spec,
                                                       const std::vector<Point>& domain,
                                                       const std::vector<Point>& centers, const CheckOptions& opts)
{
    const auto fixed = fixed_point_set(map, spec, domain, opts.tol);
    TraceSettings trace;
    trace.resolution = 128;

    std::vector<FixedCircleVerdict> out;
    for (const auto& c : centers) {
        require_point(c, spec.dimension, "discover_fixed_circles center");
        std::vector<double> radii;
        for (const auto& p : fixed) {
            const double r = self_distance(spec, p, c);
            if (r > opts.tol) radii.push_back(r);
        }
        std::sort(radii.begin(), radii.end());
        std::vector<double> distinct;
        for (double r : radii)
            if (distinct.empty() || r - distinct.back() > opts.tol) distinct.push_back(r);

        for (double r : distinct) {
            const Circle circle = make_circle(spec, c, r);
            const CircleSample cs = known_circle_points(circle, domain, trace, opts.tol);
            auto v = fixedness(map, circle, cs.points, opts.tol);
            if (v.fixed) out.push_back(std::move(v));
        }
    }
    std::sort(out.begin(), out.end(), [](const FixedCircleVerdict& a, const FixedCircleVerdict& b) {
        if (lex_less(a.circle.center, b.circle.center)) return true;
        if (lex_less(b.circle.center, a.circle.center)) return false;
        return a.circle.radius < b.circle.radius;
    });
    return out;
}

} // namespace smetric
