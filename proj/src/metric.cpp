#include "smetric/metric.hpp"

#include "smetric/kernels.hpp"
#include "lexer.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <tuple>

namespace smetric {

namespace {

int param_dim(const std::map<std::string, double>& params, int fallback)
{
    auto it = params.find("dim");
    if (it == params.end()) return fallback;
    const double d = it->second;
    if (!(d >= 1.0) || d != std::floor(d) || d > 64.0)
        throw InvalidArgument("metric parameter 'dim' must be a positive integer");
    return static_cast<int>(d);
}

void reject_unknown_params(const std::map<std::string, double>& params, bool dim_allowed, const std::string& name)
{
    for (const auto& [k, v] : params) {
        if (k == "dim" && dim_allowed) continue;
        throw InvalidArgument("metric '" + name + "' does not take parameter '" + k + "'");
    }
}

} // namespace

std::string SMetricSpec::name() const
{
    switch (family) {
    case Family::Usual1D: return "usual1d";
    case Family::SymSkew1D: return "symskew1d";
    case Family::SymSkew2D: return "symskew2d";
    case Family::Exp2D: return "exp2d";
    case Family::HalfSum: return "halfsum";
    case Family::UserDSL: return "dsl";
    case Family::GeneratedFromMetric:
        switch (base) {
        case BaseMetric::Euclidean: return "generated:euclidean";
        case BaseMetric::Absolute: return "generated:abs";
        case BaseMetric::Discrete: return "generated:discrete";
        }
    }
    return "unknown";
}

std::vector<std::string> family_names()
{
    return {"usual1d", "symskew1d", "symskew2d", "exp2d", "halfsum",
            "generated:euclidean", "generated:abs", "generated:discrete", "dsl"};
}

SMetricSpec generate_from_metric(BaseMetric metric, int dimension)
{
    if (dimension < 1) throw InvalidArgument("generate_from_metric: dimension must be positive");
    if (metric == BaseMetric::Absolute && dimension != 1)
        throw InvalidArgument("generate_from_metric: the absolute-value metric is one-dimensional");
    SMetricSpec s;
    s.family = Family::GeneratedFromMetric;
    s.base = metric;
    s.dimension = dimension;
    if (metric != BaseMetric::Absolute && dimension != (metric == BaseMetric::Euclidean ? 2 : 1))
        s.params["dim"] = dimension;
    return s;
}

SMetricSpec make_dsl_spec(const std::string& source, int dimension)
{
    if (dimension < 1) throw InvalidArgument("dsl metric: dimension must be positive");
    detail::TokenStream ts(detail::tokenize(source));
    std::string body = source;
    // Optional "S(x, y, z) =" prefix.
    if (ts.is_ident("S") && ts.is_symbol("(", 1)) {
        const auto start = source.find_first_not_of(" \t\n", source.find('=') + 1);
        body = start == std::string::npos ? std::string() : source.substr(start);
        ts.next();
        ts.next();
        while (!ts.at_end() && !ts.is_symbol(")")) ts.next();
        ts.expect_symbol(")");
        ts.expect_symbol("=");
    }
    SMetricSpec s;
    s.family = Family::UserDSL;
    s.dimension = dimension;
    if (dimension != 1) s.params["dim"] = dimension;
    s.dsl_source = body;
    s.dsl_expr = detail::parse_expr(ts, ExprContext{"xyz", dimension});
    if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "' after metric expression");
    return s;
}

SMetricSpec make_spec(const std::string& name, const std::map<std::string, double>& params, const std::string& dsl)
{
    SMetricSpec s;
    if (name == "usual1d") {
        reject_unknown_params(params, false, name);
        s.family = Family::Usual1D;
    } else if (name == "symskew1d") {
        reject_unknown_params(params, false, name);
        s.family = Family::SymSkew1D;
    } else if (name == "symskew2d") {
        reject_unknown_params(params, false, name);
        s.family = Family::SymSkew2D;
        s.dimension = 2;
    } else if (name == "exp2d") {
        reject_unknown_params(params, false, name);
        s.family = Family::Exp2D;
        s.dimension = 2;
    } else if (name == "halfsum") {
        reject_unknown_params(params, true, name);
        s.family = Family::HalfSum;
        s.dimension = param_dim(params, 2);
        s.params = params;
    } else if (name == "generated:euclidean") {
        reject_unknown_params(params, true, name);
        return generate_from_metric(BaseMetric::Euclidean, param_dim(params, 2));
    } else if (name == "generated:abs") {
        reject_unknown_params(params, false, name);
        return generate_from_metric(BaseMetric::Absolute, 1);
    } else if (name == "generated:discrete") {
        reject_unknown_params(params, true, name);
        return generate_from_metric(BaseMetric::Discrete, param_dim(params, 1));
    } else if (name == "dsl") {
        reject_unknown_params(params, true, name);
        if (dsl.empty()) throw InvalidArgument("metric 'dsl' requires an expression source");
        return make_dsl_spec(dsl, param_dim(params, 1));
    } else {
        throw InvalidArgument("unknown metric family '" + name + "'");
    }
    if (!dsl.empty()) throw InvalidArgument("metric '" + name + "' does not take a DSL source");
    if (s.family == Family::HalfSum && s.dimension == 2) s.params.erase("dim");
    return s;
}

double eval_s(const SMetricSpec& spec, const Point& x, const Point& y, const Point& z)
{
    const int d = spec.dimension;
    if (x.size() != d || y.size() != d || z.size() != d)
        throw InvalidArgument("eval_s: point dimension does not match metric dimension " + std::to_string(d));

    switch (spec.family) {
    case Family::Usual1D:
        return kernels::usual(x, y, z);
    case Family::SymSkew1D:
    case Family::SymSkew2D:
        return kernels::sym_skew(x, y, z);
    case Family::Exp2D:
        return kernels::exp_sym_skew(x, y, z);
    case Family::HalfSum:
        return kernels::half_sum(x, y, z);
    case Family::GeneratedFromMetric:
        switch (spec.base) {
        case BaseMetric::Euclidean: return kernels::euclidean(x, z) + kernels::euclidean(y, z);
        case BaseMetric::Absolute: return kernels::absolute(x, z) + kernels::absolute(y, z);
        case BaseMetric::Discrete: return kernels::discrete(x, z) + kernels::discrete(y, z);
        }
        break;
    case Family::UserDSL: {
        if (spec.dsl_expr.empty()) throw InvalidArgument("eval_s: DSL metric was not parsed");
        return spec.dsl_expr.evaluate({&x, &y, &z});
    }
    }
    throw InvalidArgument("eval_s: unknown family");
}

std::string to_string(Axiom a)
{
    switch (a) {
    case Axiom::Nonnegativity: return "nonnegativity";
    case Axiom::IdentityForward: return "identity_forward";
    case Axiom::IdentityReverse: return "identity_reverse";
    case Axiom::Triangle: return "triangle";
    case Axiom::Symmetry: return "symmetry";
    }
    return "unknown";
}

namespace {

bool violation_less(const AxiomViolation& a, const AxiomViolation& b)
{
    if (a.axiom != b.axiom) return a.axiom < b.axiom;
    if (a.points.size() != b.points.size()) return a.points.size() < b.points.size();
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        if (lex_less(a.points[i], b.points[i])) return true;
        if (lex_less(b.points[i], a.points[i])) return false;
    }
    return a.margin() < b.margin();
}

void finalize(AxiomReport& rep, std::size_t cap)
{
    std::sort(rep.violations.begin(), rep.violations.end(), violation_less);
    if (rep.violations.size() > cap) rep.violations.resize(cap);
}

double pairwise_spread(const Point& x, const Point& y, const Point& z)
{
    return std::max({max_coord_distance(x, y), max_coord_distance(y, z), max_coord_distance(x, z)});
}

class TripleChecker {
public:
    TripleChecker(const SMetricSpec& spec, double tol, double tol_pts, AxiomReport& rep)
        : spec_(spec), tol_(tol), tol_pts_(tol_pts), rep_(rep)
    {
    }

    void triple(const Point& x, const Point& y, const Point& z)
    {
        ++rep_.n_trials;
        const double s = eval_s(spec_, x, y, z);
        if (s < -tol_) rep_.violations.push_back({Axiom::Nonnegativity, {x, y, z}, 0.0, s});
        const bool equal = pairwise_spread(x, y, z) <= tol_pts_;
        if (equal && std::abs(s) > tol_) rep_.violations.push_back({Axiom::IdentityForward, {x, y, z}, s, 0.0});
        if (!equal && std::abs(s) <= tol_)
            rep_.violations.push_back({Axiom::IdentityReverse, {x, y, z}, pairwise_spread(x, y, z), tol_pts_});
    }

    void quadruple(const Point& x, const Point& y, const Point& z, const Point& a)
    {
        ++rep_.n_trials;
        const double lhs = eval_s(spec_, x, y, z);
        const double rhs = eval_s(spec_, x, x, a) + eval_s(spec_, y, y, a) + eval_s(spec_, z, z, a);
        if (lhs > rhs + tol_) rep_.violations.push_back({Axiom::Triangle, {x, y, z, a}, lhs, rhs});
    }

    void pair(const Point& x, const Point& y)
    {
        ++rep_.n_trials;
        const double lhs = eval_s(spec_, x, x, y);
        const double rhs = eval_s(spec_, y, y, x);
        if (std::abs(lhs - rhs) > tol_) rep_.violations.push_back({Axiom::Symmetry, {x, y}, lhs, rhs});
    }

private:
    const SMetricSpec& spec_;
    double tol_;
    double tol_pts_;
    AxiomReport& rep_;
};

void require_sample(const SMetricSpec& spec, const std::vector<Point>& sample, const char* what)
{
    if (sample.empty()) throw InvalidArgument(std::string(what) + ": sample must be nonempty");
    for (const auto& p : sample) require_point(p, spec.dimension, what);
}

bool fits_budget(std::size_t n, int power, std::size_t budget)
{
    double count = 1.0;
    for (int i = 0; i < power; ++i) count *= static_cast<double>(n);
    return count <= static_cast<double>(budget);
}

} // namespace

AxiomReport check_axioms(const SMetricSpec& spec, const std::vector<Point>& sample, const AxiomCheckOptions& opts)
{
    require_sample(spec, sample, "check_axioms");
    AxiomReport rep;
    TripleChecker chk(spec, opts.tol, opts.tol_pts, rep);
    const std::size_t n = sample.size();
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);

    if (fits_budget(n, 3, opts.budget)) {
        for (const auto& x : sample)
            for (const auto& y : sample)
                for (const auto& z : sample) chk.triple(x, y, z);
    } else {
        for (const auto& x : sample) chk.triple(x, x, x);
        for (std::size_t t = 0; t < opts.budget; ++t) chk.triple(sample[pick(rng)], sample[pick(rng)], sample[pick(rng)]);
    }

    if (fits_budget(n, 4, opts.budget)) {
        for (const auto& x : sample)
            for (const auto& y : sample)
                for (const auto& z : sample)
                    for (const auto& a : sample) chk.quadruple(x, y, z, a);
    } else {
        for (std::size_t t = 0; t < opts.budget; ++t)
            chk.quadruple(sample[pick(rng)], sample[pick(rng)], sample[pick(rng)], sample[pick(rng)]);
    }

    finalize(rep, opts.max_violations);
    return rep;
}

AxiomReport check_symmetry(const SMetricSpec& spec, const std::vector<Point>& sample, const AxiomCheckOptions& opts)
{
    require_sample(spec, sample, "check_symmetry");
    AxiomReport rep;
    TripleChecker chk(spec, opts.tol, opts.tol_pts, rep);
    for (const auto& x : sample)
        for (const auto& y : sample) chk.pair(x, y);
    finalize(rep, opts.max_violations);
    return rep;
}

AxiomReport fuzz_axioms(const SMetricSpec& spec, const FuzzOptions& opts)
{
    AxiomReport rep;
    TripleChecker chk(spec, opts.tol, opts.tol_pts, rep);
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> coord(-opts.half_width, opts.half_width);
    auto draw = [&] {
        Point p(spec.dimension);
        for (int i = 0; i < spec.dimension; ++i) p(i) = coord(rng);
        return p;
    };

    for (std::size_t t = 0; t < opts.trials; ++t) {
        const Point x = draw(), y = draw(), z = draw(), a = draw();
        chk.triple(x, x, x);
        chk.triple(x, y, z);
        chk.quadruple(x, y, z, a);
        chk.pair(x, y);
    }
    finalize(rep, opts.max_violations);
    return rep;
}

} // namespace smetric
