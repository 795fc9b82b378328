#ifndef SMETRIC_METRIC_HPP
#define SMETRIC_METRIC_HPP

#include "smetric/expr.hpp"
#include "smetric/point.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace smetric {

enum class Family { Usual1D, SymSkew1D, SymSkew2D, Exp2D, GeneratedFromMetric, HalfSum, UserDSL };

/// Binary metrics that can generate an S-metric.
enum class BaseMetric { Euclidean, Absolute, Discrete };

/// A named ternary distance over points of a fixed dimension.
///
/// Construct through make_spec / generate_from_metric / make_dsl_spec; they
/// validate the dimension and pre-parse DSL sources.
struct SMetricSpec {
    Family family = Family::Usual1D;
    int dimension = 1;
    std::map<std::string, double> params;
    BaseMetric base = BaseMetric::Absolute;  // GeneratedFromMetric only
    std::string dsl_source;                  // UserDSL only
    Expr dsl_expr;                           // parsed dsl_source

    /// Scenario-file family name: "usual1d", "generated:abs", "dsl", ...
    std::string name() const;

    bool operator==(const SMetricSpec& o) const
    {
        return family == o.family && dimension == o.dimension && params == o.params && base == o.base &&
               dsl_source == o.dsl_source;
    }
};

/// Builds a spec from its scenario name. Recognized keys in `params`:
/// "dim" for generated:euclidean, generated:discrete, halfsum and dsl.
/// `dsl` is the expression source for the "dsl" family.
SMetricSpec make_spec(const std::string& name, const std::map<std::string, double>& params = {},
                      const std::string& dsl = {});

/// Parses a user metric such as "S(x,y,z) = abs(x - z) + abs(y - z)".
/// Variables are x, y, z (dimension 1) or x1..xn, y1..yn, z1..zn.
SMetricSpec make_dsl_spec(const std::string& source, int dimension);

/// S_d(x, y, z) = d(x, z) + d(y, z).
SMetricSpec generate_from_metric(BaseMetric metric, int dimension = 1);

std::vector<std::string> family_names();

/// S(x, y, z). Throws InvalidArgument on dimension mismatch and DomainError
/// when a DSL expression leaves its domain.
double eval_s(const SMetricSpec& spec, const Point& x, const Point& y, const Point& z);

/// Self-distance S(x, x, y).
inline double self_distance(const SMetricSpec& spec, const Point& x, const Point& y)
{
    return eval_s(spec, x, x, y);
}

enum class Axiom { Nonnegativity, IdentityForward, IdentityReverse, Triangle, Symmetry };

std::string to_string(Axiom a);

struct AxiomViolation {
    Axiom axiom = Axiom::Nonnegativity;
    std::vector<Point> points;  // (x, y, z) or (x, y, z, a) or (x, y)
    double lhs = 0.0;
    double rhs = 0.0;

    double margin() const { return rhs - lhs; }
};

struct AxiomReport {
    std::size_t n_trials = 0;
    std::vector<AxiomViolation> violations;

    bool ok() const { return violations.empty(); }
};

struct AxiomCheckOptions {
    double tol = 1e-9;       // value tolerance
    double tol_pts = 1e-7;   // coordinate tolerance for "x = y = z"
    std::size_t budget = 1000000;  // max enumerated triples / quadruples
    std::uint64_t seed = 20170101;
    std::size_t max_violations = 64;
};

/// Checks both S-metric axioms over all triples (identity, nonnegativity)
/// and all quadruples (triangle-type inequality) of `sample`. Tuples are
/// enumerated exhaustively when their count fits in `budget`, otherwise a
/// seeded uniform subset of `budget` tuples is drawn (diagonal triples are
/// always included).
AxiomReport check_axioms(const SMetricSpec& spec, const std::vector<Point>& sample,
                         const AxiomCheckOptions& opts = {});

/// |S(x,x,y) - S(y,y,x)| <= tol over all ordered pairs of `sample`.
AxiomReport check_symmetry(const SMetricSpec& spec, const std::vector<Point>& sample,
                           const AxiomCheckOptions& opts = {});

struct FuzzOptions {
    std::size_t trials = 10000;
    std::uint64_t seed = 7;
    double half_width = 2.0;  // points drawn uniformly from [-w, w]^n
    double tol = 1e-9;
    double tol_pts = 1e-7;
    std::size_t max_violations = 64;
};

/// Randomized axiom and symmetry check: `trials` independent triples,
/// quadruples and pairs, plus the diagonal S(x,x,x) = 0 for every drawn x.
AxiomReport fuzz_axioms(const SMetricSpec& spec, const FuzzOptions& opts = {});

} // namespace smetric

#endif // SMETRIC_METRIC_HPP
