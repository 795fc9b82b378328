#ifndef SMETRIC_THEOREMS_HPP
#define SMETRIC_THEOREMS_HPP

#include "smetric/geometry.hpp"
#include "smetric/mapping.hpp"
#include "smetric/metric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace smetric {

enum class ConditionId { Thm1S1, Thm1S2, Thm2S1, Thm2S2, IS, RhoadesS25, DiamS25a, Eqn1, Eqn2, Eqn2Inner };

std::string to_string(ConditionId id);
ConditionId condition_from_string(const std::string& s);

enum class Verdict { Holds, Fails, HoldsOnSample, Vacuous };

std::string to_string(Verdict v);

inline bool holds(Verdict v) { return v == Verdict::Holds || v == Verdict::HoldsOnSample; }

/// One evaluated instance of an inequality. margin > 0 means satisfied with
/// room to spare; its sign convention is "slack of the inequality".
struct Witness {
    std::vector<Point> points;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
};

struct ConditionReport {
    ConditionId id = ConditionId::Thm1S1;
    Verdict verdict = Verdict::Vacuous;
    std::optional<double> h;
    /// Failing instances (worst first); when the condition holds, the single
    /// tightest instance.
    std::vector<Witness> witnesses;
    std::size_t checked = 0;
    std::size_t failures = 0;
    std::string sample_descriptor;
};

struct FixedCircleVerdict {
    Circle circle;
    bool fixed = false;
    std::size_t checked_points = 0;
    double max_displacement = 0.0;  // max S(x, x, Tx) over the checked points
    std::optional<ConditionReport> uniqueness;
    std::optional<bool> ball_fixed;
};

struct CheckOptions {
    double tol = kDefaultTol;
    /// Strict inequalities a < b hold when b - a > tol_strict.
    double tol_strict = 0.0;
    std::size_t max_witnesses = 16;
};

struct ExistenceResult {
    ConditionReport first;
    ConditionReport second;
    FixedCircleVerdict verdict;
};

/// Evaluates S(x,x,Tx) <= phi(x) + phi(Tx) - 2r and
/// S(x,x,Tx) + S(Tx,Tx,x0) <= r at every point of the circle sample, where
/// phi(x) = S(x, x, x0).
ExistenceResult check_thm1(const PiecewiseMap& map, const Circle& circle, const CircleSample& sample,
                           const CheckOptions& opts = {});

/// Evaluates S(x,x,Tx) <= phi(x) - phi(Tx) and h S(x,x,Tx) + S(Tx,Tx,x0) >= r
/// for a given h in [0, 1).
ExistenceResult check_thm2(const PiecewiseMap& map, const Circle& circle, const CircleSample& sample, double h,
                           const CheckOptions& opts = {});

struct HSweep {
    std::vector<double> h_values;
    std::vector<ExistenceResult> results;
    std::optional<double> first_h_both_hold;
};

/// check_thm2 over a grid of h values (each must lie in [0, 1)).
HSweep sweep_thm2(const PiecewiseMap& map, const Circle& circle, const CircleSample& sample,
                  const std::vector<double>& h_grid, const CheckOptions& opts = {});

/// Default sweep grid 0, 0.1, ..., 0.9, 0.99.
std::vector<double> default_h_grid();

struct IdentityResult {
    ConditionReport report;
    bool identity_on_sample = false;
};

/// S(x,x,Tx) <= (phi(x) - phi(Tx)) / h over every sample point, h > 2.
IdentityResult check_identity_condition(const PiecewiseMap& map, const SMetricSpec& spec, const Point& center,
                                        double h, const std::vector<Point>& sample, const CheckOptions& opts = {});

/// max{S(x,x,y), S(Tx,Tx,x), S(Ty,Ty,y), S(Ty,Ty,x), S(Tx,Tx,y)}.
double compute_R_S(const PiecewiseMap& map, const SMetricSpec& spec, const Point& x, const Point& y);

/// Strict S(Tx,Tx,Ty) < R_S(x, y) for x on the circle and y in `domain`
/// off the circle, x != y.
ConditionReport check_rhoades_uniqueness(const PiecewiseMap& map, const Circle& circle, const CircleSample& on_circle,
                                         const std::vector<Point>& domain, const CheckOptions& opts = {});

/// Strict S(Tx,Tx,Ty) < diam(U_x u U_y) for the same pairs. Pairs whose
/// orbit escapes are counted as precondition failures in the descriptor and
/// skipped.
ConditionReport check_diameter_uniqueness(const PiecewiseMap& map, const Circle& circle,
                                          const CircleSample& on_circle, const std::vector<Point>& domain,
                                          const OrbitOptions& orbit_opts = {}, const CheckOptions& opts = {});

struct Thm6Result {
    double r = 0.0;
    bool r_sample_approximate = false;
    ConditionReport eqn1;
    ConditionReport eqn2;
    /// eqn2 with rho in place of r on every sampled inner circle C(x0, rho).
    ConditionReport eqn2_inner;
    FixedCircleVerdict verdict;  // includes ball_fixed
};

/// r = min S(Tx,Tx,x) over sampled non-fixed points, then the existence
/// conditions with center x0 and pointwise fixedness of C(x0, r) and of the
/// sampled closed ball B[x0, r]. Throws InvalidArgument when the map is the
/// identity on the sample.
Thm6Result check_thm6(const PiecewiseMap& map, const SMetricSpec& spec, const Point& center,
                      const std::vector<Point>& domain, const TraceSettings& trace = {}, const CheckOptions& opts = {});

/// Pointwise fixedness of a circle sample.
FixedCircleVerdict check_fixed_circle(const PiecewiseMap& map, const Circle& circle, const CircleSample& sample,
                                      const CheckOptions& opts = {});

/// For each candidate center c, every radius r = S(p, p, c) > 0 realized by
/// a sampled fixed point p becomes a candidate circle; it is reported when
/// every point of C(c, r) that is known (analytic solution, sampled domain
/// points, traced points in 2D) is fixed. Sorted by (center, radius).
std::vector<FixedCircleVerdict> discover_fixed_circles(const PiecewiseMap& map, const SMetricSpec& spec,
                                                       const std::vector<Point>& domain,
                                                       const std::vector<Point>& centers,
                                                       const CheckOptions& opts = {});

} // namespace smetric

#endif // SMETRIC_THEOREMS_HPP
