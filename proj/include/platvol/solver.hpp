#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "platvol/rep_space.hpp"
#include "platvol/volume.hpp"

namespace platvol {

struct SolverConfig {
    double residual_tol = 1e-12;
    int max_iterations = 80;
    int multistart = 200;
    double dedup_tol = 1e-6;
    double reducible_tol = 1e-6;   // irreducibility below this rejects a point
    double endpoint_tol = 1e-5;    // irreducibility below this ends an arc
    double step_initial = 0.02;
    double step_min = 1e-4;
    double step_max = 0.1;
    double min_step_endpoint = 1e-13;
    double domain_margin = 1e-6;   // arcs are traced inside (margin, pi - margin)
    double root_snap = 1e-4;
    double rank_rel = 1e-7;
    std::uint64_t seed = 1;
    std::vector<double> scan_angles = {M_PI / 2};
    TraceChart chart = TraceChart::Angle;
};

struct IntersectionPoint {
    double theta = 0.0;
    std::vector<SpherePoint> P, P2;
    double residual = 0.0;
    int iterations = 0;

    double meridian_trace() const { return 2.0 * std::cos(theta); }
    double irreducibility() const;
    HandlebodyPair pair() const;
};

// 3(2n-1) residual: log(rho(kappa1(s_j)) rho(kappa2(s_j))^{-1}) for j < 2n.
Eigen::VectorXd residual(const KappaSystem& sys, double theta, const std::vector<SpherePoint>& P,
                         const std::vector<SpherePoint>& P2);

// Gauss-Newton from the seed at fixed theta.  Throws NoConvergence or
// ConvergedToReducible.  The result is gauge fixed.
IntersectionPoint solve_at_angle(const KappaSystem& sys, double theta, std::vector<SpherePoint> P,
                                 std::vector<SpherePoint> P2, const SolverConfig& cfg, int max_iterations = -1);
IntersectionPoint solve_at_trace(const KappaSystem& sys, double t, std::vector<SpherePoint> P,
                                 std::vector<SpherePoint> P2, const SolverConfig& cfg);

// Conjugation invariant fingerprint used for deduplication and matching.
std::vector<double> invariant_traces(const KappaSystem& sys, const IntersectionPoint& x);
double key_distance(const std::vector<double>& a, const std::vector<double>& b);

// All irreducible intersection points at theta found by multistart (plus
// binary dihedral seeds at theta = pi/2), deduplicated.
std::vector<IntersectionPoint> find_all_at_angle(const KappaSystem& sys, double theta, const SolverConfig& cfg);

struct RegularityReport {
    bool regular = false;
    int kernel_dim = 0;
    int rank = 0;
    Eigen::VectorXd singular_values;
    CohomologyDims cohomology;
    bool stable = true;
};
// Regular iff the transversality map has one-dimensional kernel; cross-checked
// against H^1 of the knot group with adjoint coefficients.
RegularityReport regularity_check(const KappaSystem& sys, const IntersectionPoint& x, const SolverConfig& cfg);

enum class EndpointKind { AbelianLimit, InteriorSingularity, DomainBoundary };
const char* endpoint_name(EndpointKind k);

struct ArcEndpoint {
    EndpointKind kind = EndpointKind::DomainBoundary;
    double theta = 0.0;             // extrapolated limit angle
    double last_theta = 0.0;        // angle of the last traced sample
    double last_irreducibility = 0.0;
    double nearest_root = std::numeric_limits<double>::quiet_NaN();
    bool root_matched = false;
};

struct RegularArc {
    std::vector<IntersectionPoint> samples;  // sorted by theta
    ArcEndpoint lower, upper;
    double theta_lo() const { return lower.theta; }
    double theta_hi() const { return upper.theta; }
};

// Curve tangent at a point: (dP, dP2) per unit theta, in R^3 per axis.
struct CurveTangent {
    std::vector<Su2Vector> dP, dP2;
};
CurveTangent curve_tangent(const KappaSystem& sys, const IntersectionPoint& x, const SolverConfig& cfg);

// Continue the component through start in both theta directions.
// root_angles: angles of unit-circle Alexander roots used for endpoint snapping.
RegularArc trace_arc(const KappaSystem& sys, const IntersectionPoint& start, const SolverConfig& cfg,
                     const std::vector<double>& root_angles = {});

std::vector<RegularArc> trace_all_arcs(const KappaSystem& sys, const SolverConfig& cfg,
                                       const std::vector<double>& root_angles = {});

// Point of the arc at theta (predictor from the nearest sample, then Newton).
IntersectionPoint arc_point_at(const KappaSystem& sys, const RegularArc& arc, double theta, const SolverConfig& cfg);

}  // namespace platvol
