#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "platvol/braid.hpp"
#include "platvol/free_group.hpp"
#include "platvol/su2.hpp"

namespace platvol {

// Coordinate used on the trace factor of every marked representation space.
// Angle: the meridian angle theta (A = cos theta + sin theta P).
// Trace: t = 2 cos theta.
enum class TraceChart { Angle, Trace };

struct HandlebodyPoint {
    double theta = 0.0;
    std::vector<SpherePoint> axes;
    double t() const;
};

struct SpherePointTuple {
    double theta = 0.0;
    std::vector<SpherePoint> axes;
    double t() const;
    // |prod (cos theta + sin theta Q_j) - 1|
    double product_defect() const;
};

using RepAssignment = std::vector<UnitQuaternion>;

UnitQuaternion evaluate_word(const RepAssignment& rho, const FreeWord& w);

// 3 x 3r matrix D with D * (u_1, ..., u_r) = d/de log(ev_w(rho_e) ev_w(rho)^{-1}) at e = 0,
// where rho_e(s_j) = exp(e u_j) rho(s_j).
Eigen::MatrixXd word_differential(const RepAssignment& rho, const FreeWord& w);

// Chart conversions at A = cos theta + sin theta P.  A marked tangent vector is
// (dc, dP) with dc = d theta or d t per the chart; u = dA A^{-1}.
Su2Vector chart_to_u(double theta, const SpherePoint& P, double dc, const Su2Vector& dP, TraceChart chart);
void u_to_chart(double theta, const SpherePoint& Q, const Su2Vector& u, TraceChart chart, double& dc, Su2Vector& dQ);
// d theta / d c for the chart coordinate c.
double dtheta_dchart(double theta, TraceChart chart);

// kappa words of a plat on both sides, ready for evaluation.
struct KappaSystem {
    PlatPresentation plat;
    std::vector<FreeWord> k1, k2;

    KappaSystem() = default;
    explicit KappaSystem(const PlatPresentation& p);
    int n() const { return plat.n(); }
    int strands() const { return plat.strands(); }
    const std::vector<FreeWord>& words(int side) const { return side == 1 ? k1 : k2; }
};

// rho on the 2n t-generators: P for t^{(1)}, P2 for t^{(2)}.
RepAssignment rep_from_axes(double theta, const std::vector<SpherePoint>& P, const std::vector<SpherePoint>& P2);

SpherePointTuple kappa_bar(const KappaSystem& sys, int side, const HandlebodyPoint& p);
SpherePointTuple kappa_bar(const PlatPresentation& plat, int side, const HandlebodyPoint& p);

// Differential of kappa_bar in chart coordinates, (1 + 4n) x (1 + 2n), with
// tangent frames from tangent_frame() on both ends.  Also returns the image.
// frame_axes, when given, supplies the points whose frames are used on the
// target (so both sides share frames at a common image).
Eigen::MatrixXd kappa_bar_jacobian(const KappaSystem& sys, int side, const HandlebodyPoint& p, TraceChart chart,
                                   SpherePointTuple* image = nullptr,
                                   const std::vector<SpherePoint>* frame_axes = nullptr);

// Conjugation orbit directions (d/de of conjugation by exp(e i), exp(e j), exp(e k))
// in chart coordinates, (1 + 2m) x 3.  Throws ReducibleOrbit when rank deficient.
Eigen::MatrixXd orbit_basis(const std::vector<SpherePoint>& axes);

// Max over pairs of |P_a x P_b|.
double irreducibility(const std::vector<SpherePoint>& axes);

struct HandlebodyPair {
    HandlebodyPoint side1, side2;
};
// Conjugate so that P_1 = i and the first axis not parallel to it lies in the
// i-j plane with positive j component.  Throws Reducible when all axes are parallel.
HandlebodyPair gauge_fix(const HandlebodyPair& pair, double parallel_tol = 1e-9);
SpherePoint rotate_axis(const UnitQuaternion& g, const SpherePoint& P);

struct CohomologyDims {
    int h0 = 0;
    int h1 = 0;
    bool stable = true;       // dims unchanged when the threshold moves one decade either way
    double relator_defect = 0.0;
};
// Twisted (adjoint) cohomology dimensions from the Fox Jacobian of the presentation.
CohomologyDims twisted_cohomology_dims(const KnotGroupPresentation& pres, const RepAssignment& rho,
                                       double rel_threshold = 1e-7, double relator_tol = 1e-8);

// Numerical rank with singular values below rel * sigma_max counted as zero.
int numerical_rank(const Eigen::VectorXd& singular_values, double rel);

}  // namespace platvol
