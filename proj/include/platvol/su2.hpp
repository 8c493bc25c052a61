#pragma once

#include <Eigen/Dense>
#include <utility>

#include "platvol/errors.hpp"

namespace platvol {

// Pure quaternions x i + y j + z k.  The basis (i, j, k) is orthonormal for
// <x, y> = -1/2 Tr(xy), so the Euclidean dot product of coefficient vectors is
// the su(2) inner product.
using Su2Vector = Eigen::Vector3d;
using SpherePoint = Eigen::Vector3d;

struct UnitQuaternion {
    double a = 1.0, b = 0.0, c = 0.0, d = 0.0;

    UnitQuaternion() = default;
    UnitQuaternion(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}
    UnitQuaternion(double re, const Su2Vector& im) : a(re), b(im.x()), c(im.y()), d(im.z()) {}

    static UnitQuaternion identity() { return {}; }
    static UnitQuaternion i() { return {0, 1, 0, 0}; }
    static UnitQuaternion j() { return {0, 0, 1, 0}; }
    static UnitQuaternion k() { return {0, 0, 0, 1}; }

    Su2Vector im() const { return {b, c, d}; }
    double trace() const { return 2.0 * a; }
    double norm() const;

    UnitQuaternion conjugate() const { return {a, -b, -c, -d}; }
    UnitQuaternion inverse() const { return conjugate(); }
    UnitQuaternion normalized() const;

    // Raw product without renormalization (hot loops renormalize once at the end).
    static UnitQuaternion mul_raw(const UnitQuaternion& p, const UnitQuaternion& q);
};

UnitQuaternion operator*(const UnitQuaternion& p, const UnitQuaternion& q);
bool approx_equal(const UnitQuaternion& p, const UnitQuaternion& q, double tol);

// cos(theta) + sin(theta) P
UnitQuaternion from_angle_axis(double theta, const SpherePoint& P);

UnitQuaternion exp_su2(const Su2Vector& v);
// Principal logarithm, |result| < pi.  Throws LogAtMinusOne when Tr(q) <= -2 + tol.
Su2Vector log_su2(const UnitQuaternion& q, double tol = 1e-9);

// Ad_q(v) = q v q^{-1}
Su2Vector adjoint(const UnitQuaternion& q, const Su2Vector& v);
Eigen::Matrix3d adjoint_matrix(const UnitQuaternion& q);

struct TraceAxis {
    double theta;  // in [0, pi]
    SpherePoint axis;
};
// q = cos(theta) + sin(theta) P.  Throws CentralElement when |Tr q| > 2 - 1e-9.
TraceAxis trace_axis(const UnitQuaternion& q);

// eta in the left trivialization: determinant of the coefficient matrix.
double eta_value(const Su2Vector& v1, const Su2Vector& v2, const Su2Vector& v3);

// nu = eta / dt on the trace-zero sphere.  For an oriented frame (e1, e2) with
// e1 x e2 = P this is -1/2; |int_{S^2} nu| = 2 pi.
double nu_value(const SpherePoint& P, const Su2Vector& a, const Su2Vector& b);

// Deterministic orthonormal frame (e1, e2) of T_P S^2 with e1 x e2 = P.
std::pair<Su2Vector, Su2Vector> tangent_frame(const SpherePoint& P);

// Move P along the tangent vector dP by the great-circle exponential.
SpherePoint sphere_exp(const SpherePoint& P, const Su2Vector& dP);

}  // namespace platvol
