#include "platvol/su2.hpp"

#include <algorithm>
#include <cmath>

namespace platvol {

double UnitQuaternion::norm() const { return std::sqrt(a * a + b * b + c * c + d * d); }

UnitQuaternion UnitQuaternion::normalized() const {
    double n = norm();
    return {a / n, b / n, c / n, d / n};
}

UnitQuaternion UnitQuaternion::mul_raw(const UnitQuaternion& p, const UnitQuaternion& q) {
    return {p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
            p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
            p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
            p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a};
}

UnitQuaternion operator*(const UnitQuaternion& p, const UnitQuaternion& q) {
    return UnitQuaternion::mul_raw(p, q).normalized();
}

bool approx_equal(const UnitQuaternion& p, const UnitQuaternion& q, double tol) {
    return std::abs(p.a - q.a) <= tol && std::abs(p.b - q.b) <= tol &&
           std::abs(p.c - q.c) <= tol && std::abs(p.d - q.d) <= tol;
}

UnitQuaternion from_angle_axis(double theta, const SpherePoint& P) {
    return UnitQuaternion(std::cos(theta), std::sin(theta) * P);
}

UnitQuaternion exp_su2(const Su2Vector& v) {
    double r = v.norm();
    if (r < 1e-300) return UnitQuaternion::identity();
    return UnitQuaternion(std::cos(r), (std::sin(r) / r) * v);
}

Su2Vector log_su2(const UnitQuaternion& q, double tol) {
    if (q.trace() <= -2.0 + tol) throw LogAtMinusOne("log at -1");
    Su2Vector im = q.im();
    double s = im.norm();
    if (s < 1e-300) return Su2Vector::Zero();
    double th = std::atan2(s, q.a);
    return (th / s) * im;
}

Su2Vector adjoint(const UnitQuaternion& q, const Su2Vector& v) {
    // Rodrigues form of q v q^{-1}; avoids two full products.
    Su2Vector w = q.im();
    Su2Vector t = 2.0 * w.cross(v);
    return v + q.a * t + w.cross(t);
}

Eigen::Matrix3d adjoint_matrix(const UnitQuaternion& q) {
    Eigen::Matrix3d M;
    for (int c = 0; c < 3; ++c) M.col(c) = adjoint(q, Su2Vector::Unit(c));
    return M;
}

TraceAxis trace_axis(const UnitQuaternion& q) {
    double th = std::acos(std::clamp(q.a, -1.0, 1.0));
    if (std::abs(q.trace()) > 2.0 - 1e-9) throw CentralElement(th);
    Su2Vector im = q.im();
    return {std::atan2(im.norm(), q.a), im.normalized()};
}

double eta_value(const Su2Vector& v1, const Su2Vector& v2, const Su2Vector& v3) {
    return v1.dot(v2.cross(v3));
}

double nu_value(const SpherePoint& P, const Su2Vector& a, const Su2Vector& b) {
    return -0.5 * P.dot(a.cross(b));
}

std::pair<Su2Vector, Su2Vector> tangent_frame(const SpherePoint& P) {
    Su2Vector ref = std::abs(P.x()) < 0.9 ? Su2Vector::UnitX() : Su2Vector::UnitY();
    Su2Vector e1 = P.cross(ref).normalized();
    Su2Vector e2 = P.cross(e1);
    return {e1, e2};
}

SpherePoint sphere_exp(const SpherePoint& P, const Su2Vector& dP) {
    double r = dP.norm();
    if (r < 1e-300) return P;
    return (std::cos(r) * P + (std::sin(r) / r) * dP).normalized();
}

}  // namespace platvol
