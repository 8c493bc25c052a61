#include "platvol/rep_space.hpp"

#include <algorithm>
#include <cmath>

namespace platvol {

double HandlebodyPoint::t() const { return 2.0 * std::cos(theta); }
double SpherePointTuple::t() const { return 2.0 * std::cos(theta); }

double SpherePointTuple::product_defect() const {
    UnitQuaternion p;
    for (const auto& Q : axes) p = UnitQuaternion::mul_raw(p, from_angle_axis(theta, Q));
    return std::sqrt((p.a - 1) * (p.a - 1) + p.b * p.b + p.c * p.c + p.d * p.d);
}

UnitQuaternion evaluate_word(const RepAssignment& rho, const FreeWord& w) {
    if (static_cast<int>(rho.size()) != w.rank()) throw RankMismatch("representation size does not match word rank");
    UnitQuaternion r;
    for (const auto& l : w.letters()) {
        const auto& g = rho[l.gen - 1];
        r = UnitQuaternion::mul_raw(r, l.exp > 0 ? g : g.inverse());
    }
    return r.normalized();
}

Eigen::MatrixXd word_differential(const RepAssignment& rho, const FreeWord& w) {
    if (static_cast<int>(rho.size()) != w.rank()) throw RankMismatch("representation size does not match word rank");
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(3, 3 * w.rank());
    UnitQuaternion prefix;
    for (const auto& l : w.letters()) {
        const auto& g = rho[l.gen - 1];
        if (l.exp > 0) {
            D.block<3, 3>(0, 3 * (l.gen - 1)) += adjoint_matrix(prefix);
            prefix = UnitQuaternion::mul_raw(prefix, g);
        } else {
            prefix = UnitQuaternion::mul_raw(prefix, g.inverse());
            D.block<3, 3>(0, 3 * (l.gen - 1)) -= adjoint_matrix(prefix);
        }
    }
    return D;
}

double dtheta_dchart(double theta, TraceChart chart) {
    return chart == TraceChart::Angle ? 1.0 : -1.0 / (2.0 * std::sin(theta));
}

Su2Vector chart_to_u(double theta, const SpherePoint& P, double dc, const Su2Vector& dP, TraceChart chart) {
    const double s = std::sin(theta), c = std::cos(theta);
    const double dth = dc * dtheta_dchart(theta, chart);
    return dth * P + s * (c * dP + s * P.cross(dP));
}

void u_to_chart(double theta, const SpherePoint& Q, const Su2Vector& u, TraceChart chart, double& dc, Su2Vector& dQ) {
    const double s = std::sin(theta), c = std::cos(theta);
    const double dth = u.dot(Q);
    Su2Vector perp = u - dth * Q;
    dQ = (c * perp - s * Q.cross(perp)) / s;
    dc = dth / dtheta_dchart(theta, chart);
}

KappaSystem::KappaSystem(const PlatPresentation& p) : plat(p), k1(kappa_words(p, 1)), k2(kappa_words(p, 2)) {}

RepAssignment rep_from_axes(double theta, const std::vector<SpherePoint>& P, const std::vector<SpherePoint>& P2) {
    RepAssignment rho;
    rho.reserve(P.size() + P2.size());
    for (const auto& a : P) rho.push_back(from_angle_axis(theta, a));
    for (const auto& a : P2) rho.push_back(from_angle_axis(theta, a));
    return rho;
}

namespace {

RepAssignment side_rep(int n, int side, const HandlebodyPoint& p) {
    if (static_cast<int>(p.axes.size()) != n) throw RankMismatch("handlebody point has wrong number of axes");
    std::vector<SpherePoint> other(n, SpherePoint::UnitX());
    return side == 1 ? rep_from_axes(p.theta, p.axes, other) : rep_from_axes(p.theta, other, p.axes);
}

SpherePoint axis_of(const UnitQuaternion& q) {
    Su2Vector im = q.im();
    double s = im.norm();
    if (s < 1e-14) throw CentralElement(std::acos(std::clamp(q.a, -1.0, 1.0)));
    return im / s;
}

}  // namespace

SpherePointTuple kappa_bar(const KappaSystem& sys, int side, const HandlebodyPoint& p) {
    RepAssignment rho = side_rep(sys.n(), side, p);
    SpherePointTuple out;
    out.theta = p.theta;
    for (const auto& w : sys.words(side)) out.axes.push_back(axis_of(evaluate_word(rho, w)));
    return out;
}

SpherePointTuple kappa_bar(const PlatPresentation& plat, int side, const HandlebodyPoint& p) {
    return kappa_bar(KappaSystem(plat), side, p);
}

Eigen::MatrixXd kappa_bar_jacobian(const KappaSystem& sys, int side, const HandlebodyPoint& p, TraceChart chart,
                                   SpherePointTuple* image, const std::vector<SpherePoint>* frame_axes) {
    const int n = sys.n(), m = sys.strands();
    RepAssignment rho = side_rep(n, side, p);
    const int offset = side == 1 ? 0 : n;

    // u-perturbations of all 2n generators for each chart column.
    Eigen::MatrixXd U = Eigen::MatrixXd::Zero(3 * m, 1 + 2 * n);
    for (int k = 0; k < n; ++k) {
        const auto& P = p.axes[k];
        auto [e1, e2] = tangent_frame(P);
        const int g = offset + k;
        U.block<3, 1>(3 * g, 0) = chart_to_u(p.theta, P, 1.0, Su2Vector::Zero(), chart);
        U.block<3, 1>(3 * g, 1 + 2 * k) = chart_to_u(p.theta, P, 0.0, e1, chart);
        U.block<3, 1>(3 * g, 2 + 2 * k) = chart_to_u(p.theta, P, 0.0, e2, chart);
    }

    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(1 + 2 * m, 1 + 2 * n);
    SpherePointTuple img;
    img.theta = p.theta;
    const auto& words = sys.words(side);
    for (int j = 0; j < m; ++j) {
        SpherePoint Q = axis_of(evaluate_word(rho, words[j]));
        img.axes.push_back(Q);
        auto [f1, f2] = tangent_frame(frame_axes ? (*frame_axes)[j] : Q);
        Eigen::MatrixXd V = word_differential(rho, words[j]) * U;
        for (int c = 0; c < V.cols(); ++c) {
            double dc;
            Su2Vector dQ;
            u_to_chart(p.theta, Q, V.col(c), chart, dc, dQ);
            if (j == 0) J(0, c) = dc;
            J(1 + 2 * j, c) = dQ.dot(f1);
            J(2 + 2 * j, c) = dQ.dot(f2);
        }
    }
    if (image) *image = img;
    return J;
}

Eigen::MatrixXd orbit_basis(const std::vector<SpherePoint>& axes) {
    const int m = static_cast<int>(axes.size());
    Eigen::MatrixXd O = Eigen::MatrixXd::Zero(1 + 2 * m, 3);
    for (int x = 0; x < 3; ++x) {
        for (int k = 0; k < m; ++k) {
            auto [e1, e2] = tangent_frame(axes[k]);
            Su2Vector d = 2.0 * Su2Vector::Unit(x).cross(axes[k]);
            O(1 + 2 * k, x) = d.dot(e1);
            O(2 + 2 * k, x) = d.dot(e2);
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(O);
    if (svd.singularValues()(2) < 1e-8) throw ReducibleOrbit("conjugation orbit is degenerate");
    return O;
}

double irreducibility(const std::vector<SpherePoint>& axes) {
    double best = 0.0;
    for (std::size_t a = 0; a < axes.size(); ++a)
        for (std::size_t b = a + 1; b < axes.size(); ++b) best = std::max(best, axes[a].cross(axes[b]).norm());
    return best;
}

SpherePoint rotate_axis(const UnitQuaternion& g, const SpherePoint& P) { return adjoint(g, P).normalized(); }

HandlebodyPair gauge_fix(const HandlebodyPair& pair, double parallel_tol) {
    std::vector<SpherePoint> all = pair.side1.axes;
    all.insert(all.end(), pair.side2.axes.begin(), pair.side2.axes.end());
    const SpherePoint& P1 = all.front();
    const Su2Vector ex = Su2Vector::UnitX();

    UnitQuaternion g;
    Su2Vector ax = P1.cross(ex);
    double s = ax.norm(), c = P1.dot(ex);
    if (s < 1e-15) {
        g = c > 0 ? UnitQuaternion() : UnitQuaternion(0, 0, 1, 0);
    } else {
        double alpha = std::atan2(s, c);
        g = UnitQuaternion(std::cos(alpha / 2), std::sin(alpha / 2) * ax / s);
    }
    std::size_t second = all.size();
    for (std::size_t a = 1; a < all.size(); ++a) {
        SpherePoint Q = rotate_axis(g, all[a]);
        if (ex.cross(Q).norm() > parallel_tol) {
            second = a;
            double beta = -std::atan2(Q.z(), Q.y());
            g = UnitQuaternion(std::cos(beta / 2), std::sin(beta / 2) * ex) * g;
            break;
        }
    }
    if (second == all.size()) throw Reducible("all axes parallel");

    HandlebodyPair out = pair;
    for (auto& P : out.side1.axes) P = rotate_axis(g, P);
    for (auto& P : out.side2.axes) P = rotate_axis(g, P);
    out.side1.axes[0] = ex;
    return out;
}

int numerical_rank(const Eigen::VectorXd& sv, double rel) {
    if (sv.size() == 0) return 0;
    double top = sv.maxCoeff();
    if (top <= 0) return 0;
    int r = 0;
    for (int i = 0; i < sv.size(); ++i) r += sv(i) > rel * top;
    return r;
}

CohomologyDims twisted_cohomology_dims(const KnotGroupPresentation& pres, const RepAssignment& rho,
                                       double rel_threshold, double relator_tol) {
    const int G = pres.generators, R = static_cast<int>(pres.relators.size());
    if (static_cast<int>(rho.size()) != G) throw RankMismatch("representation size mismatch");
    CohomologyDims out;
    Eigen::MatrixXd F(3 * R, 3 * G);
    for (int r = 0; r < R; ++r) {
        F.block(3 * r, 0, 3, 3 * G) = word_differential(rho, pres.relators[r]);
        UnitQuaternion v = evaluate_word(rho, pres.relators[r]);
        out.relator_defect = std::max(out.relator_defect, log_su2(v).norm());
    }
    if (out.relator_defect > relator_tol) throw NotARepresentation("relators violated");
    Eigen::MatrixXd B(3 * G, 3);
    for (int g = 0; g < G; ++g) B.block<3, 3>(3 * g, 0) = Eigen::Matrix3d::Identity() - adjoint_matrix(rho[g]);

    Eigen::VectorXd sf = Eigen::JacobiSVD<Eigen::MatrixXd>(F).singularValues();
    Eigen::VectorXd sb = Eigen::JacobiSVD<Eigen::MatrixXd>(B).singularValues();
    auto dims = [&](double rel) {
        int rb = numerical_rank(sb, rel);
        int rf = numerical_rank(sf, rel);
        return std::pair<int, int>{3 - rb, 3 * G - rf - rb};
    };
    auto [h0, h1] = dims(rel_threshold);
    out.h0 = h0;
    out.h1 = h1;
    out.stable = dims(rel_threshold * 10) == dims(rel_threshold) && dims(rel_threshold / 10) == dims(rel_threshold);
    return out;
}

}  // namespace platvol
