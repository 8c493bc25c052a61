#include "platvol/volume.hpp"

#include <cmath>

#include "platvol/rng.hpp"

namespace platvol {

namespace {

Eigen::MatrixXd complement(const Eigen::MatrixXd& A) {
    const int N = static_cast<int>(A.rows()), k = static_cast<int>(A.cols());
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
    Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(N, N);
    return Q.rightCols(N - k);
}

Eigen::MatrixXd hcat(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd m(a.rows(), a.cols() + b.cols());
    m << a, b;
    return m;
}

}  // namespace

QuotientBasis handlebody_quotient_basis(const HandlebodyPoint& p, std::uint64_t mix_seed) {
    QuotientBasis out;
    out.orbit = orbit_basis(p.axes);
    Eigen::MatrixXd C = complement(out.orbit);
    if (mix_seed) {
        Rng rng(mix_seed);
        C = C * rng.rotation(static_cast<int>(C.cols())) + 0.3 * out.orbit * rng.gaussian(3, static_cast<int>(C.cols()));
    }
    double d = hcat(out.orbit, C).determinant();
    if (std::abs(d) < 1e-12) throw DegenerateBasis("handlebody complement is degenerate");
    C.col(0) /= d;
    out.normalization = 1.0 / d;
    out.vectors = C;
    return out;
}

Eigen::MatrixXd product_differential(const SpherePointTuple& x, TraceChart chart) {
    const int m = static_cast<int>(x.axes.size());
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(3, 1 + 2 * m);
    UnitQuaternion prefix;
    for (int j = 0; j < m; ++j) {
        const SpherePoint& Q = x.axes[j];
        auto [f1, f2] = tangent_frame(Q);
        Eigen::Matrix3d ad = adjoint_matrix(prefix);
        M.col(0) += ad * chart_to_u(x.theta, Q, 1.0, Su2Vector::Zero(), chart);
        M.col(1 + 2 * j) = ad * chart_to_u(x.theta, Q, 0.0, f1, chart);
        M.col(2 + 2 * j) = ad * chart_to_u(x.theta, Q, 0.0, f2, chart);
        prefix = UnitQuaternion::mul_raw(prefix, from_angle_axis(x.theta, Q));
    }
    return M;
}

QuotientBasis punctured_sphere_quotient_basis(const SpherePointTuple& x, TraceChart chart, std::uint64_t mix_seed,
                                              double constraint_tol) {
    if (x.product_defect() > constraint_tol) throw ConstraintViolated("product of sphere points is not 1");
    QuotientBasis out;
    out.orbit = orbit_basis(x.axes);
    Eigen::MatrixXd Dphi = product_differential(x, chart);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Dphi, Eigen::ComputeFullV);
    if (svd.singularValues()(2) < 1e-10) throw DegenerateBasis("product map is not a submersion here");
    const int N = static_cast<int>(Dphi.cols());
    Eigen::MatrixXd V = svd.matrixV();
    Eigen::MatrixXd s = V.leftCols(3);
    Eigen::MatrixXd K = V.rightCols(N - 3);
    Eigen::MatrixXd Ck = complement(K.transpose() * out.orbit);
    Eigen::MatrixXd C = K * Ck;
    if (mix_seed) {
        Rng rng(mix_seed ^ 0x9e3779b97f4a7c15ULL);
        C = C * rng.rotation(static_cast<int>(C.cols())) + 0.3 * out.orbit * rng.gaussian(3, static_cast<int>(C.cols()));
        s = s + K * rng.gaussian(N - 3, 3);
    }
    Eigen::MatrixXd full(N, N);
    full << out.orbit, C, s;
    double d = full.determinant() / (Dphi * s).determinant();
    if (std::abs(d) < 1e-12) throw DegenerateBasis("punctured sphere complement is degenerate");
    C.col(0) /= d;
    out.normalization = 1.0 / d;
    out.vectors = C;
    return out;
}

Transversality transversality(const KappaSystem& sys, double theta, const std::vector<SpherePoint>& P,
                              const std::vector<SpherePoint>& P2, const VolumeOptions& opt) {
    const int n = sys.n();
    if (n < 2) throw DomainError("transversality needs at least 4 strands");
    Transversality tr;
    HandlebodyPoint h1{theta, P}, h2{theta, P2};
    tr.J1 = kappa_bar_jacobian(sys, 1, h1, opt.chart, &tr.image);
    SpherePointTuple img2;
    tr.J2 = kappa_bar_jacobian(sys, 2, h2, opt.chart, &img2, &tr.image.axes);
    double gap = 0.0;
    for (int j = 0; j < 2 * n; ++j) gap = std::max(gap, (tr.image.axes[j] - img2.axes[j]).norm());
    if (gap > 1e-7) throw ConstraintViolated("kappa images disagree; not an intersection point");

    tr.hb1 = handlebody_quotient_basis(h1, opt.mix_seed);
    tr.hb2 = handlebody_quotient_basis(h2, opt.mix_seed ? opt.mix_seed + 1 : 0);
    tr.sphere = punctured_sphere_quotient_basis(tr.image, opt.chart, opt.mix_seed ? opt.mix_seed + 2 : 0, 1e-7);

    const int q = 2 * n - 2;
    Eigen::MatrixXd Y(tr.J1.rows(), 2 * q);
    Y << tr.J1 * tr.hb1.vectors, -tr.J2 * tr.hb2.vectors;
    Eigen::MatrixXd B = hcat(tr.sphere.orbit, tr.sphere.vectors);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(B);
    Eigen::MatrixXd z = qr.solve(Y);
    tr.projection_residual = (B * z - Y).norm() / std::max(1.0, Y.norm());
    tr.T = z.bottomRows(B.cols() - 3);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(tr.T, Eigen::ComputeFullV);
    tr.singular_values = svd.singularValues();
    tr.rank = numerical_rank(tr.singular_values, opt.rank_rel);
    tr.kernel_dim = static_cast<int>(tr.T.cols()) - tr.rank;
    if (tr.kernel_dim == 1) {
        Eigen::VectorXd k = svd.matrixV().col(tr.T.cols() - 1);
        double dth = dtheta_of(tr, k, theta, opt.chart);
        if (std::abs(dth) > 1e-12) {
            tr.kernel = k / dth;
            Eigen::Vector3d a = -z.topRows(3) * tr.kernel;
            tr.lift1 = tr.hb1.vectors * tr.kernel.head(q) + tr.hb1.orbit * a;
            tr.lift2 = tr.hb2.vectors * tr.kernel.tail(q);
        }
    }
    return tr;
}

double dtheta_of(const Transversality& tr, const Eigen::VectorXd& u, double theta, TraceChart chart) {
    const int q = static_cast<int>(tr.hb1.vectors.cols());
    return (tr.hb1.vectors.row(0) * u.head(q))(0) * dtheta_dchart(theta, chart);
}

double omega_value(const Transversality& tr, const Eigen::VectorXd& u, int n, const VolumeOptions& opt) {
    if (tr.kernel_dim != 1) throw NotRegular("transversality map has kernel of dimension " + std::to_string(tr.kernel_dim));
    if (u.size() != tr.T.cols()) throw RankMismatch("tangent vector has wrong size");
    const double scale = std::max(1.0, tr.T.norm()) * std::max(1.0, u.norm());
    if ((tr.T * u).norm() > 1e-6 * scale) throw DomainError("vector is not tangent to the curve");
    if (u.norm() == 0.0) return 0.0;
    Eigen::MatrixXd W = complement(u);
    if (opt.mix_seed) W = W * Rng(opt.mix_seed + 3).rotation(static_cast<int>(W.cols()));
    double num = hcat(u, W).determinant();
    double den = (tr.T * W).determinant();
    if (std::abs(den) < 1e-300) throw NotRegular("degenerate transversality map");
    double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return opt.ambient * sign * num / den;
}

double omega_dtheta(const KappaSystem& sys, double theta, const std::vector<SpherePoint>& P,
                    const std::vector<SpherePoint>& P2, const VolumeOptions& opt) {
    Transversality tr = transversality(sys, theta, P, P2, opt);
    if (tr.kernel_dim != 1) throw NotRegular("point is not regular");
    if (tr.kernel.size() == 0) throw DegenerateBasis("curve tangent is vertical in theta");
    return omega_value(tr, tr.kernel, sys.n(), opt);
}

std::vector<double> trace_derivatives(const KappaSystem& sys, const Transversality& tr, double theta,
                                      const std::vector<SpherePoint>& P, const std::vector<SpherePoint>& P2,
                                      const std::vector<FreeWord>& words, TraceChart chart) {
    if (tr.kernel.size() == 0) throw NotRegular("no curve tangent");
    const int n = sys.n();
    RepAssignment rho = rep_from_axes(theta, P, P2);
    Eigen::VectorXd u(6 * n);
    for (int side = 0; side < 2; ++side) {
        const auto& axes = side == 0 ? P : P2;
        const Eigen::VectorXd& lift = side == 0 ? tr.lift1 : tr.lift2;
        for (int k = 0; k < n; ++k) {
            auto [e1, e2] = tangent_frame(axes[k]);
            Su2Vector dP = lift(1 + 2 * k) * e1 + lift(2 + 2 * k) * e2;
            u.segment<3>(3 * (side * n + k)) = chart_to_u(theta, axes[k], lift(0), dP, chart);
        }
    }
    std::vector<double> out;
    for (const auto& w : words) {
        UnitQuaternion q = evaluate_word(rho, w);
        Su2Vector v = word_differential(rho, w) * u;
        // d Tr(exp(e v) q) = 2 Re(v q) = -2 v . im(q)
        out.push_back(-2.0 * v.dot(q.im()));
    }
    return out;
}

}  // namespace platvol
