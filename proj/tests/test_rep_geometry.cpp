#include <cmath>

#include "doctest.h"
#include "platvol/knot_lab.hpp"
#include "platvol/rep_space.hpp"
#include "platvol/rng.hpp"
#include "platvol/solver.hpp"

using namespace platvol;

namespace {

UnitQuaternion random_q(Rng& r) {
    return UnitQuaternion(r.normal(), r.normal(), r.normal(), r.normal()).normalized();
}

FreeWord random_word(Rng& r, int rank, int maxlen) {
    FreeWord out(rank);
    int len = 1 + static_cast<int>(r.uniform() * maxlen);
    for (int i = 0; i < len; ++i) out.append(Letter{1 + static_cast<int>(r.uniform() * rank), r.uniform() < 0.5 ? 1 : -1});
    return out;
}

// Central difference of log(ev_w(rho_e) ev_w(rho)^{-1}) along rho_e(s_j) = exp(e u_j) rho(s_j).
Su2Vector fd_differential(const RepAssignment& rho, const FreeWord& w, const std::vector<Su2Vector>& u, double h) {
    auto moved = [&](double e) {
        RepAssignment r = rho;
        for (std::size_t j = 0; j < r.size(); ++j) r[j] = exp_su2(e * u[j]) * rho[j];
        return evaluate_word(r, w);
    };
    UnitQuaternion base_inv = evaluate_word(rho, w).inverse();
    return (log_su2(moved(h) * base_inv) - log_su2(moved(-h) * base_inv)) / (2 * h);
}

double word_trace(double theta, const std::vector<SpherePoint>& axes, const FreeWord& w) {
    RepAssignment rho;
    for (const auto& P : axes) rho.push_back(from_angle_axis(theta, P));
    return evaluate_word(rho, w).trace();
}

}  // namespace

TEST_CASE("evaluate_word") {
    RepAssignment rho = {UnitQuaternion::i(), UnitQuaternion::j()};
    UnitQuaternion sq = evaluate_word(rho, FreeWord::parse(2, "s1 s1"));
    CHECK(std::abs(sq.a + 1) < 1e-15);
    UnitQuaternion e = evaluate_word(rho, FreeWord(2));
    CHECK(e.a == 1.0);
    Rng r(31);
    for (int t = 0; t < 200; ++t) {
        RepAssignment x = {random_q(r), random_q(r), random_q(r)};
        FreeWord u = random_word(r, 3, 6), v = random_word(r, 3, 6);
        UnitQuaternion lhs = evaluate_word(x, u * v), rhs = evaluate_word(x, u) * evaluate_word(x, v);
        CHECK(approx_equal(lhs, rhs, 1e-12));
    }
}

TEST_CASE("word_differential") {
    Rng r(8);
    RepAssignment rho = {random_q(r), random_q(r)};
    Su2Vector v(0.3, -0.2, 0.7);
    Eigen::VectorXd u = Eigen::VectorXd::Zero(6);
    u.head<3>() = v;
    Eigen::MatrixXd D1 = word_differential(rho, FreeWord::parse(2, "s1"));
    CHECK((D1 * u - v).norm() < 1e-14);
    Eigen::MatrixXd Dinv = word_differential(rho, FreeWord::parse(2, "s1^-1"));
    CHECK((Dinv * u + adjoint(rho[0].inverse(), v)).norm() < 1e-14);

    for (int t = 0; t < 100; ++t) {
        RepAssignment x = {random_q(r), random_q(r), random_q(r)};
        FreeWord w = random_word(r, 3, 12);
        std::vector<Su2Vector> dirs;
        Eigen::VectorXd flat(9);
        for (int j = 0; j < 3; ++j) {
            dirs.emplace_back(r.normal(), r.normal(), r.normal());
            flat.segment<3>(3 * j) = dirs.back();
        }
        Su2Vector exact = word_differential(x, w) * flat;
        Su2Vector fd = fd_differential(x, w, dirs, 1e-5);
        CHECK((exact - fd).norm() <= 1e-6 * std::max(1.0, exact.norm()));
    }
}

TEST_CASE("kappa_bar") {
    PlatPresentation u = make_plat("B2:");
    HandlebodyPoint p{M_PI / 2, {SpherePoint::UnitX()}};
    SpherePointTuple x = kappa_bar(u, 1, p);
    CHECK(std::abs(x.t()) < 1e-15);
    CHECK((x.axes[0] - SpherePoint::UnitX()).norm() < 1e-15);
    CHECK((x.axes[1] + SpherePoint::UnitX()).norm() < 1e-15);
    // side 2 of the trivial braid repeats the side 1 pattern with eps^(2)
    SpherePointTuple y = kappa_bar(u, 2, p);
    const double s = u.eps2[0] * u.eps1[0];
    CHECK((y.axes[0] - s * x.axes[0]).norm() < 1e-15);
    CHECK((y.axes[1] - s * x.axes[1]).norm() < 1e-15);

    Rng r(12);
    KappaSystem sys(make_plat("B4: 2 2 2"));
    for (int t = 0; t < 100; ++t) {
        HandlebodyPoint q{r.uniform(0.1, 3.0), {r.sphere(), r.sphere()}};
        for (int side = 1; side <= 2; ++side) CHECK(kappa_bar(sys, side, q).product_defect() < 1e-10);
    }
}

TEST_CASE("orbit basis") {
    std::vector<SpherePoint> ab = {SpherePoint::UnitX(), SpherePoint::UnitX()};
    CHECK_THROWS_AS(orbit_basis(ab), ReducibleOrbit);
    Rng r(19);
    std::vector<SpherePoint> axes = {r.sphere(), r.sphere()};
    Eigen::MatrixXd O = orbit_basis(axes);
    CHECK(Eigen::JacobiSVD<Eigen::MatrixXd>(O).rank() == 3);

    // conjugation invariant functions are constant along the orbit
    const double theta = 1.1, h = 1e-5;
    for (const char* word : {"s1 s2", "s1 s2^-1 s1 s2 s2", "s2 s1 s1"}) {
        FreeWord w = FreeWord::parse(2, word);
        for (int c = 0; c < 3; ++c) {
            auto shifted = [&](double e) {
                std::vector<SpherePoint> a = axes;
                for (std::size_t k = 0; k < a.size(); ++k) {
                    auto [e1, e2] = tangent_frame(axes[k]);
                    a[k] = sphere_exp(axes[k], e * (O(1 + 2 * k, c) * e1 + O(2 + 2 * k, c) * e2));
                }
                return word_trace(theta + e * O(0, c), a, w);
            };
            CHECK(std::abs((shifted(h) - shifted(-h)) / (2 * h)) < 1e-9);
        }
    }
}

TEST_CASE("gauge fix") {
    Rng r(23);
    HandlebodyPair p{{1.0, {r.sphere(), r.sphere()}}, {1.0, {r.sphere(), r.sphere()}}};
    HandlebodyPair s = gauge_fix(p);
    HandlebodyPair again = gauge_fix(s);
    for (int k = 0; k < 2; ++k) {
        CHECK((again.side1.axes[k] - s.side1.axes[k]).norm() < 1e-14);
        CHECK((again.side2.axes[k] - s.side2.axes[k]).norm() < 1e-14);
    }
    for (int t = 0; t < 20; ++t) {
        UnitQuaternion g = random_q(r);
        HandlebodyPair c = s;
        for (auto& P : c.side1.axes) P = rotate_axis(g, P);
        for (auto& P : c.side2.axes) P = rotate_axis(g, P);
        HandlebodyPair back = gauge_fix(c);
        for (int k = 0; k < 2; ++k) {
            CHECK((back.side1.axes[k] - s.side1.axes[k]).norm() < 1e-10);
            CHECK((back.side2.axes[k] - s.side2.axes[k]).norm() < 1e-10);
        }
    }
    HandlebodyPair flat{{1.0, {SpherePoint::UnitZ(), SpherePoint::UnitZ()}}, {1.0, {-SpherePoint::UnitZ()}}};
    CHECK_THROWS_AS(gauge_fix(flat), Reducible);
}

TEST_CASE("twisted cohomology") {
    PlatPresentation plat = make_plat("B4: 2 2 2");
    KnotGroupPresentation pres = wirtinger_presentation(plat);
    KappaSystem sys(plat);
    SolverConfig cfg;
    auto pts = find_all_at_angle(sys, M_PI / 2, cfg);
    REQUIRE(pts.size() == 1);
    CohomologyDims d = twisted_cohomology_dims(pres, rep_from_axes(pts[0].theta, pts[0].P, pts[0].P2));
    CHECK(d.h0 == 0);
    CHECK(d.h1 == 1);

    // abelian representation at a non-root angle
    std::vector<int> v = abelianization_map(pres);
    const double theta = 1.0;
    IntegerPolynomial delta = alexander_polynomial(pres);
    REQUIRE(abelian_regular(theta, delta));
    RepAssignment ab;
    for (int e : v) ab.push_back(from_angle_axis(theta, e * SpherePoint::UnitX()));
    CHECK(twisted_cohomology_dims(pres, ab).h1 == 1);

    RepAssignment trivial(pres.generators, UnitQuaternion::identity());
    CHECK(twisted_cohomology_dims(pres, trivial).h0 == 3);
}
