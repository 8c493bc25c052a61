#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "platvol/integrate.hpp"
#include "platvol/knot_lab.hpp"
#include "platvol/rng.hpp"

using namespace platvol;

namespace {

const KappaSystem& trefoil() {
    static KappaSystem s(make_plat("B4: 2 2 2"));
    return s;
}

IntersectionPoint trefoil_point(double theta) {
    SolverConfig cfg;
    auto pts = find_all_at_angle(trefoil(), theta, cfg);
    REQUIRE(pts.size() == 1);
    return pts[0];
}

std::vector<RegularArc> arcs_of(const KappaSystem& sys) {
    SolverConfig cfg;
    return trace_all_arcs(sys, cfg, alexander_root_angles(alexander_polynomial(wirtinger_presentation(sys.plat))));
}

}  // namespace

TEST_CASE("handlebody quotient basis") {
    Rng r(41);
    HandlebodyPoint p{1.1, {r.sphere(), r.sphere()}};
    QuotientBasis b = handlebody_quotient_basis(p);
    CHECK(b.vectors.cols() == 2);
    Eigen::MatrixXd full(5, 5);
    full << b.orbit, b.vectors;
    CHECK(std::abs(full.determinant() - 1.0) < 1e-10);
    CHECK_THROWS_AS(handlebody_quotient_basis(HandlebodyPoint{1.1, {SpherePoint::UnitY(), SpherePoint::UnitY()}}),
                    ReducibleOrbit);
}

TEST_CASE("punctured sphere quotient basis") {
    IntersectionPoint x = trefoil_point(1.3);
    SpherePointTuple img = kappa_bar(trefoil(), 1, HandlebodyPoint{x.theta, x.P});
    QuotientBasis b = punctured_sphere_quotient_basis(img, TraceChart::Angle);
    CHECK(b.vectors.cols() == 3);
    CHECK((product_differential(img, TraceChart::Angle) * b.vectors).norm() < 1e-10);

    SpherePointTuple flat{1.3, {SpherePoint::UnitX(), -SpherePoint::UnitX(), SpherePoint::UnitX(), -SpherePoint::UnitX()}};
    CHECK_THROWS_AS(punctured_sphere_quotient_basis(flat, TraceChart::Angle), ReducibleOrbit);
}

TEST_CASE("omega does not depend on complement or section choices") {
    IntersectionPoint x = trefoil_point(1.7);
    const double base = omega_dtheta(trefoil(), x.theta, x.P, x.P2);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        VolumeOptions opt;
        opt.mix_seed = seed;
        CHECK(std::abs(omega_dtheta(trefoil(), x.theta, x.P, x.P2, opt) - base) < 1e-9);
    }
}

TEST_CASE("trefoil omega values") {
    IntersectionPoint x = trefoil_point(M_PI / 2);
    CHECK(omega_dtheta(trefoil(), x.theta, x.P, x.P2) == doctest::Approx(2.0).epsilon(1e-10));
    // d/dt_param at t_param = 1/2: dtheta_m/dt = pi cos(pi/6) sin(pi/2) / sqrt(1 - 0)
    const double dtheta_dt = M_PI * std::cos(M_PI / 6);
    CHECK(omega_dtheta(trefoil(), x.theta, x.P, x.P2) * dtheta_dt ==
          doctest::Approx(M_PI * std::sqrt(3.0)).epsilon(1e-10));

    Transversality tr = transversality(trefoil(), x.theta, x.P, x.P2);
    Rng r(3);
    for (int t = 0; t < 10; ++t) {
        double c = r.uniform(-5, 5);
        CHECK(std::abs(omega_value(tr, c * tr.kernel, 2) - c * omega_value(tr, tr.kernel, 2)) < 1e-12);
    }
}

TEST_CASE("integrals over arcs") {
    auto arcs = arcs_of(trefoil());
    REQUIRE(arcs.size() == 1);
    SolverConfig cfg;
    IntegralResult a = integrate_arc(trefoil(), arcs[0], cfg);
    CHECK(!a.divergent);
    CHECK(std::abs(a.value - 4 * M_PI / 3) < 1e-6);

    RegularArc rev = arcs[0];
    std::reverse(rev.samples.begin(), rev.samples.end());
    IntegralResult b = integrate_arc(trefoil(), rev, cfg);
    CHECK(std::abs(a.value - b.value) < 1e-9);

    KappaSystem q5(make_plat("B4: 2 2 2 2 2"));
    auto arcs5 = arcs_of(q5);
    REQUIRE(arcs5.size() == 2);
    double signed_sum = 0;
    for (const auto& arc : arcs5) {
        int l = torus_arc_index(5, arc.theta_lo(), arc.theta_hi());
        signed_sum += (l % 2 ? 1 : -1) * integrate_arc(q5, arc, cfg).value;
    }
    const double expect = 32 * M_PI / 25 * std::pow(std::sin(M_PI / 5), 2) -
                          16 * M_PI / 25 * std::pow(std::sin(3 * M_PI / 5), 2);
    CHECK(std::abs(signed_sum - expect) < 1e-6);
}

TEST_CASE("orientation signs") {
    auto arcs = arcs_of(trefoil());
    REQUIRE(arcs.size() == 1);
    auto s = orientation_sign(trefoil(), arcs[0]);
    CHECK(std::all_of(s.begin(), s.end(), [&](int v) { return v == s.front() && v != 0; }));

    VolumeOptions flip;
    flip.ambient = -1;
    auto f = orientation_sign(trefoil(), arcs[0], flip);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(f[i] == -s[i]);

    KappaSystem m(mirror(trefoil().plat));
    auto marcs = arcs_of(m);
    REQUIRE(marcs.size() == 1);
    for (int v : orientation_sign(m, marcs[0])) CHECK(v == -s.front());
}
