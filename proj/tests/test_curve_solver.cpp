#include <cmath>

#include "doctest.h"
#include "platvol/knot_lab.hpp"
#include "platvol/rng.hpp"
#include "platvol/solver.hpp"

using namespace platvol;

namespace {

const KappaSystem& trefoil() {
    static KappaSystem s(make_plat("B4: 2 2 2"));
    return s;
}
const KappaSystem& cinquefoil() {
    static KappaSystem s(make_plat("B4: 2 2 2 2 2"));
    return s;
}

std::vector<SpherePoint> jitter(Rng& r, std::vector<SpherePoint> P, double eps) {
    for (auto& Q : P) Q = (Q + eps * Su2Vector(r.normal(), r.normal(), r.normal())).normalized();
    return P;
}

}  // namespace

TEST_CASE("residual") {
    SolverConfig cfg;
    auto pts = find_all_at_angle(trefoil(), M_PI / 2, cfg);
    REQUIRE(pts.size() == 1);
    const auto& x = pts[0];
    CHECK(residual(trefoil(), x.theta, x.P, x.P2).norm() < 1e-12);
    CHECK(residual(trefoil(), x.theta, x.P, x.P2).size() == 9);

    KappaSystem unknot(make_plat("B2:"));
    SpherePoint P = SpherePoint(0.3, -0.4, 0.5).normalized();
    CHECK(residual(unknot, 0.8, {P}, {unknot.plat.eps1[0] * unknot.plat.eps2[0] * P}).norm() < 1e-15);

    // linear growth under perturbation
    Su2Vector dir(0.2, 0.7, -0.3);
    auto bumped = [&](double e) {
        auto P1 = x.P;
        P1[1] = sphere_exp(P1[1], e * (dir - dir.dot(P1[1]) * P1[1]));
        return residual(trefoil(), x.theta, P1, x.P2).norm();
    };
    double ratio = bumped(2e-4) / bumped(1e-4);
    CHECK(ratio > 1.0);
    CHECK(ratio < 4.0);
}

TEST_CASE("solve at a trace value") {
    SolverConfig cfg;
    Rng r(2);
    auto ref = find_all_at_angle(trefoil(), M_PI / 2, cfg).at(0);
    IntersectionPoint x = solve_at_trace(trefoil(), 0.0, jitter(r, ref.P, 0.05), jitter(r, ref.P2, 0.05), cfg);
    CHECK(x.theta == doctest::Approx(M_PI / 2).epsilon(1e-14));
    CHECK(x.residual < 1e-12);
    CHECK(key_distance(invariant_traces(trefoil(), x), invariant_traces(trefoil(), ref)) < 1e-9);
    CHECK(omega_dtheta(trefoil(), x.theta, x.P, x.P2) == doctest::Approx(2.0).epsilon(1e-9));

    // no irreducible representation with theta_m below pi/6
    for (int t = 0; t < 10; ++t) {
        std::vector<SpherePoint> P = {r.sphere(), r.sphere()}, P2 = {r.sphere(), r.sphere()};
        bool failed = false;
        try {
            solve_at_trace(trefoil(), 1.99, P, P2, cfg);
        } catch (const NoConvergence&) {
            failed = true;
        } catch (const ConvergedToReducible&) {
            failed = true;
        }
        CHECK(failed);
    }
    // an exact abelian representation is rejected rather than returned
    std::vector<int> v = abelianization_map(wirtinger_presentation(trefoil().plat));
    std::vector<SpherePoint> ab1, ab2;
    for (int k = 0; k < 2; ++k) {
        ab1.push_back(v[k] * SpherePoint::UnitX());
        ab2.push_back(v[2 + k] * SpherePoint::UnitX());
    }
    CHECK(residual(trefoil(), 1.0, ab1, ab2).norm() < 1e-14);
    CHECK_THROWS_AS(solve_at_angle(trefoil(), 1.0, ab1, ab2, cfg), ConvergedToReducible);
}

TEST_CASE("all points at an angle") {
    SolverConfig cfg;
    CHECK(find_all_at_angle(trefoil(), M_PI / 2, cfg).size() == 1);
    CHECK(find_all_at_angle(cinquefoil(), M_PI / 2, cfg).size() == 2);
    CHECK(find_all_at_angle(trefoil(), 0.1, cfg).empty());
}

TEST_CASE("arc endpoints are Alexander roots") {
    SolverConfig cfg;
    auto roots3 = alexander_root_angles(alexander_polynomial(wirtinger_presentation(trefoil().plat)));
    auto arcs = trace_all_arcs(trefoil(), cfg, roots3);
    REQUIRE(arcs.size() == 1);
    CHECK(arcs[0].lower.kind == EndpointKind::AbelianLimit);
    CHECK(arcs[0].upper.kind == EndpointKind::AbelianLimit);
    CHECK(arcs[0].lower.root_matched);
    CHECK(arcs[0].upper.root_matched);
    CHECK(std::abs(arcs[0].theta_lo() - M_PI / 6) < 1e-12);
    CHECK(std::abs(arcs[0].theta_hi() - 5 * M_PI / 6) < 1e-12);
    // the closed form limits arccos(+-cos(pi/6)) bracket the traced samples
    CHECK(arcs[0].samples.front().theta > M_PI / 6);
    CHECK(arcs[0].samples.back().theta < 5 * M_PI / 6);
    CHECK(std::abs(arcs[0].lower.last_theta - M_PI / 6) < 1e-4);

    auto roots5 = alexander_root_angles(alexander_polynomial(wirtinger_presentation(cinquefoil().plat)));
    auto arcs5 = trace_all_arcs(cinquefoil(), cfg, roots5);
    REQUIRE(arcs5.size() == 2);
    CHECK(std::abs(arcs5[0].theta_lo() - M_PI / 10) < 1e-4);
    CHECK(std::abs(arcs5[0].theta_hi() - 9 * M_PI / 10) < 1e-4);
    CHECK(std::abs(arcs5[1].theta_lo() - 3 * M_PI / 10) < 1e-4);
    CHECK(std::abs(arcs5[1].theta_hi() - 7 * M_PI / 10) < 1e-4);

    // re-tracing from any sample, including ones next to an endpoint, stays on the same arc
    for (const auto& a : arcs5)
        for (std::size_t i = 0; i < a.samples.size(); i += 4) {
            RegularArc again = trace_arc(cinquefoil(), a.samples[i], cfg, roots5);
            CHECK(std::abs(again.theta_lo() - a.theta_lo()) < 1e-6);
            CHECK(std::abs(again.theta_hi() - a.theta_hi()) < 1e-6);
        }
}

TEST_CASE("regularity of torus knot points and of product points") {
    SolverConfig cfg;
    for (const KappaSystem* s : {&trefoil(), &cinquefoil()})
        for (double th : {0.7, 1.2, M_PI / 2, 2.0})
            for (const auto& x : find_all_at_angle(*s, th, cfg)) {
                RegularityReport rep = regularity_check(*s, x, cfg);
                CHECK(rep.regular);
                CHECK(rep.kernel_dim == 1);
                CHECK(rep.cohomology.h1 == 1);
            }

    // granny knot: a point where both factors are irreducible
    KappaSystem granny(connected_sum(trefoil().plat, trefoil().plat));
    int product = 0;
    for (const auto& x : find_all_at_angle(granny, 1.2, cfg)) {
        RegularityReport rep = regularity_check(granny, x, cfg);
        if (rep.cohomology.h1 >= 2) {
            ++product;
            CHECK_FALSE(rep.regular);
            CHECK(rep.kernel_dim >= 2);
        }
    }
    CHECK(product > 0);
}

TEST_CASE("determinism under a fixed seed") {
    SolverConfig cfg;
    cfg.seed = 99;
    auto a = find_all_at_angle(cinquefoil(), 1.3, cfg);
    auto b = find_all_at_angle(cinquefoil(), 1.3, cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < a[i].P.size(); ++k) {
            CHECK(a[i].P[k] == b[i].P[k]);
            CHECK(a[i].P2[k] == b[i].P2[k]);
        }
}
