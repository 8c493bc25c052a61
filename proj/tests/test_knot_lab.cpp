#include <cmath>

#include "doctest.h"
#include "platvol/knot_lab.hpp"

using namespace platvol;

namespace {

IntegerPolynomial delta_of(const char* plat) { return alexander_polynomial(wirtinger_presentation(make_plat(plat))); }

}  // namespace

TEST_CASE("Laurent arithmetic") {
    auto t = LaurentPolynomial::monomial(1, 1), one = LaurentPolynomial::constant(1);
    auto p = (t - one) * (t * t - t + one);
    CHECK(p.exact_div(t - one) == t * t - t + one);
    CHECK_THROWS_AS((t * t + one).exact_div(t - one), DomainError);
    auto inv = LaurentPolynomial::monomial(1, -1);
    CHECK((t * inv) == one);
}

TEST_CASE("Alexander polynomials") {
    CHECK(delta_of("B4: 2 2 2").coeffs == std::vector<long>{1, -1, 1});
    CHECK(delta_of("B2:").coeffs == std::vector<long>{1});
    CHECK(delta_of("B4: 2 2 2 2 2").coeffs == std::vector<long>{1, -1, 1, -1, 1});
    CHECK(delta_of("B4: 2 2 2").to_string() == "t^2 - t + 1");
    // figure eight as a 4-plat; its roots are real, so no abelian endpoint angles
    IntegerPolynomial f8 = delta_of("B4: 2 2 -1 2");
    CHECK(f8.coeffs == std::vector<long>{1, -3, 1});
    CHECK(alexander_root_angles(f8).empty());
    for (const char* k : {"B4: 2 2 2", "B4: 2 2 2 2 2", "B6: 2 2 2 4 4 4", "B4: 2 2 -1 2"}) {
        IntegerPolynomial d = delta_of(k);
        CHECK(std::abs(d.eval(1.0).real()) == doctest::Approx(1.0));
        for (int i = 0; i <= d.degree(); ++i) CHECK(d.coeffs[i] == d.coeffs[d.degree() - i]);
    }
}

TEST_CASE("Alexander polynomial is invariant under plat moves") {
    PlatPresentation t = make_plat("B4: 2 2 2");
    IntegerPolynomial d = alexander_polynomial(wirtinger_presentation(t));
    const int m = t.strands();
    std::vector<PlatPresentation> moved = {
        stabilize(t),
        multiply_left(h_generator(HildenGenerator::Sigma1, m), t),
        multiply_right(t, h_generator(HildenGenerator::Sigma2Sigma1Sq, m)),
        multiply_left(h_generator(HildenGenerator::Swap, m), t),
        mirror(t),
        reverse_orientation(t),
        with_splitting(t, Splitting::Alternate),
        stabilize(stabilize(t)),
    };
    for (const auto& p : moved) CHECK(alexander_polynomial(wirtinger_presentation(p)) == d);
}

TEST_CASE("abelian regularity") {
    IntegerPolynomial d = delta_of("B4: 2 2 2");
    CHECK_FALSE(abelian_regular(M_PI / 6, d));
    CHECK(abelian_regular(M_PI / 3, d));
    CHECK(abelian_regular(M_PI / 2, d));
    CHECK(std::abs(d.eval(-1.0).real() - 3.0) < 1e-15);
    IntegerPolynomial u = delta_of("B2:");
    for (double th : {0.1, 1.0, 2.0, 3.0}) CHECK(abelian_regular(th, u));

    auto roots = alexander_root_angles(d);
    REQUIRE(roots.size() == 2);
    CHECK(std::abs(roots[0] - M_PI / 6) < 1e-12);
    CHECK(std::abs(roots[1] - 5 * M_PI / 6) < 1e-12);
    // repeated roots of the granny polynomial are merged
    auto g = alexander_root_angles(delta_of("B6: 2 2 2 4 4 4"));
    REQUIRE(g.size() == 2);
    CHECK(std::abs(g[0] - M_PI / 6) < 1e-6);
}

TEST_CASE("torus closed forms") {
    TorusClosedForm a = torus_closed_form(3, 1, 0.5);
    CHECK(a.theta_m == doctest::Approx(M_PI / 2).epsilon(1e-15));
    CHECK(a.density == doctest::Approx(M_PI * std::sqrt(3.0)).epsilon(1e-14));

    TorusClosedForm b = torus_closed_form(5, 2, 0.5);
    CHECK(b.theta_m == doctest::Approx(std::acos(0.0)).epsilon(1e-15));
    CHECK(std::abs(b.density) ==
          doctest::Approx(1.6 * std::pow(std::sin(3 * M_PI / 5), 2) * M_PI * std::cos(3 * M_PI / 10)).epsilon(1e-14));

    // bounded density and arccos endpoints as t -> 0+
    for (int q : {3, 5, 7})
        for (int l = 1; l <= (q - 1) / 2; ++l) {
            TorusClosedForm e = torus_closed_form(q, l, 1e-9);
            CHECK(std::abs(e.density) < 1e-6);
            double c = std::cos((2 * l - 1) * M_PI / (2.0 * q));
            CHECK(e.theta_m == doctest::Approx(std::acos((l % 2 ? 1 : -1) * c)).epsilon(1e-9));
        }
    CHECK_THROWS_AS(torus_closed_form(4, 1, 0.5), DomainError);
    CHECK_THROWS_AS(torus_closed_form(3, 1, 0.0), DomainError);
}

TEST_CASE("torus integrals") {
    CHECK(torus_integral(3) == doctest::Approx(4 * M_PI / 3).epsilon(1e-15));
    const double q5 = 32 * M_PI / 25 * std::pow(std::sin(M_PI / 5), 2) -
                      16 * M_PI / 25 * std::pow(std::sin(3 * M_PI / 5), 2);
    CHECK(torus_integral(5) == doctest::Approx(q5).epsilon(1e-14));
    for (int q : {3, 5, 7, 9}) {
        double s = 0;
        for (int l = 1; l <= (q - 1) / 2; ++l) s += TorusKnotArcModel(q, l).integral();
        CHECK(s == doctest::Approx(torus_integral(q)).epsilon(1e-13));
    }
}

TEST_CASE("invariance suite on the trefoil") {
    SuiteConfig cfg;
    PlatPresentation t = make_plat("B4: 2 2 2");
    InvarianceReport r = invariance_suite(t, {"stabilize", "mirror", "reverse"}, cfg);
    REQUIRE(r.moves.size() == 3);
    CHECK(r.moves[0].expected_sign == 1);
    CHECK(r.moves[0].max_deviation < 1e-8);
    CHECK(r.moves[1].expected_sign == -1);
    CHECK(r.moves[1].max_deviation < 1e-8);
    CHECK(r.moves[2].expected_sign == 1);
    CHECK(r.moves[2].max_deviation < 1e-9);
    for (const auto& m : r.moves) {
        CHECK(m.pass);
        CHECK(m.compared == 5);
    }
}

TEST_CASE("connected sum of two trefoils") {
    SuiteConfig cfg;
    cfg.angles = {1.2};
    PlatPresentation t = make_plat("B4: 2 2 2");
    ConnectedSumReport r = connected_sum_check(t, t, cfg, false);
    CHECK(r.error.empty());
    CHECK(r.iota1_compared == 1);
    CHECK(r.iota2_compared == 1);
    CHECK(r.product_points > 0);
    CHECK(r.product_points_regular == 0);
    // composite omega at iota points relates to the factor through the other factor's Alexander polynomial
    const double d = std::abs(delta_of("B4: 2 2 2").eval(std::polar(1.0, 2 * 1.2)));
    for (auto [composite, factor] : r.pullback_pairs) CHECK(composite * d * d == doctest::Approx(factor).epsilon(1e-8));
}
