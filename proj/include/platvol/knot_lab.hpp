#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "platvol/braid.hpp"
#include "platvol/integrate.hpp"
#include "platvol/solver.hpp"

namespace platvol {

// Laurent polynomial in t with integer coefficients: coeff[d] of t^d.
class LaurentPolynomial {
public:
    LaurentPolynomial() = default;
    static LaurentPolynomial monomial(long c, int degree);
    static LaurentPolynomial constant(long c) { return monomial(c, 0); }

    bool is_zero() const { return terms_.empty(); }
    int low_degree() const;
    int high_degree() const;
    long coeff(int d) const;
    const std::map<int, long>& terms() const { return terms_; }

    LaurentPolynomial operator+(const LaurentPolynomial& o) const;
    LaurentPolynomial operator-(const LaurentPolynomial& o) const;
    LaurentPolynomial operator*(const LaurentPolynomial& o) const;
    bool operator==(const LaurentPolynomial& o) const { return terms_ == o.terms_; }
    // Exact division; throws DomainError when o does not divide *this.
    LaurentPolynomial exact_div(const LaurentPolynomial& o) const;
    std::complex<double> eval(std::complex<double> z) const;

private:
    void add(int d, long c);
    std::map<int, long> terms_;
};

// Normalized: lowest degree 0, leading coefficient positive.
struct IntegerPolynomial {
    std::vector<long> coeffs;  // coeffs[i] multiplies t^i
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    std::complex<double> eval(std::complex<double> z) const;
    std::string to_string() const;
    bool operator==(const IntegerPolynomial& o) const { return coeffs == o.coeffs; }
    static IntegerPolynomial normalize(const LaurentPolynomial& p);
};

// Exponent of t in the abelianization G -> Z for each generator, with the
// meridian sent to +1.  Throws NonCyclicAbelianization.
std::vector<int> abelianization_map(const KnotGroupPresentation& pres);
LaurentPolynomial determinant(std::vector<std::vector<LaurentPolynomial>> M);
IntegerPolynomial alexander_polynomial(const KnotGroupPresentation& pres);
// Angles theta in (0, pi) with Delta(e^{2 i theta}) = 0.
std::vector<double> alexander_root_angles(const IntegerPolynomial& delta, double tol = 1e-7);
bool abelian_regular(double theta, const IntegerPolynomial& delta);

// Closed forms for the (2, q) torus knot arcs rho_{l,t}.
struct TorusKnotArcModel {
    int q = 3;
    int l = 1;
    TorusKnotArcModel(int q, int l);
    double theta_m(double t) const;
    double dtheta_dt(double t) const;
    double omega_dtheta() const;           // (8/q) sin^2((2l-1) pi / q)
    double density(double t) const;        // omega(d/dt) = omega_dtheta * dtheta/dt
    double endpoint_lo() const;            // min over t in [0, 1] of theta_m
    double endpoint_hi() const;
    double integral() const;               // int_0^1 density dt
};

struct TorusClosedForm {
    double theta_m;
    double density;
    double omega_dtheta;
    double dtheta_dt;
};
TorusClosedForm torus_closed_form(int q, int l, double t);
double torus_integral(int q);
// l for the (2, q) arc whose abelian endpoints are closest to (lo, hi).
int torus_arc_index(int q, double lo, double hi);

// Meridian axes at a level of the plat: level 1 (bottom) when bottom is empty,
// otherwise the level just above the bottom braid segment.
std::vector<SpherePoint> level_axes(const KappaSystem& sys, const IntersectionPoint& x, const BraidWord* bottom = nullptr);
// Pairwise dot products of axes[begin..end).
std::vector<double> gram_key(const std::vector<SpherePoint>& axes, int begin, int end);

struct SuiteConfig {
    SolverConfig solver;
    std::vector<double> angles = {0.9, 1.2, M_PI / 2, 1.9, 2.2};
    double tolerance = 1e-8;
    double match_tol = 1e-3;
    VolumeOptions volume;
};

struct MoveReport {
    std::string move;
    int expected_sign = 1;
    int compared = 0;
    int unmatched = 0;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string error;
};

struct InvarianceReport {
    std::string plat;
    std::vector<MoveReport> moves;
    bool pass() const;
};

std::vector<std::string> all_moves(const PlatPresentation& plat);
// Moves: stabilize, sigma1-left/right, sigma2sigma1sq-left/right, swap-left/right,
// mirror, reverse, splitting, ambient.
InvarianceReport invariance_suite(const PlatPresentation& plat, const std::vector<std::string>& moves,
                                  const SuiteConfig& cfg);

struct ConnectedSumReport {
    std::string composite;
    int iota1_compared = 0, iota2_compared = 0;
    double pullback_max_deviation = 0.0;
    std::vector<std::pair<double, double>> pullback_pairs;  // (composite omega, factor omega)
    int product_points = 0;            // points with both factors irreducible
    int product_points_regular = 0;    // should be zero
    double integral = 0.0;
    bool integral_divergent = false;
    double expected_integral = 0.0;
    std::string error;
};

ConnectedSumReport connected_sum_check(const PlatPresentation& k1, const PlatPresentation& k2, const SuiteConfig& cfg,
                                       bool with_integral = true);

}  // namespace platvol
