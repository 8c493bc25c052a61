#include "platvol/knot_lab.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace platvol {

LaurentPolynomial LaurentPolynomial::monomial(long c, int degree) {
    LaurentPolynomial p;
    p.add(degree, c);
    return p;
}

void LaurentPolynomial::add(int d, long c) {
    if (c == 0) return;
    long& v = terms_[d];
    v += c;
    if (v == 0) terms_.erase(d);
}

int LaurentPolynomial::low_degree() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int LaurentPolynomial::high_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

long LaurentPolynomial::coeff(int d) const {
    auto it = terms_.find(d);
    return it == terms_.end() ? 0 : it->second;
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& o) const {
    LaurentPolynomial r = *this;
    for (auto [d, c] : o.terms_) r.add(d, c);
    return r;
}

LaurentPolynomial LaurentPolynomial::operator-(const LaurentPolynomial& o) const {
    LaurentPolynomial r = *this;
    for (auto [d, c] : o.terms_) r.add(d, -c);
    return r;
}

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& o) const {
    LaurentPolynomial r;
    for (auto [d1, c1] : terms_)
        for (auto [d2, c2] : o.terms_) r.add(d1 + d2, c1 * c2);
    return r;
}

LaurentPolynomial LaurentPolynomial::exact_div(const LaurentPolynomial& o) const {
    if (o.is_zero()) throw DomainError("division by zero polynomial");
    LaurentPolynomial rem = *this, quo;
    const int hb = o.high_degree();
    const long lead = o.coeff(hb);
    int guard = rem.is_zero() ? 0 : rem.high_degree() - rem.low_degree() + 2;
    while (!rem.is_zero()) {
        if (guard-- < 0) throw DomainError("polynomial division is not exact");
        const int ha = rem.high_degree();
        const long c = rem.coeff(ha);
        if (c % lead != 0) throw DomainError("polynomial division is not exact");
        LaurentPolynomial term = monomial(c / lead, ha - hb);
        quo = quo + term;
        rem = rem - term * o;
    }
    return quo;
}

std::complex<double> LaurentPolynomial::eval(std::complex<double> z) const {
    std::complex<double> s = 0.0;
    for (auto [d, c] : terms_) s += static_cast<double>(c) * std::pow(z, d);
    return s;
}

std::complex<double> IntegerPolynomial::eval(std::complex<double> z) const {
    std::complex<double> s = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * z + static_cast<double>(*it);
    return s;
}

std::string IntegerPolynomial::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (int d = degree(); d >= 0; --d) {
        long c = coeffs[d];
        if (c == 0) continue;
        long a = std::labs(c);
        if (first) out << (c < 0 ? "-" : "");
        else out << (c < 0 ? " - " : " + ");
        first = false;
        if (a != 1 || d == 0) out << a;
        if (d > 0) out << "t";
        if (d > 1) out << "^" << d;
    }
    if (first) out << "0";
    return out.str();
}

IntegerPolynomial IntegerPolynomial::normalize(const LaurentPolynomial& p) {
    IntegerPolynomial r;
    if (p.is_zero()) {
        r.coeffs = {0};
        return r;
    }
    const int lo = p.low_degree(), hi = p.high_degree();
    const long s = p.coeff(hi) < 0 ? -1 : 1;
    for (int d = lo; d <= hi; ++d) r.coeffs.push_back(s * p.coeff(d));
    return r;
}

namespace {

long gcd_long(long a, long b) { return std::gcd(std::labs(a), std::labs(b)); }

std::vector<std::vector<long>> exponent_matrix(const KnotGroupPresentation& pres) {
    std::vector<std::vector<long>> E;
    for (const auto& r : pres.relators) {
        auto s = r.exponent_sums();
        E.emplace_back(s.begin(), s.end());
    }
    return E;
}

std::vector<std::vector<long>> delete_column(const std::vector<std::vector<long>>& E, int c) {
    auto M = E;
    for (auto& row : M) row.erase(row.begin() + c);
    return M;
}

}  // namespace

std::vector<int> abelianization_map(const KnotGroupPresentation& pres) {
    const int G = pres.generators;
    auto E = exponent_matrix(pres);
    if (static_cast<int>(E.size()) != G - 1)
        throw NonCyclicAbelianization("expected a deficiency-one presentation");
    // Z^G / rows(E) is Z exactly when the maximal minors are coprime; the
    // signed minors then span the kernel of E.
    std::vector<long> v(G);
    long g = 0;
    for (int c = 0; c < G; ++c) {
        v[c] = ((c % 2) ? -1 : 1) * integer_determinant(delete_column(E, c));
        g = gcd_long(g, v[c]);
    }
    if (g != 1) throw NonCyclicAbelianization("abelianization is not infinite cyclic");
    const long m = v[pres.meridian - 1];
    if (std::labs(m) != 1) throw NonCyclicAbelianization("meridian does not generate the abelianization");
    std::vector<int> out;
    for (long x : v) out.push_back(static_cast<int>(x * m));
    return out;
}

LaurentPolynomial determinant(std::vector<std::vector<LaurentPolynomial>> M) {
    const std::size_t n = M.size();
    if (n == 0) return LaurentPolynomial::constant(1);
    int sign = 1;
    LaurentPolynomial prev = LaurentPolynomial::constant(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && M[p][k].is_zero()) ++p;
            if (p == n) return {};
            std::swap(M[p], M[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).exact_div(prev);
        prev = M[k][k];
    }
    return M[n - 1][n - 1] * LaurentPolynomial::constant(sign);
}

IntegerPolynomial alexander_polynomial(const KnotGroupPresentation& pres) {
    const int G = pres.generators;
    if (G == 1 && pres.relators.empty()) return IntegerPolynomial{{1}};
    std::vector<int> v = abelianization_map(pres);
    auto degree_of = [&](const std::vector<Letter>& w) {
        int d = 0;
        for (const auto& l : w) d += l.exp * v[l.gen - 1];
        return d;
    };
    std::vector<std::vector<LaurentPolynomial>> A;
    for (const auto& r : pres.relators) {
        std::vector<LaurentPolynomial> row;
        for (int g = 1; g < G; ++g) {  // last generator's column deleted
            LaurentPolynomial e;
            const GroupRingElement d = fox_derivative(r, g);
            for (const auto& [w, c] : d.terms()) e = e + LaurentPolynomial::monomial(c, degree_of(w));
            row.push_back(e);
        }
        A.push_back(std::move(row));
    }
    return IntegerPolynomial::normalize(determinant(std::move(A)));
}

std::vector<double> alexander_root_angles(const IntegerPolynomial& delta, double tol) {
    const int d = delta.degree();
    std::vector<double> out;
    if (d < 1) return out;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(d, d);
    const double lead = static_cast<double>(delta.coeffs[d]);
    for (int i = 0; i < d; ++i) C(0, i) = -static_cast<double>(delta.coeffs[d - 1 - i]) / lead;
    for (int i = 1; i < d; ++i) C(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(C);
    for (int i = 0; i < d; ++i) {
        std::complex<double> z = es.eigenvalues()(i);
        for (int it = 0; it < 3; ++it) {  // Newton polish
            std::complex<double> p = 0.0, dp = 0.0;
            for (int k = d; k >= 0; --k) {
                dp = dp * z + p;
                p = p * z + static_cast<double>(delta.coeffs[k]);
            }
            if (std::abs(dp) > 0) z -= p / dp;
        }
        if (std::abs(std::abs(z) - 1.0) > tol) continue;
        double a = std::arg(z);
        if (a <= 0) a += 2 * M_PI;
        double th = a / 2;
        if (th <= 0 || th >= M_PI) continue;
        out.push_back(th);
    }
    std::sort(out.begin(), out.end());
    // Repeated roots come back split by about sqrt(eps); merge them.
    std::vector<double> merged;
    for (std::size_t i = 0; i < out.size();) {
        std::size_t j = i;
        double sum = 0.0;
        while (j < out.size() && out[j] - out[i] < 1e-6) sum += out[j++];
        merged.push_back(sum / (j - i));
        i = j;
    }
    return merged;
}

bool abelian_regular(double theta, const IntegerPolynomial& delta) {
    return std::abs(delta.eval(std::polar(1.0, 2 * theta))) > 1e-9;
}

TorusKnotArcModel::TorusKnotArcModel(int q_, int l_) : q(q_), l(l_) {
    if (q < 3 || q % 2 == 0) throw DomainError("q must be odd and at least 3");
    if (l < 1 || l > (q - 1) / 2) throw DomainError("arc index out of range");
}

namespace {
double arc_sign(int l) { return (l % 2 == 1) ? 1.0 : -1.0; }
double arc_c(int q, int l) { return std::cos((2 * l - 1) * M_PI / (2.0 * q)); }
}  // namespace

double TorusKnotArcModel::theta_m(double t) const { return std::acos(arc_sign(l) * arc_c(q, l) * std::cos(M_PI * t)); }

double TorusKnotArcModel::dtheta_dt(double t) const {
    const double x = arc_sign(l) * arc_c(q, l) * std::cos(M_PI * t);
    return arc_sign(l) * arc_c(q, l) * M_PI * std::sin(M_PI * t) / std::sqrt(1.0 - x * x);
}

double TorusKnotArcModel::omega_dtheta() const {
    double s = std::sin((2 * l - 1) * M_PI / q);
    return 8.0 / q * s * s;
}

double TorusKnotArcModel::density(double t) const { return omega_dtheta() * dtheta_dt(t); }
double TorusKnotArcModel::endpoint_lo() const { return std::min(theta_m(0.0), theta_m(1.0)); }
double TorusKnotArcModel::endpoint_hi() const { return std::max(theta_m(0.0), theta_m(1.0)); }
double TorusKnotArcModel::integral() const { return omega_dtheta() * (theta_m(1.0) - theta_m(0.0)); }

TorusClosedForm torus_closed_form(int q, int l, double t) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("t must lie in (0, 1)");
    TorusKnotArcModel m(q, l);
    return {m.theta_m(t), m.density(t), m.omega_dtheta(), m.dtheta_dt(t)};
}

double torus_integral(int q) {
    if (q < 3 || q % 2 == 0) throw DomainError("q must be odd and at least 3");
    double s = 0.0;
    for (int l = 1; l <= (q - 1) / 2; ++l) {
        double sn = std::sin((2 * l - 1) * M_PI / q);
        s += arc_sign(l) * 8.0 * M_PI * (q - 2 * l + 1) / (static_cast<double>(q) * q) * sn * sn;
    }
    return s;
}

int torus_arc_index(int q, double lo, double hi) {
    int best = 1;
    double bd = std::numeric_limits<double>::infinity();
    for (int l = 1; l <= (q - 1) / 2; ++l) {
        TorusKnotArcModel m(q, l);
        double d = std::abs(m.endpoint_lo() - lo) + std::abs(m.endpoint_hi() - hi);
        if (d < bd) {
            bd = d;
            best = l;
        }
    }
    return best;
}

std::vector<SpherePoint> level_axes(const KappaSystem& sys, const IntersectionPoint& x, const BraidWord* bottom) {
    RepAssignment rho = rep_from_axes(x.theta, x.P, x.P2);
    RepAssignment g;
    for (const auto& w : sys.k1) g.push_back(evaluate_word(rho, w));
    if (bottom) {
        if (bottom->strands != sys.strands()) throw RankMismatch("cut braid has wrong strand count");
        FreeEndomorphism up = artin_action(bottom->inverse());
        RepAssignment c;
        for (int j = 1; j <= sys.strands(); ++j) c.push_back(evaluate_word(g, up.image(j)));
        g = std::move(c);
    }
    std::vector<SpherePoint> axes;
    for (const auto& q : g) axes.push_back(q.im().normalized());
    return axes;
}

std::vector<double> gram_key(const std::vector<SpherePoint>& axes, int begin, int end) {
    std::vector<double> key;
    for (int a = begin; a < end; ++a)
        for (int b = a + 1; b < end; ++b) key.push_back(axes[a].dot(axes[b]));
    return key;
}

bool InvarianceReport::pass() const {
    if (moves.empty()) return false;
    for (const auto& m : moves)
        if (!m.pass) return false;
    return true;
}

std::vector<std::string> all_moves(const PlatPresentation& plat) {
    std::vector<std::string> m = {"stabilize", "sigma1-left", "sigma1-right", "sigma2sigma1sq-left",
                                  "sigma2sigma1sq-right"};
    if (plat.n() >= 2) {
        m.push_back("swap-left");
        m.push_back("swap-right");
    }
    for (const char* s : {"mirror", "reverse", "splitting", "ambient"}) m.push_back(s);
    return m;
}

namespace {

struct RegularPoint {
    IntersectionPoint x;
    double omega;
};

std::vector<RegularPoint> regular_points(const KappaSystem& sys, double theta, const SuiteConfig& cfg) {
    std::vector<RegularPoint> out;
    for (const auto& p : find_all_at_angle(sys, theta, cfg.solver)) {
        if (!regularity_check(sys, p, cfg.solver).regular) continue;
        out.push_back({p, omega_dtheta(sys, theta, p.P, p.P2, cfg.volume)});
    }
    return out;
}

using KeyFn = std::function<std::vector<double>(const KappaSystem&, const IntersectionPoint&)>;

// Match base points to moved points by key and compare omega.
void compare_points(const KappaSystem& base, const std::vector<RegularPoint>& bp, const KeyFn& base_key,
                    const KappaSystem& moved, const std::vector<RegularPoint>& mp, const KeyFn& moved_key,
                    double match_tol, MoveReport& rep) {
    std::vector<std::vector<double>> mk;
    for (const auto& m : mp) mk.push_back(moved_key(moved, m.x));
    std::vector<int> used(mp.size(), 0);
    for (const auto& b : bp) {
        auto k = base_key(base, b.x);
        int hit = -1;
        for (std::size_t i = 0; i < mp.size(); ++i) {
            if (key_distance(k, mk[i]) >= match_tol) continue;
            if (hit >= 0) throw MatchingFailure("two candidate points within matching tolerance");
            hit = static_cast<int>(i);
        }
        if (hit < 0) {
            ++rep.unmatched;
            continue;
        }
        ++used[hit];
        ++rep.compared;
        rep.max_deviation = std::max(rep.max_deviation, std::abs(mp[hit].omega - rep.expected_sign * b.omega));
    }
    for (int u : used) rep.unmatched += u == 0;
}

}  // namespace

InvarianceReport invariance_suite(const PlatPresentation& plat, const std::vector<std::string>& moves,
                                  const SuiteConfig& cfg) {
    InvarianceReport report;
    report.plat = plat.braid.to_string();
    KappaSystem base(plat);
    const int m = plat.strands();
    std::map<double, std::vector<RegularPoint>> base_pts;
    for (double th : cfg.angles) base_pts[th] = regular_points(base, th, cfg);

    const KeyFn level1 = [](const KappaSystem& s, const IntersectionPoint& x) {
        auto a = level_axes(s, x);
        return gram_key(a, 0, static_cast<int>(a.size()));
    };

    for (const auto& move : moves) {
        MoveReport rep;
        rep.move = move;
        rep.tolerance = cfg.tolerance;
        try {
            if (move == "splitting" || move == "ambient") {
                KappaSystem alt(with_splitting(plat, plat.splitting == Splitting::Standard ? Splitting::Alternate
                                                                                           : Splitting::Standard));
                VolumeOptions vo = cfg.volume;
                if (move == "ambient") {
                    vo.ambient = -vo.ambient;
                    rep.expected_sign = -1;
                }
                const KappaSystem& other = move == "ambient" ? base : alt;
                for (const auto& [th, pts] : base_pts) {
                    for (const auto& b : pts) {
                        if (residual(other, th, b.x.P, b.x.P2).norm() > 1e-9)
                            throw ConstraintViolated("point is not an intersection point for the other splitting");
                        double w = omega_dtheta(other, th, b.x.P, b.x.P2, vo);
                        ++rep.compared;
                        rep.max_deviation = std::max(rep.max_deviation, std::abs(w - rep.expected_sign * b.omega));
                    }
                }
            } else {
                PlatPresentation moved;
                KeyFn base_key = level1, moved_key = level1;
                if (move == "stabilize") {
                    moved = stabilize(plat);
                    base_key = [](const KappaSystem& s, const IntersectionPoint& x) {
                        auto a = level_axes(s, x);
                        a.push_back(a.back());
                        a.push_back(-a[a.size() - 2]);
                        return gram_key(a, 0, static_cast<int>(a.size()));
                    };
                    moved_key = [m](const KappaSystem& s, const IntersectionPoint& x) {
                        BraidWord bottom(m + 2, {m});
                        auto a = level_axes(s, x, &bottom);
                        return gram_key(a, 0, static_cast<int>(a.size()));
                    };
                } else if (move == "mirror") {
                    moved = mirror(plat);
                    rep.expected_sign = -1;
                } else if (move == "reverse") {
                    moved = reverse_orientation(plat);
                } else {
                    auto dash = move.rfind('-');
                    if (dash == std::string::npos) throw DomainError("unknown move '" + move + "'");
                    std::string gen = move.substr(0, dash), side = move.substr(dash + 1);
                    HildenGenerator h;
                    if (gen == "sigma1") h = HildenGenerator::Sigma1;
                    else if (gen == "sigma2sigma1sq") h = HildenGenerator::Sigma2Sigma1Sq;
                    else if (gen == "swap") h = HildenGenerator::Swap;
                    else throw DomainError("unknown move '" + move + "'");
                    BraidWord xi = h_generator(h, m, 1);
                    if (side == "left") {
                        moved = multiply_left(xi, plat);
                    } else if (side == "right") {
                        moved = multiply_right(plat, xi);
                        moved_key = [xi](const KappaSystem& s, const IntersectionPoint& x) {
                            auto a = level_axes(s, x, &xi);
                            return gram_key(a, 0, static_cast<int>(a.size()));
                        };
                    } else {
                        throw DomainError("unknown move '" + move + "'");
                    }
                }
                moved.splitting = plat.splitting;
                KappaSystem msys(moved);
                for (const auto& [th, pts] : base_pts) {
                    auto mp = regular_points(msys, th, cfg);
                    compare_points(base, pts, base_key, msys, mp, moved_key, cfg.match_tol, rep);
                }
            }
        } catch (const Error& e) {
            rep.error = std::string(e.kind()) + ": " + e.what();
        }
        rep.pass = rep.error.empty() && rep.compared > 0 && rep.unmatched == 0 && rep.max_deviation < rep.tolerance;
        report.moves.push_back(rep);
    }
    return report;
}

namespace {

bool all_parallel(const std::vector<SpherePoint>& axes, double tol) {
    for (std::size_t a = 0; a < axes.size(); ++a)
        for (std::size_t b = a + 1; b < axes.size(); ++b)
            if (axes[a].cross(axes[b]).norm() > tol) return false;
    return true;
}

std::vector<SpherePoint> cap_axes(const IntersectionPoint& x, int first, int last) {
    std::vector<SpherePoint> out;
    for (int k = first; k < last; ++k) {
        out.push_back(x.P[k]);
        out.push_back(x.P2[k]);
    }
    return out;
}

double total_integral(const KappaSystem& sys, const SuiteConfig& cfg, bool& divergent) {
    auto roots = alexander_root_angles(alexander_polynomial(wirtinger_presentation(sys.plat)));
    double total = 0.0;
    for (const auto& arc : trace_all_arcs(sys, cfg.solver, roots)) {
        IntegralResult r = integrate_arc(sys, arc, cfg.solver, cfg.volume);
        if (r.divergent) divergent = true;
        else total += r.value;
    }
    return total;
}

}  // namespace

ConnectedSumReport connected_sum_check(const PlatPresentation& k1, const PlatPresentation& k2, const SuiteConfig& cfg,
                                       bool with_integral) {
    ConnectedSumReport rep;
    PlatPresentation comp = connected_sum(k1, k2);
    rep.composite = comp.braid.to_string();
    const int n1 = k1.n(), n2 = k2.n(), n = comp.n();
    KappaSystem cs(comp), s1(k1), s2(k2);
    std::vector<int> shifted;
    for (int l : k2.braid.letters) shifted.push_back(l > 0 ? l + 2 * (n1 - 1) : l - 2 * (n1 - 1));
    const BraidWord bottom(comp.strands(), shifted);
    try {
        for (double th : cfg.angles) {
            auto f1 = regular_points(s1, th, cfg);
            auto f2 = regular_points(s2, th, cfg);
            std::vector<RegularPoint> iota1, iota2;
            for (const auto& p : find_all_at_angle(cs, th, cfg.solver)) {
                const bool ab2 = all_parallel(cap_axes(p, n1 - 1, n), 1e-6);
                const bool ab1 = all_parallel(cap_axes(p, 0, n1), 1e-6);
                const bool regular = regularity_check(cs, p, cfg.solver).regular;
                if (!ab1 && !ab2) {
                    ++rep.product_points;
                    rep.product_points_regular += regular;
                    continue;
                }
                if (!regular) continue;
                RegularPoint rp{p, omega_dtheta(cs, th, p.P, p.P2, cfg.volume)};
                (ab2 ? iota1 : iota2).push_back(rp);
            }
            MoveReport r1, r2;
            const KeyFn factor_key = [](const KappaSystem& s, const IntersectionPoint& x) {
                auto a = level_axes(s, x);
                return gram_key(a, 0, static_cast<int>(a.size()));
            };
            const KeyFn key1 = [&bottom, n1](const KappaSystem& s, const IntersectionPoint& x) {
                return gram_key(level_axes(s, x, &bottom), 0, 2 * n1);
            };
            const KeyFn key2 = [n1, n2](const KappaSystem& s, const IntersectionPoint& x) {
                return gram_key(level_axes(s, x), 2 * n1 - 2, 2 * n1 - 2 + 2 * n2);
            };
            compare_points(s1, f1, factor_key, cs, iota1, key1, cfg.match_tol, r1);
            compare_points(s2, f2, factor_key, cs, iota2, key2, cfg.match_tol, r2);
            auto record = [&](const std::vector<RegularPoint>& fac, const std::vector<RegularPoint>& comp_pts,
                              const KeyFn& fk, const KeyFn& ck, const KappaSystem& fs) {
                for (const auto& c : comp_pts) {
                    auto kc = ck(cs, c.x);
                    for (const auto& f : fac)
                        if (key_distance(fk(fs, f.x), kc) < cfg.match_tol) rep.pullback_pairs.push_back({c.omega, f.omega});
                }
            };
            record(f1, iota1, factor_key, key1, s1);
            record(f2, iota2, factor_key, key2, s2);
            rep.iota1_compared += r1.compared;
            rep.iota2_compared += r2.compared;
            rep.pullback_max_deviation = std::max({rep.pullback_max_deviation, r1.max_deviation, r2.max_deviation});
            if (r1.unmatched + r2.unmatched > 0 && rep.error.empty())
                rep.error = "unmatched points at theta = " + std::to_string(th);
        }
        if (with_integral) {
            bool d1 = false, d2 = false;
            rep.expected_integral = total_integral(s1, cfg, d1) + total_integral(s2, cfg, d2);
            rep.integral = total_integral(cs, cfg, rep.integral_divergent);
            if (d1 || d2) rep.error = "factor integral diverges";
        }
    } catch (const Error& e) {
        rep.error = std::string(e.kind()) + ": " + e.what();
    }
    return rep;
}

}  // namespace platvol
