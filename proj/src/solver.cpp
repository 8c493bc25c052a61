#include "platvol/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "platvol/rng.hpp"

namespace platvol {

double IntersectionPoint::irreducibility() const {
    std::vector<SpherePoint> all = P;
    all.insert(all.end(), P2.begin(), P2.end());
    return platvol::irreducibility(all);
}

HandlebodyPair IntersectionPoint::pair() const { return {{theta, P}, {theta, P2}}; }

namespace {

Su2Vector safe_log(const UnitQuaternion& q) {
    try {
        return log_su2(q);
    } catch (const LogAtMinusOne&) {
        Su2Vector im = q.im();
        double s = im.norm();
        return s > 0 ? Su2Vector(M_PI * im / s) : Su2Vector(M_PI, 0, 0);
    }
}

struct Residual {
    Eigen::VectorXd r;
    Eigen::MatrixXd J;
};

Residual residual_and_jacobian(const KappaSystem& sys, double theta, const std::vector<SpherePoint>& P,
                               const std::vector<SpherePoint>& P2, bool want_jacobian) {
    const int n = sys.n(), m = sys.strands();
    RepAssignment rho = rep_from_axes(theta, P, P2);
    Residual out;
    out.r.resize(3 * (m - 1));
    Eigen::MatrixXd U;
    if (want_jacobian) {
        out.J.resize(3 * (m - 1), 4 * n);
        U = Eigen::MatrixXd::Zero(3 * m, 4 * n);
        for (int g = 0; g < m; ++g) {
            const SpherePoint& A = g < n ? P[g] : P2[g - n];
            auto [e1, e2] = tangent_frame(A);
            U.block<3, 1>(3 * g, 2 * g) = chart_to_u(theta, A, 0.0, e1, TraceChart::Angle);
            U.block<3, 1>(3 * g, 2 * g + 1) = chart_to_u(theta, A, 0.0, e2, TraceChart::Angle);
        }
    }
    for (int j = 0; j + 1 < m; ++j) {
        UnitQuaternion a = evaluate_word(rho, sys.k1[j]);
        UnitQuaternion b = evaluate_word(rho, sys.k2[j]);
        UnitQuaternion c = a * b.inverse();
        out.r.segment<3>(3 * j) = safe_log(c);
        if (want_jacobian) {
            Eigen::MatrixXd D = word_differential(rho, sys.k1[j]) - adjoint_matrix(c) * word_differential(rho, sys.k2[j]);
            out.J.block(3 * j, 0, 3, 4 * n) = D * U;
        }
    }
    return out;
}

void move_axes(std::vector<SpherePoint>& P, std::vector<SpherePoint>& P2, const Eigen::VectorXd& dx, double alpha) {
    const int n = static_cast<int>(P.size());
    for (int g = 0; g < 2 * n; ++g) {
        SpherePoint& A = g < n ? P[g] : P2[g - n];
        auto [e1, e2] = tangent_frame(A);
        A = sphere_exp(A, alpha * (dx(2 * g) * e1 + dx(2 * g + 1) * e2));
    }
}

std::uint64_t mix_theta(std::uint64_t seed, double theta) {
    std::uint64_t bits;
    std::memcpy(&bits, &theta, sizeof bits);
    return seed * 0x9e3779b97f4a7c15ULL ^ bits;
}

}  // namespace

Eigen::VectorXd residual(const KappaSystem& sys, double theta, const std::vector<SpherePoint>& P,
                         const std::vector<SpherePoint>& P2) {
    return residual_and_jacobian(sys, theta, P, P2, false).r;
}

IntersectionPoint solve_at_angle(const KappaSystem& sys, double theta, std::vector<SpherePoint> P,
                                 std::vector<SpherePoint> P2, const SolverConfig& cfg, int max_iterations) {
    const int n = sys.n();
    if (static_cast<int>(P.size()) != n || static_cast<int>(P2.size()) != n)
        throw RankMismatch("seed has wrong number of axes");
    if (!(theta > 0.0 && theta < M_PI)) throw DomainError("meridian angle must lie in (0, pi)");
    for (auto& a : P) a.normalize();
    for (auto& a : P2) a.normalize();
    const int maxit = max_iterations > 0 ? max_iterations : cfg.max_iterations;

    Residual cur = residual_and_jacobian(sys, theta, P, P2, true);
    double rn = cur.r.norm();
    int it = 0;
    for (; it < maxit && rn >= cfg.residual_tol; ++it) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(cur.J, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(1e-10);
        Eigen::VectorXd dx = -svd.solve(cur.r);
        bool moved = false;
        for (double alpha = 1.0; alpha > 1e-3; alpha *= 0.5) {
            auto Pn = P, P2n = P2;
            move_axes(Pn, P2n, dx, alpha);
            Eigen::VectorXd rr = residual(sys, theta, Pn, P2n);
            if (rr.norm() < rn) {
                P = std::move(Pn);
                P2 = std::move(P2n);
                moved = true;
                break;
            }
        }
        if (!moved) break;
        cur = residual_and_jacobian(sys, theta, P, P2, true);
        rn = cur.r.norm();
    }
    if (!(rn < cfg.residual_tol)) throw NoConvergence("residual " + std::to_string(rn) + " after " + std::to_string(it) + " iterations");

    IntersectionPoint x;
    x.theta = theta;
    x.P = P;
    x.P2 = P2;
    x.residual = rn;
    x.iterations = it;
    if (x.irreducibility() < cfg.reducible_tol) throw ConvergedToReducible("solution is reducible");
    HandlebodyPair g = gauge_fix(x.pair());
    x.P = g.side1.axes;
    x.P2 = g.side2.axes;
    return x;
}

IntersectionPoint solve_at_trace(const KappaSystem& sys, double t, std::vector<SpherePoint> P,
                                 std::vector<SpherePoint> P2, const SolverConfig& cfg) {
    if (!(t > -2.0 && t < 2.0)) throw DomainError("meridian trace must lie in (-2, 2)");
    return solve_at_angle(sys, std::acos(t / 2.0), std::move(P), std::move(P2), cfg);
}

std::vector<double> invariant_traces(const KappaSystem& sys, const IntersectionPoint& x) {
    RepAssignment rho = rep_from_axes(x.theta, x.P, x.P2);
    std::vector<UnitQuaternion> g;
    for (const auto& w : sys.k1) g.push_back(evaluate_word(rho, w));
    const int m = static_cast<int>(g.size());
    std::vector<double> key;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) key.push_back((g[a] * g[b]).trace());
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c) key.push_back((g[a] * g[b] * g[c]).trace());
    return key;
}

double key_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

std::vector<IntersectionPoint> find_all_at_angle(const KappaSystem& sys, double theta, const SolverConfig& cfg) {
    const int n = sys.n();
    Rng rng(mix_theta(cfg.seed, theta));
    const bool dihedral = std::abs(theta - M_PI / 2) < 1e-9;
    std::vector<IntersectionPoint> found;
    std::vector<std::vector<double>> keys;
    for (int s = 0; s < cfg.multistart; ++s) {
        std::vector<SpherePoint> P(n), P2(n);
        for (int k = 0; k < n; ++k) {
            if (dihedral && s % 2 == 1) {
                double a = rng.uniform(0, 2 * M_PI), b = rng.uniform(0, 2 * M_PI);
                P[k] = SpherePoint(std::cos(a), std::sin(a), 0.0);
                P2[k] = SpherePoint(std::cos(b), std::sin(b), 0.0);
            } else {
                P[k] = rng.sphere();
                P2[k] = rng.sphere();
            }
        }
        IntersectionPoint x;
        try {
            x = solve_at_angle(sys, theta, P, P2, cfg);
        } catch (const Error&) {
            continue;
        }
        auto key = invariant_traces(sys, x);
        bool dup = false;
        for (const auto& k : keys) dup = dup || key_distance(k, key) < cfg.dedup_tol;
        if (dup) continue;
        keys.push_back(key);
        found.push_back(std::move(x));
    }
    std::vector<std::size_t> order(found.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    std::vector<IntersectionPoint> out;
    for (auto i : order) out.push_back(found[i]);
    return out;
}

RegularityReport regularity_check(const KappaSystem& sys, const IntersectionPoint& x, const SolverConfig& cfg) {
    RegularityReport rep;
    auto evaluate = [&](double rel) {
        VolumeOptions opt;
        opt.chart = cfg.chart;
        opt.rank_rel = rel;
        return transversality(sys, x.theta, x.P, x.P2, opt);
    };
    Transversality tr = evaluate(cfg.rank_rel);
    rep.kernel_dim = tr.kernel_dim;
    rep.rank = tr.rank;
    rep.singular_values = tr.singular_values;

    KnotGroupPresentation pres = wirtinger_presentation(sys.plat);
    RepAssignment rho = rep_from_axes(x.theta, x.P, x.P2);
    rep.cohomology = twisted_cohomology_dims(pres, rho, cfg.rank_rel, 1e-8);
    rep.regular = tr.kernel_dim == 1;
    rep.stable = rep.cohomology.stable;
    if (rep.regular == (rep.cohomology.h1 == 1)) return rep;

    // Disagreement: accept only if the two criteria agree one decade either side.
    rep.stable = false;
    for (double rel : {cfg.rank_rel * 10, cfg.rank_rel / 10}) {
        Transversality t2 = evaluate(rel);
        CohomologyDims c2 = twisted_cohomology_dims(pres, rho, rel, 1e-8);
        if ((t2.kernel_dim == 1) == (c2.h1 == 1)) {
            rep.regular = t2.kernel_dim == 1;
            rep.kernel_dim = t2.kernel_dim;
            rep.rank = t2.rank;
            rep.cohomology = c2;
            return rep;
        }
    }
    throw InconsistentRegularity("transversality kernel " + std::to_string(tr.kernel_dim) + " but h1 = " +
                                 std::to_string(rep.cohomology.h1));
}

const char* endpoint_name(EndpointKind k) {
    switch (k) {
        case EndpointKind::AbelianLimit: return "AbelianLimit";
        case EndpointKind::InteriorSingularity: return "InteriorSingularity";
        case EndpointKind::DomainBoundary: return "DomainBoundary";
    }
    return "?";
}

CurveTangent curve_tangent(const KappaSystem& sys, const IntersectionPoint& x, const SolverConfig& cfg) {
    VolumeOptions opt;
    opt.chart = cfg.chart;
    opt.rank_rel = cfg.rank_rel;
    Transversality tr = transversality(sys, x.theta, x.P, x.P2, opt);
    if (tr.kernel_dim != 1) throw NotRegular("kernel dimension " + std::to_string(tr.kernel_dim));
    if (tr.kernel.size() == 0) throw DegenerateBasis("tangent is vertical in theta");
    CurveTangent t;
    const int n = sys.n();
    for (int k = 0; k < n; ++k) {
        auto [a1, a2] = tangent_frame(x.P[k]);
        t.dP.push_back(tr.lift1(1 + 2 * k) * a1 + tr.lift1(2 + 2 * k) * a2);
        auto [b1, b2] = tangent_frame(x.P2[k]);
        t.dP2.push_back(tr.lift2(1 + 2 * k) * b1 + tr.lift2(2 + 2 * k) * b2);
    }
    return t;
}

namespace {

// One continuation step of signed length h.  Returns false when the corrector
// fails or lands on a different branch.
bool continuation_step(const KappaSystem& sys, const IntersectionPoint& cur, const CurveTangent& tg, double h,
                       const SolverConfig& cfg, IntersectionPoint& next) {
    std::vector<SpherePoint> P = cur.P, P2 = cur.P2;
    for (std::size_t k = 0; k < P.size(); ++k) {
        P[k] = sphere_exp(P[k], h * tg.dP[k]);
        P2[k] = sphere_exp(P2[k], h * tg.dP2[k]);
    }
    IntersectionPoint pred;
    pred.theta = cur.theta + h;
    pred.P = P;
    pred.P2 = P2;
    try {
        next = solve_at_angle(sys, cur.theta + h, P, P2, cfg, 12);
    } catch (const Error&) {
        return false;
    }
    auto kc = invariant_traces(sys, cur), kp = invariant_traces(sys, pred), kn = invariant_traces(sys, next);
    if (key_distance(kn, kp) > 0.5 * key_distance(kp, kc) + 1e-8) return false;
    // stepping back from next has to land on cur again; past an endpoint it lands on another arc
    try {
        CurveTangent back = curve_tangent(sys, next, cfg);
        for (std::size_t k = 0; k < P.size(); ++k) {
            P[k] = sphere_exp(next.P[k], -h * back.dP[k]);
            P2[k] = sphere_exp(next.P2[k], -h * back.dP2[k]);
        }
        IntersectionPoint again = solve_at_angle(sys, cur.theta, P, P2, cfg, 12);
        return key_distance(invariant_traces(sys, again), kc) < 1e-6;
    } catch (const Error&) {
        return false;
    }
}

double extrapolate_limit(const std::vector<IntersectionPoint>& side, double fallback) {
    if (side.size() < 2) return fallback;
    const auto& a = side[side.size() - 2];
    const auto& b = side.back();
    double ma = a.irreducibility(), mb = b.irreducibility();
    if (!(mb < ma)) return b.theta;
    double a2 = ma * ma, b2 = mb * mb;
    return (a.theta * b2 - b.theta * a2) / (b2 - a2);
}

}  // namespace

RegularArc trace_arc(const KappaSystem& sys, const IntersectionPoint& start, const SolverConfig& cfg,
                     const std::vector<double>& root_angles) {
    RegularArc arc;
    std::vector<IntersectionPoint> sides[2];
    for (int d = 0; d < 2; ++d) {
        const double dir = d == 0 ? 1.0 : -1.0;
        auto& out = sides[d];
        ArcEndpoint& ep = d == 0 ? arc.upper : arc.lower;
        IntersectionPoint cur = start;
        double h = cfg.step_initial;
        bool refine = false;
        while (true) {
            const double lim = d == 0 ? M_PI - cfg.domain_margin : cfg.domain_margin;
            const double room = dir * (lim - cur.theta);
            if (room <= 1e-12) {
                ep.kind = EndpointKind::DomainBoundary;
                break;
            }
            CurveTangent tg;
            try {
                tg = curve_tangent(sys, cur, cfg);
            } catch (const Error&) {
                ep.kind = EndpointKind::InteriorSingularity;
                break;
            }
            const double step = std::min(h, room);
            IntersectionPoint next;
            if (continuation_step(sys, cur, tg, dir * step, cfg, next)) {
                if (next.irreducibility() < cfg.endpoint_tol) {  // reached the reducible limit; not on the arc
                    ep.kind = EndpointKind::AbelianLimit;
                    break;
                }
                out.push_back(next);
                cur = next;
                if (next.iterations <= 4) h = std::min(h * 1.5, cfg.step_max);
                continue;
            }
            h /= 2;
            if (h >= cfg.step_min || (refine && h >= cfg.min_step_endpoint)) continue;
            if (!refine && cur.irreducibility() < 0.25) {
                refine = true;
                continue;
            }
            if (refine) {
                ep.kind = EndpointKind::AbelianLimit;
                break;
            }
            RegularityReport r = regularity_check(sys, cur, cfg);
            if (!r.regular) {
                ep.kind = EndpointKind::InteriorSingularity;
                break;
            }
            throw StepCollapse("continuation step collapsed at theta = " + std::to_string(cur.theta));
        }
        ep.last_theta = cur.theta;
        ep.last_irreducibility = cur.irreducibility();
        ep.theta = ep.kind == EndpointKind::AbelianLimit ? extrapolate_limit(out, cur.theta) : cur.theta;
        if (ep.kind == EndpointKind::AbelianLimit) {
            double best = std::numeric_limits<double>::infinity();
            for (double r : root_angles)
                if (std::abs(r - ep.theta) < std::abs(best - ep.theta)) best = r;
            ep.nearest_root = best;
            if (std::abs(best - ep.theta) < cfg.root_snap) {
                ep.root_matched = true;
                ep.theta = best;
            }
        }
    }
    arc.samples.assign(sides[1].rbegin(), sides[1].rend());
    arc.samples.push_back(start);
    arc.samples.insert(arc.samples.end(), sides[0].begin(), sides[0].end());
    return arc;
}

IntersectionPoint arc_point_at(const KappaSystem& sys, const RegularArc& arc, double theta, const SolverConfig& cfg) {
    if (arc.samples.empty()) throw DomainError("empty arc");
    std::size_t best = 0;
    for (std::size_t i = 1; i < arc.samples.size(); ++i)
        if (std::abs(arc.samples[i].theta - theta) < std::abs(arc.samples[best].theta - theta)) best = i;
    IntersectionPoint cur = arc.samples[best];
    double h = std::min(cfg.step_initial, std::abs(theta - cur.theta));
    while (std::abs(theta - cur.theta) > 1e-15) {
        const double dir = theta > cur.theta ? 1.0 : -1.0;
        const double step = std::min(h, std::abs(theta - cur.theta));
        CurveTangent tg = curve_tangent(sys, cur, cfg);
        IntersectionPoint next;
        if (continuation_step(sys, cur, tg, dir * step, cfg, next)) {
            if (step == std::abs(theta - cur.theta)) next.theta = theta;
            cur = next;
            h = std::min(h * 1.5, cfg.step_max);
        } else {
            h /= 2;
            if (h < 1e-14) throw StepCollapse("cannot reach theta = " + std::to_string(theta) + " on arc");
        }
    }
    return cur;
}

std::vector<RegularArc> trace_all_arcs(const KappaSystem& sys, const SolverConfig& cfg,
                                       const std::vector<double>& root_angles) {
    std::vector<RegularArc> arcs;
    for (double th : cfg.scan_angles) {
        for (const auto& p : find_all_at_angle(sys, th, cfg)) {
            RegularityReport r = regularity_check(sys, p, cfg);
            if (!r.regular) continue;
            auto key = invariant_traces(sys, p);
            bool known = false;
            for (const auto& a : arcs) {
                if (known) break;
                if (!(a.samples.front().theta <= th && th <= a.samples.back().theta)) continue;
                try {
                    known = key_distance(invariant_traces(sys, arc_point_at(sys, a, th, cfg)), key) < 1e-5;
                } catch (const Error&) {
                }
            }
            if (!known) arcs.push_back(trace_arc(sys, p, cfg, root_angles));
        }
    }
    std::sort(arcs.begin(), arcs.end(), [](const RegularArc& a, const RegularArc& b) {
        if (a.theta_lo() != b.theta_lo()) return a.theta_lo() < b.theta_lo();
        return a.theta_hi() < b.theta_hi();
    });
    return arcs;
}

}  // namespace platvol
