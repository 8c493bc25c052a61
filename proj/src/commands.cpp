#include "platvol/commands.hpp"

#include <cmath>

namespace platvol {

namespace {

std::vector<double> root_angles(const PlatPresentation& plat) {
    return alexander_root_angles(alexander_polynomial(wirtinger_presentation(plat)));
}

Json compute_arcs(const PlatPresentation& plat, const RunOptions& opt, bool with_integral, const RunManifest& m) {
    KappaSystem sys(plat);
    std::vector<ArcRecord> records;
    int id = 0;
    for (const auto& arc : trace_all_arcs(sys, opt.solver, root_angles(plat)))
        records.push_back(make_arc_record(sys, arc, id++, opt.solver, opt.volume, with_integral, opt.integration));
    return run_document(m, records);
}

}  // namespace

Json arcs_command(const PlatPresentation& plat, const RunOptions& opt, bool with_integral) {
    Json extra;
    extra["integral_tol"] = with_integral ? Json(opt.integration.tol) : Json(nullptr);
    RunManifest m = RunManifest::make(with_integral ? "integrate" : "arcs", plat, opt.solver, opt.volume, extra);
    if (!opt.cache_dir) return compute_arcs(plat, opt, with_integral, m);

    ResultCache cache(*opt.cache_dir);
    try {
        if (auto hit = cache.load(m)) return *hit;
    } catch (const CorruptCache& e) {
        if (opt.warnings) opt.warnings->push_back(std::string("CorruptCache: ") + e.what() + "; recomputing");
    }
    Json doc = compute_arcs(plat, opt, with_integral, m);
    cache.store(m, doc);
    return doc;
}

Json volume_command(const PlatPresentation& plat, double theta, const RunOptions& opt) {
    if (!(theta > 0.0 && theta < M_PI)) throw DomainError("theta must lie in (0, pi)");
    KappaSystem sys(plat);
    Json doc;
    doc["plat"] = canonical_plat(plat);
    doc["theta_m"] = theta;
    doc["meridian_trace"] = 2.0 * std::cos(theta);
    Json pts = Json::array();
    for (const auto& x : find_all_at_angle(sys, theta, opt.solver)) {
        RegularityReport reg = regularity_check(sys, x, opt.solver);
        Json p;
        p["invariant_traces"] = invariant_traces(sys, x);
        p["regular"] = reg.regular;
        p["h0"] = reg.cohomology.h0;
        p["h1"] = reg.cohomology.h1;
        p["transversality_rank"] = reg.rank;
        p["residual"] = x.residual;
        if (reg.regular) {
            double w = omega_dtheta(sys, theta, x.P, x.P2, opt.volume);
            p["omega_dtheta"] = w;
            p["sign"] = w > 0 ? 1 : (w < 0 ? -1 : 0);
        } else {
            p["omega_dtheta"] = nullptr;
            p["sign"] = 0;
        }
        pts.push_back(std::move(p));
    }
    doc["points"] = std::move(pts);
    return doc;
}

Json alexander_command(const PlatPresentation& plat) {
    IntegerPolynomial d = alexander_polynomial(wirtinger_presentation(plat));
    Json doc;
    doc["plat"] = canonical_plat(plat);
    doc["polynomial"] = d.to_string();
    doc["coefficients"] = d.coeffs;
    doc["root_angles"] = alexander_root_angles(d);
    return doc;
}

Json torus_catalog(int q, int samples) {
    Json doc;
    doc["q"] = q;
    Json arcs = Json::array();
    for (int l = 1; l <= (q - 1) / 2; ++l) {
        TorusKnotArcModel m(q, l);
        Json a;
        a["l"] = l;
        a["omega_dtheta"] = m.omega_dtheta();
        a["theta_lo"] = m.endpoint_lo();
        a["theta_hi"] = m.endpoint_hi();
        a["integral_t"] = m.integral();
        Json rows = Json::array();
        for (int i = 1; i <= samples; ++i) {
            double t = static_cast<double>(i) / (samples + 1);
            TorusClosedForm c = torus_closed_form(q, l, t);
            Json r;
            r["t"] = t;
            r["theta_m"] = c.theta_m;
            r["dtheta_dt"] = c.dtheta_dt;
            r["density"] = c.density;
            rows.push_back(std::move(r));
        }
        a["rows"] = std::move(rows);
        arcs.push_back(std::move(a));
    }
    doc["arcs"] = std::move(arcs);
    doc["integral"] = torus_integral(q);
    return doc;
}

Json to_json(const InvarianceReport& r) {
    Json doc;
    doc["plat"] = r.plat;
    Json moves = Json::array();
    for (const auto& m : r.moves) {
        Json j;
        j["move"] = m.move;
        j["expected_sign"] = m.expected_sign;
        j["compared"] = m.compared;
        j["unmatched"] = m.unmatched;
        j["max_deviation"] = m.max_deviation;
        j["tolerance"] = m.tolerance;
        j["pass"] = m.pass;
        j["error"] = m.error.empty() ? Json(nullptr) : Json(m.error);
        moves.push_back(std::move(j));
    }
    doc["moves"] = std::move(moves);
    doc["pass"] = r.pass();
    return doc;
}

Json invariance_command(const PlatPresentation& plat, const std::vector<std::string>& moves, const RunOptions& opt) {
    SuiteConfig cfg;
    cfg.solver = opt.solver;
    cfg.volume = opt.volume;
    cfg.tolerance = opt.suite_tolerance;
    return to_json(invariance_suite(plat, moves.empty() ? all_moves(plat) : moves, cfg));
}

Json verify_all(const PlatPresentation& plat, const RunOptions& opt) {
    Json doc;
    doc["plat"] = canonical_plat(plat);
    doc["alexander"] = alexander_command(plat);
    Json arcs = arcs_command(plat, opt, true);
    bool ok = !arcs["arcs"].empty();
    for (const auto& a : arcs["arcs"]) {
        for (const auto& e : a["endpoints"]) ok = ok && e["kind"] == "AbelianLimit" && e["root_matched"] == true;
        ok = ok && !a["integral"]["divergent"].get<bool>();
    }
    doc["arcs"] = std::move(arcs);
    doc["invariance"] = invariance_command(plat, {}, opt);
    ok = ok && doc["invariance"]["pass"].get<bool>();
    doc["pass"] = ok;
    return doc;
}

}  // namespace platvol
