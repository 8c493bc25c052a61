// platvol command line front end.
#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "platvol/commands.hpp"

using namespace platvol;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::vector<std::string> split_moves(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

void print_arcs(const Json& doc, bool with_integral) {
    double total = 0.0;
    bool divergent = false;
    for (const auto& a : doc["arcs"]) {
        const auto& lo = a["endpoints"][0];
        const auto& hi = a["endpoints"][1];
        std::cout << "arc " << a["arc_id"].get<int>() << ": " << a["samples"].size() << " samples, theta_m in ["
                  << fmt("%.10f", lo["theta_m"].get<double>()) << ", " << fmt("%.10f", hi["theta_m"].get<double>())
                  << "], ends " << lo["kind"].get<std::string>() << " / " << hi["kind"].get<std::string>();
        if (with_integral) {
            const auto& in = a["integral"];
            if (in["divergent"].get<bool>()) {
                divergent = true;
                std::cout << ", integral divergent";
            } else {
                total += in["value"].get<double>();
                std::cout << ", integral " << fmt("%.12f", in["value"].get<double>()) << " +- "
                          << fmt("%.1e", in["error"].get<double>());
            }
        }
        std::cout << '\n';
    }
    if (with_integral)
        std::cout << "total (theta_m increasing on every arc): "
                  << (divergent ? std::string("divergent") : fmt("%.12f", total)) << '\n';
}

void print_catalog(const Json& doc) {
    for (const auto& a : doc["arcs"]) {
        std::cout << "l = " << a["l"].get<int>() << ": omega(d/dtheta_m) = " << fmt("%.12f", a["omega_dtheta"].get<double>())
                  << ", theta_m from " << fmt("%.10f", a["theta_lo"].get<double>()) << " to "
                  << fmt("%.10f", a["theta_hi"].get<double>()) << ", int_0^1 density dt = "
                  << fmt("%.12f", a["integral_t"].get<double>()) << '\n';
        std::cout << "       t      theta_m    dtheta/dt      density\n";
        for (const auto& r : a["rows"])
            std::cout << fmt("%8.4f", r["t"].get<double>()) << fmt(" %12.8f", r["theta_m"].get<double>())
                      << fmt(" %12.8f", r["dtheta_dt"].get<double>()) << fmt(" %12.8f", r["density"].get<double>())
                      << '\n';
    }
    std::cout << "signed sum over arcs: " << fmt("%.15f", doc["integral"].get<double>()) << '\n';
}

std::string catalog_csv(const Json& doc) {
    std::ostringstream out;
    out << "l,t,theta_m,dtheta_dt,density\n";
    char buf[160];
    for (const auto& a : doc["arcs"])
        for (const auto& r : a["rows"]) {
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", a["l"].get<int>(), r["t"].get<double>(),
                          r["theta_m"].get<double>(), r["dtheta_dt"].get<double>(), r["density"].get<double>());
            out << buf;
        }
    return out.str();
}

void print_invariance(const Json& doc) {
    for (const auto& m : doc["moves"]) {
        std::cout << (m["pass"].get<bool>() ? "PASS " : "FAIL ") << m["move"].get<std::string>() << ": sign "
                  << m["expected_sign"].get<int>() << ", " << m["compared"].get<int>() << " points, "
                  << m["unmatched"].get<int>() << " unmatched, max deviation "
                  << fmt("%.3e", m["max_deviation"].get<double>());
        if (!m["error"].is_null()) std::cout << " (" << m["error"].get<std::string>() << ")";
        std::cout << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regular SU(2) representation curves of plat knots and their canonical volume form"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string cache_dir, plat_text, moves_text;
    std::uint64_t seed = 1;
    bool as_json = false, as_csv = false, ambient_flip = false;
    double tol = -1.0, theta = 0.0;
    int q = 3;
    app.add_option("--cache-dir", cache_dir, "result cache directory (default: $PLATVOL_CACHE_DIR or .platvol-cache)");
    app.add_option("--seed", seed, "RNG seed for multistart solves");
    app.add_flag("--json", as_json, "emit JSON");
    app.add_flag("--csv", as_csv, "emit CSV");
    app.add_option("--tol", tol, "integration and invariance tolerance");
    app.add_flag("--ambient-flip", ambient_flip, "use the opposite orientation of S^3");

    auto* arcs = app.add_subcommand("arcs", "trace all arcs of Reg(K)");
    arcs->add_option("plat", plat_text, "plat, e.g. \"B4: 2 2 2\"")->required();
    auto* volume = app.add_subcommand("volume", "omega(d/dtheta_m) at every point with the given meridian angle");
    volume->add_option("plat", plat_text)->required();
    volume->add_option("--theta", theta, "meridian angle in (0, pi)")->required();
    auto* integrate = app.add_subcommand("integrate", "integrate omega over every arc");
    integrate->add_option("plat", plat_text)->required();
    auto* invariance = app.add_subcommand("invariance", "compare omega across plat moves");
    invariance->add_option("plat", plat_text)->required();
    invariance->add_option("--moves", moves_text, "comma separated moves (default: all)");
    auto* catalog = app.add_subcommand("catalog", "closed forms");
    auto* torus = catalog->add_subcommand("torus", "(2, q) torus knot densities and integral");
    catalog->require_subcommand(1);
    torus->add_option("--q", q, "odd q >= 3")->required();
    auto* alexander = app.add_subcommand("alexander", "Alexander polynomial and its unit-circle roots");
    alexander->add_option("plat", plat_text)->required();
    auto* verify = app.add_subcommand("verify-all", "Alexander data, arcs, integrals and the invariance suite");
    verify->add_option("plat", plat_text)->required();

    try {
        app.parse(argc, argv);
        if (as_json && as_csv) throw UsageError("--json and --csv are exclusive");
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    std::string command = app.get_subcommands().front()->get_name();
    std::vector<std::string> warnings;
    RunOptions opt;
    opt.solver.seed = seed;
    if (ambient_flip) opt.volume.ambient = -1;
    if (tol > 0) {
        opt.integration.tol = tol;
        opt.suite_tolerance = tol;
    }
    opt.cache_dir = cache_dir.empty() ? ResultCache::default_dir() : std::filesystem::path(cache_dir);
    opt.warnings = &warnings;

    try {
        if (as_csv && command != "arcs" && command != "integrate" && command != "catalog")
            throw UsageError("--csv is available for arcs, integrate and catalog");
        Json doc;
        int rc = 0;
        if (command == "catalog") {
            doc = torus_catalog(q);
            if (as_csv) std::cout << catalog_csv(doc);
            else if (as_json) std::cout << to_text(doc) << '\n';
            else print_catalog(doc);
        } else {
            PlatPresentation plat = make_plat(plat_text);
            if (command == "arcs" || command == "integrate") {
                bool with_integral = command == "integrate";
                doc = arcs_command(plat, opt, with_integral);
                for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
                if (as_csv) std::cout << to_csv(arcs_of(doc));
                else if (as_json) std::cout << to_text(doc) << '\n';
                else print_arcs(doc, with_integral);
            } else if (command == "volume") {
                doc = volume_command(plat, theta, opt);
                if (as_json) {
                    std::cout << to_text(doc) << '\n';
                } else {
                    for (const auto& p : doc["points"]) {
                        std::cout << (p["regular"].get<bool>() ? "regular    " : "not regular") << "  h0=" << p["h0"]
                                  << " h1=" << p["h1"] << " rank=" << p["transversality_rank"];
                        if (!p["omega_dtheta"].is_null())
                            std::cout << "  omega(d/dtheta_m) = " << fmt("%.12f", p["omega_dtheta"].get<double>());
                        std::cout << '\n';
                    }
                }
            } else if (command == "alexander") {
                doc = alexander_command(plat);
                if (as_json) {
                    std::cout << to_text(doc) << '\n';
                } else {
                    std::cout << "Delta(t) = " << doc["polynomial"].get<std::string>() << "\nroot angles:";
                    for (const auto& r : doc["root_angles"]) std::cout << ' ' << fmt("%.12f", r.get<double>());
                    std::cout << '\n';
                }
            } else if (command == "invariance") {
                doc = invariance_command(plat, split_moves(moves_text), opt);
                if (as_json) std::cout << to_text(doc) << '\n';
                else print_invariance(doc);
                rc = doc["pass"].get<bool>() ? 0 : 1;
            } else if (command == "verify-all") {
                doc = verify_all(plat, opt);
                for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
                if (as_json) {
                    std::cout << to_text(doc) << '\n';
                } else {
                    std::cout << "Delta(t) = " << doc["alexander"]["polynomial"].get<std::string>() << '\n';
                    print_arcs(doc["arcs"], true);
                    print_invariance(doc["invariance"]);
                    std::cout << (doc["pass"].get<bool>() ? "PASS" : "FAIL") << '\n';
                }
                rc = doc["pass"].get<bool>() ? 0 : 1;
            }
        }
        return rc;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        Json d;
        d["command"] = command;
        d["error"] = e.kind();
        d["message"] = e.what();
        std::cout << to_text(d) << '\n';
        return std::string(e.kind()) == "ParseError" ? 2 : 1;
    } catch (const std::exception& e) {
        Json d;
        d["command"] = command;
        d["error"] = "InternalError";
        d["message"] = e.what();
        std::cout << to_text(d) << '\n';
        return 1;
    }
}
