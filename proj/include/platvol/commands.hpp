#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "platvol/knot_lab.hpp"
#include "platvol/store.hpp"

namespace platvol {

// Shared by the CLI and the Python module.  Every command returns a JSON
// document; the CLI renders it as text, JSON or CSV.
struct RunOptions {
    SolverConfig solver;
    VolumeOptions volume;
    IntegrationOptions integration;
    double suite_tolerance = 1e-8;
    std::optional<std::filesystem::path> cache_dir;  // no caching when empty
    std::vector<std::string>* warnings = nullptr;
};

Json arcs_command(const PlatPresentation& plat, const RunOptions& opt, bool with_integral);
Json volume_command(const PlatPresentation& plat, double theta, const RunOptions& opt);
Json alexander_command(const PlatPresentation& plat);
Json torus_catalog(int q, int samples = 19);
Json invariance_command(const PlatPresentation& plat, const std::vector<std::string>& moves, const RunOptions& opt);
// Alexander data, arcs with integrals, and every invariance move; "pass" at top level.
Json verify_all(const PlatPresentation& plat, const RunOptions& opt);

Json to_json(const InvarianceReport& r);

}  // namespace platvol
