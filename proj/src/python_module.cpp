#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "platvol/commands.hpp"

namespace py = pybind11;
using namespace platvol;

namespace {

RunOptions options(std::uint64_t seed, std::optional<std::filesystem::path> cache_dir, double tol, bool ambient_flip,
                   std::vector<std::string>* warnings) {
    RunOptions opt;
    opt.solver.seed = seed;
    opt.cache_dir = std::move(cache_dir);
    if (tol > 0) {
        opt.integration.tol = tol;
        opt.suite_tolerance = tol;
    }
    if (ambient_flip) opt.volume.ambient = -1;
    opt.warnings = warnings;
    return opt;
}

// Commands return (json text, warnings); the GIL is released while they run.
py::tuple run(const std::function<Json(const RunOptions&)>& f, std::uint64_t seed,
              std::optional<std::filesystem::path> cache_dir, double tol, bool ambient_flip) {
    std::vector<std::string> warnings;
    std::string text;
    {
        py::gil_scoped_release release;
        text = to_text(f(options(seed, std::move(cache_dir), tol, ambient_flip, &warnings)));
    }
    return py::make_tuple(text, warnings);
}

}  // namespace

PYBIND11_MODULE(_platvol, m) {
    m.doc() = "SU(2) regular representation curves and volume forms of knots given as plats";
    m.attr("tool_version") = kToolVersion;
    m.attr("schema_version") = kSchemaVersion;

    // leaked on purpose: the exception type must outlive module teardown
    static py::exception<Error>* base = new py::exception<Error>(m, "PlatvolError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(*base, (std::string(e.kind()) + ": " + e.what()).c_str());
        }
    });

    m.def(
        "arcs",
        [](const std::string& plat, bool with_integral, std::uint64_t seed,
           std::optional<std::filesystem::path> cache_dir, double tol, bool ambient_flip) {
            PlatPresentation p = make_plat(plat);
            return run([&](const RunOptions& o) { return arcs_command(p, o, with_integral); }, seed, cache_dir, tol,
                       ambient_flip);
        },
        py::arg("plat"), py::arg("with_integral") = false, py::arg("seed") = 1, py::arg("cache_dir") = py::none(),
        py::arg("tol") = 0.0, py::arg("ambient_flip") = false);
    m.def(
        "volume",
        [](const std::string& plat, double theta, std::uint64_t seed, bool ambient_flip) {
            PlatPresentation p = make_plat(plat);
            return run([&](const RunOptions& o) { return volume_command(p, theta, o); }, seed, std::nullopt, 0.0,
                       ambient_flip);
        },
        py::arg("plat"), py::arg("theta"), py::arg("seed") = 1, py::arg("ambient_flip") = false);
    m.def(
        "invariance",
        [](const std::string& plat, const std::vector<std::string>& moves, std::uint64_t seed, double tol) {
            PlatPresentation p = make_plat(plat);
            return run([&](const RunOptions& o) { return invariance_command(p, moves, o); }, seed, std::nullopt, tol,
                       false);
        },
        py::arg("plat"), py::arg("moves") = std::vector<std::string>{}, py::arg("seed") = 1, py::arg("tol") = 0.0);
    m.def(
        "verify_all",
        [](const std::string& plat, std::uint64_t seed, std::optional<std::filesystem::path> cache_dir) {
            PlatPresentation p = make_plat(plat);
            return run([&](const RunOptions& o) { return verify_all(p, o); }, seed, cache_dir, 0.0, false);
        },
        py::arg("plat"), py::arg("seed") = 1, py::arg("cache_dir") = py::none());
    m.def("alexander", [](const std::string& plat) { return to_text(alexander_command(make_plat(plat))); },
          py::arg("plat"));
    m.def("torus_catalog", [](int q, int samples) { return to_text(torus_catalog(q, samples)); }, py::arg("q"),
          py::arg("samples") = 19);
    m.def("canonical_plat", [](const std::string& plat) { return canonical_plat(make_plat(plat)); }, py::arg("plat"));
}
