#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "platvol/integrate.hpp"
#include "platvol/solver.hpp"

namespace platvol {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr int kSchemaVersion = 1;

// JSON text with every float written as %.17g; keys keep insertion order.
std::string to_text(const Json& j, int indent = 2);
std::string sha256_hex(const std::string& data);

// Plat text plus orientation and splitting, e.g. "B4: 2 2 2 | o=+1 | S".
std::string canonical_plat(const PlatPresentation& plat);
Json config_snapshot(const SolverConfig& cfg, const VolumeOptions& vopt);

struct RunManifest {
    std::string command;
    std::string plat;
    Json config;
    std::string tool_version = kToolVersion;
    std::uint64_t seed = 0;
    std::string hash;

    static RunManifest make(const std::string& command, const PlatPresentation& plat, const SolverConfig& cfg,
                            const VolumeOptions& vopt, const Json& extra = Json::object());
    std::string canonical() const;  // everything but the hash
    Json to_json() const;
    static RunManifest from_json(const Json& j);
};

struct SampleRecord {
    double theta_m = 0, meridian_trace = 0;
    std::vector<double> invariant_traces;
    double omega_dtheta = 0;
    int sign = 0;
    double residual = 0;
};

struct EndpointRecord {
    std::string kind;
    double theta = 0, last_theta = 0, last_irreducibility = 0;
    std::optional<double> nearest_root;
    bool root_matched = false;
};

struct IntegralRecord {
    double value = 0, error = 0;
    bool divergent = false;
};

struct ArcRecord {
    int arc_id = 0;
    std::vector<SampleRecord> samples;  // ordered by theta_m
    EndpointRecord lower, upper;
    std::optional<IntegralRecord> integral;
};

ArcRecord make_arc_record(const KappaSystem& sys, const RegularArc& arc, int id, const SolverConfig& cfg,
                          const VolumeOptions& vopt, bool with_integral,
                          const IntegrationOptions& iopt = {});
Json to_json(const ArcRecord& r);
ArcRecord arc_from_json(const Json& j);

// {"schema_version", "manifest", "arcs", "payload_sha256"}
Json run_document(const RunManifest& m, const std::vector<ArcRecord>& arcs);
std::vector<ArcRecord> arcs_of(const Json& doc);

inline constexpr const char* kCsvHeader = "arc_id,theta_m,meridian_trace,omega_dtheta,sign,residual";
std::string to_csv(const std::vector<ArcRecord>& arcs);

class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir);
    // PLATVOL_CACHE_DIR, else ./.platvol-cache
    static std::filesystem::path default_dir();

    std::filesystem::path path_for(const RunManifest& m) const;
    // nullopt on a miss; CorruptCache when the file fails verification.
    std::optional<Json> load(const RunManifest& m) const;
    // Write-once: an existing verified entry is left alone.  Atomic rename.
    void store(const RunManifest& m, const Json& doc) const;

private:
    std::filesystem::path dir_;
};

}  // namespace platvol
