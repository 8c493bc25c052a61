#include "platvol/store.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace platvol {

namespace fs = std::filesystem;

namespace {

void write_value(std::ostringstream& out, const Json& j, int indent, int depth) {
    const bool pretty = indent >= 0;
    auto newline = [&](int d) {
        if (!pretty) return;
        out << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
    };
    if (j.is_object()) {
        if (j.empty()) {
            out << "{}";
            return;
        }
        out << '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out << ',';
            first = false;
            newline(depth + 1);
            out << Json(it.key()).dump() << (pretty ? ": " : ":");
            write_value(out, it.value(), indent, depth + 1);
        }
        newline(depth);
        out << '}';
    } else if (j.is_array()) {
        if (j.empty()) {
            out << "[]";
            return;
        }
        out << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out << ',';
            newline(depth + 1);
            write_value(out, j[i], indent, depth + 1);
        }
        newline(depth);
        out << ']';
    } else if (j.is_number_float()) {
        double v = j.get<double>();
        if (!std::isfinite(v)) {
            out << "null";
            return;
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf;
    } else {
        out << j.dump();
    }
}

double real_or_nan(const Json& j) { return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>(); }

Json endpoint_json(const EndpointRecord& e) {
    Json j;
    j["kind"] = e.kind;
    j["theta_m"] = e.theta;
    j["last_theta_m"] = e.last_theta;
    j["last_irreducibility"] = e.last_irreducibility;
    j["nearest_root"] = e.nearest_root ? Json(*e.nearest_root) : Json(nullptr);
    j["root_matched"] = e.root_matched;
    return j;
}

EndpointRecord endpoint_from_json(const Json& j) {
    EndpointRecord e;
    e.kind = j.at("kind").get<std::string>();
    e.theta = j.at("theta_m").get<double>();
    e.last_theta = j.at("last_theta_m").get<double>();
    e.last_irreducibility = j.at("last_irreducibility").get<double>();
    if (!j.at("nearest_root").is_null()) e.nearest_root = j.at("nearest_root").get<double>();
    e.root_matched = j.at("root_matched").get<bool>();
    return e;
}

EndpointRecord endpoint_record(const ArcEndpoint& e) {
    EndpointRecord r;
    r.kind = endpoint_name(e.kind);
    r.theta = e.theta;
    r.last_theta = e.last_theta;
    r.last_irreducibility = e.last_irreducibility;
    if (!std::isnan(e.nearest_root)) r.nearest_root = e.nearest_root;
    r.root_matched = e.root_matched;
    return r;
}

std::string payload_digest(const Json& arcs) { return sha256_hex(to_text(arcs, -1)); }

}  // namespace

std::string to_text(const Json& j, int indent) {
    std::ostringstream out;
    write_value(out, j, indent, 0);
    return out.str();
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 failed");
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (unsigned int i = 0; i < len; ++i) {
        s += hex[md[i] >> 4];
        s += hex[md[i] & 15];
    }
    return s;
}

std::string canonical_plat(const PlatPresentation& plat) {
    return plat.braid.to_string() + " | o=" + (plat.orientation > 0 ? "+1" : "-1") + " | " +
           (plat.splitting == Splitting::Standard ? "S" : "S'");
}

Json config_snapshot(const SolverConfig& cfg, const VolumeOptions& vopt) {
    Json s;
    s["residual_tol"] = cfg.residual_tol;
    s["max_iterations"] = cfg.max_iterations;
    s["multistart"] = cfg.multistart;
    s["dedup_tol"] = cfg.dedup_tol;
    s["reducible_tol"] = cfg.reducible_tol;
    s["endpoint_tol"] = cfg.endpoint_tol;
    s["step_initial"] = cfg.step_initial;
    s["step_min"] = cfg.step_min;
    s["step_max"] = cfg.step_max;
    s["min_step_endpoint"] = cfg.min_step_endpoint;
    s["domain_margin"] = cfg.domain_margin;
    s["root_snap"] = cfg.root_snap;
    s["rank_rel"] = cfg.rank_rel;
    s["scan_angles"] = cfg.scan_angles;
    s["chart"] = cfg.chart == TraceChart::Angle ? "angle" : "trace";
    s["volume_chart"] = vopt.chart == TraceChart::Angle ? "angle" : "trace";
    s["ambient"] = vopt.ambient;
    s["volume_rank_rel"] = vopt.rank_rel;
    s["mix_seed"] = vopt.mix_seed;
    return s;
}

RunManifest RunManifest::make(const std::string& command, const PlatPresentation& plat, const SolverConfig& cfg,
                              const VolumeOptions& vopt, const Json& extra) {
    RunManifest m;
    m.command = command;
    m.plat = canonical_plat(plat);
    m.config = config_snapshot(cfg, vopt);
    for (auto it = extra.begin(); it != extra.end(); ++it) m.config[it.key()] = it.value();
    m.seed = cfg.seed;
    m.hash = sha256_hex(m.canonical());
    return m;
}

std::string RunManifest::canonical() const {
    Json j;
    j["command"] = command;
    j["plat"] = plat;
    j["config"] = config;
    j["tool_version"] = tool_version;
    j["seed"] = seed;
    return to_text(j, -1);
}

Json RunManifest::to_json() const {
    Json j;
    j["command"] = command;
    j["plat"] = plat;
    j["config"] = config;
    j["tool_version"] = tool_version;
    j["seed"] = seed;
    j["hash"] = hash;
    return j;
}

RunManifest RunManifest::from_json(const Json& j) {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.plat = j.at("plat").get<std::string>();
    m.config = j.at("config");
    m.tool_version = j.at("tool_version").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.hash = j.at("hash").get<std::string>();
    return m;
}

ArcRecord make_arc_record(const KappaSystem& sys, const RegularArc& arc, int id, const SolverConfig& cfg,
                          const VolumeOptions& vopt, bool with_integral, const IntegrationOptions& iopt) {
    ArcRecord r;
    r.arc_id = id;
    for (const auto& x : arc.samples) {
        SampleRecord s;
        s.theta_m = x.theta;
        s.meridian_trace = x.meridian_trace();
        s.invariant_traces = invariant_traces(sys, x);
        s.residual = x.residual;
        try {
            VolumeSample v = volume_sample(sys, x, vopt);
            s.omega_dtheta = v.omega;
            s.sign = v.sign;
        } catch (const NotRegular&) {
            s.omega_dtheta = std::numeric_limits<double>::quiet_NaN();
        }
        r.samples.push_back(std::move(s));
    }
    std::sort(r.samples.begin(), r.samples.end(),
              [](const SampleRecord& a, const SampleRecord& b) { return a.theta_m < b.theta_m; });
    r.lower = endpoint_record(arc.lower);
    r.upper = endpoint_record(arc.upper);
    if (with_integral) {
        IntegralResult ir = integrate_arc(sys, arc, cfg, vopt, iopt);
        r.integral = IntegralRecord{ir.value, ir.error, ir.divergent};
    }
    return r;
}

Json to_json(const ArcRecord& r) {
    Json j;
    j["arc_id"] = r.arc_id;
    Json samples = Json::array();
    for (const auto& s : r.samples) {
        Json e;
        e["theta_m"] = s.theta_m;
        e["meridian_trace"] = s.meridian_trace;
        e["invariant_traces"] = s.invariant_traces;
        e["omega_dtheta"] = s.omega_dtheta;
        e["sign"] = s.sign;
        e["residual"] = s.residual;
        samples.push_back(std::move(e));
    }
    j["samples"] = std::move(samples);
    j["endpoints"] = {endpoint_json(r.lower), endpoint_json(r.upper)};
    if (r.integral) {
        Json in;
        in["value"] = r.integral->value;
        in["error"] = r.integral->error;
        in["divergent"] = r.integral->divergent;
        j["integral"] = std::move(in);
    } else {
        j["integral"] = nullptr;
    }
    return j;
}

ArcRecord arc_from_json(const Json& j) {
    ArcRecord r;
    r.arc_id = j.at("arc_id").get<int>();
    for (const auto& e : j.at("samples")) {
        SampleRecord s;
        s.theta_m = e.at("theta_m").get<double>();
        s.meridian_trace = e.at("meridian_trace").get<double>();
        s.invariant_traces = e.at("invariant_traces").get<std::vector<double>>();
        s.omega_dtheta = real_or_nan(e.at("omega_dtheta"));
        s.sign = e.at("sign").get<int>();
        s.residual = e.at("residual").get<double>();
        r.samples.push_back(std::move(s));
    }
    const Json& ends = j.at("endpoints");
    if (!ends.is_array() || ends.size() != 2) throw CorruptCache("arc record needs two endpoints");
    r.lower = endpoint_from_json(ends[0]);
    r.upper = endpoint_from_json(ends[1]);
    if (!j.at("integral").is_null()) {
        const Json& in = j.at("integral");
        r.integral = IntegralRecord{real_or_nan(in.at("value")), real_or_nan(in.at("error")),
                                    in.at("divergent").get<bool>()};
    }
    return r;
}

Json run_document(const RunManifest& m, const std::vector<ArcRecord>& arcs) {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["manifest"] = m.to_json();
    Json a = Json::array();
    for (const auto& r : arcs) a.push_back(to_json(r));
    doc["payload_sha256"] = payload_digest(a);
    doc["arcs"] = std::move(a);
    return doc;
}

std::vector<ArcRecord> arcs_of(const Json& doc) {
    std::vector<ArcRecord> out;
    for (const auto& a : doc.at("arcs")) out.push_back(arc_from_json(a));
    return out;
}

std::string to_csv(const std::vector<ArcRecord>& arcs) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    char buf[200];
    for (const auto& a : arcs)
        for (const auto& s : a.samples) {
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%d,%.17g\n", a.arc_id, s.theta_m, s.meridian_trace,
                          s.omega_dtheta, s.sign, s.residual);
            out << buf;
        }
    return out.str();
}

ResultCache::ResultCache(fs::path dir) : dir_(std::move(dir)) {}

fs::path ResultCache::default_dir() {
    if (const char* env = std::getenv("PLATVOL_CACHE_DIR"); env && *env) return env;
    return ".platvol-cache";
}

fs::path ResultCache::path_for(const RunManifest& m) const { return dir_ / (m.hash + ".json"); }

std::optional<Json> ResultCache::load(const RunManifest& m) const {
    const fs::path p = path_for(m);
    if (!fs::exists(p)) return std::nullopt;
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    Json doc;
    try {
        doc = Json::parse(buf.str());
    } catch (const Json::exception& e) {
        throw CorruptCache(p.string() + ": unreadable JSON");
    }
    try {
        if (doc.at("schema_version").get<int>() != kSchemaVersion)
            throw CorruptCache(p.string() + ": schema version mismatch");
        RunManifest stored = RunManifest::from_json(doc.at("manifest"));
        if (stored.hash != m.hash || sha256_hex(stored.canonical()) != m.hash)
            throw CorruptCache(p.string() + ": manifest hash mismatch");
        if (payload_digest(doc.at("arcs")) != doc.at("payload_sha256").get<std::string>())
            throw CorruptCache(p.string() + ": payload hash mismatch");
        arcs_of(doc);
    } catch (const Json::exception& e) {
        throw CorruptCache(p.string() + ": malformed record");
    }
    return doc;
}

void ResultCache::store(const RunManifest& m, const Json& doc) const {
    const fs::path p = path_for(m);
    if (fs::exists(p)) {
        try {
            if (load(m)) return;
        } catch (const CorruptCache&) {
            // fall through and replace the damaged entry
        }
    }
    fs::create_directories(dir_);
    fs::path tmp = p;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << to_text(doc) << '\n';
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, p);
}

}  // namespace platvol
