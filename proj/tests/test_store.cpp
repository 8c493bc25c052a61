#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "platvol/commands.hpp"

using namespace platvol;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("platvol-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("float text round trip") {
    Json j = Json::object();
    j["a"] = 0.1;
    j["b"] = M_PI;
    j["c"] = -1.0 / 3.0;
    j["d"] = std::nan("");
    j["e"] = 7;
    std::string txt = to_text(j, -1);
    Json back = Json::parse(txt);
    CHECK(back["a"].get<double>() == 0.1);
    CHECK(back["b"].get<double>() == M_PI);
    CHECK(back["c"].get<double>() == -1.0 / 3.0);
    CHECK(back["d"].is_null());
    CHECK(back["e"].get<int>() == 7);
    CHECK(to_text(back, -1) == txt);
}

TEST_CASE("sha256") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("manifest hashing") {
    PlatPresentation t = make_plat("B4: 2 2 2");
    SolverConfig cfg;
    VolumeOptions v;
    RunManifest a = RunManifest::make("arcs", t, cfg, v), b = RunManifest::make("arcs", t, cfg, v);
    CHECK(a.hash == b.hash);
    CHECK(a.hash.size() == 64);
    CHECK(canonical_plat(t) == "B4: 2 2 2 | o=+1 | S");

    SolverConfig c2 = cfg;
    c2.residual_tol = 1e-11;
    CHECK(RunManifest::make("arcs", t, c2, v).hash != a.hash);
    SolverConfig c3 = cfg;
    c3.seed = 2;
    CHECK(RunManifest::make("arcs", t, c3, v).hash != a.hash);
    VolumeOptions v2;
    v2.ambient = -1;
    CHECK(RunManifest::make("arcs", t, cfg, v2).hash != a.hash);
    CHECK(RunManifest::make("integrate", t, cfg, v).hash != a.hash);
    CHECK(RunManifest::make("arcs", mirror(t), cfg, v).hash != a.hash);

    RunManifest r = RunManifest::from_json(a.to_json());
    CHECK(r.hash == a.hash);
    CHECK(r.canonical() == a.canonical());
}

TEST_CASE("arc records survive a JSON round trip bit for bit") {
    RunOptions opt;
    Json doc = arcs_command(make_plat("B4: 2 2 2"), opt, true);
    std::vector<ArcRecord> arcs = arcs_of(doc);
    REQUIRE(arcs.size() == 1);
    const ArcRecord& a = arcs[0];
    for (std::size_t i = 1; i < a.samples.size(); ++i) CHECK(a.samples[i - 1].theta_m < a.samples[i].theta_m);
    REQUIRE(a.integral.has_value());
    CHECK(std::abs(a.integral->value - 4 * M_PI / 3) < 1e-6);

    Json again = Json::parse(to_text(doc));
    std::vector<ArcRecord> b = arcs_of(again);
    REQUIRE(b.size() == 1);
    REQUIRE(b[0].samples.size() == a.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(b[0].samples[i].theta_m == a.samples[i].theta_m);
        CHECK(b[0].samples[i].omega_dtheta == a.samples[i].omega_dtheta);
        CHECK(b[0].samples[i].invariant_traces == a.samples[i].invariant_traces);
    }
    CHECK(to_text(again) == to_text(doc));
}

TEST_CASE("csv output") {
    RunOptions opt;
    std::vector<ArcRecord> arcs = arcs_of(arcs_command(make_plat("B4: 2 2 2 2 2"), opt, false));
    std::string csv = to_csv(arcs);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == kCsvHeader);
    std::size_t rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == arcs[0].samples.size() + arcs[1].samples.size());
}

TEST_CASE("result cache") {
    TempDir tmp;
    std::vector<std::string> warnings;
    RunOptions opt;
    opt.cache_dir = tmp.path;
    opt.warnings = &warnings;
    PlatPresentation t = make_plat("B4: 2 2 2");

    Json first = arcs_command(t, opt, false);
    RunManifest m = RunManifest::from_json(first["manifest"]);
    CHECK(m.command == "arcs");
    ResultCache cache(tmp.path);
    fs::path file = cache.path_for(m);
    REQUIRE(fs::exists(file));
    const std::string stored = slurp(file);
    auto hit = cache.load(m);
    REQUIRE(hit.has_value());
    CHECK(to_text(*hit) == to_text(first));

    // a second run reads the same bytes back
    Json second = arcs_command(t, opt, false);
    CHECK(to_text(second) == to_text(first));
    CHECK(slurp(file) == stored);
    CHECK(warnings.empty());

    // corrupt one digit in the payload
    std::string bad = stored;
    auto pos = bad.find("\"omega_dtheta\": ");
    REQUIRE(pos != std::string::npos);
    pos += 16;
    bad[pos] = bad[pos] == '1' ? '2' : '1';
    std::ofstream(file) << bad;
    CHECK_THROWS_AS(cache.load(m), CorruptCache);

    Json third = arcs_command(t, opt, false);
    CHECK(to_text(third) == to_text(first));
    CHECK(warnings.size() == 1);
    CHECK(slurp(file) == stored);

    // truncated file
    std::ofstream(file) << stored.substr(0, stored.size() / 2);
    CHECK_THROWS_AS(cache.load(m), CorruptCache);

    RunManifest other = RunManifest::make("arcs", mirror(t), opt.solver, opt.volume);
    CHECK_FALSE(cache.load(other).has_value());
}

TEST_CASE("outputs are deterministic across cache directories") {
    TempDir a, b;
    RunOptions oa, ob;
    oa.cache_dir = a.path;
    ob.cache_dir = b.path;
    PlatPresentation q5 = make_plat("B4: 2 2 2 2 2");
    CHECK(to_text(arcs_command(q5, oa, true)) == to_text(arcs_command(q5, ob, true)));
    RunOptions none;
    CHECK(to_text(arcs_command(q5, none, true)) == to_text(arcs_command(q5, oa, true)));
}
