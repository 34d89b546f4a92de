#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "renormlab/config.hpp"
#include "renormlab/error.hpp"
#include "renormlab/registry.hpp"

using namespace rlab;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out, err;
};

Run run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "renormlab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path temp_dir(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("renormlab_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST_CASE("config defaults, parsing and validation")
{
    const RunConfig d = RunConfig::defaults();
    CHECK(d.grid == 1025);
    CHECK(d.depth_of("extension") == 40);
    CHECK(d.tol_of("fixed_point") == 1e-12);
    const RunConfig p = RunConfig::parse("# comment\nprecision = double\ngrid = 513\ndepth.renorm = 8\ntol.convergence = 1e-5\n");
    CHECK(p.precision == Precision::Double);
    CHECK(p.grid == 513);
    CHECK(p.depth_of("renorm") == 8);
    CHECK(p.tol_of("convergence") == 1e-5);
    CHECK_THROWS_AS(RunConfig::parse("colour = red\n"), Error);
    CHECK_THROWS_AS(RunConfig::parse("depth.nonsense = 3\n"), Error);
    CHECK_THROWS_AS(RunConfig::parse("grid = 3\n").validate(), Error);
    CHECK_THROWS_AS(RunConfig::parse("tol.shift = 2\n").validate(), Error);
    CHECK_THROWS_AS(RunConfig::parse("precision = double\ndepth.renorm = 14\n").validate(), Error);
    CHECK_THROWS_AS(RunConfig::parse("grid = abc\n"), Error);
}

TEST_CASE("property: config serialization round-trips")
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        RunConfig c = RunConfig::defaults();
        c.precision = (rng() & 1) ? Precision::Double : Precision::Extended;
        c.grid = 17 + static_cast<int>(rng() % 4000);
        c.seed = rng();
        for (const auto& [name, range] : depth_ranges())
            c.depth[name] = range.lo + static_cast<int>(rng() % (range.hi - range.lo + 1));
        for (const char* capped : {"renorm", "reference"})
            c.depth[capped] = std::min(c.depth[capped], precision_depth_cap(c.precision));
        std::uniform_real_distribution<double> U(-14, -1);
        for (const auto& [name, value] : tol_defaults()) c.tol[name] = std::pow(10.0, U(rng));
        c.outdir = "out" + std::to_string(trial);
        CHECK(RunConfig::parse(c.serialize()) == c);
    }
}

TEST_CASE("map registry")
{
    const RunConfig c = RunConfig::defaults();
    CHECK(resolve_map("quadratic(0.3)", c).family == "quadratic");
    CHECK(resolve_map("quadratic(feigenbaum)", c).map.critical_point() > 0.28L);
    CHECK(resolve_map("piecewise(0.4:0.16)", c).family == "piecewise");
    CHECK_THROWS_AS(resolve_map("quadratic(0.3", c), Error);
    CHECK_THROWS_AS(resolve_map("cubic(0.3)", c), Error);
    CHECK_THROWS_AS(resolve_map("quadratic(abc)", c), Error);
    CHECK(map_families().size() == 5);
}

TEST_CASE("fixed-point output is byte-identical across runs")
{
    const fs::path a = temp_dir("fp_a"), b = temp_dir("fp_b");
    const Run ra = run_cli({"--set", "outdir=" + a.string(), "fixed-point"});
    const Run rb = run_cli({"--set", "outdir=" + b.string(), "fixed-point"});
    REQUIRE(ra.code == cli::kSuccess);
    REQUIRE(rb.code == cli::kSuccess);
    CHECK(ra.out == rb.out);
    for (const char* f : {"certificate.json", "tower.json"}) {
        const std::string x = slurp(a / f);
        CHECK(!x.empty());
        CHECK(x == slurp(b / f));
    }
    const auto cert = nlohmann::json::parse(slurp(a / "certificate.json"));
    CHECK(cert.at("schema_version") == cli::kSchemaVersion);
    for (const char* k : {"c_star", "sigma0", "sigma1", "residual", "dRdc", "identity_defect"}) CHECK(cert.contains(k));
    CHECK(cert.at("residual").get<double>() < 1e-12);
    const auto tower = nlohmann::json::parse(slurp(a / "tower.json"));
    CHECK(tower.at("schema_version") == cli::kSchemaVersion);
    const auto summary = nlohmann::json::parse(ra.out);
    CHECK(summary.at("command") == "fixed-point");
}

TEST_CASE("CSV artifacts carry the schema version and the documented columns")
{
    const fs::path d = temp_dir("shift");
    const Run r = run_cli({"--set", "outdir=" + d.string(), "--set", "depth.shift=3", "shift-family"});
    REQUIRE(r.code == cli::kSuccess);
    std::istringstream csv(slurp(d / "shift-family.csv"));
    std::string first, header;
    std::getline(csv, first);
    std::getline(csv, header);
    CHECK(first.rfind("# schema_version: 1.0", 0) == 0);
    std::string expected;
    for (const auto& [name, meaning] : cli::csv_columns("shift-family")) expected += (expected.empty() ? "" : ",") + name;
    CHECK(header == expected);
}

TEST_CASE("errors become machine-readable records")
{
    const fs::path d = temp_dir("err");
    const Run bad = run_cli({"--set", "outdir=" + d.string(), "renorm", "--map", "cubic(0.3)"});
    CHECK(bad.code == cli::kFailure);
    const auto rec = nlohmann::json::parse(bad.err);
    CHECK(rec.at("schema_version") == cli::kSchemaVersion);
    CHECK(rec.at("command") == "renorm");
    CHECK(rec.at("error").at("kind") == "Domain");
    CHECK(bad.out.empty());

    const Run slow = run_cli({"--set", "outdir=" + d.string(), "slow", "--d", "harmonic"});
    CHECK(slow.code == cli::kFailure);
    CHECK(nlohmann::json::parse(slow.err).at("error").at("kind") == "TooLarge");

    const Run usage = run_cli({"no-such-command"});
    CHECK(usage.code == cli::kFailure);
    CHECK(nlohmann::json::parse(usage.err).at("error").at("kind") == "Usage");

    const Run key = run_cli({"--set", "colour=red", "fixed-point"});
    CHECK(key.code == cli::kFailure);
    CHECK(nlohmann::json::parse(key.err).at("error").at("kind") == "Domain");
}

TEST_CASE("help lists the CSV columns")
{
    for (const std::string& c : cli::commands()) {
        const Run r = run_cli({c, "--help"});
        CHECK(r.code == cli::kSuccess);
        for (const auto& [name, meaning] : cli::csv_columns(c)) CHECK(r.out.find(name) != std::string::npos);
    }
    const Run top = run_cli({"--help"});
    CHECK(top.code == cli::kSuccess);
    for (const std::string& c : cli::commands()) CHECK(top.out.find(c) != std::string::npos);
}
