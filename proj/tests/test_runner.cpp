#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "pudtai/runner.hpp"

using namespace pudtai;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const fs::path d = fs::temp_directory_path() / "pudtai_runner_test";
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("config parsing fills defaults and rejects unknown keys") {
    const RunConfig cfg = parse_config(json::object());
    CHECK(cfg.mode == "fisher");
    CHECK(cfg.seed == 1);
    CHECK(cfg.output_path == "pudtai_out");
    CHECK(cfg.params == default_params());

    json partial;
    partial["params"]["source"]["epsilon"] = 0.25;
    const RunConfig cfg2 = parse_config(partial);
    CHECK(cfg2.params.at("source").at("epsilon").get<double>() == 0.25);
    // sibling defaults survive a partial override
    CHECK(cfg2.params.at("source").at("sigma").get<double>() == 1.0);
    CHECK(cfg2.params.at("grid") == default_params().at("grid"));

    json bad;
    bad["bogus"] = 1;
    CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);
}

TEST_CASE("resolved config serialization round-trips") {
    json doc;
    doc["mode"] = "sweep";
    doc["seed"] = 99;
    doc["params"]["scan"]["n_points"] = 7;
    const RunConfig cfg = parse_config(doc);
    const json j = config_json(cfg);
    const RunConfig back = parse_config(j);
    CHECK(config_json(back) == j);
}

TEST_CASE("dotted overrides") {
    RunConfig cfg = parse_config(json::object());
    apply_override(cfg, "processor.alpha", "640");
    CHECK(cfg.params.at("processor").at("alpha").get<double>() == 640.0);
    apply_override(cfg, "params.processor.theta", "0.5");
    CHECK(cfg.params.at("processor").at("theta").get<double>() == 0.5);
    apply_override(cfg, "seed", "7");
    CHECK(cfg.seed == 7);
    apply_override(cfg, "mode", "compare");
    CHECK(cfg.mode == "compare");
    apply_override(cfg, "out", "somewhere/file");
    CHECK(cfg.output_path == "somewhere/file");
    apply_override(cfg, "bootstrap.eps_list", "[0.2,0.4]");
    CHECK(cfg.params.at("bootstrap").at("eps_list").get<std::vector<double>>() ==
          std::vector<double>{0.2, 0.4});
    // unparsable values are kept as strings
    apply_override(cfg, "source.label", "two lines");
    CHECK(cfg.params.at("source").at("label").get<std::string>() == "two lines");
    CHECK_THROWS_AS(apply_override(cfg, "", "1"), std::invalid_argument);
}

TEST_CASE("fisher run writes a manifest-tagged csv, byte-stable under reruns") {
    const fs::path out = scratch_dir() / "fisher_small";
    RunConfig cfg = parse_config(json::object());
    cfg.output_path = out.string();
    apply_override(cfg, "scan.n_points", "5");
    REQUIRE(run(cfg) == 0);

    const fs::path csv = out.string() + ".csv";
    const fs::path manifest = out.string() + ".manifest.json";
    REQUIRE(fs::exists(csv));
    REQUIRE(fs::exists(manifest));

    const std::string first = slurp(csv);
    CHECK(first.rfind("# {", 0) == 0);
    CHECK(first.find("epsilon,f_pudtai,f_di,f_sliver_ideal,f_q") != std::string::npos);
    // 1 comment + 1 header + 5 data rows
    CHECK(std::count(first.begin(), first.end(), '\n') == 7);

    const json m = json::parse(slurp(manifest));
    CHECK(m.at("version").get<std::string>() == kVersion);
    CHECK(m.at("mode").get<std::string>() == "fisher");
    CHECK(m.at("seed").get<std::uint64_t>() == 1);

    REQUIRE(run(cfg) == 0);
    CHECK(slurp(csv) == first);
}

TEST_CASE("bootstrap run is deterministic for a fixed seed") {
    const fs::path out = scratch_dir() / "boot_small";
    RunConfig cfg = parse_config(json::object());
    cfg.mode = "bootstrap";
    cfg.seed = 12;
    cfg.output_path = out.string();
    apply_override(cfg, "bootstrap.photons_per_set", "1000");
    apply_override(cfg, "bootstrap.n_boot", "4");
    apply_override(cfg, "bootstrap.eps_list", "[0.3,0.6]");
    REQUIRE(run(cfg) == 0);
    const std::string first = slurp(out.string() + ".csv");
    CHECK(first.find("epsilon_true,eps_hat_mean,variance_per_10_photons,bias,crb_pudtai,crb_qmti") !=
          std::string::npos);
    REQUIRE(run(cfg) == 0);
    CHECK(slurp(out.string() + ".csv") == first);

    cfg.seed = 13;
    REQUIRE(run(cfg) == 0);
    CHECK(slurp(out.string() + ".csv") != first);
}

TEST_CASE("compare run emits the instrument table") {
    const fs::path out = scratch_dir() / "cmp_small";
    RunConfig cfg = parse_config(json::object());
    cfg.mode = "compare";
    cfg.output_path = out.string();
    apply_override(cfg, "scan.n_points", "3");
    apply_override(cfg, "spectrometer.n_points", "4");
    REQUIRE(run(cfg) == 0);
    CHECK(fs::exists(fs::path(out.string() + ".csv")));
    const std::string inst = slurp(out.string() + "_instrument.csv");
    CHECK(inst.find("sigma,s_spectrometer,s_device") != std::string::npos);
}

TEST_CASE("estimate run records counts and the point estimate") {
    const fs::path out = scratch_dir() / "est_small";
    RunConfig cfg = parse_config(json::object());
    cfg.mode = "estimate";
    cfg.seed = 4;
    cfg.output_path = out.string();
    apply_override(cfg, "estimate.n_photons", "20000");
    REQUIRE(run(cfg) == 0);
    const std::string text = slurp(out.string() + ".csv");
    CHECK(text.find("epsilon_true,n_minus,n_plus,n_total,eps_hat,clamped") != std::string::npos);
}

TEST_CASE("invalid modes and configs fail with a nonzero code") {
    RunConfig cfg = parse_config(json::object());
    cfg.mode = "frobnicate";
    cfg.output_path = (scratch_dir() / "never").string();
    CHECK(run(cfg) == 2);
    CHECK(!fs::exists(scratch_dir() / "never.manifest.json"));

    RunConfig bad = parse_config(json::object());
    bad.mode = "pipeline";
    bad.output_path = (scratch_dir() / "badpipe").string();
    apply_override(bad, "pipeline.n_phi", "0");
    CHECK(run(bad) == 2);
}
