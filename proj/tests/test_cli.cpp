#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "stablespec/catalog.hpp"
#include "stablespec/error.hpp"
#include "stablespec/io.hpp"
#include "stablespec/runner.hpp"

using namespace stablespec;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = STABLESPEC_CONFIG_DIR;

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("stablespec_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args, const fs::path& dir) {
  const std::string cmd = std::string(STABLESPEC_CLI) + " " + args + " > " + (dir / "stdout.txt").string() +
                          " 2> " + (dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Json parse_config_json(const std::string& text) { return Json::parse(text); }

}  // namespace

TEST(Catalog, ParsesEveryFamily) {
  const auto cat = Catalog::load(kConfigs / "catalog.txt");
  EXPECT_TRUE(cat.contains("ind1"));
  EXPECT_NEAR(cat.at("ind1")(0.5), 1.0, 0.0);
  EXPECT_NEAR(cat.at("ind1")(1.5), 0.0, 0.0);
  EXPECT_NEAR(cat.at("cos3")(0.4), std::cos(1.2), 1e-15);
  EXPECT_NEAR(cat.at("tab_decay")(0.5), 0.8, 1e-15);
  EXPECT_EQ(cat.names().size(), 9u);
}

TEST(Catalog, Errors) {
  EXPECT_THROW(Catalog::parse("f bogus x=1\n"), UnresolvedReferenceError);
  EXPECT_THROW(Catalog::parse("f indicator x=abc\n"), Error);
  EXPECT_THROW(Catalog::parse("f indicator\n"), Error);
  try {
    Catalog::parse("ok constant c=1\nbad indicator y\n", "cat.txt");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "cat.txt:2");
  }
  const auto cat = Catalog::parse("# comment\n\none constant c=1  # trailing\n");
  EXPECT_THROW(cat.at("two", "coefficients.function"), UnresolvedReferenceError);
  EXPECT_NEAR(function_from_json(Json::parse(R"({"family":"indicator","x":2})"), nullptr, "f")(1.9), 1.0, 0.0);
  EXPECT_NEAR(function_from_json(Json("one"), &cat, "f")(1.0), 1.0, 0.0);
}

TEST(Io, PathRoundTrip) {
  const auto sim = simulate_linear(25, LinearFilter::ma1(0.5), 1.3, {5, 7});
  const auto csv = io::path_csv(sim.process);
  EXPECT_EQ(csv.substr(0, 7), "value\r\n");
  const Json side = io::path_sidecar(sim.process);
  const auto back = io::read_path(csv, &side);
  EXPECT_EQ(back.values, sim.process.values);
  EXPECT_EQ(back.alpha, 1.3);
  EXPECT_EQ(back.provenance.origin, PathOrigin::kLinear);
  EXPECT_EQ(*back.provenance.filter, LinearFilter::ma1(0.5));
  EXPECT_EQ(back.provenance.stream, sim.process.provenance.stream);
  EXPECT_THROW(io::read_path("value\n1\nx\n"), ConfigError);
}

TEST(Io, FormattingAndHashes) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0 / 0.0), "inf");
  EXPECT_EQ(io::sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(io::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const auto coeffs = io::coeffs_csv(FourierCoeffs::geometric(0.5, 2));
  EXPECT_EQ(coeffs, "h,a_h\r\n0,0\r\n1,0.5\r\n2,0.25\r\n");
  const std::vector<io::Artifact> arts{{"b.csv", "x"}, {"a.json", "{}"}};
  const Json m = io::manifest(Json::object(), Json::object(), arts);
  ASSERT_EQ(m["artifacts"].size(), 2u);
  EXPECT_EQ(m["artifacts"][0]["file"], "a.json");
  EXPECT_EQ(m["artifacts"][1]["sha256"], io::sha256_hex("x"));
}

TEST(Report, CsvAndJsonLayout) {
  ExperimentReport r;
  r.kind = "demo";
  r.add(256, "ks", 0.125, 0.01, 100, 7);
  r.add(512, "ks", std::nan(""), std::nullopt, 100, 7);
  EXPECT_EQ(to_csv(r), "kind,n,statistic,value,se,replicates,seed\r\ndemo,256,ks,0.125,0.01,100,7\r\n"
                       "demo,512,ks,nan,,100,7\r\n");
  const Json j = to_json(r);
  EXPECT_EQ(j.begin().key(), "kind");
  EXPECT_EQ(j["rows"][1]["value"], "nan");
  EXPECT_THROW(r.row("ks", 1024), std::out_of_range);
}

TEST(Runner, ConfigErrorsMapToExitCodes) {
  EXPECT_THROW(parse_config("{not json", "."), ConfigError);
  EXPECT_THROW(parse_config(R"({"experiment":"nope"})", "."), ConfigError);
  EXPECT_THROW(load_config(kConfigs / "does_not_exist.json"), ConfigError);
  const auto bad_alpha = load_config(kConfigs / "invalid_alpha.json");
  try {
    validate_config(bad_alpha);
    FAIL();
  } catch (const std::exception& e) {
    EXPECT_EQ(exit_code_for(e), 3);
    EXPECT_EQ(error_record(e)["field"], "alpha");
  }
  EXPECT_EQ(exit_code_for(DegenerateError("x", "y")), 4);
  EXPECT_EQ(exit_code_for(ConfigError("x", "y")), 2);
  EXPECT_EQ(exit_code_for(std::runtime_error("z")), 1);
  const Json rec = error_record(UnresolvedReferenceError("coefficients.function", "missing"));
  std::vector<std::string> keys;
  for (const auto& [k, v] : rec.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"status", "exit_code", "kind", "code", "field", "message"}));
}

TEST(Runner, ValidateReportsDiagnostics) {
  const auto ok = validate_config(load_config(kConfigs / "fidi_geometric.json"));
  EXPECT_EQ(ok["status"], "ok");
  EXPECT_FALSE(ok["diagnostics"].empty());
  const auto ind = validate_config(load_config(kConfigs / "fidi_indicator.json"));
  EXPECT_FALSE(ind["warnings"].empty());
  try {
    validate_config(load_config(kConfigs / "missing_entry.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "unresolved_reference");
    EXPECT_EQ(exit_code_for(e), 3);
  }
}

TEST(Runner, ReplicatesAndGridPreconditions) {
  const auto base = parse_config_json(R"({"experiment":"remainder","alpha":1.5,"filter":"ma1:0.5",
    "class":{"functions":[{"family":"constant","c":1}]},"n_grid":[64,128],"replicates":10})");
  auto bad_grid = base;
  bad_grid["n_grid"] = {128, 64};
  EXPECT_THROW(validate_config(parse_config(bad_grid.dump(), ".")), ParameterDomainError);
  auto bad_reps = base;
  bad_reps["replicates"] = 0;
  EXPECT_THROW(validate_config(parse_config(bad_reps.dump(), ".")), ParameterDomainError);
  auto bad_type = base;
  bad_type["replicates"] = "many";
  EXPECT_THROW(validate_config(parse_config(bad_type.dump(), ".")), ConfigError);
  EXPECT_EQ(validate_config(parse_config(base.dump(), "."))["status"], "ok");
}

TEST(Runner, RerunsAreByteIdentical) {
  auto cfg = parse_config(R"({"experiment":"remainder","alpha":1.5,"filter":"ma1:0.5",
    "class":{"functions":[{"family":"constant","c":1},{"family":"indicator","x":1}]},
    "n_grid":[64,128],"replicates":30,"seed":9,"dump_samples":true})",
                          ".");
  for (auto format : {OutputFormat::kCsv, OutputFormat::kJson}) {
    const auto a = run_config(cfg, format);
    const auto b = run_config(cfg, format);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].name, b[i].name);
      EXPECT_EQ(a[i].content, b[i].content) << a[i].name;
    }
    EXPECT_EQ(a.back().name, "manifest.json");
    const Json m = Json::parse(a.back().content);
    EXPECT_EQ(m["artifacts"].size(), a.size() - 1);
    for (const auto& art : m["artifacts"]) {
      const auto it = std::find_if(a.begin(), a.end(), [&](const io::Artifact& x) { return x.name == art["file"]; });
      ASSERT_NE(it, a.end());
      EXPECT_EQ(art["sha256"], io::sha256_hex(it->content));
    }
  }
  apply_seed_override(cfg, 10);
  EXPECT_EQ(cfg.seed, 10u);
  EXPECT_EQ(cfg.raw["seed"], 10);
}

TEST(Cli, SimulateIsByteIdenticalAcrossRuns) {
  const auto dir = scratch("simulate");
  const auto cfg = (kConfigs / "simulate.json").string();
  ASSERT_EQ(run_cli("simulate --config " + cfg + " --out-dir " + (dir / "a").string(), dir), 0);
  ASSERT_EQ(run_cli("simulate --config " + cfg + " --out-dir " + (dir / "b").string() + " --threads 2", dir), 0);
  for (const char* name : {"path.csv", "path.sidecar.json", "manifest.json"}) {
    EXPECT_EQ(io::read_file(dir / "a" / name), io::read_file(dir / "b" / name)) << name;
  }
  const auto path = io::read_path(io::read_file(dir / "a" / "path.csv"));
  EXPECT_EQ(path.size(), 16u);
  ASSERT_EQ(run_cli("simulate --config " + cfg + " --out-dir " + (dir / "c").string() + " --seed-override 5", dir), 0);
  EXPECT_NE(io::read_file(dir / "a" / "path.csv"), io::read_file(dir / "c" / "path.csv"));
}

TEST(Cli, CoeffsIndicator) {
  const auto dir = scratch("coeffs");
  ASSERT_EQ(run_cli("coeffs --config " + (kConfigs / "coeffs_indicator.json").string() + " --out-dir " + dir.string(),
                    dir),
            0);
  const auto csv = io::read_file(dir / "coeffs.csv");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "h,a_h\r");
  for (int h = 0; h <= 8; ++h) {
    ASSERT_TRUE(std::getline(in, line));
    const auto comma = line.find(',');
    EXPECT_EQ(std::stoi(line.substr(0, comma)), h);
    const double v = std::stod(line.substr(comma + 1));
    EXPECT_NEAR(v, h == 0 ? 1.0 : std::sin(double(h)) / h, 1e-15);
  }
}

TEST(Cli, ExitCodesAndErrorRecords) {
  const auto dir = scratch("errors");
  EXPECT_EQ(run_cli("run --config " + (kConfigs / "invalid_alpha.json").string() + " --out-dir " + dir.string(), dir), 3);
  const Json rec = Json::parse(io::read_file(dir / "error.json"));
  EXPECT_EQ(rec["field"], "alpha");
  EXPECT_EQ(rec["exit_code"], 3);
  EXPECT_EQ(run_cli("validate --config " + (kConfigs / "missing_entry.json").string(), dir), 3);
  EXPECT_NE(io::read_file(dir / "stderr.txt").find("unresolved_reference"), std::string::npos);
  io::write_file(dir / "broken.json", "{\"experiment\": ");
  EXPECT_EQ(run_cli("run --config " + (dir / "broken.json").string(), dir), 2);
  EXPECT_EQ(run_cli("run --config " + (dir / "absent.json").string(), dir), 2);
  EXPECT_EQ(run_cli("run", dir), 2);
  EXPECT_EQ(run_cli("coeffs --config " + (kConfigs / "simulate.json").string() + " --out-dir " + dir.string(), dir), 2);
  EXPECT_EQ(run_cli("validate --config " + (kConfigs / "fidi_indicator.json").string(), dir), 0);
  EXPECT_NE(io::read_file(dir / "stdout.txt").find("warnings"), std::string::npos);
}
