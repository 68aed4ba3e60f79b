#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "hctps/acceptance.hpp"
#include "hctps/driver.hpp"
#include "hctps/service.hpp"

using namespace hctps;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("hctps-driver-" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(HCTPS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void clear_wall_time(ExperimentRecord& r) {
  for (auto& p : r.phases) p.stats.wall_time_s = 0.0;
}

}  // namespace

TEST(Manifest, JsonRoundTrip) {
  RunManifest m;
  m.function = "F9";
  m.dim = 12;
  m.mode = RunMode::HctpsCustom;
  m.octant = 3;
  m.scale_exponent = 17;
  m.ga.mutation_prob = 0.01;
  m.out = "somewhere/else";
  EXPECT_EQ(json(m).get<RunManifest>(), m);
  const RunManifest partial = json{{"function", "F2"}}.get<RunManifest>();
  EXPECT_EQ(partial.dim, 30U);
  EXPECT_EQ(partial.n_runs, 20U);
  EXPECT_EQ(partial.mode, RunMode::HctpsFixture);
}

TEST(Manifest, Validation) {
  RunManifest m;
  m.mode = RunMode::HctpsCustom;
  EXPECT_THROW(m.validate(), Error);
  m.octant = 9;
  EXPECT_THROW(m.validate(), Error);
  RunManifest bad;
  bad.function = "F99";
  EXPECT_THROW(bad.validate(), Error);
}

TEST(Cli, RunWritesTablesAndMatchesService) {
  const auto out = scratch("cli");
  ASSERT_EQ(run_cli("run --function F12 --dim 6 --runs 3 --seed 7 --mode hctps-fixture --threads 2 --out " +
                    out.string()),
            0);
  for (const char* f : {"comparison.csv", "comparison.md", "manifest.json"}) EXPECT_TRUE(std::filesystem::exists(out / f));
  const std::string csv = read_file(out / "comparison.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kCsvHeader);
  ExperimentRecord cli = ExperimentStore(out / "experiments").load_record("F12-d6-hctps-fixture-s7");

  Service service(scratch("cli-service"), 2);
  GAConfig cfg;
  cfg.seed = 7;
  const std::string id = service.create_experiment(FunctionId::F12, 6, cfg);
  service.wait(service.start_global(id, 3));
  const SubcubeSpec spec = fixture_spec(FunctionId::F12, 6);
  service.wait(service.start_local(id, LocalTarget{spec.octant_index, std::nullopt, spec.scale_exponent}, 3));
  ExperimentRecord served = service.experiment(id);

  clear_wall_time(cli);
  clear_wall_time(served);
  EXPECT_EQ(cli.phases, served.phases);
}

TEST(Cli, ManifestFileAndOverrides) {
  const auto dir = scratch("manifest");
  std::filesystem::create_directories(dir);
  RunManifest m;
  m.function = "F14";
  m.dim = 3;
  m.n_runs = 2;
  m.mode = RunMode::GlobalOnly;
  m.out = dir / "from-file";
  {
    std::ofstream(dir / "m.json") << json(m).dump();
  }
  ASSERT_EQ(run_cli("run --manifest " + (dir / "m.json").string() + " --seed 5"), 0);
  const RunManifest written = read_json_file(dir / "from-file" / "manifest.json").get<RunManifest>();
  EXPECT_EQ(written.seed_base, 5U);
  EXPECT_EQ(written.function, "F14");
  EXPECT_TRUE(ExperimentStore(dir / "from-file" / "experiments").exists("F14-d3-global-only-s5"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("run --function F0 --out " + scratch("bad").string()), 2);
  EXPECT_EQ(run_cli("run --function F1 --dim 2 --out " + scratch("bad").string()), 2);
  EXPECT_EQ(run_cli("run --manifest /nonexistent/manifest.json"), 3);
  EXPECT_NE(run_cli("no-such-command"), 0);
  EXPECT_EQ(run_cli("functions"), 0);
}

TEST(Verify, TamperedFunctionFixtureFails) {
  const auto dir = scratch("tamper");
  std::filesystem::create_directories(dir);
  std::filesystem::copy_file(std::filesystem::path(HCTPS_DATA_DIR) / "subcubes.json", dir / "subcubes.json");
  json functions = read_json_file(std::filesystem::path(HCTPS_DATA_DIR) / "functions.json");
  acceptance::Options opt;
  opt.data_dir = dir;

  std::ofstream(dir / "functions.json") << functions.dump();
  EXPECT_TRUE(acceptance::function_spot_checks(opt).passed);

  functions[5]["probe_points"][1]["expected_f"] = functions[5]["probe_points"][1]["expected_f"].get<double>() * (1 + 1e-6);
  std::ofstream(dir / "functions.json") << functions.dump();
  EXPECT_FALSE(acceptance::function_spot_checks(opt).passed);
}

TEST(Verify, TamperedSubcubeFixtureFails) {
  const auto dir = scratch("tamper-subcube");
  std::filesystem::create_directories(dir);
  json subcubes = read_json_file(std::filesystem::path(HCTPS_DATA_DIR) / "subcubes.json");
  subcubes[0]["scale_exponent"] = 79;
  std::ofstream(dir / "subcubes.json") << subcubes.dump();
  acceptance::Options opt;
  opt.data_dir = dir;
  EXPECT_FALSE(acceptance::geometry_fixtures(opt).passed);
}

TEST(Verify, RaisedBudgetFailsProtocolCheck) {
  acceptance::Options opt;
  opt.evals_per_dim = 60;
  opt.n_runs = 1;
  const auto result = acceptance::protocol_budget(opt);
  EXPECT_FALSE(result.passed);
  EXPECT_NE(result.detail.find("1800"), std::string::npos);
}
