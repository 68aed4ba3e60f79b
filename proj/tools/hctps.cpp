// hctps: batch runs, acceptance verification and the HTTP service.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <httplib.h>

#include "hctps/acceptance.hpp"
#include "hctps/hctps.hpp"
#include "hctps/http_api.hpp"

#ifndef HCTPS_DATA_DIR
#define HCTPS_DATA_DIR "data"
#endif

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

int exit_code_for(const hctps::Error& e) {
  switch (e.kind()) {
    case hctps::ErrorKind::Io:
    case hctps::ErrorKind::CorruptRecord: return kExitIo;
    default: return kExitConfig;
  }
}

struct RunFlags {
  std::optional<std::string> manifest;
  std::optional<std::string> function;
  std::optional<std::size_t> dim;
  std::optional<std::size_t> runs;
  std::optional<std::uint64_t> budget_per_dim;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<int> octant;
  std::optional<int> scale_exp;
  std::optional<std::string> out;
  unsigned threads = 0;
};

hctps::RunManifest manifest_from(const RunFlags& f) {
  hctps::RunManifest m;
  if (f.manifest) m = hctps::read_json_file(*f.manifest).get<hctps::RunManifest>();
  if (f.function) m.function = *f.function;
  if (f.dim) m.dim = *f.dim;
  if (f.runs) m.n_runs = *f.runs;
  if (f.budget_per_dim) m.evals_per_dim = *f.budget_per_dim;
  if (f.seed) m.seed_base = *f.seed;
  if (f.mode) m.mode = hctps::parse_run_mode(*f.mode);
  if (f.octant) m.octant = *f.octant;
  if (f.scale_exp) m.scale_exponent = *f.scale_exp;
  if (f.out) m.out = *f.out;
  if (m.function != "all") m.function = std::string(hctps::function_code(hctps::parse_function_id(m.function)));
  return m;
}

int cmd_run(const RunFlags& flags) {
  const hctps::RunManifest m = manifest_from(flags);
  const hctps::RunOutput out = hctps::run_manifest(m, flags.threads);
  std::cout << hctps::comparison_markdown(out.rows);
  for (const auto& path : out.files) std::cout << "wrote " << path.generic_string() << "\n";
  return 0;
}

int cmd_verify(const hctps::acceptance::Options& opt) {
  bool all = true;
  hctps::acceptance::run_all(opt, [&](const hctps::acceptance::CriterionResult& r) {
    all = all && r.passed;
    std::printf("[%s] %-32s %7.1fs  %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds, r.detail.c_str());
    std::fflush(stdout);
  });
  std::printf("%s\n", all ? "all criteria passed" : "some criteria FAILED");
  return all ? 0 : kExitFailure;
}

int cmd_serve(int port, const std::string& host, const std::string& store, unsigned threads) {
  hctps::Service service(store, threads);
  httplib::Server server;
  hctps::bind_routes(server, service);
  std::printf("listening on http://%s:%d (store: %s)\n", host.c_str(), port, store.c_str());
  std::fflush(stdout);
  if (!server.listen(host, port)) {
    std::fprintf(stderr, "cannot listen on %s:%d\n", host.c_str(), port);
    return kExitIo;
  }
  return 0;
}

int cmd_functions() {
  std::cout << hctps::functions_catalog().dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-phase GA search workbench"};
  app.require_subcommand(1);

  RunFlags run;
  auto* run_cmd = app.add_subcommand("run", "run a manifest headlessly and write tables");
  run_cmd->add_option("--manifest", run.manifest, "JSON manifest; flags override its fields");
  run_cmd->add_option("--function", run.function, "F1..F14 or all");
  run_cmd->add_option("--dim", run.dim);
  run_cmd->add_option("--runs", run.runs);
  run_cmd->add_option("--budget-per-dim", run.budget_per_dim);
  run_cmd->add_option("--seed", run.seed);
  run_cmd->add_option("--mode", run.mode, "global-only | hctps-fixture | hctps-custom");
  run_cmd->add_option("--octant", run.octant, "1..8, for hctps-custom");
  run_cmd->add_option("--scale-exp", run.scale_exp, "m in (1/2)^m, for hctps-custom");
  run_cmd->add_option("--out", run.out);
  run_cmd->add_option("--threads", run.threads, "0 = hardware concurrency");

  hctps::acceptance::Options verify;
  verify.data_dir = HCTPS_DATA_DIR;
  std::string data_dir = verify.data_dir.string();
  std::string scratch = verify.scratch_dir.string();
  auto* verify_cmd = app.add_subcommand("verify", "check every acceptance criterion");
  verify_cmd->add_option("--data-dir", data_dir, "directory holding functions.json and subcubes.json");
  verify_cmd->add_option("--budget-per-dim", verify.evals_per_dim);
  verify_cmd->add_option("--seed", verify.seed);
  verify_cmd->add_option("--scratch", scratch);
  verify_cmd->add_option("--threads", verify.threads);
  verify_cmd->add_option("--only", verify.only, "run a single criterion by name");

  int port = 8080;
  std::string host = "127.0.0.1";
  std::string store = "experiments";
  unsigned serve_threads = 0;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP/JSON steering service");
  serve_cmd->add_option("--port", port);
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--store", store);
  serve_cmd->add_option("--threads", serve_threads);

  auto* functions_cmd = app.add_subcommand("functions", "print the benchmark catalog as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(run);
    if (verify_cmd->parsed()) {
      verify.data_dir = data_dir;
      verify.scratch_dir = scratch;
      return cmd_verify(verify);
    }
    if (serve_cmd->parsed()) return cmd_serve(port, host, store, serve_threads);
    if (functions_cmd->parsed()) return cmd_functions();
  } catch (const hctps::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
