#pragma once

// Headless batch driver behind `hctps run`: a RunManifest names the functions,
// dimension, run count, seed and schedule; running it writes one experiment
// file per function plus CSV and Markdown comparison tables.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hctps/experiment.hpp"
#include "hctps/json_io.hpp"
#include "hctps/report.hpp"
#include "hctps/store.hpp"
#include "hctps/subcube.hpp"

namespace hctps {

enum class RunMode { GlobalOnly, HctpsFixture, HctpsCustom };

constexpr std::string_view to_string(RunMode mode) noexcept {
  switch (mode) {
    case RunMode::GlobalOnly: return "global-only";
    case RunMode::HctpsFixture: return "hctps-fixture";
    case RunMode::HctpsCustom: return "hctps-custom";
  }
  return "global-only";
}

inline RunMode parse_run_mode(std::string_view text) {
  if (text == "global-only") return RunMode::GlobalOnly;
  if (text == "hctps-fixture") return RunMode::HctpsFixture;
  if (text == "hctps-custom") return RunMode::HctpsCustom;
  throw Error(ErrorKind::InvalidConfig, "unknown mode '" + std::string(text) + "'");
}

struct RunManifest {
  /// "all" or a single function code.
  std::string function = "all";
  std::size_t dim = 30;
  std::size_t n_runs = 20;
  std::uint64_t seed_base = 42;
  RunMode mode = RunMode::HctpsFixture;
  /// Local phase for hctps-custom.
  std::optional<int> octant;
  int scale_exponent = 0;
  std::uint64_t evals_per_dim = kEvaluationsPerDim;
  /// GA settings; the seed field is replaced by seed_base.
  GAConfig ga;
  std::filesystem::path out = "results";

  [[nodiscard]] std::vector<FunctionId> functions() const {
    if (function == "all") {
      std::vector<FunctionId> all;
      for (const auto& info : kFunctionCatalog) all.push_back(info.id);
      return all;
    }
    return {parse_function_id(function)};
  }

  void validate() const {
    static_cast<void>(functions());
    if (dim < 3) throw Error(ErrorKind::InvalidConfig, "dim must be >= 3");
    if (n_runs < 1) throw Error(ErrorKind::InvalidConfig, "runs must be >= 1");
    if (mode == RunMode::HctpsCustom && !octant) throw Error(ErrorKind::InvalidConfig, "hctps-custom needs --octant");
    if (octant && (*octant < 1 || *octant > 8)) throw Error(ErrorKind::InvalidConfig, "octant must be in 1..8");
    if (scale_exponent < 0) throw Error(ErrorKind::InvalidConfig, "scale exponent must be >= 0");
    GAConfig g = ga;
    g.seed = seed_base;
    g.validate();
  }

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

inline void to_json(json& j, const RunManifest& m) {
  j = {{"function", m.function},
       {"dim", m.dim},
       {"n_runs", m.n_runs},
       {"seed_base", m.seed_base},
       {"mode", std::string(to_string(m.mode))},
       {"octant", m.octant ? json(*m.octant) : json(nullptr)},
       {"scale_exponent", m.scale_exponent},
       {"evals_per_dim", m.evals_per_dim},
       {"ga", m.ga},
       {"out", m.out.generic_string()}};
}

inline void from_json(const json& j, RunManifest& m) {
  m.function = j.value("function", m.function);
  m.dim = j.value("dim", m.dim);
  m.n_runs = j.value("n_runs", m.n_runs);
  m.seed_base = j.value("seed_base", m.seed_base);
  m.mode = parse_run_mode(j.value("mode", std::string(to_string(m.mode))));
  if (j.contains("octant")) {
    m.octant = j.at("octant").is_null() ? std::nullopt : std::optional<int>(j.at("octant").get<int>());
  }
  m.scale_exponent = j.value("scale_exponent", m.scale_exponent);
  m.evals_per_dim = j.value("evals_per_dim", m.evals_per_dim);
  if (j.contains("ga")) m.ga = j.at("ga").get<GAConfig>();
  m.out = j.value("out", m.out.generic_string());
}

inline std::string manifest_experiment_id(const RunManifest& m, FunctionId fid) {
  return std::string(function_code(fid)) + "-d" + std::to_string(m.dim) + "-" + std::string(to_string(m.mode)) +
         "-s" + std::to_string(m.seed_base);
}

struct RunOutput {
  std::vector<ExperimentRecord> records;
  std::vector<ComparisonRow> rows;
  std::vector<std::filesystem::path> files;
};

/// Executes the manifest in memory. `threads` only affects speed.
inline RunOutput execute_manifest(const RunManifest& m, unsigned threads = 0) {
  m.validate();
  RunOutput out;
  PhaseOptions options;
  options.threads = threads;
  for (FunctionId fid : m.functions()) {
    GAConfig config = m.ga;
    config.seed = m.seed_base;
    ExperimentRecord record = new_experiment(manifest_experiment_id(m, fid), fid, m.dim, config, m.evals_per_dim);
    run_global(record, m.n_runs, options);
    if (m.mode != RunMode::GlobalOnly) {
      LocalTarget target;
      if (m.mode == RunMode::HctpsFixture) {
        const SubcubeSpec spec = fixture_spec(fid, m.dim);
        target.octant_index = spec.octant_index;
        target.scale_exponent = spec.scale_exponent;
      } else {
        target.octant_index = m.octant;
        target.scale_exponent = m.scale_exponent;
      }
      run_local(record, target, m.n_runs, options);
    }
    out.rows.push_back(comparison_row(record));
    out.records.push_back(std::move(record));
  }
  return out;
}

/// Executes the manifest and writes under m.out:
///   experiments/<id>.hctps.jsonl, comparison.csv, comparison.md, manifest.json
inline RunOutput run_manifest(const RunManifest& m, unsigned threads = 0) {
  RunOutput out = execute_manifest(m, threads);
  const ExperimentStore store(m.out / "experiments");
  for (const auto& record : out.records) {
    store.save(record);
    out.files.push_back(store.path_for(record.experiment_id));
  }
  const auto csv = m.out / "comparison.csv";
  const auto md = m.out / "comparison.md";
  const auto manifest = m.out / "manifest.json";
  write_file_atomic(csv, comparison_csv(out.rows));
  write_file_atomic(md, comparison_markdown(out.rows));
  write_file_atomic(manifest, json(m).dump(2) + "\n");
  out.files.insert(out.files.end(), {csv, md, manifest});
  return out;
}

}  // namespace hctps
