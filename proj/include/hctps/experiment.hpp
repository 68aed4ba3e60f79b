#pragma once

// Two-phase experiment control flow: one global phase over the full search
// cube, then any number of human-chosen local phases, each a batch of
// independent GA runs; the experiment ends when the decision-maker declares
// the results satisfactory.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "hctps/benchmarks.hpp"
#include "hctps/box.hpp"
#include "hctps/error.hpp"
#include "hctps/ga.hpp"
#include "hctps/stats.hpp"
#include "hctps/subcube.hpp"

namespace hctps {

enum class PhaseKind { Global, Local };

constexpr std::string_view to_string(PhaseKind kind) noexcept {
  return kind == PhaseKind::Global ? "global" : "local";
}

struct PhaseResult {
  PhaseKind phase = PhaseKind::Global;
  Box region;
  /// Present for octant-based local phases; custom boxes leave it empty.
  std::optional<SubcubeSpec> subcube_spec;
  /// Run r used seed seed_base + r.
  std::uint64_t seed_base = 0;
  std::vector<RunResult> runs;
  RunStats stats;

  friend bool operator==(const PhaseResult&, const PhaseResult&) = default;
};

enum class ExperimentStatus { Running, AwaitingDecision, Satisfied };

constexpr std::string_view to_string(ExperimentStatus status) noexcept {
  switch (status) {
    case ExperimentStatus::Running: return "running";
    case ExperimentStatus::AwaitingDecision: return "awaiting_decision";
    case ExperimentStatus::Satisfied: return "satisfied";
  }
  return "running";
}

struct ExperimentRecord {
  std::string experiment_id;
  FunctionId fid = FunctionId::F1;
  std::size_t dim = 30;
  /// ga_config.seed is the experiment seed; phase seed bases derive from it.
  GAConfig ga_config;
  std::uint64_t evals_per_dim = kEvaluationsPerDim;
  std::vector<PhaseResult> phases;
  ExperimentStatus status = ExperimentStatus::Running;

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

struct PhaseOptions {
  std::uint64_t evals_per_dim = kEvaluationsPerDim;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// Called with the number of completed runs, possibly from worker threads.
  std::function<void(std::size_t)> on_progress;
};

inline std::vector<double> best_values(const PhaseResult& phase) {
  std::vector<double> values;
  values.reserve(phase.runs.size());
  for (const auto& r : phase.runs) values.push_back(r.best_value);
  return values;
}

/// n_runs independent GA runs over `region`; run r uses seed config.seed + r
/// and a fresh budget of evals_per_dim * dim evaluations. Runs may execute
/// concurrently but are stored by run index.
inline PhaseResult run_phase(FunctionId fid, const Box& region, const GAConfig& config, std::size_t n_runs,
                             const PhaseOptions& options = {}) {
  if (n_runs < 1) throw Error(ErrorKind::InvalidConfig, "n_runs must be >= 1");
  config.validate();
  function_index(fid);
  // Budget is validated once up front so worker threads do not race to throw.
  if (make_budget(region.dim(), options.evals_per_dim).cap() < config.population_size) {
    throw Error(ErrorKind::InvalidConfig, "population_size exceeds the evaluation budget");
  }

  PhaseResult phase;
  phase.region = region;
  phase.seed_base = config.seed;
  phase.runs.resize(n_runs);

  const auto start = std::chrono::steady_clock::now();
  unsigned threads = options.threads != 0 ? options.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_runs));

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> completed{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    for (std::size_t r = next++; r < n_runs; r = next++) {
      try {
        GAConfig run_config = config;
        run_config.seed = config.seed + r;
        auto budget = make_budget(region.dim(), options.evals_per_dim);
        phase.runs[r] = run_ga(fid, region, run_config, budget);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
      const std::size_t done = ++completed;
      if (options.on_progress) options.on_progress(done);
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  phase.stats = compute_stats(best_values(phase), elapsed);
  return phase;
}

/// Seed base of the phase at `phase_index` of an experiment seeded with `seed`.
constexpr std::uint64_t phase_seed_base(std::uint64_t seed, std::size_t phase_index) noexcept {
  return splitmix64(seed + 0x632BE59BD9B4E019ULL * static_cast<std::uint64_t>(phase_index));
}

/// Where a local phase searches: an octant of the 3-D cube or an explicit box
/// (3-D, extended cyclically, or full-dimensional), scaled by (1/2)^m.
struct LocalTarget {
  std::optional<int> octant_index;
  std::optional<Box> box;
  int scale_exponent = 0;
};

struct LocalPlan {
  Box region;
  std::optional<SubcubeSpec> spec;
};

inline LocalPlan plan_local(std::size_t dim, const LocalTarget& target) {
  if (target.octant_index.has_value() == target.box.has_value()) {
    throw Error(ErrorKind::InvalidConfig, "give exactly one of octant_index or box");
  }
  if (target.scale_exponent < 0) throw Error(ErrorKind::InvalidConfig, "scale_exponent must be >= 0");
  if (target.octant_index) {
    SubcubeSpec spec{*target.octant_index, target.scale_exponent, dim};
    return {subcube_region(spec), spec};
  }
  const Box& custom = *target.box;
  if (custom.dim() != 3 && custom.dim() != dim) {
    throw Error(ErrorKind::WrongDimension, "custom box must be 3-D or match the experiment dimension");
  }
  if (!search_cube(custom.dim()).contains(custom)) {
    throw Error(ErrorKind::InvalidConfig, "custom box must lie inside the search cube");
  }
  const Box extended = custom.dim() == dim ? custom : cyclic_extend(custom, dim);
  return {scale_box(extended, target.scale_exponent), std::nullopt};
}

inline ExperimentRecord new_experiment(std::string id, FunctionId fid, std::size_t dim, const GAConfig& config,
                                       std::uint64_t evals_per_dim = kEvaluationsPerDim) {
  function_index(fid);
  if (dim < 3) throw Error(ErrorKind::InvalidConfig, "experiment dimension must be >= 3");
  config.validate();
  if (make_budget(dim, evals_per_dim).cap() < config.population_size) {
    throw Error(ErrorKind::InvalidConfig, "population_size exceeds the evaluation budget");
  }
  ExperimentRecord record;
  record.experiment_id = std::move(id);
  record.fid = fid;
  record.dim = dim;
  record.ga_config = config;
  record.evals_per_dim = evals_per_dim;
  return record;
}

/// Precondition checks shared by every driver; each throws on violation.
inline void require_can_start_global(const ExperimentRecord& record) {
  if (record.status == ExperimentStatus::Satisfied) throw Error(ErrorKind::Frozen, "experiment is satisfied");
  if (!record.phases.empty()) throw Error(ErrorKind::AlreadyRan, "global phase already exists");
}

inline void require_can_start_local(const ExperimentRecord& record) {
  if (record.status == ExperimentStatus::Satisfied) throw Error(ErrorKind::Frozen, "experiment is satisfied");
  if (record.phases.empty()) throw Error(ErrorKind::GlobalPending, "run the global phase first");
}

inline GAConfig phase_config(const ExperimentRecord& record, std::size_t phase_index) {
  GAConfig config = record.ga_config;
  config.seed = phase_seed_base(record.ga_config.seed, phase_index);
  return config;
}

inline PhaseOptions phase_options(const ExperimentRecord& record, PhaseOptions options = {}) {
  options.evals_per_dim = record.evals_per_dim;
  return options;
}

/// Runs (without recording) the global phase of `record`.
inline PhaseResult execute_global(const ExperimentRecord& record, std::size_t n_runs, PhaseOptions options = {}) {
  require_can_start_global(record);
  PhaseResult phase = run_phase(record.fid, search_cube(record.dim), phase_config(record, 0), n_runs,
                                phase_options(record, std::move(options)));
  phase.phase = PhaseKind::Global;
  return phase;
}

/// Runs (without recording) the next local phase of `record`.
inline PhaseResult execute_local(const ExperimentRecord& record, const LocalTarget& target, std::size_t n_runs,
                                 PhaseOptions options = {}) {
  require_can_start_local(record);
  LocalPlan plan = plan_local(record.dim, target);
  PhaseResult phase = run_phase(record.fid, plan.region, phase_config(record, record.phases.size()), n_runs,
                                phase_options(record, std::move(options)));
  phase.phase = PhaseKind::Local;
  phase.subcube_spec = plan.spec;
  return phase;
}

/// Appends a completed phase, enforcing global-first ordering, and leaves the
/// record awaiting the decision-maker.
inline void append_phase(ExperimentRecord& record, PhaseResult phase) {
  if (record.status == ExperimentStatus::Satisfied) throw Error(ErrorKind::Frozen, "experiment is satisfied");
  if (record.phases.empty() && phase.phase != PhaseKind::Global) {
    throw Error(ErrorKind::GlobalPending, "first phase must be global");
  }
  if (!record.phases.empty() && phase.phase == PhaseKind::Global) {
    throw Error(ErrorKind::AlreadyRan, "global phase already exists");
  }
  if (phase.region.dim() != record.dim) throw Error(ErrorKind::WrongDimension, "phase region dimension mismatch");
  record.phases.push_back(std::move(phase));
  record.status = ExperimentStatus::AwaitingDecision;
}

inline void run_global(ExperimentRecord& record, std::size_t n_runs, PhaseOptions options = {}) {
  append_phase(record, execute_global(record, n_runs, std::move(options)));
}

inline void run_local(ExperimentRecord& record, const LocalTarget& target, std::size_t n_runs,
                      PhaseOptions options = {}) {
  append_phase(record, execute_local(record, target, n_runs, std::move(options)));
}

struct BestFound {
  double value = 0.0;
  Point point;
  std::size_t phase_index = 0;
  std::size_t run_index = 0;

  friend bool operator==(const BestFound&, const BestFound&) = default;
};

/// Best value over every run of every phase; ties go to the earliest phase,
/// then the earliest run.
inline BestFound hctps_best(const ExperimentRecord& record) {
  std::optional<BestFound> best;
  for (std::size_t p = 0; p < record.phases.size(); ++p) {
    const auto& runs = record.phases[p].runs;
    for (std::size_t r = 0; r < runs.size(); ++r) {
      if (!best || runs[r].best_value < best->value) {
        best = BestFound{runs[r].best_value, runs[r].best_point, p, r};
      }
    }
  }
  if (!best) throw Error(ErrorKind::NoPhases, "experiment has no completed runs");
  return *best;
}

struct ComparisonRow {
  FunctionId fid = FunctionId::F1;
  std::size_t dim = 0;
  RunStats hctps;
  RunStats ga;
  /// Phase of the HCTPS record whose stats fill the HCTPS column.
  std::size_t hctps_phase_index = 0;

  friend bool operator==(const ComparisonRow&, const ComparisonRow&) = default;
};

/// Pairs a standalone GA phase with the HCTPS record; the HCTPS column is the
/// phase that contains the overall best run.
inline ComparisonRow comparison_row(FunctionId standalone_fid, const PhaseResult& standalone,
                                    const ExperimentRecord& hctps) {
  if (standalone_fid != hctps.fid || standalone.region.dim() != hctps.dim) {
    throw Error(ErrorKind::MismatchedExperiment, "standalone phase and experiment differ in function or dimension");
  }
  const BestFound best = hctps_best(hctps);
  return ComparisonRow{hctps.fid, hctps.dim, hctps.phases[best.phase_index].stats, standalone.stats,
                       best.phase_index};
}

/// Comparison of an experiment against its own global phase.
inline ComparisonRow comparison_row(const ExperimentRecord& record) {
  if (record.phases.empty()) throw Error(ErrorKind::NoPhases, "experiment has no phases");
  return comparison_row(record.fid, record.phases.front(), record);
}

struct FinalReport {
  BestFound best;
  ComparisonRow row;
};

/// Declares the results satisfactory and freezes the record.
inline FinalReport mark_satisfied(ExperimentRecord& record) {
  if (record.phases.empty()) throw Error(ErrorKind::NoPhases, "nothing to report before the global phase");
  if (record.status == ExperimentStatus::Running) {
    throw Error(ErrorKind::JobInFlight, "a phase is still running");
  }
  FinalReport report{hctps_best(record), comparison_row(record)};
  record.status = ExperimentStatus::Satisfied;
  return report;
}

}  // namespace hctps
