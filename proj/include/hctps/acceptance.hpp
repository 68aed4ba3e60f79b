#pragma once

// Acceptance criteria, shared by `hctps verify` and the acceptance test
// binary. Each criterion reports pass/fail with a one-line detail. Expected
// values here are literals or independent recomputations, never calls back
// into the code path under test where that can be avoided.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hctps/benchmarks.hpp"
#include "hctps/driver.hpp"
#include "hctps/experiment.hpp"
#include "hctps/fixtures.hpp"
#include "hctps/ga.hpp"
#include "hctps/rng.hpp"
#include "hctps/store.hpp"
#include "hctps/subcube.hpp"

namespace hctps::acceptance {

struct Options {
  std::filesystem::path data_dir = "data";
  std::filesystem::path scratch_dir = std::filesystem::temp_directory_path() / "hctps-acceptance";
  std::uint64_t evals_per_dim = kEvaluationsPerDim;
  std::uint64_t seed = 42;
  std::size_t dim = 30;
  std::size_t n_runs = 20;
  unsigned threads = 0;
  /// Run only the criterion with this name; empty runs all.
  std::string only;
};

inline constexpr std::array<std::string_view, 9> kCriteria{
    "function-spot-checks",
    "protocol-budget",
    "geometry-fixtures",
    "coverage-estimate",
    "superset-dominance",
    "qualitative-table-reproduction",
    "exact-zero-F11-F12",
    "geometric-bound-F1",
    "determinism-and-stats-oracle",
};

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr std::size_t kProtocolDim = 30;
inline constexpr std::uint64_t kProtocolCap = 1500;
inline constexpr double kSpotTolerance = 1e-9;
inline constexpr double kOriginTolerance = 1e-12;
inline constexpr double kOrdersOfMagnitude = 1e-3;
inline constexpr double kParityFactor = 10.0;
inline constexpr double kF1Bound = 2.2e-37;
inline constexpr double kStatsTolerance = 1e-12;
inline constexpr std::size_t kRandomPoints = 10000;
inline constexpr std::size_t kRandomCorners = 4096;

namespace detail {

class Failures {
 public:
  void add(const std::string& what) {
    if (count_++ < 5) {
      if (!text_.empty()) text_ += "; ";
      text_ += what;
    }
  }
  [[nodiscard]] bool empty() const { return count_ == 0; }
  [[nodiscard]] std::string summary() const {
    return count_ <= 5 ? text_ : text_ + "; ... (" + std::to_string(count_) + " failures)";
  }

 private:
  std::size_t count_ = 0;
  std::string text_;
};

inline std::string sci(double v) {
  std::ostringstream ss;
  ss.precision(4);
  ss << std::scientific << v;
  return ss.str();
}

inline bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

/// Mean / median / sample st.dev recomputed from their definitions with a
/// different summation and selection path than compute_stats.
struct NaiveStats {
  double mean, best, worst, median, st_dev;
};

inline NaiveStats naive_stats(std::vector<double> v) {
  const std::size_t n = v.size();
  long double sum = 0.0L;
  for (double x : v) sum += x;
  const long double mean = sum / static_cast<long double>(n);
  long double ss = 0.0L;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = n > 1 ? static_cast<double>(std::sqrt(ss / static_cast<long double>(n - 1))) : 0.0;
  const double best = *std::min_element(v.begin(), v.end());
  const double worst = *std::max_element(v.begin(), v.end());
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n / 2), v.end());
  const double upper = v[n / 2];
  double median = upper;
  if (n % 2 == 0) {
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n / 2));
    median = (lower + upper) / 2.0;
  }
  return {static_cast<double>(mean), best, worst, median, sd};
}

inline bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace detail

/// Everything the criteria share: one fixture-schedule sweep over all 14
/// functions, and an independent replay of it.
struct Sweep {
  RunManifest manifest;
  RunOutput primary;
  RunOutput replay;
};

inline RunManifest sweep_manifest(const Options& opt, const std::filesystem::path& out) {
  RunManifest m;
  m.function = "all";
  m.dim = opt.dim;
  m.n_runs = opt.n_runs;
  m.seed_base = opt.seed;
  m.mode = RunMode::HctpsFixture;
  m.evals_per_dim = opt.evals_per_dim;
  m.out = out;
  return m;
}

inline const ExperimentRecord& record_for(const RunOutput& out, FunctionId fid) {
  for (const auto& r : out.records) {
    if (r.fid == fid) return r;
  }
  throw Error(ErrorKind::UnknownExperiment, std::string(function_code(fid)));
}

inline CriterionResult function_spot_checks(const Options& opt) {
  detail::Failures failures;
  const auto fixtures = load_function_fixtures(opt.data_dir / "functions.json");
  std::size_t probes = 0;
  std::vector<bool> covered(kFunctionCount, false);
  for (const auto& fx : fixtures) {
    if (fx.name != function_name(fx.id)) failures.add(std::string(function_code(fx.id)) + " name '" + fx.name + "'");
    covered[function_index(fx.id)] = true;
    for (const auto& p : fx.probes) {
      ++probes;
      const double f = evaluate(fx.id, p.x);
      const bool ok = p.optimum ? std::abs(f - p.expected_f) <= kSpotTolerance
                                : detail::close_rel(f, p.expected_f, kSpotTolerance);
      if (!ok) {
        failures.add(std::string(function_code(fx.id)) + " dim " + std::to_string(fx.dim) + " got " + detail::sci(f) +
                     " expected " + detail::sci(p.expected_f));
      }
    }
  }
  for (std::size_t i = 0; i < kFunctionCount; ++i) {
    if (!covered[i]) failures.add("no fixture for F" + std::to_string(i + 1));
  }
  struct Exact {
    FunctionId id;
    double coord;
  };
  for (const Exact e : {Exact{FunctionId::F10, 1.0}, Exact{FunctionId::F11, 0.0}, Exact{FunctionId::F12, 0.0},
                        Exact{FunctionId::F14, 0.0}}) {
    for (std::size_t dim : {2U, 3U, 30U}) {
      const double f = evaluate(e.id, Point(dim, e.coord));
      if (!(std::abs(f) <= kOriginTolerance)) {
        failures.add(std::string(function_code(e.id)) + " at optimum = " + detail::sci(f));
      }
    }
  }
  return {"function-spot-checks", failures.empty(),
          failures.empty() ? std::to_string(probes) + " probes within 1e-9" : failures.summary()};
}

inline CriterionResult protocol_budget(const Options& opt) {
  detail::Failures failures;
  const std::uint64_t cap = make_budget(kProtocolDim, opt.evals_per_dim).cap();
  if (cap != kProtocolCap) failures.add("30-D cap is " + std::to_string(cap) + ", expected 1500");
  std::uint64_t max_seen = 0;
  std::size_t runs = 0;
  for (const auto& info : kFunctionCatalog) {
    GAConfig base;
    base.seed = opt.seed;
    const ExperimentRecord record = new_experiment("audit", info.id, kProtocolDim, base, opt.evals_per_dim);
    const Box regions[] = {search_cube(kProtocolDim), subcube_region(fixture_spec(info.id, kProtocolDim))};
    for (std::size_t phase = 0; phase < 2; ++phase) {
      const GAConfig phase_cfg = phase_config(record, phase);
      for (std::size_t r = 0; r < opt.n_runs; ++r) {
        GAConfig cfg = phase_cfg;
        cfg.seed += r;
        std::uint64_t calls = 0;
        auto counted = [&](std::span<const double> x) {
          ++calls;
          return evaluate(info.id, x);
        };
        auto budget = make_budget(kProtocolDim, opt.evals_per_dim);
        const RunResult result = run_ga(counted, regions[phase], cfg, budget);
        ++runs;
        max_seen = std::max(max_seen, calls);
        if (calls > kProtocolCap) failures.add(std::string(info.code) + " run used " + std::to_string(calls));
        if (calls != result.evaluations_used || calls != budget.used()) {
          failures.add(std::string(info.code) + " counter mismatch: audited " + std::to_string(calls) + ", reported " +
                       std::to_string(result.evaluations_used));
        }
      }
    }
  }
  return {"protocol-budget", failures.empty(),
          failures.empty() ? std::to_string(runs) + " runs audited, max " + std::to_string(max_seen) + " <= 1500"
                           : failures.summary()};
}

inline CriterionResult geometry_fixtures(const Options& opt) {
  detail::Failures failures;
  constexpr double L = -100.0;
  constexpr double H = 100.0;
  const double expected[8][6] = {
      {L, 0, L, 0, L, 0}, {L, 0, L, 0, 0, H}, {L, 0, 0, H, L, 0}, {L, 0, 0, H, 0, H},
      {0, H, L, 0, L, 0}, {0, H, L, 0, 0, H}, {0, H, 0, H, L, 0}, {0, H, 0, H, 0, H},
  };
  const auto octants = octant_sequence(Box::cube(3, L, H));
  for (std::size_t n = 0; n < 8; ++n) {
    for (std::size_t axis = 0; axis < 3; ++axis) {
      if (!detail::same_bits(octants[n].lo(axis), expected[n][2 * axis]) ||
          !detail::same_bits(octants[n].hi(axis), expected[n][2 * axis + 1])) {
        failures.add("octant " + std::to_string(n + 1) + " axis " + std::to_string(axis + 1));
      }
    }
  }

  const auto loaded = load_subcube_fixtures(opt.data_dir / "subcubes.json");
  if (loaded.size() != kFunctionCount) failures.add("subcubes.json has " + std::to_string(loaded.size()) + " entries");
  std::vector<bool> covered(kFunctionCount, false);
  const SubcubeFixture* f1 = nullptr;
  for (const auto& fx : loaded) {
    covered[function_index(fx.id)] = true;
    if (!(fx == subcube_for_function(fx.id))) failures.add(std::string(function_code(fx.id)) + " fixture differs");
    if (fx.id == FunctionId::F1) f1 = &fx;
  }
  for (std::size_t i = 0; i < kFunctionCount; ++i) {
    if (!covered[i]) failures.add("missing F" + std::to_string(i + 1));
  }

  // 100 * 2^-80 written out in binary: 100 = 0x1.9p6.
  constexpr double kTiny = 0x1.9p-74;
  if (f1 == nullptr || f1->scale_exponent != 80) {
    failures.add("F1 scale exponent is not 80");
  } else {
    const Box scaled = scale_box(cyclic_extend(f1->effective_octant(), kProtocolDim), f1->scale_exponent);
    for (std::size_t i = 0; i < kProtocolDim; ++i) {
      const bool negative = i % 3 == 1;
      const double lo = negative ? -kTiny : 0.0;
      const double hi = negative ? 0.0 : kTiny;
      if (!detail::same_bits(scaled.lo(i), lo) || !detail::same_bits(scaled.hi(i), hi)) {
        failures.add("F1 scaled bound mismatch in dimension " + std::to_string(i + 1));
      }
    }
  }
  return {"geometry-fixtures", failures.empty(),
          failures.empty() ? "8-term octant sequence, F1 (1/2)^80 S_30 bit-exact, 14 fixtures" : failures.summary()};
}

inline CriterionResult coverage_estimate(const Options&) {
  const BigInt m = exhaustive_iteration_estimate(2, 20, 100);
  const bool ok = m == 10486;
  return {"coverage-estimate", ok, "exhaustive_iteration_estimate(2, 20, 100) = " + m.str()};
}

inline CriterionResult superset_dominance(const Options& opt, const Sweep& sweep) {
  detail::Failures failures;
  std::size_t experiments = 0;
  auto check = [&](const ExperimentRecord& record) {
    ++experiments;
    const double global_best = record.phases.front().stats.best;
    const BestFound best = hctps_best(record);
    if (!(best.value <= global_best)) {
      failures.add(record.experiment_id + ": " + detail::sci(best.value) + " > " + detail::sci(global_best));
    }
  };
  for (const auto& record : sweep.primary.records) check(record);
  for (std::uint64_t extra : {1ULL, 2ULL, 3ULL}) {
    RunManifest m = sweep.manifest;
    m.seed_base = opt.seed + 1000 * extra;
    m.n_runs = 5;
    for (const auto& record : execute_manifest(m, opt.threads).records) check(record);
  }
  return {"superset-dominance", failures.empty(),
          failures.empty() ? "hctps_best <= global best on " + std::to_string(experiments) + " experiments"
                           : failures.summary()};
}

inline CriterionResult qualitative_table(const Options&, const Sweep& sweep) {
  detail::Failures failures;
  std::ostringstream detail_text;
  const FunctionId strong[] = {FunctionId::F1,  FunctionId::F2,  FunctionId::F4,  FunctionId::F7,
                               FunctionId::F11, FunctionId::F12, FunctionId::F13, FunctionId::F14};
  for (FunctionId fid : strong) {
    const ComparisonRow row = comparison_row(record_for(sweep.primary, fid));
    if (!(row.hctps.best <= kOrdersOfMagnitude * row.ga.best)) {
      failures.add(std::string(function_code(fid)) + " HCTPS " + detail::sci(row.hctps.best) + " vs GA " +
                   detail::sci(row.ga.best));
    }
  }
  for (FunctionId fid : {FunctionId::F3, FunctionId::F5}) {
    const ComparisonRow row = comparison_row(record_for(sweep.primary, fid));
    if (!(row.hctps.best <= kParityFactor * row.ga.best)) {
      failures.add(std::string(function_code(fid)) + " HCTPS " + detail::sci(row.hctps.best) + " not within 10x of GA " +
                   detail::sci(row.ga.best));
    }
  }
  return {"qualitative-table-reproduction", failures.empty(),
          failures.empty() ? ">= 3 orders on F1,F2,F4,F7,F11-F14; within 10x on F3,F5" : failures.summary()};
}

inline CriterionResult exact_zero_griewank_rastrigin(const Options& opt, const Sweep& sweep) {
  detail::Failures failures;
  std::size_t points = 0;
  for (FunctionId fid : {FunctionId::F11, FunctionId::F12}) {
    const std::string code(function_code(fid));
    const Box box = subcube_region(fixture_spec(fid, kProtocolDim));
    auto expect_zero = [&](const Point& x, const char* what) {
      ++points;
      const double f = evaluate(fid, x);
      if (f != 0.0) failures.add(code + " " + what + " = " + detail::sci(f));
    };
    // Each dimension's extreme coordinates, one at a time, on an otherwise
    // zero point: a separable sum or product is then exactly zero at every
    // corner iff each of these is.
    for (std::size_t i = 0; i < box.dim(); ++i) {
      for (double v : {box.lo(i), box.hi(i)}) {
        Point x(box.dim(), 0.0);
        x[i] = v;
        expect_zero(x, "axis endpoint");
      }
    }
    Point far(box.dim());
    Point near(box.dim());
    for (std::size_t i = 0; i < box.dim(); ++i) {
      far[i] = std::abs(box.lo(i)) > std::abs(box.hi(i)) ? box.lo(i) : box.hi(i);
      near[i] = std::abs(box.lo(i)) > std::abs(box.hi(i)) ? box.hi(i) : box.lo(i);
    }
    expect_zero(far, "farthest corner");
    expect_zero(near, "nearest corner");
    Rng rng(opt.seed);
    for (std::size_t k = 0; k < kRandomCorners; ++k) {
      Point x(box.dim());
      for (std::size_t i = 0; i < box.dim(); ++i) x[i] = rng.bit() ? box.hi(i) : box.lo(i);
      expect_zero(x, "corner");
    }
    for (std::size_t k = 0; k < kRandomPoints; ++k) {
      Point x(box.dim());
      for (std::size_t i = 0; i < box.dim(); ++i) x[i] = box.lo(i) + rng.uniform01() * box.width(i);
      expect_zero(x, "interior point");
    }
    const auto& record = record_for(sweep.primary, fid);
    const RunStats& local = record.phases.back().stats;
    if (!(local.mean == 0.0 && local.st_dev == 0.0 && local.best == 0.0 && local.worst == 0.0 && local.median == 0.0)) {
      failures.add(code + " HCTPS local stats not all zero (mean " + detail::sci(local.mean) + ")");
    }
  }
  return {"exact-zero-F11-F12", failures.empty(),
          failures.empty() ? std::to_string(points) + " points exactly 0; HCTPS mean = st_dev = 0" : failures.summary()};
}

inline CriterionResult geometric_bound_f1(const Options&, const Sweep& sweep) {
  detail::Failures failures;
  const Box box = subcube_region(fixture_spec(FunctionId::F1, kProtocolDim));
  Point corner(box.dim());
  for (std::size_t i = 0; i < box.dim(); ++i) {
    corner[i] = std::abs(box.lo(i)) > std::abs(box.hi(i)) ? box.lo(i) : box.hi(i);
  }
  const double worst = evaluate(FunctionId::F1, corner);
  if (!(worst <= kF1Bound)) failures.add("worst corner " + detail::sci(worst) + " > 2.2e-37");
  const auto& record = record_for(sweep.primary, FunctionId::F1);
  const BestFound best = hctps_best(record);
  if (!(best.value <= kF1Bound)) failures.add("HCTPS best " + detail::sci(best.value));
  for (const auto& run : record.phases.back().runs) {
    if (!(run.best_value <= worst)) failures.add("local run above worst corner: " + detail::sci(run.best_value));
  }
  return {"geometric-bound-F1", failures.empty(),
          failures.empty() ? "worst corner " + detail::sci(worst) + ", HCTPS best " + detail::sci(best.value)
                           : failures.summary()};
}

/// Record text with wall-clock fields zeroed (and the checksum recomputed).
inline std::string without_wall_time(ExperimentRecord record) {
  for (auto& phase : record.phases) phase.stats.wall_time_s = 0.0;
  return persist(record);
}

inline CriterionResult determinism_and_stats(const Options&, const Sweep& sweep) {
  detail::Failures failures;
  const auto& a = sweep.primary;
  const auto& b = sweep.replay;
  if (a.files.size() != b.files.size()) failures.add("different number of output files");
  for (std::size_t i = 0; i < std::min(a.files.size(), b.files.size()); ++i) {
    const auto& fa = a.files[i];
    const auto& fb = b.files[i];
    if (fa.filename() != fb.filename()) {
      failures.add("file order differs");
      continue;
    }
    const std::string ta = read_file(fa);
    const std::string tb = read_file(fb);
    if (fa.string().ends_with(kRecordExtension)) {
      if (without_wall_time(load(ta)) != without_wall_time(load(tb))) failures.add(fa.filename().string() + " differs");
    } else if (fa.extension() == ".json") {
      json ja = json::parse(ta);
      json jb = json::parse(tb);
      ja.erase("out");
      jb.erase("out");
      if (ja != jb) failures.add(fa.filename().string() + " differs");
    } else if (ta != tb) {
      failures.add(fa.filename().string() + " differs");
    }
  }
  std::size_t phases = 0;
  for (const auto& path : a.files) {
    if (!path.string().ends_with(kRecordExtension)) continue;
    const ExperimentRecord record = load(read_file(path));
    for (std::size_t p = 0; p < record.phases.size(); ++p) {
      ++phases;
      const auto& phase = record.phases[p];
      const auto oracle = detail::naive_stats(best_values(phase));
      const auto& s = phase.stats;
      const bool ok = detail::close_rel(s.mean, oracle.mean, kStatsTolerance) && s.best == oracle.best &&
                      s.worst == oracle.worst && detail::close_rel(s.median, oracle.median, kStatsTolerance) &&
                      detail::close_rel(s.st_dev, oracle.st_dev, kStatsTolerance) && s.n_runs == phase.runs.size();
      if (!ok) failures.add(record.experiment_id + " phase " + std::to_string(p) + " stats disagree with oracle");
    }
  }
  return {"determinism-and-stats-oracle", failures.empty(),
          failures.empty() ? std::to_string(a.files.size()) + " files replayed identically; " + std::to_string(phases) +
                                 " phases match the stats oracle"
                           : failures.summary()};
}

/// Runs every criterion in order; `report` is called as each one finishes.
inline std::vector<CriterionResult> run_all(const Options& opt,
                                            const std::function<void(const CriterionResult&)>& report = {}) {
  std::vector<CriterionResult> results;
  if (!opt.only.empty() && std::find(kCriteria.begin(), kCriteria.end(), opt.only) == kCriteria.end()) {
    throw Error(ErrorKind::InvalidConfig, "unknown criterion '" + opt.only + "'");
  }
  auto selected = [&](std::string_view name) { return opt.only.empty() || opt.only == name; };
  auto timed = [&](const std::string& name, const std::function<CriterionResult()>& fn) {
    if (!selected(name)) return;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r = {name, false, std::string("exception: ") + e.what()};
    }
    r.name = name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (report) report(r);
    results.push_back(std::move(r));
  };

  timed("function-spot-checks", [&] { return function_spot_checks(opt); });
  timed("protocol-budget", [&] { return protocol_budget(opt); });
  timed("geometry-fixtures", [&] { return geometry_fixtures(opt); });
  timed("coverage-estimate", [&] { return coverage_estimate(opt); });

  if (std::none_of(kCriteria.begin() + 4, kCriteria.end(), selected)) return results;
  Sweep sweep;
  std::string sweep_error;
  try {
    std::filesystem::remove_all(opt.scratch_dir);
    sweep.manifest = sweep_manifest(opt, opt.scratch_dir / "a");
    sweep.primary = run_manifest(sweep.manifest, opt.threads);
    RunManifest replay = sweep.manifest;
    replay.out = opt.scratch_dir / "b";
    sweep.replay = run_manifest(replay, opt.threads);
  } catch (const std::exception& e) {
    sweep_error = e.what();
  }
  auto with_sweep = [&](const std::string& name, auto fn) {
    timed(name, [&]() -> CriterionResult {
      if (!sweep_error.empty()) return {name, false, "sweep failed: " + sweep_error};
      return fn(opt, sweep);
    });
  };
  with_sweep("superset-dominance", superset_dominance);
  with_sweep("qualitative-table-reproduction", qualitative_table);
  with_sweep("exact-zero-F11-F12", exact_zero_griewank_rastrigin);
  with_sweep("geometric-bound-F1", geometric_bound_f1);
  with_sweep("determinism-and-stats-oracle", determinism_and_stats);
  return results;
}

}  // namespace hctps::acceptance
