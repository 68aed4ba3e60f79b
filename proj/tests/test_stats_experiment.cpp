#include <vector>

#include <gtest/gtest.h>

#include "hctps/experiment.hpp"
#include "hctps/stats.hpp"

using namespace hctps;

TEST(Stats, FourValues) {
  const std::vector<double> v{4.0, 1.0, 3.0, 2.0};
  const RunStats s = compute_stats(v);
  EXPECT_EQ(s.best, 1.0);
  EXPECT_EQ(s.worst, 4.0);
  EXPECT_EQ(s.median, 2.5);
  EXPECT_EQ(s.mean, 2.5);
  EXPECT_NEAR(s.st_dev, 1.2909944487358056, 1e-15);
  EXPECT_EQ(s.n_runs, 4U);
}

TEST(Stats, SingleValueAndEmpty) {
  const std::vector<double> one{7.0};
  const RunStats s = compute_stats(one);
  EXPECT_EQ(s.mean, 7.0);
  EXPECT_EQ(s.median, 7.0);
  EXPECT_EQ(s.st_dev, 0.0);
  try {
    compute_stats(std::vector<double>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptySample);
  }
}

TEST(Stats, TwentyValuesAgainstReference) {
  // Reference values from an independent implementation.
  const std::vector<double> v{3.5,  0.25, 7.125, 1e-3, 42.0, 2.5,   9.75, 0.5, 13.0, 6.0,
                              5.5,  11.25, 0.125, 8.0, 4.75, 21.0, 1.5,  3.0, 17.5, 2.0};
  const RunStats s = compute_stats(v);
  EXPECT_NEAR(s.mean, 7.96255, 1e-12);
  EXPECT_EQ(s.best, 1e-3);
  EXPECT_EQ(s.worst, 42.0);
  EXPECT_EQ(s.median, 5.125);
  EXPECT_NEAR(s.st_dev, 9.924682683380334, 1e-12);
}

TEST(Stats, ConstantSampleIsExact) {
  const std::vector<double> v(20, 0.1);
  const RunStats s = compute_stats(v);
  EXPECT_EQ(s.mean, 0.1);
  EXPECT_EQ(s.st_dev, 0.0);
}

namespace {

ExperimentRecord small_record(FunctionId fid = FunctionId::F12, std::size_t dim = 6) {
  GAConfig cfg;
  cfg.population_size = 20;
  cfg.seed = 9;
  return new_experiment("t", fid, dim, cfg);
}

PhaseOptions one_thread() {
  PhaseOptions o;
  o.threads = 1;
  return o;
}

}  // namespace

TEST(Experiment, GlobalThenLocalLifecycle) {
  ExperimentRecord r = small_record();
  EXPECT_THROW(execute_local(r, LocalTarget{1, std::nullopt, 3}, 2), Error);
  run_global(r, 4, one_thread());
  ASSERT_EQ(r.phases.size(), 1U);
  EXPECT_EQ(r.status, ExperimentStatus::AwaitingDecision);
  EXPECT_EQ(r.phases[0].runs.size(), 4U);
  EXPECT_EQ(r.phases[0].seed_base, phase_seed_base(9, 0));
  try {
    run_global(r, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AlreadyRan);
  }
  run_local(r, LocalTarget{5, std::nullopt, 10}, 4, one_thread());
  ASSERT_EQ(r.phases.size(), 2U);
  EXPECT_EQ(r.phases[1].subcube_spec->octant_index, 5);
  EXPECT_TRUE(r.phases[1].region.contains(r.phases[1].runs[0].best_point));
  EXPECT_LE(hctps_best(r).value, r.phases[0].stats.best);
}

TEST(Experiment, ThreadCountDoesNotChangeResults) {
  ExperimentRecord a = small_record(FunctionId::F14);
  ExperimentRecord b = small_record(FunctionId::F14);
  PhaseOptions many;
  many.threads = 4;
  run_global(a, 6, one_thread());
  run_global(b, 6, many);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(a.phases[0].runs[i], b.phases[0].runs[i]);
}

TEST(Experiment, InvalidInputs) {
  try {
    new_experiment("x", FunctionId::F1, 2, GAConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidConfig);
  }
  ExperimentRecord r = small_record();
  run_global(r, 2, one_thread());
  try {
    execute_local(r, LocalTarget{6, std::nullopt, 1100}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateBox);
  }
  EXPECT_THROW(plan_local(6, LocalTarget{}), Error);
  EXPECT_THROW(plan_local(6, LocalTarget{1, Box::cube(3, 0, 1), 0}), Error);
  EXPECT_THROW(plan_local(6, LocalTarget{std::nullopt, Box::cube(3, 0, 200), 0}), Error);
  const LocalPlan custom = plan_local(6, LocalTarget{std::nullopt, Box({0, 0, 0}, {10, 20, 40}), 1});
  EXPECT_EQ(custom.region, Box({0, 0, 0, 0, 0, 0}, {5, 10, 20, 5, 10, 20}));
  EXPECT_FALSE(custom.spec.has_value());
}

namespace {

RunResult run_with(double v) {
  RunResult r;
  r.best_value = v;
  r.best_point = {v, v, v};
  return r;
}

PhaseResult phase_of(PhaseKind kind, std::vector<double> values) {
  PhaseResult p;
  p.phase = kind;
  p.region = search_cube(3);
  for (double v : values) p.runs.push_back(run_with(v));
  p.stats = compute_stats(best_values(p));
  return p;
}

}  // namespace

TEST(HctpsBest, MinimumAcrossPhasesWithAttribution) {
  ExperimentRecord r = new_experiment("b", FunctionId::F1, 3, GAConfig{});
  append_phase(r, phase_of(PhaseKind::Global, {5.0, 3.0, 4.0}));
  append_phase(r, phase_of(PhaseKind::Local, {6.0, 1.0}));
  append_phase(r, phase_of(PhaseKind::Local, {1.0, 2.0}));
  const BestFound best = hctps_best(r);
  EXPECT_EQ(best.value, 1.0);
  EXPECT_EQ(best.phase_index, 1U);
  EXPECT_EQ(best.run_index, 1U);
  const ComparisonRow row = comparison_row(r);
  EXPECT_EQ(row.hctps_phase_index, 1U);
  EXPECT_EQ(row.ga.best, 3.0);
  EXPECT_EQ(row.hctps.best, 1.0);
}

TEST(HctpsBest, GlobalOnlyAndEmpty) {
  ExperimentRecord r = new_experiment("b", FunctionId::F1, 3, GAConfig{});
  try {
    hctps_best(r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoPhases);
  }
  append_phase(r, phase_of(PhaseKind::Global, {2.0, 2.0}));
  EXPECT_EQ(hctps_best(r).value, 2.0);
  EXPECT_EQ(hctps_best(r).run_index, 0U);
}

TEST(Comparison, MismatchedExperiment) {
  ExperimentRecord r = new_experiment("b", FunctionId::F1, 3, GAConfig{});
  append_phase(r, phase_of(PhaseKind::Global, {2.0}));
  try {
    comparison_row(FunctionId::F2, r.phases[0], r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MismatchedExperiment);
  }
}

TEST(Satisfied, FreezesRecord) {
  ExperimentRecord r = new_experiment("b", FunctionId::F1, 3, GAConfig{});
  EXPECT_THROW(mark_satisfied(r), Error);
  append_phase(r, phase_of(PhaseKind::Global, {2.0}));
  const FinalReport report = mark_satisfied(r);
  EXPECT_EQ(report.best.value, 2.0);
  EXPECT_EQ(r.status, ExperimentStatus::Satisfied);
  try {
    append_phase(r, phase_of(PhaseKind::Local, {1.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Frozen);
  }
}
