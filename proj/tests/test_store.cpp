#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "hctps/store.hpp"

using namespace hctps;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("hctps-store-" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

const std::vector<double> kAwkward{0.1,    1.0 / 3.0, 5e-324, 1.7976931348623157e300, 0x1.9p-74, -2.5e-300,
                                   1e-40,  123456789.123456789, 0.0, 2.840347319, 4e-39};

ExperimentRecord big_record() {
  GAConfig cfg;
  cfg.seed = 0xFFFFFFFFFFFFFFFFULL;
  cfg.mutation_prob = 0.003;
  ExperimentRecord r = new_experiment("round-trip", FunctionId::F9, 30, cfg);
  for (std::size_t p = 0; p < 9; ++p) {
    PhaseResult phase;
    phase.phase = p == 0 ? PhaseKind::Global : PhaseKind::Local;
    if (p == 0) {
      phase.region = search_cube(30);
    } else {
      phase.subcube_spec = SubcubeSpec{static_cast<int>(p % 8) + 1, static_cast<int>(10 * p), 30};
      phase.region = subcube_region(*phase.subcube_spec);
    }
    phase.seed_base = phase_seed_base(cfg.seed, p);
    for (std::size_t run = 0; run < 20; ++run) {
      RunResult rr;
      rr.best_value = kAwkward[(p + run) % kAwkward.size()] * static_cast<double>(run + 1);
      rr.best_point.assign(30, kAwkward[run % kAwkward.size()]);
      rr.evaluations_used = 1500 - run;
      rr.generation_best_history = {rr.best_value * 4, rr.best_value * 2, rr.best_value};
      rr.seed = phase.seed_base + run;
      phase.runs.push_back(rr);
    }
    phase.stats = compute_stats(best_values(phase), 0.125 * static_cast<double>(p));
    append_phase(r, phase);
  }
  return r;
}

}  // namespace

TEST(Store, RoundTripNinePhasesBitExact) {
  const ExperimentRecord r = big_record();
  const std::string text = persist(r);
  const ExperimentRecord back = load(text);
  EXPECT_EQ(back, r);
  EXPECT_EQ(persist(back), text);
}

TEST(Store, TruncationIsDetected) {
  const std::string text = persist(big_record());
  for (std::size_t cut : {text.size() - 1, text.size() - 30, text.size() / 2, std::size_t{10}}) {
    try {
      load(text.substr(0, cut));
      FAIL() << cut;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::CorruptRecord);
    }
  }
}

TEST(Store, TamperingIsDetected) {
  std::string text = persist(big_record());
  const auto at = text.find("\"evaluations_used\":1500");
  ASSERT_NE(at, std::string::npos);
  text[at + 19] = '4';
  try {
    load(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CorruptRecord);
  }
}

TEST(Store, DirectoryOperations) {
  const ExperimentStore store(scratch("dir"));
  ExperimentRecord r = big_record();
  store.save(r);
  r.experiment_id = "another";
  store.save(r);
  EXPECT_TRUE(store.exists("round-trip"));
  EXPECT_EQ(store.list_ids(), (std::vector<std::string>{"another", "round-trip"}));
  EXPECT_EQ(store.load_record("another"), r);
  try {
    static_cast<void>(store.load_record("missing"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownExperiment);
  }
  EXPECT_THROW(static_cast<void>(store.path_for("../escape")), Error);
}

TEST(Store, ExactNumberFormatting) {
  for (double v : kAwkward) EXPECT_EQ(parse_exact(format_exact(v)), v);
  EXPECT_EQ(format_exact(0.1), "0.1");
  EXPECT_EQ(format_exact(100.0), "100");
}
