#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "hctps/fixtures.hpp"
#include "hctps/rng.hpp"
#include "hctps/subcube.hpp"

using namespace hctps;

TEST(Octants, OrderOnUnitLikeCube) {
  const auto oct = octant_sequence(Box::cube(3, 0.0, 2.0));
  EXPECT_EQ(oct[0], Box({0, 0, 0}, {1, 1, 1}));
  EXPECT_EQ(oct[1], Box({0, 0, 1}, {1, 1, 2}));
  EXPECT_EQ(oct[2], Box({0, 1, 0}, {1, 2, 1}));
  EXPECT_EQ(oct[7], Box({1, 1, 1}, {2, 2, 2}));
}

TEST(Octants, SearchCubeSequence) {
  const auto oct = octant_sequence(search_cube(3));
  EXPECT_EQ(oct[0], Box({-100, -100, -100}, {0, 0, 0}));
  EXPECT_EQ(oct[5], Box({0, -100, 0}, {100, 0, 100}));
  EXPECT_EQ(octant_position(Box({0, -100, 0}, {100, 0, 100})), 6);
  EXPECT_EQ(octant_position(Box({0, 0, 0}, {100, 100, 1000})), std::nullopt);
}

TEST(Octants, TileTheCube) {
  const auto oct = octant_sequence(search_cube(3));
  double volume = 0.0;
  for (const auto& o : oct) volume += o.volume();
  EXPECT_DOUBLE_EQ(volume, search_cube(3).volume());
  Rng rng(17);
  for (int t = 0; t < 20000; ++t) {
    Point x(3);
    for (auto& v : x) v = -100.0 + 200.0 * rng.uniform01();
    int interior = 0;
    int closed = 0;
    for (const auto& o : oct) {
      interior += o.contains_interior(x) ? 1 : 0;
      closed += o.contains(x) ? 1 : 0;
    }
    EXPECT_LE(interior, 1);
    EXPECT_GE(closed, 1);
  }
}

TEST(CyclicExtend, RepeatsComponents) {
  const Box b3({-100, 0, -100}, {0, 100, 0});
  const Box b = cyclic_extend(b3, 7);
  ASSERT_EQ(b.dim(), 7U);
  for (std::size_t i = 0; i < 7; ++i) {
    EXPECT_EQ(b.lo(i), b3.lo(i % 3));
    EXPECT_EQ(b.hi(i), b3.hi(i % 3));
  }
  EXPECT_EQ(cyclic_extend(b3, 3), b3);
  EXPECT_THROW(cyclic_extend(b3, 2), Error);
  EXPECT_THROW(cyclic_extend(search_cube(4), 8), Error);
}

TEST(Scale, VolumeAndContainment) {
  const Box b = cyclic_extend(base_octant(6), 6);
  for (int m : {0, 1, 5, 20}) {
    const Box s = scale_box(b, m);
    EXPECT_DOUBLE_EQ(s.volume(), b.volume() * std::ldexp(1.0, -6 * m));
    EXPECT_TRUE(b.contains(s));
  }
  EXPECT_EQ(scale_box(b, 0), b);
}

TEST(Scale, DegenerateOnUnderflow) {
  try {
    scale_box(cyclic_extend(base_octant(6), 30), 1100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateBox);
  }
}

TEST(Fixtures, F1RegionIsExact) {
  const Box r = subcube_region(fixture_spec(FunctionId::F1, 30));
  for (std::size_t i = 0; i < 30; ++i) {
    if (i % 3 == 1) {
      EXPECT_EQ(r.lo(i), -100.0 * std::pow(2.0, -80));
      EXPECT_EQ(r.hi(i), 0.0);
    } else {
      EXPECT_EQ(r.lo(i), 0.0);
      EXPECT_EQ(r.hi(i), 100.0 * std::pow(2.0, -80));
    }
  }
}

TEST(Fixtures, DataFileMatchesBuiltInTable) {
  const auto loaded = load_subcube_fixtures(std::string(HCTPS_DATA_DIR) + "/subcubes.json");
  ASSERT_EQ(loaded.size(), 14U);
  for (const auto& fx : loaded) EXPECT_EQ(fx, subcube_for_function(fx.id)) << function_code(fx.id);
  const auto& f3 = subcube_for_function(FunctionId::F3);
  ASSERT_TRUE(f3.corrected.has_value());
  EXPECT_EQ(f3.octant.hi(2), 1000.0);
  EXPECT_EQ(fixture_spec(FunctionId::F3, 30).octant_index, 8);
  for (const auto& info : kFunctionCatalog) EXPECT_NO_THROW(fixture_spec(info.id, 30));
}

TEST(Estimate, SmallCases) {
  EXPECT_EQ(exhaustive_iteration_estimate(2, 1, 1), 2);
  EXPECT_EQ(exhaustive_iteration_estimate(3, 5, 7), 35);
  EXPECT_EQ(exhaustive_iteration_estimate(2, 20, 100), 10486);
  EXPECT_EQ(exhaustive_iteration_estimate(2, 1, 1000), 1);
  const BigInt big = exhaustive_iteration_estimate(2, 480, 50);
  EXPECT_GT(big, BigInt(1) << 470);
}
