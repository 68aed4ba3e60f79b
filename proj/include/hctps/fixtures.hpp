#pragma once

// Readers for the two fixture files shipped in data/:
//   functions.json  [{id, name, dim, probe_points: [{x, expected_f, optimum}]}]
//   subcubes.json   [{id, octant: [[lo, hi] x 3], scale_exponent,
//                     suspected_typo?, corrected_octant?}]

#include <filesystem>
#include <string>
#include <vector>

#include "hctps/benchmarks.hpp"
#include "hctps/json_io.hpp"
#include "hctps/store.hpp"
#include "hctps/subcube.hpp"

namespace hctps {

struct ProbePoint {
  Point x;
  double expected_f = 0.0;
  bool optimum = false;
};

struct FunctionFixture {
  FunctionId id = FunctionId::F1;
  std::string name;
  std::size_t dim = 0;
  std::vector<ProbePoint> probes;
};

inline std::vector<FunctionFixture> parse_function_fixtures(const json& doc) {
  std::vector<FunctionFixture> out;
  for (const auto& entry : doc) {
    FunctionFixture fx;
    fx.id = entry.at("id").get<FunctionId>();
    fx.name = entry.at("name").get<std::string>();
    fx.dim = entry.at("dim").get<std::size_t>();
    for (const auto& p : entry.at("probe_points")) {
      fx.probes.push_back({p.at("x").get<Point>(), p.at("expected_f").get<double>(), p.value("optimum", false)});
    }
    out.push_back(std::move(fx));
  }
  return out;
}

inline Box octant_from_json(const json& pairs) {
  if (!pairs.is_array() || pairs.size() != 3) throw Error(ErrorKind::WrongDimension, "octant must list 3 intervals");
  std::vector<double> lo;
  std::vector<double> hi;
  for (const auto& interval : pairs) {
    lo.push_back(json_to_exact(interval.at(0)));
    hi.push_back(json_to_exact(interval.at(1)));
  }
  return {std::move(lo), std::move(hi)};
}

inline std::vector<SubcubeFixture> parse_subcube_fixtures(const json& doc) {
  std::vector<SubcubeFixture> out;
  for (const auto& entry : doc) {
    SubcubeFixture fx{entry.at("id").get<FunctionId>(), octant_from_json(entry.at("octant")),
                      entry.at("scale_exponent").get<int>(), std::nullopt};
    if (entry.value("suspected_typo", false)) fx.corrected = octant_from_json(entry.at("corrected_octant"));
    out.push_back(std::move(fx));
  }
  return out;
}

inline json read_json_file(const std::filesystem::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::CorruptRecord, path.string() + ": " + e.what());
  }
}

inline std::vector<FunctionFixture> load_function_fixtures(const std::filesystem::path& path) {
  return parse_function_fixtures(read_json_file(path));
}

inline std::vector<SubcubeFixture> load_subcube_fixtures(const std::filesystem::path& path) {
  return parse_subcube_fixtures(read_json_file(path));
}

}  // namespace hctps
