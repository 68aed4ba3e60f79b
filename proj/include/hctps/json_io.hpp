#pragma once

// nlohmann::json conversions for every persisted or transported type. Box
// bounds travel as shortest round-trip decimal strings; other reals as JSON
// numbers (which nlohmann also prints in shortest round-trip form).

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "hctps/benchmarks.hpp"
#include "hctps/box.hpp"
#include "hctps/error.hpp"
#include "hctps/experiment.hpp"
#include "hctps/ga.hpp"
#include "hctps/stats.hpp"
#include "hctps/subcube.hpp"

namespace hctps {

using json = nlohmann::json;

inline std::string format_exact(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return {buf, res.ptr};
}

inline double parse_exact(std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw Error(ErrorKind::InvalidConfig, "not a decimal number: '" + std::string(text) + "'");
  }
  return value;
}

/// Accepts a decimal string or a JSON number.
inline double json_to_exact(const json& j) {
  if (j.is_string()) return parse_exact(j.get<std::string>());
  if (j.is_number()) return j.get<double>();
  throw Error(ErrorKind::InvalidConfig, "expected a number or decimal string");
}

inline json box_to_json(const Box& box) {
  json lo = json::array();
  json hi = json::array();
  for (std::size_t i = 0; i < box.dim(); ++i) {
    lo.push_back(format_exact(box.lo(i)));
    hi.push_back(format_exact(box.hi(i)));
  }
  return {{"lo", std::move(lo)}, {"hi", std::move(hi)}};
}

inline Box box_from_json(const json& j) {
  std::vector<double> lo;
  std::vector<double> hi;
  for (const auto& v : j.at("lo")) lo.push_back(json_to_exact(v));
  for (const auto& v : j.at("hi")) hi.push_back(json_to_exact(v));
  return {std::move(lo), std::move(hi)};
}

inline ExperimentStatus parse_status(std::string_view text) {
  if (text == "running") return ExperimentStatus::Running;
  if (text == "awaiting_decision") return ExperimentStatus::AwaitingDecision;
  if (text == "satisfied") return ExperimentStatus::Satisfied;
  throw Error(ErrorKind::CorruptRecord, "unknown status '" + std::string(text) + "'");
}

inline PhaseKind parse_phase_kind(std::string_view text) {
  if (text == "global") return PhaseKind::Global;
  if (text == "local") return PhaseKind::Local;
  throw Error(ErrorKind::CorruptRecord, "unknown phase kind '" + std::string(text) + "'");
}

// ADL hooks.

inline void to_json(json& j, const FunctionId& fid) { j = std::string(function_code(fid)); }
inline void from_json(const json& j, FunctionId& fid) {
  fid = j.is_number_integer() ? parse_function_id(std::to_string(j.get<int>()))
                              : parse_function_id(j.get<std::string>());
}

inline void to_json(json& j, const GAConfig& c) {
  j = {{"population_size", c.population_size},
       {"bits_per_dim", c.bits_per_dim},
       {"crossover_prob", c.crossover_prob},
       {"mutation_prob", c.mutation_prob ? json(*c.mutation_prob) : json(nullptr)},
       {"tournament_size", c.tournament_size},
       {"elite_count", c.elite_count},
       {"seed", c.seed}};
}

/// Missing keys keep their defaults so partial configs are accepted.
inline void from_json(const json& j, GAConfig& c) {
  c.population_size = j.value("population_size", c.population_size);
  c.bits_per_dim = j.value("bits_per_dim", c.bits_per_dim);
  c.crossover_prob = j.value("crossover_prob", c.crossover_prob);
  if (j.contains("mutation_prob")) {
    const auto& m = j.at("mutation_prob");
    c.mutation_prob = m.is_null() ? std::nullopt : std::optional<double>(m.get<double>());
  }
  c.tournament_size = j.value("tournament_size", c.tournament_size);
  c.elite_count = j.value("elite_count", c.elite_count);
  c.seed = j.value("seed", c.seed);
}

inline void to_json(json& j, const SubcubeSpec& s) {
  j = {{"octant_index", s.octant_index}, {"scale_exponent", s.scale_exponent}, {"dim", s.dim}};
}
inline void from_json(const json& j, SubcubeSpec& s) {
  s.octant_index = j.at("octant_index").get<int>();
  s.scale_exponent = j.at("scale_exponent").get<int>();
  s.dim = j.at("dim").get<std::size_t>();
}

inline void to_json(json& j, const RunStats& s) {
  j = {{"mean", s.mean},     {"best", s.best},     {"worst", s.worst},           {"median", s.median},
       {"st_dev", s.st_dev}, {"n_runs", s.n_runs}, {"wall_time_s", s.wall_time_s}};
}
inline void from_json(const json& j, RunStats& s) {
  s.mean = j.at("mean").get<double>();
  s.best = j.at("best").get<double>();
  s.worst = j.at("worst").get<double>();
  s.median = j.at("median").get<double>();
  s.st_dev = j.at("st_dev").get<double>();
  s.n_runs = j.at("n_runs").get<std::size_t>();
  s.wall_time_s = j.value("wall_time_s", 0.0);
}

inline void to_json(json& j, const RunResult& r) {
  j = {{"seed", r.seed},
       {"best_value", r.best_value},
       {"best_point", r.best_point},
       {"evaluations_used", r.evaluations_used},
       {"generation_best_history", r.generation_best_history}};
}
inline void from_json(const json& j, RunResult& r) {
  r.seed = j.at("seed").get<std::uint64_t>();
  r.best_value = j.at("best_value").get<double>();
  r.best_point = j.at("best_point").get<Point>();
  r.evaluations_used = j.at("evaluations_used").get<std::uint64_t>();
  r.generation_best_history = j.at("generation_best_history").get<std::vector<double>>();
}

inline void to_json(json& j, const PhaseResult& p) {
  j = {{"phase", std::string(to_string(p.phase))},
       {"region", box_to_json(p.region)},
       {"subcube_spec", p.subcube_spec ? json(*p.subcube_spec) : json(nullptr)},
       {"seed_base", p.seed_base},
       {"stats", p.stats},
       {"runs", p.runs}};
}
inline void from_json(const json& j, PhaseResult& p) {
  p.phase = parse_phase_kind(j.at("phase").get<std::string>());
  p.region = box_from_json(j.at("region"));
  const auto& spec = j.at("subcube_spec");
  p.subcube_spec = spec.is_null() ? std::nullopt : std::optional<SubcubeSpec>(spec.get<SubcubeSpec>());
  p.seed_base = j.at("seed_base").get<std::uint64_t>();
  p.stats = j.at("stats").get<RunStats>();
  p.runs = j.at("runs").get<std::vector<RunResult>>();
}

inline void to_json(json& j, const BestFound& b) {
  j = {{"value", b.value}, {"point", b.point}, {"phase_index", b.phase_index}, {"run_index", b.run_index}};
}

inline void to_json(json& j, const ComparisonRow& row) {
  auto column = [](const RunStats& s) {
    return json{{"mean", s.mean}, {"best", s.best}, {"worst", s.worst}, {"median", s.median}, {"st_dev", s.st_dev}};
  };
  j = {{"fid", row.fid},
       {"name", std::string(function_name(row.fid))},
       {"dim", row.dim},
       {"HCTPS", column(row.hctps)},
       {"GA", column(row.ga)},
       {"hctps_phase_index", row.hctps_phase_index}};
}

inline void to_json(json& j, const FinalReport& r) { j = {{"hctps_best", r.best}, {"comparison", r.row}}; }

/// Header fields of a record (everything except phases).
inline json record_header_json(const ExperimentRecord& r) {
  return {{"experiment_id", r.experiment_id},
          {"fid", r.fid},
          {"function_name", std::string(function_name(r.fid))},
          {"dim", r.dim},
          {"evals_per_dim", r.evals_per_dim},
          {"ga_config", r.ga_config},
          {"status", std::string(to_string(r.status))},
          {"rng", Rng::kAlgorithm}};
}

inline void to_json(json& j, const ExperimentRecord& r) {
  j = record_header_json(r);
  json phases = json::array();
  for (std::size_t i = 0; i < r.phases.size(); ++i) {
    json p = r.phases[i];
    p["phase_index"] = i;
    phases.push_back(std::move(p));
  }
  j["phases"] = std::move(phases);
}

inline void apply_record_header(const json& j, ExperimentRecord& r) {
  r.experiment_id = j.at("experiment_id").get<std::string>();
  r.fid = j.at("fid").get<FunctionId>();
  r.dim = j.at("dim").get<std::size_t>();
  r.evals_per_dim = j.at("evals_per_dim").get<std::uint64_t>();
  r.ga_config = j.at("ga_config").get<GAConfig>();
  r.status = parse_status(j.at("status").get<std::string>());
}

}  // namespace hctps
