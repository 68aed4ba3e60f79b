#pragma once

#include <cstdio>
#include <span>
#include <string>

#include "hctps/experiment.hpp"
#include "hctps/json_io.hpp"

namespace hctps {

inline constexpr std::string_view kCsvHeader = "id,variant,mean,best,worst,median,st_dev";

inline std::string comparison_csv(std::span<const ComparisonRow> rows) {
  std::string out(kCsvHeader);
  out += '\n';
  auto line = [&](const ComparisonRow& row, std::string_view variant, const RunStats& s) {
    out += std::string(function_code(row.fid)) + ',' + std::string(variant) + ',' + format_exact(s.mean) + ',' +
           format_exact(s.best) + ',' + format_exact(s.worst) + ',' + format_exact(s.median) + ',' +
           format_exact(s.st_dev) + '\n';
  };
  for (const auto& row : rows) {
    line(row, "HCTPS-GA", row.hctps);
    line(row, "GA", row.ga);
  }
  return out;
}

inline std::string scientific(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.5E", v);
  return buf;
}

/// Side-by-side HCTPS-GA vs GA table, one block of five statistic rows per function.
inline std::string comparison_markdown(std::span<const ComparisonRow> rows) {
  std::string out = "| ID | Statistic | HCTPS-GA | GA |\n|---|---|---|---|\n";
  for (const auto& row : rows) {
    const std::string id(function_code(row.fid));
    const struct {
      const char* label;
      double RunStats::*field;
    } kColumns[] = {{"Mean", &RunStats::mean},
                    {"Best", &RunStats::best},
                    {"Worst", &RunStats::worst},
                    {"Median", &RunStats::median},
                    {"St. Dev", &RunStats::st_dev}};
    bool first = true;
    for (const auto& col : kColumns) {
      out += "| " + (first ? id : std::string()) + " | " + col.label + " | " + scientific(row.hctps.*col.field) +
             " | " + scientific(row.ga.*col.field) + " |\n";
      first = false;
    }
  }
  return out;
}

}  // namespace hctps
