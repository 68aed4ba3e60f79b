// One line per acceptance criterion (or just the one named in argv[1]);
// exit status is non-zero if any fails.

#include <cstdio>
#include <filesystem>

#include "hctps/acceptance.hpp"

int main(int argc, char** argv) {
  hctps::acceptance::Options opt;
  opt.data_dir = HCTPS_DATA_DIR;
  if (argc > 1) opt.only = argv[1];
  opt.scratch_dir = std::filesystem::temp_directory_path() / ("hctps-acceptance-" + (opt.only.empty() ? "all" : opt.only));
  int failed = 0;
  hctps::acceptance::run_all(opt, [&](const hctps::acceptance::CriterionResult& r) {
    failed += r.passed ? 0 : 1;
    std::printf("[%s] %-32s %7.1fs  %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds, r.detail.c_str());
    std::fflush(stdout);
  });
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
