// Acceptance suite runner: one line per criterion, nonzero exit on failure.
//
// Usage: acceptance [--seed S] [--threads T] [--criterion N ...]

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "lgpoly/acceptance.hpp"

int main(int argc, char** argv) {
  lgpoly::acceptance::Config cfg;
  std::vector<int> ids;
  if (const char* env = std::getenv("LGPOLY_SEED")) cfg.master_seed = std::strtoull(env, nullptr, 10);
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
      cfg.master_seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) {
      cfg.threads = std::atoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      ids.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: acceptance [--seed S] [--threads T] [--criterion N ...]\n");
      return 2;
    }
  }

  std::printf("acceptance suite  (seed %llu, %d thread%s)\n",
              static_cast<unsigned long long>(cfg.master_seed), cfg.threads,
              cfg.threads == 1 ? "" : "s");
  int failures = 0;
  const auto results = lgpoly::acceptance::run(cfg, ids);
  for (const auto& r : results) {
    std::printf("[%2d] %-52s %s  %s\n", r.id, r.name.c_str(), r.pass ? "PASS" : "FAIL",
                r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failures;
  }
  std::printf("%zu/%zu criteria passed\n", results.size() - failures, results.size());
  return failures == 0 ? 0 : 1;
}
