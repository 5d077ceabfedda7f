// One line per acceptance criterion; exits nonzero if any fails.

#include <cstdio>
#include <cstring>

#include "mgflab/acceptance.hpp"

int main(int argc, char** argv) {
  bool verbose = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "-v") == 0 || std::strcmp(argv[i], "--verbose") == 0) verbose = true;

  const mgflab::GoldenStore goldens = mgflab::GoldenStore::load(mgflab::GoldenStore::default_path());
  const auto results = mgflab::run_acceptance(goldens);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("criterion %2d %s  %s (%.2fs)\n", r.id, r.passed() ? "PASS" : "FAIL", r.title.c_str(), r.seconds);
    for (const auto& c : r.checks)
      if (verbose || !c.ok || c.informational)
        std::printf("      %s %s%s%s\n", c.informational ? "info" : c.ok ? "ok  " : "FAIL", c.what.c_str(),
                    c.detail.empty() ? "" : ": ", c.detail.c_str());
    if (!r.error.empty()) std::printf("      error: %s\n", r.error.c_str());
    if (!r.passed()) ++failed;
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}
