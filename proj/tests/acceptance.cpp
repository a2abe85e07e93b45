// Runs every acceptance criterion and prints one line per criterion.
// Exit status is 0 only when all of them pass.

#include <cstdio>
#include <iostream>

#include "switchlab/lab.hpp"

int main() {
  using namespace switchlab::lab;
  const auto results = run_verify({{"acceptance"}, 0.0, 0});
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s %-28s %7.2fs  measured=%s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.seconds, r.measured.dump().c_str());
    if (!r.passed) {
      ++failed;
      std::printf("     expected=%s  %s\n", r.expected.dump().c_str(), r.detail.c_str());
    }
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}
