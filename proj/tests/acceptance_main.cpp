// Acceptance suite: runs every criterion end to end and prints one pass/fail
// line per criterion.  Individual criteria can be selected by name on the
// command line.

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "chj/chj.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> only(argv + 1, argv + argc);
  uint64_t seed = 12345;

  std::vector<chj::CriterionReport> reports;
  if (only.empty()) {
    reports = chj::verify_all(seed);
  } else {
    for (const auto& [name, fn] : chj::criterion_registry()) {
      for (const auto& want : only)
        if (want == name) reports.push_back(fn(seed));
    }
    if (reports.empty()) {
      std::fprintf(stderr, "no matching criterion; known names:\n");
      for (const auto& [name, fn] : chj::criterion_registry())
        std::fprintf(stderr, "  %s\n", name.c_str());
      return 2;
    }
  }

  int failed = 0;
  int index = 1;
  for (const auto& r : reports) {
    std::printf("[%s] criterion %2d %-22s %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", index++,
                r.name.c_str(), r.title.c_str(), r.seconds);
    for (const auto& c : r.checks) {
      if (!r.pass || !c.pass)
        std::printf("    %-44s measured=%-12.6g bound=%-12.6g %s%s%s\n", c.id.c_str(), c.measured,
                    c.bound, c.pass ? "ok" : "VIOLATED", c.note.empty() ? "" : "  # ",
                    c.note.c_str());
    }
    if (!r.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", (int)reports.size() - failed, reports.size());
  return failed == 0 ? 0 : 1;
}
