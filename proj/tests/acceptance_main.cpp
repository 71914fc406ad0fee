// One line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>

#include "dunkl_tools/acceptance.hpp"

int main(int argc, char** argv) {
  dunkl::acceptance::Options opt;
  if (argc > 1) opt.filter = argv[1];
  bool ok = true;
  const auto results = dunkl::acceptance::run(opt, [&](const dunkl::acceptance::CheckResult& r) {
    std::printf("criterion %d %s: %s  %s\n", r.id, r.name.c_str(), r.pass ? "PASS" : "FAIL", r.detail.c_str());
    std::fflush(stdout);
    ok = ok && r.pass;
  });
  if (results.empty()) {
    std::fprintf(stderr, "no criteria matched\n");
    return 1;
  }
  return ok ? 0 : 1;
}
