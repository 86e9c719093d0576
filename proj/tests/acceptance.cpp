// One PASS/FAIL line per acceptance item; details of failing checks follow.
#include <cstdio>
#include <map>

#include "regen/fixtures.hpp"
#include "regen/verify.hpp"

int main() {
  using namespace regen;
  VerifyOptions options;
  auto results = run_verification(example_presentation(), options);

  std::map<int, std::vector<const CheckResult*>> by_item;
  for (const auto& r : results) by_item[r.item].push_back(&r);

  static const char* titles[] = {"",
                                 "trace curve on continued characters",
                                 "cubic coefficient of the germ",
                                 "singular length constant",
                                 "volume ratio and quartic volume coefficient",
                                 "fold and Euclidean boundary limits",
                                 "fold curve and fold image coefficients",
                                 "segments mapped into p = 2",
                                 "two spherical preimages near the fold",
                                 "twisted cohomology dimensions",
                                 "property suites"};
  int failed = 0;
  for (int item = 1; item <= 10; ++item) {
    const auto& checks = by_item[item];
    bool pass = !checks.empty();
    for (const auto* c : checks) pass = pass && c->pass;
    std::printf("%s item %2d  %-45s (%zu checks)\n", pass ? "PASS" : "FAIL", item, titles[item], checks.size());
    if (!pass) {
      ++failed;
      for (const auto* c : checks)
        if (!c->pass) std::printf("     %s\n", to_json(*c).dump().c_str());
    }
  }
  std::printf("%d of 10 items passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
