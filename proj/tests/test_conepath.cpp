#include <doctest.h>

#include <cmath>

#include "example_fixture.hpp"
#include "regen/conepath.hpp"
#include "regen/dehnmap.hpp"

using namespace regen;
using regen::testing::example_state;

namespace {
constexpr double kA3 = 1.0 / 64;
const double kTop = 0.05;

const std::vector<ConePathSample>& example_path() {
  static const auto path = schlafli_volume(cone_path(*example_state().curve_germ, cone_samples(kTop)));
  return path;
}
}  // namespace

TEST_CASE("sample layout") {
  auto s = cone_samples(1.0, 4, 3);
  REQUIRE(s.size() == 14);
  CHECK(s.front() == 0.0);
  CHECK(s[1] == doctest::Approx(0.125));
  CHECK(s.back() == 1.0);
  CHECK(std::is_sorted(s.begin(), s.end()));
}

TEST_CASE("orbifold point") {
  SyntheticGerm cube({1.0});
  std::vector<double> zero{0.0};
  auto p = cone_path(cube, zero);
  REQUIRE(p.size() == 1);
  CHECK(p[0].alpha == doctest::Approx(kPi));
  CHECK(p[0].length == 0.0);
}

TEST_CASE("zero length gives zero volume") {
  std::vector<ConePathSample> path;
  for (int k = 0; k < 5; ++k) path.push_back({0.01 * k, 0, kPi - 0.1 * k, 0, 0, 0});
  for (const auto& p : schlafli_volume(path)) CHECK(p.vol == 0.0);
}

TEST_CASE("non-monotone angle is an error") {
  std::vector<ConePathSample> path{{0, 0, kPi, 0, 0, 0}, {0.1, 0.03, kPi + 0.1, 0.17, 0, 0}};
  CHECK_THROWS_AS(schlafli_volume(path), ConePathError);
}

TEST_CASE("example path expansions") {
  const auto& path = example_path();
  std::vector<double> s, tau, alpha;
  for (double x : dyadic_ladder(kTop, 6)) {
    auto it = std::find_if(path.begin(), path.end(), [&](const auto& p) { return p.s == x; });
    REQUIRE(it != path.end());
    CHECK(std::abs(it->q_residual) <= 1e-10);
    s.push_back(x);
    tau.push_back(it->tau / (x * x));
    alpha.push_back((kPi - it->alpha) / std::pow(x, 3));
  }
  CHECK(std::abs(fit_line(s, tau).c0 - 3) <= 0.1);
  CHECK(std::abs(fit_line(s, alpha).c0 / (8 * kA3) - 1) <= 2e-2);
}

TEST_CASE("example volume limits") {
  const auto& path = example_path();
  auto lim = path_limits(path, kTop);
  CHECK(std::abs(lim.ratio_vol / 0.375 - 1) <= 1e-2);
  CHECK(std::abs(lim.vol_s4 / (3 * std::sqrt(3.0) * kA3) - 1) <= 3e-2);
  CHECK(std::abs(lim.l0_est / (2 * std::sqrt(3.0)) - 1) <= 1e-2);
  CHECK(volume_refinement_change(path) <= 1e-2);
  CHECK(cone_path_csv(path).rfind("s,tau,alpha,length,vol,vol_ratio,l0_running\n", 0) == 0);
}

TEST_CASE("cubic germ limits") {
  SyntheticGerm cube({1.0});
  const double top = 0.02;
  auto path = schlafli_volume(cone_path(cube, cone_samples(top)));
  auto lim = path_limits(path, top);
  CHECK(std::abs(lim.vol_s4 / (3 * std::sqrt(3.0)) - 1) <= 3e-2);
  CHECK(std::abs(lim.l0_est / (std::sqrt(3.0) / 2) - 1) <= 1e-2);
  CHECK(std::abs(lim.ratio_vol / 0.375 - 1) <= 1e-2);
}

TEST_CASE("missing ladder sample is an error") {
  SyntheticGerm cube({1.0});
  std::vector<double> s{0.0, 0.01, 0.02};
  auto path = schlafli_volume(cone_path(cube, s));
  CHECK_THROWS_AS(path_limits(path, 0.02, 6), ConePathError);
}
