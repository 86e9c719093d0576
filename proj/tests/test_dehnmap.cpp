#include <doctest.h>

#include <cmath>

#include "example_fixture.hpp"
#include "regen/dehnmap.hpp"

using namespace regen;
using regen::testing::example_state;

namespace {

constexpr double kA3 = 1.0 / 64;

const GermModel& germ() { return *example_state().curve_germ; }

double limit_closed_form(double a3) {
  const double l0 = std::sqrt(3.0) / (2 * std::cbrt(a3));
  return 4 * std::pow(l0, 1.5) / (9 * std::pow(3.0, 0.25) * kPi);
}

}  // namespace

TEST_CASE("regions") {
  CHECK(DefPoint{0.1, 0.01}.geometry() == Geometry::hyperbolic);
  CHECK(DefPoint{0.1, -0.01}.geometry() == Geometry::spherical);
  CHECK(DefPoint{0.1, 0.0}.geometry() == Geometry::euclidean);
  CHECK(DefPoint{0.1, -0.04}.t() == doctest::Approx(0.2));
  CHECK(to_string(Geometry::spherical) == "spherical");
}

TEST_CASE("holonomy lengths at the orbifold point") {
  auto uv = uv_lengths(germ(), {0, 0});
  CHECK(std::abs(uv.u - cplx(0, kPi)) <= 1e-14);
  CHECK(std::abs(uv.v) <= 1e-14);
  CHECK(std::abs(uv.u_reg - cplx(0, kPi)) <= 1e-12);
  CHECK(std::abs(uv.v_reg - 1.0) <= 1e-14);
  auto pq = dehn_coefficients(germ(), {0, 0});
  CHECK(pq.p == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(pq.q) <= 1e-14);
}

TEST_CASE("holonomy lengths of a cubic germ") {
  SyntheticGerm cube({1.0});
  auto h = uv_lengths(cube, {0, 0.01});
  CHECK(std::abs(h.u_reg - cplx(-0.01, kPi)) <= 1e-14);
  auto e = uv_lengths(cube, {0.1, 0});
  CHECK(std::abs(e.u_reg - cplx(0.03, kPi + 0.001)) <= 1e-14);
  CHECK(std::abs(e.v_reg - cplx(1, 0.1)) <= 1e-14);
}

TEST_CASE("boundary segments map into p = 2") {
  for (double tau : {1e-4, 4e-4, -1e-4}) {
    auto pq = dehn_coefficients(germ(), {0, tau});
    CHECK(std::abs(pq.p - 2) <= 1e-10);
    CHECK(std::abs(pq.q / (2 * kA3 * tau) - 1) <= 2e-2);
  }
  for (double s : {0.01, 0.03, 0.05}) {
    auto pq = dehn_coefficients(germ(), {s, -s * s});
    CHECK(std::abs(pq.p - 2) <= 1e-10);
    CHECK(std::abs(pq.q + germ().F(2 * s).real() / s) <= 1e-10);
  }
}

TEST_CASE("Jacobian sign of a cubic germ") {
  SyntheticGerm cube({1.0});
  int checked = 0;
  for (int i = 1; i <= 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const double s = 0.05 * i / 20, tau = -0.03 + 0.06 * j / 19;
      const double lead = 9 * s * s + tau;
      if (std::abs(lead) < 0.1 * s * s) continue;  // too close to the fold for the leading term
      ++checked;
      CHECK(std::signbit(jacobian(cube, {s, tau})) == std::signbit(lead));
    }
  CHECK(checked >= 380);
  for (double s : {0.01, 0.02, 0.04}) CHECK(std::abs(jacobian(cube, {s, -9 * s * s})) <= 10 * std::pow(s, 3));
}

TEST_CASE("Jacobian on the s = 0 segment") {
  const double j = jacobian(germ(), {0, 0.01});
  CHECK(std::abs(j / (8 * kA3 * kA3 / kPi * 0.01) - 1) <= 0.1);
}

TEST_CASE("fold curve") {
  auto ladder = dyadic_ladder(0.05, 6);
  CHECK(ladder.size() == 6);
  CHECK(ladder.back() == doctest::Approx(0.05 / 32));
  auto fold = fold_curve(germ(), ladder);
  REQUIRE(fold.size() == ladder.size());
  std::vector<double> s, tau, q, p;
  for (const auto& f : fold) {
    s.push_back(f.s);
    tau.push_back(f.tau / (f.s * f.s));
    q.push_back(f.q / (f.s * f.s));
    p.push_back((f.p - 2) / std::pow(f.s, 3));
  }
  CHECK(std::abs(fit_line(s, tau).c0 + 9) <= 0.3);
  CHECK(std::abs(fit_line(s, q).c0 / (-24 * kA3) - 1) <= 2e-2);
  CHECK(std::abs(fit_line(s, p).c0 / (-32 * kA3 / kPi) - 1) <= 2e-2);
}

TEST_CASE("Euclidean curve") {
  auto ladder = dyadic_ladder(0.05, 6);
  auto g = g_curve(germ(), ladder);
  std::vector<double> s, q, p;
  for (const auto& c : g) {
    s.push_back(c.s);
    q.push_back(c.q / (c.s * c.s));
    p.push_back((c.p - 2) / std::pow(c.s, 3));
  }
  CHECK(std::abs(fit_line(s, q).c0 / (-6 * kA3) - 1) <= 2e-2);
  CHECK(std::abs(fit_line(s, p).c0 / (4 * kA3 / kPi) - 1) <= 2e-2);
  std::vector<double> zero{0.0};
  auto at0 = g_curve(germ(), zero);
  CHECK(at0[0].p == doctest::Approx(2.0));
  CHECK(std::abs(at0[0].q) <= 1e-14);
}

TEST_CASE("inversion on p = 2") {
  const double q0 = -2e-5;
  auto seeds = seed_grid(0.05, 2e-3, 12);
  CHECK(seeds.size() == 144);
  auto pre = invert_dehn(germ(), {2, q0}, seeds);
  REQUIRE(pre.size() == 2);
  std::sort(pre.begin(), pre.end(), [](auto a, auto b) { return a.s < b.s; });
  CHECK(std::abs(pre[0].s) <= 1e-8);
  CHECK(std::abs(pre[0].tau / (q0 / (2 * kA3)) - 1) <= 2e-2);
  const double s = std::sqrt(-q0 / (8 * kA3));
  CHECK(std::abs(pre[1].s / s - 1) <= 2e-2);
  CHECK(std::abs(pre[1].tau + pre[1].s * pre[1].s) <= 1e-8);

  // The fold passes through the orbifold point, so the root is degenerate and
  // a 1e-13 residual only pins it to roughly its cube root.
  auto base = invert_dehn(germ(), {2, 0}, seeds);
  REQUIRE(base.size() == 1);
  CHECK(std::hypot(base[0].s, base[0].tau) <= 1e-4);
}

TEST_CASE("two spherical preimages between the fold and p = 2") {
  const double s_f = 0.03;
  auto fold = fold_curve(germ(), std::vector<double>{s_f});
  REQUIRE(fold.size() == 1);
  DehnCoefficients target{fold[0].p + 0.5 * (2 - fold[0].p), fold[0].q};
  auto pre = invert_dehn(germ(), target, seed_grid(2 * std::sqrt(3.0) * s_f, 14 * s_f * s_f, 12));
  CHECK(pre.size() == 2);
  for (const auto& x : pre) CHECK(x.tau < 0);
}

TEST_CASE("boundary limits") {
  const double expected = 8 * std::sqrt(2.0) / (3 * std::sqrt(3.0) * kPi);
  CHECK(limit_closed_form(kA3) == doctest::Approx(expected).epsilon(1e-12));
  auto lim = asymptotic_limits(germ());
  CHECK(std::abs(lim.lim_f / expected - 1) <= 2e-2);
  CHECK(std::abs(lim.lim_g / expected - 1) <= 2e-2);
  CHECK(std::abs(lim.lim_f / lim.lim_g - 1) <= 1e-2);
  CHECK(lim.l0 == doctest::Approx(2 * std::sqrt(3.0)).epsilon(1e-3));

  SyntheticGerm cube({1.0});
  auto c = asymptotic_limits(cube);
  CHECK(c.l0 == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
  CHECK(c.closed_form == doctest::Approx(limit_closed_form(1.0)).epsilon(1e-12));
  CHECK(std::abs(c.lim_f / c.closed_form - 1) <= 2e-2);
  CHECK(std::abs(c.lim_g / c.closed_form - 1) <= 2e-2);
}

TEST_CASE("negative cubic coefficient is rejected") {
  SyntheticGerm neg({-1.0});
  CHECK_THROWS_AS(asymptotic_limits(neg), DehnError);
}

TEST_CASE("csv output") {
  SyntheticGerm cube({1.0});
  std::vector<double> s{0.0, 0.01}, tau{-1e-4, 0.0, 1e-4};
  auto grid = grid_csv(cube, s, tau);
  CHECK(grid.rfind("s,tau,p,q,J,region\n", 0) == 0);
  CHECK(std::count(grid.begin(), grid.end(), '\n') == 7);
  std::vector<CurveSample> pts{{0.01, 0.0, 2.0, 0.0}};
  CHECK(curve_csv("g", pts, true).rfind("curve,s,tau,p,q\ng,", 0) == 0);
  CHECK(curve_csv("g", pts, false).rfind("g,", 0) == 0);
}
