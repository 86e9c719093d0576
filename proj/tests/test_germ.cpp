#include <doctest.h>

#include "example_fixture.hpp"
#include "regen/dehnmap.hpp"

using namespace regen;
using regen::testing::example_state;

namespace {
const std::vector<std::string> kXY{"x", "y"};
const MultiPoly X = MultiPoly::variable(kXY, 0), Y = MultiPoly::variable(kXY, 1);
MultiPoly C(int c) { return MultiPoly::constant(kXY, c); }
}  // namespace

TEST_CASE("synthetic germ") {
  SyntheticGerm g({1.0, 0.5});
  CHECK(std::abs(g.F(0.0)) == 0.0);
  CHECK(std::abs(g.F(cplx(0.1, 0.2)) - (std::pow(cplx(0.1, 0.2), 3) + 0.5 * std::pow(cplx(0.1, 0.2), 5))) <= 1e-16);
  CHECK(std::abs(g.dF(0.2) - (3 * 0.04 + 2.5 * 0.0016)) <= 1e-15);
}

TEST_CASE("trust radius is enforced") {
  SyntheticGerm g({1.0}, 0.3);
  CHECK_NOTHROW(g.F(0.3));
  CHECK_THROWS_AS(g.F(0.31), TrustRadiusError);
  CHECK_THROWS_AS(g.dF(cplx(0, 0.4)), TrustRadiusError);
  CHECK_THROWS_AS(example_state().curve_germ->F(0.5), TrustRadiusError);
}

TEST_CASE("curve germ requires a double point") {
  CHECK_THROWS_AS(CurveGerm(X - Y + C(2)), std::invalid_argument);
  CHECK_THROWS_AS(CurveGerm(X * X + Y), std::invalid_argument);
}

TEST_CASE("colliding branches are reported") {
  // (x + y - 2)^2 has a doubled branch through the double point
  CurveGerm g((X + Y - C(2)).pow(2));
  CHECK_THROWS_AS(g.F(-0.1), BranchCollisionError);
}

TEST_CASE("curve germ of the example") {
  const auto& st = example_state();
  CHECK(std::abs(st.curve_germ->F(0.0)) == 0.0);
  CHECK(std::abs(st.curve_germ->F(0.2) - st.continuation_germ->F(0.2)) <= 1e-6);
  for (cplx w : {cplx(0.25, 0), cplx(0, 0.2), std::polar(0.3, 0.7), std::polar(0.15, 2.0)})
    CHECK(std::abs(st.curve_germ->F(w) - st.continuation_germ->F(w)) <= 1e-6);
  auto s = germ_series(*st.curve_germ);
  CHECK(std::abs(s.a3 - 1.0 / 64) <= 1e-4);
  CHECK(std::abs(F_from_plane_curve(st.curve, 0.2) - st.curve_germ->F(0.2)) <= 1e-14);
}

TEST_CASE("germ derivative matches differences") {
  const auto& g = *example_state().curve_germ;
  for (cplx w : {cplx(0.1, 0), cplx(0.05, 0.1)}) {
    const double h = 1e-5;
    cplx fd = (g.F(w + h) - g.F(w - h)) / (2 * h);
    CHECK(std::abs(g.dF(w) - fd) <= 1e-8);
  }
}

TEST_CASE("germs are odd") {
  const auto& st = example_state();
  for (const GermModel* g : {st.curve_germ.get(), st.continuation_germ.get()})
    for (cplx w : {cplx(0.1, 0), cplx(0.2, 0.1), cplx(0, 0.25)}) CHECK(std::abs(g->F(-w) + g->F(w)) <= 1e-8);
}
