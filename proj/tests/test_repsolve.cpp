#include <doctest.h>

#include <cmath>

#include "example_fixture.hpp"
#include "regen/cohom.hpp"

using namespace regen;
using regen::testing::example_state;

namespace {
double dist(const Sl2Element& a, const Sl2Element& b) { return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("dihedral base candidate") {
  auto cands = dihedral_candidates(example_presentation());
  REQUIRE(cands.size() >= 2);
  const auto& c = cands[1];
  CHECK(c.admissible);
  CHECK(c.angles[0] == doctest::Approx(kPi / 2).epsilon(1e-14));
  CHECK(c.angles[1] == doctest::Approx(3 * kPi).epsilon(1e-14));
  CHECK(c.angles[2] == doctest::Approx(0.0));
  CHECK(dist(c.rep.images[0], exp_basis(3, kPi / 2)) <= 1e-12);
  // 3 pi and -pi give the same element of SU(2)
  CHECK(dist(c.rep.images[1], exp_basis(3, -kPi)) <= 1e-12);
  CHECK(dist(c.rep.images[2], exp_basis(1, kPi)) <= 1e-12);
  CHECK(relator_residual(c.rep, example_presentation()) <= 1e-12);
  CHECK(std::abs(c.meridian_trace) <= 1e-12);
  CHECK(std::abs(c.longitude_trace - 2.0) <= 1e-12);
}

TEST_CASE("no grading for abelian input with even meridian") {
  auto p = parse_presentation("gens: a m; rels: a m a^-1 m^-1; meridian: m^2; longitude: a");
  CHECK_THROWS_AS(dihedral_candidates(p), NoGradingError);
}

TEST_CASE("base point is fixed") {
  const auto& s = example_state().selection.slice;
  auto b = base_point(s);
  CHECK(std::abs(b.F) <= 1e-14);
  auto again = solve_slice(s, 0.0, b);
  CHECK(std::abs(again.F) <= 1e-14);
  CHECK(std::abs(local_parameter(s, {b.rep.images[0].matrix(), b.rep.images[1].matrix(), b.rep.images[2].matrix()})) <=
        1e-12);
  std::vector<cplx> zero{0.0};
  auto path = continue_path(s, zero);
  REQUIRE(path.size() == 1);
  CHECK(std::abs(path[0].w) == 0.0);
}

TEST_CASE("real parameter stays in SU(2)") {
  const auto& s = example_state().selection.slice;
  auto pt = point_at(s, 0.1);
  CHECK(unitarity_defect(pt.rep) <= 1e-8);
  CHECK(std::abs(pt.F.imag()) <= 1e-12);
  CHECK(meridian_off_axis(s, pt) <= 1e-10);

  std::vector<cplx> ws;
  for (int k = 0; k <= 8; ++k) ws.push_back(0.05 * k);
  for (const auto& q : continue_path(s, ws)) {
    CHECK(unitarity_defect(q.rep) <= 1e-8);
    CHECK(std::abs(q.F.imag()) <= 1e-12);
    if (q.w.real() > 0) CHECK(q.F.real() > 0);
  }
}

TEST_CASE("imaginary parameter gives imaginary F") {
  const auto& s = example_state().selection.slice;
  CHECK(std::abs(point_at(s, cplx(0, 0.1)).F.real()) <= 1e-8);
  std::vector<cplx> ws;
  for (int k = 0; k <= 8; ++k) ws.push_back(cplx(0, 0.05 * k));
  for (const auto& q : continue_path(s, ws)) CHECK(std::abs(q.F.real()) <= 1e-8);
}

TEST_CASE("cubic coefficient from continuation") {
  const auto& sel = example_state().selection;
  CHECK(sel.series.stable);
  CHECK(std::abs(sel.series.a3 - 1.0 / 64) <= 1e-4);
  auto F = point_at(sel.slice, 0.2).F.real();
  CHECK(std::abs(F / (0.008 / 64) - 1) <= 5e-2);
}

TEST_CASE("odd series fit") {
  std::vector<std::pair<double, double>> cubic, sine;
  for (double w : symmetric_grid(0.3, 12)) {
    cubic.push_back({w, w * w * w / 64});
    sine.push_back({w, std::sin(w) - w});
  }
  auto c = fit_odd_series(cubic);
  CHECK(std::abs(c.a3 - 1.0 / 64) <= 1e-15);
  CHECK(c.residual <= 1e-16);
  CHECK(std::abs(fit_odd_series(sine).a3 + 1.0 / 6) <= 1e-6);
  std::vector<std::pair<double, double>> few(cubic.begin(), cubic.begin() + 4);
  CHECK_THROWS_AS(fit_odd_series(few), FitError);
}

TEST_CASE("adjoint cohomology at the base") {
  const auto& c = example_state().selection.candidates[example_state().selection.chosen];
  CHECK(c.adjoint == CohomologyDims{0, 1});
  CHECK(dihedral_base_rep(example_presentation()).images.size() == 3);
}
