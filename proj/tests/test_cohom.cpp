#include <doctest.h>

#include <Eigen/Dense>

#include "regen/cohom.hpp"
#include "regen/fixtures.hpp"
#include "regen/repsolve.hpp"

using namespace regen;

namespace {

int rank_of(const std::vector<std::vector<int>>& rows, int cols) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return rows.empty() ? 0 : numerical_rank(m);
}

TwistedModule rotations(double a, double b) {
  auto rot = [](double t) {
    Eigen::MatrixXd r(2, 2);
    r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    return r;
  };
  return {2, {rot(a), rot(b)}};
}

}  // namespace

TEST_CASE("example modules") {
  auto p = example_presentation();
  auto base = dihedral_base_rep(p);
  CHECK(twisted_h01(p, plane_module(base)) == CohomologyDims{0, 1});
  CHECK(twisted_h01(p, axis_module(base)) == CohomologyDims{0, 0});
  CHECK(twisted_h01(p, adjoint_module(base)).h1 == 1);
}

TEST_CASE("trivial coefficients follow the exponent sums") {
  for (const char* text : {"gens: a m; rels: ; meridian: m; longitude: a",
                           "gens: a b; rels: a b a^-1 b^-1; meridian: a; longitude: b",
                           "gens: x y; rels: x y x = y x y; meridian: x; longitude: y",
                           "gens: a b m\nrels: m a m^-1 = a b, m b m^-1 = b a b a b a b a b\nmeridian: m\nlongitude: a"}) {
    auto p = parse_presentation(text);
    auto d = twisted_h01(p, trivial_module(p));
    CHECK(d.h0 == 1);
    CHECK(d.h1 == p.generator_count() - rank_of(exponent_sum_matrix(p), p.generator_count()));
  }
}

TEST_CASE("Fox derivatives obey the product rule") {
  auto m = rotations(0.7, -1.3);
  auto gens = std::vector<Generator>{{"a"}, {"b"}};
  auto u = parse_word("a b^2 a^-1", gens), v = parse_word("b^-1 a^3 b", gens);
  auto du = fox_jacobian(m, u), dv = fox_jacobian(m, v), duv = fox_jacobian(m, u * v);
  Eigen::MatrixXd au = act(m, u);
  for (int j = 0; j < 2; ++j) CHECK((duv[j] - (du[j] + au * dv[j])).cwiseAbs().maxCoeff() <= 1e-13);
  auto di = fox_jacobian(m, Word::generator(0, -1));
  CHECK((di[0] + act(m, Word::generator(0, -1))).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(di[1].cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("numerical rank") {
  Eigen::MatrixXd a(2, 2);
  a << 1, 2, 2, 4 + 1e-12;
  CHECK(numerical_rank(a) == 1);
  a(1, 1) = 5;
  CHECK(numerical_rank(a) == 2);
}
