#include <doctest.h>

#include <random>

#include "regen/liealg.hpp"

using namespace regen;

namespace {
double norm(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("basis") {
  const auto& e = basis_matrices();
  CHECK(std::abs(e[0].trace()) == doctest::Approx(0.0));
  CHECK(norm(e[0] * e[1] - e[1] * e[0] - e[2]) <= 1e-15);
  CHECK(norm(e[1] * e[2] - e[2] * e[1] - e[0]) <= 1e-15);
}

TEST_CASE("exponentials") {
  CHECK(norm(exp_algebra(Mat2::Zero()).matrix() - Mat2::Identity()) <= 1e-15);
  CHECK(std::abs(exp_basis(1, kPi).trace()) <= 1e-15);
  for (double th : {0.2, 1.0, 2.5, 5.0}) {
    auto g = exp_basis(3, th);
    CHECK(std::abs(g(0, 1)) + std::abs(g(1, 0)) <= 1e-15);
    CHECK(std::abs(g.trace() - 2 * std::cos(th / 2)) <= 1e-14);
  }
}

TEST_CASE("algebra coordinates round trip") {
  std::array<cplx, 4> c{cplx(0.3, 0.1), cplx(-1, 2), cplx(0.5, 0), cplx(0, -0.7)};
  auto back = algebra_coordinates(from_algebra_coordinates(c));
  for (int k = 0; k < 4; ++k) CHECK(std::abs(back[k] - c[k]) <= 1e-14);
}

TEST_CASE("adjoint matches conjugation") {
  auto g = exp_basis(1, 0.4) * exp_basis(3, cplx(1.1, 0.2));
  Mat3 ad = adjoint(g);
  const auto& e = basis_matrices();
  for (int j = 0; j < 3; ++j) {
    Mat2 conj = g.matrix() * e[j] * g.inverse().matrix();
    auto c = algebra_coordinates(conj);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(ad(i, j) - c[i + 1]) <= 1e-13);
  }
}

TEST_CASE("word evaluation") {
  Word empty;
  RepresentationPoint rep{{exp_basis(3, 0.3), exp_basis(3, 1.7)}};
  CHECK(norm(evaluate_word(rep, empty).matrix() - Mat2::Identity()) <= 1e-15);
  CHECK(norm(evaluate_word(rep, Word::generator(1)).matrix() - rep.images[1].matrix()) <= 1e-15);
  Word comm{{{0, 1}, {1, 1}, {0, -1}, {1, -1}}};
  CHECK(norm(evaluate_word(rep, comm).matrix() - Mat2::Identity()) <= 1e-14);
}

TEST_CASE("complex lengths") {
  CHECK(std::abs(complex_length(exp_basis(1, kPi), ComplexLength{cplx(0, kPi)}).value - cplx(0, kPi)) <= 1e-12);
  Mat2 d = Mat2::Zero();
  d(0, 0) = std::exp(0.15);
  d(1, 1) = std::exp(-0.15);
  CHECK(std::abs(complex_length(Sl2Element(d), ComplexLength{}).value - 0.3) <= 1e-12);
  CHECK(std::abs(complex_length(exp_basis(3, 0.2), ComplexLength{}).value - cplx(0, 0.2)) <= 1e-12);
  Mat2 parabolic;
  parabolic << 1, 1, 0, 1;
  CHECK_THROWS_AS(complex_length(Sl2Element(parabolic)), ComplexLengthError);
}

TEST_CASE("unimodularity is enforced") {
  Mat2 m = 2 * Mat2::Identity();
  CHECK_THROWS(Sl2Element{m});
}
