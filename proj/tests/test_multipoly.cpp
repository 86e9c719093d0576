#include <doctest.h>

#include "regen/multipoly.hpp"

using namespace regen;

namespace {
const std::vector<std::string> kVars{"x", "y", "z"};
const MultiPoly X = MultiPoly::variable(kVars, 0), Y = MultiPoly::variable(kVars, 1), Z = MultiPoly::variable(kVars, 2);
MultiPoly C(const mpq_class& c) { return MultiPoly::constant(kVars, c); }
bool associate(const MultiPoly& a, const MultiPoly& b) {
  auto q = a.divide(b);
  return q && q->is_constant() && !q->is_zero();
}
}  // namespace

TEST_CASE("arithmetic and serialization") {
  auto f = X * X - Y;
  CHECK(MultiPoly::parse(f.serialize(), kVars) == f);
  CHECK(f.to_string() == "x^2 - y");
  CHECK((f * f - (X.pow(4) - C(2) * X * X * Y + Y * Y)).is_zero());
  CHECK(f.degree(0) == 2);
  CHECK(f.total_degree() == 2);
  CHECK(f.derivative(0) == C(2) * X);
  CHECK(f.substitute(0, mpz_class(3)) == C(9) - Y);
  CHECK(f.substitute(1, Z + C(1)) == X * X - Z - C(1));
}

TEST_CASE("resultants") {
  CHECK(resultant(X * X - Y, X - Z, 0) == Z * Z - Y);
  auto r = resultant(X - C(1), X - C(2), 0);
  CHECK(r.is_constant());
  CHECK(abs(r.constant_term()) == 1);
  auto f = X.pow(3) - Y * X + Z;
  CHECK(resultant(f, f, 0).is_zero());
}

TEST_CASE("exact division and gcd") {
  auto a = X - Y, b = X * X + Z;
  auto q = (a * b).divide(a);
  REQUIRE(q);
  CHECK(*q == b);
  CHECK(!b.divide(a));
  CHECK(associate(gcd(a * b, a * (Y + C(1))), a));
}

TEST_CASE("squarefree decomposition") {
  auto a = X - Y, b = X * X + Z;
  auto parts = squarefree_decomposition(a * a * b);
  MultiPoly prod = C(1);
  bool doubled = false;
  for (const auto& [f, k] : parts) {
    prod = prod * f.pow(k);
    if (k == 2) doubled = doubled || associate(f, a);
  }
  CHECK(associate(prod, a * a * b));
  CHECK(doubled);
}

TEST_CASE("content in later variables is split off") {
  // (y - 1) * (x^2 - z): the y factor is the content in x
  auto parts = squarefree_decomposition((Y - C(1)) * (X * X - Z));
  bool content = false, rest = false;
  for (const auto& [f, k] : parts) {
    content = content || associate(f, Y - C(1));
    rest = rest || associate(f, X * X - Z);
  }
  CHECK(content);
  CHECK(rest);
}

TEST_CASE("numerical evaluation") {
  auto f = X * X - C(3) * Y * Z + C(mpq_class(1, 2));
  auto v = f.evaluate({{1, 1}, {2, 0}, {0, 1}});
  CHECK(std::abs(v - std::complex<double>(0.5, 2 - 6)) <= 1e-14);
}
