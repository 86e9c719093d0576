#include <doctest.h>

#include <random>

#include "regen/fixtures.hpp"
#include "regen/repsolve.hpp"
#include "regen/tracecalc.hpp"

using namespace regen;

namespace {

Mat2 random_sl2(std::mt19937& rng) {
  std::normal_distribution<double> n;
  Mat2 m;
  m << cplx(n(rng), n(rng)), cplx(n(rng), n(rng)), cplx(n(rng), n(rng)), cplx(n(rng), n(rng));
  return m / std::sqrt(m.determinant());
}

double max_relative_error(const Word& w, int pairs) {
  std::mt19937 rng(7);
  auto poly = trace_polynomial(w);
  double worst = 0;
  for (int k = 0; k < pairs; ++k) {
    std::vector<Mat2> ab{random_sl2(rng), random_sl2(rng)};
    cplx direct = evaluate_word(ab, w).trace();
    cplx viapoly = poly.evaluate({ab[0].trace(), ab[1].trace(), (ab[0] * ab[1]).trace()});
    worst = std::max(worst, std::abs(direct - viapoly) / std::max(1.0, std::abs(direct)));
  }
  return worst;
}

Word word(const std::string& text) {
  return parse_word(text, {{"a"}, {"b"}});
}

}  // namespace

TEST_CASE("trace polynomials") {
  const auto& v = trace_vars();
  const auto x1 = MultiPoly::variable(v, 0), x2 = MultiPoly::variable(v, 1), x3 = MultiPoly::variable(v, 2);
  const auto two = MultiPoly::constant(v, 2);
  CHECK(trace_polynomial(word("a")) == x1);
  CHECK(trace_polynomial(word("a^2")) == x1 * x1 - two);
  CHECK(trace_polynomial(word("a b a^-1 b^-1")) == x1 * x1 + x2 * x2 + x3 * x3 - x1 * x2 * x3 - two);
}

TEST_CASE("trace polynomials agree with matrices") {
  for (const char* w : {"a b a^-1 b^-1", "a^3 b^-2 a b", "b a b a b a b a b a^-1", "a^-1 b a b^-1 a^-5 b^-1 a"})
    CHECK(max_relative_error(word(w), 100) <= 1e-9);
}

TEST_CASE("two-generator reduction") {
  auto ex = example_presentation();
  auto red = two_generator_reduction(ex);
  CHECK(red.reduced.generator_count() == 2);
  CHECK(red.reduced.relators.size() == 1);
  CHECK(red.kept == std::vector<int>{0, 2});

  auto two = parse_presentation("gens: a m; rels: m a m^-1 a^-1; meridian: m; longitude: a");
  auto same = two_generator_reduction(two);
  CHECK(same.reduced == two);

  auto missing = parse_presentation("gens: a b m; rels: m a m^-1 = a b; meridian: m; longitude: a");
  CHECK_THROWS_AS(two_generator_reduction(missing), ReductionError);
}

TEST_CASE("character ideal") {
  auto free = parse_presentation("gens: a m; rels: ; meridian: m; longitude: a");
  CHECK(character_ideal(free).empty());
  auto killer = parse_presentation("gens: a m; rels: a; meridian: m; longitude: a");
  auto ideal = character_ideal(killer);
  const auto target = MultiPoly::variable(trace_vars(), 0) - MultiPoly::constant(trace_vars(), 2);
  bool found = false;
  for (const auto& f : ideal) found = found || f == target || f == -target;
  CHECK(found);
  CHECK(character_ideal(two_generator_reduction(example_presentation()).reduced).size() == 3);
}

TEST_CASE("plane curve of the example") {
  auto sel = select_base(example_presentation());
  std::vector<cplx> ws;
  for (int k = 0; k <= 6; ++k) ws.push_back(0.05 * k);
  auto chars = character_samples(sel.slice, continue_path(sel.slice, ws));
  auto result = plane_curve(sel.slice.presentation, chars);
  const auto& c = result.curve;
  auto expected = corrected_curve().with_vars(c.vars());
  CHECK((c == expected || c == -expected));

  std::vector<cplx> more;
  for (int k = 0; k <= 50; ++k) more.push_back(std::polar(0.006 * k, 0.7));
  auto check = character_samples(sel.slice, continue_path(sel.slice, more));
  CHECK(curve_residual(c, check) <= 1e-6);
  for (const auto& f : character_ideal(two_generator_reduction(example_presentation()).reduced))
    for (const auto& s : check) CHECK(std::abs(f.evaluate({s.x1, s.x2, s.x3})) <= 1e-8);
}

TEST_CASE("free group has no curve") {
  auto free = parse_presentation("gens: a m; rels: ; meridian: m; longitude: a");
  CHECK_THROWS_AS(plane_curve(free, {}), EliminationError);
}
