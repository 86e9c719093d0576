#include <doctest.h>

#include <fstream>
#include <sstream>

#include "regen/fixtures.hpp"
#include "regen/presentation.hpp"

using namespace regen;

namespace {
Presentation two_gen() { return parse_presentation("gens: a b m; rels: ; meridian: m; longitude: a"); }
Word w(const std::string& text) { return parse_word(text, two_gen().generators); }
}  // namespace

TEST_CASE("free group parses with no relators") {
  auto p = parse_presentation("gens: a m; rels: ; meridian: m; longitude: a");
  CHECK(p.generator_count() == 2);
  CHECK(p.relators.empty());
  CHECK(exponent_sum_matrix(p).empty());
}

TEST_CASE("bundled example") {
  auto p = example_presentation();
  CHECK(p.generator_count() == 3);
  CHECK(p.relators.size() == 2);
  CHECK(format_word(p.meridian, p.generators) == "m");
  CHECK(p.longitude == parse_word("a b a^-1 b^-1", p.generators));
  REQUIRE(p.substitutions.size() == 1);
  CHECK(p.name(p.substitutions[0].generator) == "b");
}

TEST_CASE("bundled text matches the data file") {
  std::ifstream f(REGEN_DATA_DIR "/orbifold_example.pres");
  REQUIRE(f);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == example_presentation_text());
}

TEST_CASE("undeclared generator is rejected") {
  CHECK_THROWS_AS(parse_presentation("gens: a; rels: b = a"), ParseError);
}

TEST_CASE("inversion") {
  auto p = two_gen();
  CHECK(word_invert(w("a b^-1")) == w("b a^-1"));
  CHECK(word_invert(Word{}) == Word{});
  CHECK(word_invert(w("m a m^-1")) == w("m a^-1 m^-1"));
}

TEST_CASE("free reduction") {
  CHECK(free_reduce(w("a a^-1 b")) == w("b"));
  CHECK(free_reduce(w("a^2 a^-1")) == w("a"));
  auto r = w("a b a^-1 m");
  CHECK(free_reduce(r) == r);
  CHECK(free_reduce(free_reduce(w("a b b^-1 a^-1 m"))) == free_reduce(w("a b b^-1 a^-1 m")));
  CHECK(free_reduce(w("a b b^-1 a^-1 m")) == w("m"));
}

TEST_CASE("exponent sums") {
  auto comm = parse_presentation("gens: a b; rels: a b a^-1 b^-1; meridian: a; longitude: b");
  CHECK(exponent_sum_matrix(comm) == std::vector<std::vector<int>>{{0, 0}});
  auto ex = example_presentation();
  auto rows = exponent_sum_matrix(ex);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<int>{0, -1, 0});
}

TEST_CASE("serialize round trip") {
  for (const auto& text : {example_presentation_text(), std::string("gens: a m; rels: ; meridian: m; longitude: a"),
                           std::string("gens: x y\nrels: x y x = y x y\nmeridian: x\nlongitude: y x^2 y^-3\n")}) {
    auto p = parse_presentation(text);
    CHECK(parse_presentation(serialize_presentation(p)) == p);
  }
}
