#include "regen/fixtures.hpp"

namespace regen {

const std::string& example_presentation_text() {
  static const std::string text =
      "# Orbifold knot group with its peripheral pair; b is recovered from a and m.\n"
      "gens: a b m\n"
      "rels: m a m^-1 = a b, m b m^-1 = b a b a b a b a b\n"
      "meridian: m\n"
      "longitude: a b a^-1 b^-1\n"
      "subst: b = a^-1 m a m^-1\n";
  return text;
}

Presentation example_presentation() { return parse_presentation(example_presentation_text()); }

namespace {

// (y-2)^3 + x^2 (64 - 16x^2 + x^4 + (y-2)(32 - 5x^2) + (y-2)^2 c)
MultiPoly curve_with(const MultiPoly& c) {
  const std::vector<std::string> v{"x", "y"};
  const MultiPoly x = MultiPoly::variable(v, 0);
  const MultiPoly Y = MultiPoly::variable(v, 1) - MultiPoly::constant(v, 2);
  auto k = [&](long n) { return MultiPoly::constant(v, n); };
  const MultiPoly x2 = x * x;
  return Y.pow(3) + x2 * (k(64) - k(16) * x2 + x2 * x2 + Y * (k(32) - k(5) * x2) + Y * Y * c);
}

}  // namespace

MultiPoly printed_curve() {
  const std::vector<std::string> v{"x", "y"};
  const MultiPoly y = MultiPoly::variable(v, 1);
  return curve_with(MultiPoly::constant(v, 7) - MultiPoly::constant(v, 5) * y * y);
}

MultiPoly corrected_curve() {
  const std::vector<std::string> v{"x", "y"};
  const MultiPoly x = MultiPoly::variable(v, 0);
  return curve_with(MultiPoly::constant(v, 7) - x * x);
}

}  // namespace regen
