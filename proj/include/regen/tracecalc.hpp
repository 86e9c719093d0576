// Trace polynomials, two-generator reduction and elimination to the
// (meridian, longitude) trace curve.
#pragma once

#include <complex>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "regen/multipoly.hpp"
#include "regen/presentation.hpp"

namespace regen {

/// Variable names of trace coordinates: traces of A, B and AB.
const std::vector<std::string>& trace_vars();

/// Fricke/Cayley-Hamilton trace polynomials for words in two generators.
/// Results are memoised per instance.
class TraceEngine {
 public:
  /// `first` and `second` are the generator indices playing A and B.
  TraceEngine(int first = 0, int second = 1) : first_(first), second_(second) {}

  /// Polynomial in (x1, x2, x3) equal to tr w(A,B) for every SL(2,C) pair.
  MultiPoly trace(const Word& w);

 private:
  MultiPoly trace_letters(std::vector<int> w);

  int first_;
  int second_;
  std::map<std::vector<int>, MultiPoly> memo_;
};

MultiPoly trace_polynomial(const Word& w, int first = 0, int second = 1);

class ReductionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TwoGeneratorReduction {
  Presentation reduced;
  /// Image of each original generator as a word in the reduced generators.
  std::vector<Word> images;
  /// Original indices of the two surviving generators.
  std::vector<int> kept;
};

/// Applies the presentation's substitutions so that only two generators
/// remain. Relators that become trivial are dropped.
TwoGeneratorReduction two_generator_reduction(const Presentation& p);

Word rewrite_word(const Word& w, const std::vector<Word>& images);

/// tr(r) - 2, tr(rA) - x1, tr(rB) - x2 for every relator r; zero entries and
/// duplicates are dropped.
std::vector<MultiPoly> character_ideal(const Presentation& two_generator);

/// A numerically computed character: traces of A, B, AB and the peripheral
/// traces x = tr(meridian), y = tr(longitude).
struct CharacterSample {
  std::complex<double> x1, x2, x3, x, y;
};

struct EliminationOptions {
  /// Trace variables eliminated in this order; unlisted ones follow.
  std::vector<std::string> order{"x3", "x1"};
  /// A factor survives if |f| <= tolerance * (sum of |terms|) at every sample.
  double vanish_tolerance = 1e-8;
};

class EliminationError : public std::runtime_error {
 public:
  EliminationError(const std::string& stage, const std::string& what)
      : std::runtime_error(what + " (stage: " + stage + ")"), stage_(stage) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct PlaneCurveResult {
  /// Squarefree, primitive polynomial in (x, y).
  MultiPoly curve;
  /// One line per elimination stage.
  std::vector<std::string> log;
};

/// Eliminates the trace coordinates from the character ideal together with
/// x - tr(meridian) and y - tr(longitude). Factors that do not vanish at the
/// samples are discarded at every stage.
PlaneCurveResult plane_curve(const Presentation& p, std::span<const CharacterSample> samples,
                             const EliminationOptions& options = {});

/// Worst value of |P(x,y)| / (sum of |terms|) over the samples.
double curve_residual(const MultiPoly& curve, std::span<const CharacterSample> samples);

}  // namespace regen
