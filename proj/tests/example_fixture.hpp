// Shared solved state for the bundled example; built once per test binary.
#pragma once

#include "regen/fixtures.hpp"
#include "regen/repsolve.hpp"
#include "regen/tracecalc.hpp"

namespace regen::testing {

struct ExampleState {
  BaseSelection selection;
  MultiPoly curve;
  GermPtr curve_germ;
  GermPtr continuation_germ;
};

inline const ExampleState& example_state() {
  static const ExampleState state = [] {
    ExampleState s;
    s.selection = select_base(example_presentation());
    std::vector<cplx> ws;
    for (int k = 0; k <= 6; ++k) ws.push_back(0.05 * k);
    auto steer = continue_path(s.selection.slice, ws);
    s.curve = plane_curve(s.selection.slice.presentation, character_samples(s.selection.slice, steer)).curve;
    s.curve_germ = std::make_shared<CurveGerm>(s.curve, 0.3);
    s.continuation_germ = std::make_shared<ContinuationGerm>(s.selection.slice, 0.3);
    return s;
  }();
  return state;
}

}  // namespace regen::testing
