// Reproduction checks for the bundled example, grouped into ten items.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "regen/germ.hpp"
#include "regen/multipoly.hpp"
#include "regen/presentation.hpp"
#include "regen/repsolve.hpp"

namespace regen {

struct CheckResult {
  int item = 0;
  std::string id;
  nlohmann::json expected;
  nlohmann::json got;
  double tolerance = 0;
  bool relative = false;
  bool pass = false;
  std::string note;
};

nlohmann::json to_json(const CheckResult& r);

struct VerifyOptions {
  /// Multiplies every tolerance; 0 demands exact agreement.
  double tolerance_scale = 1.0;
  /// Group names ("a3", "curve", ...) or item numbers; empty runs all.
  std::vector<std::string> only;
  unsigned seed = 20240611;
  double radius = 0.3;
  int samples_per_side = 12;
  /// Germ driving items 3-8: "curve", "continuation" or "synthetic:<a3>".
  std::string germ = "curve";
  std::function<void(const CheckResult&)> on_result;
};

/// Group name of an item number, e.g. 2 -> "a3".
const std::string& item_group(int item);

/// Builds a germ from its command-line name.
GermPtr make_germ(const std::string& name, const SliceSetup& slice, const MultiPoly& curve, double radius);

std::vector<CheckResult> run_verification(const Presentation& p, const VerifyOptions& options);

}  // namespace regen
