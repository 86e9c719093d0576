#include "regen/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "regen/cohom.hpp"
#include "regen/conepath.hpp"
#include "regen/dehnmap.hpp"
#include "regen/fixtures.hpp"
#include "regen/tracecalc.hpp"

namespace regen {

nlohmann::json to_json(const CheckResult& r) {
  nlohmann::json j{{"id", r.id},           {"item", r.item}, {"expected", r.expected}, {"got", r.got},
                   {"tolerance", r.tolerance}, {"pass", r.pass}};
  if (r.relative) j["relative"] = true;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

const std::string& item_group(int item) {
  static const std::vector<std::string> names{"",       "curve",  "a3", "l0",        "volume",    "limits",
                                              "fold",   "p2",     "preimages", "cohomology", "properties"};
  static const std::string none;
  return item >= 1 && item <= 10 ? names[item] : none;
}

GermPtr make_germ(const std::string& name, const SliceSetup& slice, const MultiPoly& curve, double radius) {
  if (name == "curve") return std::make_shared<CurveGerm>(curve, radius);
  if (name == "continuation") return std::make_shared<ContinuationGerm>(slice, radius);
  const std::string prefix = "synthetic:";
  if (name.rfind(prefix, 0) == 0) {
    std::size_t used = 0;
    const std::string num = name.substr(prefix.size());
    double a3 = 0;
    try {
      a3 = std::stod(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != num.size()) throw std::invalid_argument("bad synthetic germ: " + name);
    return std::make_shared<SyntheticGerm>(std::vector<double>{a3}, radius);
  }
  throw std::invalid_argument("unknown germ: " + name);
}

namespace {

struct Paths {
  std::vector<SlicePoint> real, imaginary, ray;
};

std::vector<SlicePoint> trace_ray(const SliceSetup& s, cplx direction, double radius, int steps) {
  std::vector<cplx> ws;
  for (int k = 0; k <= steps; ++k) ws.push_back(direction * (radius * k / steps));
  return continue_path(s, ws);
}

class Runner {
 public:
  Runner(const Presentation& p, const VerifyOptions& o) : p_(p), o_(o) {}

  std::vector<CheckResult> run() {
    for (int item = 1; item <= 10; ++item) {
      if (!selected(item)) continue;
      try {
        prepare();
        dispatch(item);
      } catch (const std::exception& e) {
        CheckResult r;
        r.item = item;
        r.id = item_group(item) + ".error";
        r.expected = "no error";
        r.got = std::string("error: ") + e.what();
        emit(std::move(r));
      }
    }
    return results_;
  }

 private:
  bool selected(int item) const {
    if (o_.only.empty()) return true;
    return std::any_of(o_.only.begin(), o_.only.end(), [&](const std::string& s) {
      return s == item_group(item) || s == std::to_string(item);
    });
  }

  void emit(CheckResult r) {
    if (o_.on_result) o_.on_result(r);
    results_.push_back(std::move(r));
  }

  void number(int item, const std::string& id, double expected, double got, double tol, bool relative,
              std::string note = {}) {
    CheckResult r;
    r.item = item;
    r.id = item_group(item) + "." + id;
    r.expected = expected;
    r.got = got;
    r.tolerance = tol * o_.tolerance_scale;
    r.relative = relative;
    const double err = std::abs(got - expected);
    r.pass = std::isfinite(got) && err <= r.tolerance * (relative ? std::abs(expected) : 1.0);
    r.note = std::move(note);
    emit(std::move(r));
  }

  void exact(int item, const std::string& id, nlohmann::json expected, nlohmann::json got, std::string note = {}) {
    CheckResult r;
    r.item = item;
    r.id = item_group(item) + "." + id;
    r.pass = expected == got;
    r.expected = std::move(expected);
    r.got = std::move(got);
    r.note = std::move(note);
    emit(std::move(r));
  }

  void prepare() {
    if (ready_) return;
    sel_ = select_base(p_, o_.radius, o_.samples_per_side);
    const auto& s = sel_.slice;
    paths_.real = trace_ray(s, 1.0, o_.radius, 24);
    paths_.imaginary = trace_ray(s, cplx(0, 1), o_.radius, 12);
    paths_.ray = trace_ray(s, std::polar(1.0, kPi / 4), o_.radius, 16);
    // The first few real-axis characters steer factor selection; all paths validate.
    std::vector<SlicePoint> steer(paths_.real.begin(), paths_.real.begin() + 7);
    curve_ = plane_curve(p_, character_samples(s, steer)).curve;
    curve_germ_ = std::make_shared<CurveGerm>(curve_, o_.radius);
    cont_germ_ = std::make_shared<ContinuationGerm>(s, o_.radius);
    germ_ = make_germ(o_.germ, s, curve_, o_.radius);
    ready_ = true;
  }

  const GermModel& germ() const { return *germ_; }

  double germ_a3() {
    if (!germ_a3_) germ_a3_ = germ_series(germ()).a3;
    return *germ_a3_;
  }

  void dispatch(int item) {
    switch (item) {
      case 1:
        return curve_checks();
      case 2:
        return a3_checks();
      case 3:
        return l0_checks();
      case 4:
        return volume_checks();
      case 5:
        return limit_checks();
      case 6:
        return fold_checks();
      case 7:
        return p2_checks();
      case 8:
        return preimage_checks();
      case 9:
        return cohomology_checks();
      case 10:
        return property_checks();
    }
  }

  std::vector<SlicePoint> all_points() const {
    std::vector<SlicePoint> pts;
    for (const auto* path : {&paths_.real, &paths_.imaginary, &paths_.ray})
      pts.insert(pts.end(), path->begin() + 1, path->end());
    return pts;
  }

  void curve_checks() {
    auto pts = all_points();
    auto chars = character_samples(sel_.slice, pts);
    const double res = curve_residual(curve_, chars);
    std::ostringstream note;
    note << chars.size() << " continued characters";
    number(1, "vanishing", 0.0, chars.size() >= 50 ? res : INFINITY, 1e-6, false, note.str());

    const MultiPoly ours = curve_.primitive();
    const MultiPoly printed = printed_curve().primitive();
    const MultiPoly corrected = corrected_curve().primitive();
    auto associate = [](const MultiPoly& a, const MultiPoly& b) { return a == b || a == -b; };
    const bool divides = ours.divide(corrected).has_value();
    const std::vector<std::string> v{"x", "y"};
    const MultiPoly x = MultiPoly::variable(v, 0), y = MultiPoly::variable(v, 1);
    const MultiPoly Y = y - MultiPoly::constant(v, 2);
    const MultiPoly flagged = x * x * Y * Y * (x * x - MultiPoly::constant(v, 5) * y * y);
    const bool confined = printed_curve() - corrected_curve() == flagged;
    nlohmann::json got{{"associate_printed", associate(ours, printed)},
                       {"associate_corrected", associate(ours, corrected)},
                       {"divisible_by_corrected", divides},
                       {"mismatch_confined_to_flagged_term", confined}};
    nlohmann::json expected{{"associate_printed", false},
                            {"associate_corrected", true},
                            {"divisible_by_corrected", true},
                            {"mismatch_confined_to_flagged_term", true}};
    exact(1, "printed_form", expected, got,
          "printed (7 - 5y^2) coefficient differs; (7 - x^2) matches the eliminated curve");
  }

  void a3_checks() {
    const double a_cont = sel_.series.a3;
    const double a_curve = germ_series(*curve_germ_, o_.samples_per_side).a3;
    number(2, "continuation", 1.0 / 64, a_cont, 1e-4, false);
    number(2, "curve", 1.0 / 64, a_curve, 1e-4, false);
    number(2, "agreement", 0.0, std::abs(a_cont - a_curve), 1e-6, false);
    double worst = 0;
    for (const auto& pt : all_points()) worst = std::max(worst, std::abs(pt.F - curve_germ_->F(pt.w)));
    number(2, "germ_cross_check", 0.0, worst, 1e-6, false, "continuation vs curve F on all paths");
  }

  const std::vector<ConePathSample>& cone() {
    if (cone_.empty()) cone_ = schlafli_volume(cone_path(germ(), cone_samples(kConeTop)));
    return cone_;
  }

  void l0_checks() {
    auto lim = path_limits(cone(), kConeTop);
    number(3, "extrapolated", 2 * std::sqrt(3.0), lim.l0_est, 1e-2, true);
    const double closed = std::sqrt(3.0) / (2 * std::cbrt(germ_a3()));
    number(3, "closed_form", closed, lim.l0_est, 1e-3, true);
  }

  void volume_checks() {
    auto lim = path_limits(cone(), kConeTop);
    number(4, "ratio", 3.0 / 8, lim.ratio_vol, 1e-2, true);
    number(4, "s4", 3 * std::sqrt(3.0) / 64, lim.vol_s4, 3e-2, true);
    number(4, "refinement", 0.0, volume_refinement_change(cone()), 5e-3, false);
  }

  void limit_checks() {
    auto lim = asymptotic_limits(germ(), kLadderTop);
    const double target = 8 * std::sqrt(2.0) / (3 * std::sqrt(3.0) * kPi);
    number(5, "fold", target, lim.lim_f, 2e-2, true);
    number(5, "g", target, lim.lim_g, 2e-2, true);
    number(5, "equal", 0.0, std::abs(lim.lim_f - lim.lim_g) / std::abs(lim.lim_g), 1e-2, false);
  }

  void fold_checks() {
    auto ladder = dyadic_ladder(kLadderTop, 6);
    std::vector<std::string> skipped;
    auto fold = fold_curve(germ(), ladder, &skipped);
    if (fold.size() != ladder.size()) throw DehnError("fold failed: " + skipped.front());
    std::vector<double> s, tau, q, p;
    for (const auto& c : fold) {
      s.push_back(c.s);
      tau.push_back(c.tau / (c.s * c.s));
      q.push_back(c.q / (c.s * c.s));
      p.push_back((c.p - 2) / (c.s * c.s * c.s));
    }
    const double a3 = germ_a3();
    number(6, "tau", -9.0, fit_line(s, tau).c0, 0.3, false);
    number(6, "q", -24 * a3, fit_line(s, q).c0, 2e-2, true);
    number(6, "p", -32 * a3 / kPi, fit_line(s, p).c0, 2e-2, true);
  }

  void p2_checks() {
    std::vector<double> taus, ss;
    for (int k = 0; k < 50; ++k) {
      taus.push_back(-0.04 + 0.08 * k / 49);
      ss.push_back(0.1 * (k + 1) / 50);
    }
    double worst = 0;
    for (const auto& c : s0_segment(germ(), taus)) worst = std::max(worst, std::abs(c.p - 2));
    number(7, "s0", 0.0, worst, 1e-9, false, "50 samples, tau in [-0.04, 0.04]");
    worst = 0;
    for (const auto& c : spherical_diagonal(germ(), ss)) worst = std::max(worst, std::abs(c.p - 2));
    number(7, "diagonal", 0.0, worst, 1e-9, false, "50 samples on tau = -s^2, s in (0, 0.1]");
  }

  void preimage_checks() {
    for (int k = 0; k < 10; ++k) {
      const double sf = 0.015 + 0.03 * k / 9;
      const double frac = 0.25 + 0.5 * (k % 3) / 2;
      std::vector<double> one{sf};
      auto fold = fold_curve(germ(), one);
      if (fold.empty()) throw DehnError("fold failed while building targets");
      DehnCoefficients target{fold[0].p + frac * (2 - fold[0].p), fold[0].q};
      auto seeds = seed_grid(2 * std::sqrt(3.0) * sf, 14 * sf * sf, 12);
      std::vector<DefPoint> pre;
      try {
        pre = invert_dehn(germ(), target, seeds);
      } catch (const DehnError&) {
      }
      int spherical = 0;
      double trip = 0;
      for (const auto& x : pre) {
        if (x.tau < 0) ++spherical;
        auto d = dehn_coefficients(germ(), x);
        trip = std::max({trip, std::abs(d.p - target.p), std::abs(d.q - target.q)});
      }
      nlohmann::json got{{"count", pre.size()}, {"spherical", spherical}, {"round_trip_ok", trip <= 1e-8}};
      nlohmann::json expected{{"count", 2}, {"spherical", 2}, {"round_trip_ok", true}};
      std::ostringstream note;
      note.precision(10);
      note << "target p=" << target.p << " q=" << target.q << " round trip " << trip;
      exact(8, "target" + std::to_string(k), expected, got, note.str());
    }
  }

  void cohomology_checks() {
    const auto& base = sel_.slice.base;
    auto dims = [](CohomologyDims d) { return nlohmann::json::array({d.h0, d.h1}); };
    exact(9, "plane", nlohmann::json::array({0, 1}), dims(twisted_h01(p_, plane_module(base))));
    exact(9, "axis", nlohmann::json::array({0, 0}), dims(twisted_h01(p_, axis_module(base))));
    exact(9, "adjoint_h1", 1, twisted_h01(p_, adjoint_module(base)).h1);
    auto E = exponent_sum_matrix(p_);
    Eigen::MatrixXd M(E.size(), p_.generator_count());
    for (std::size_t i = 0; i < E.size(); ++i)
      for (int j = 0; j < p_.generator_count(); ++j) M(i, j) = E[i][j];
    const int betti = p_.generator_count() - static_cast<int>(Eigen::FullPivLU<Eigen::MatrixXd>(M).rank());
    exact(9, "trivial_h1", betti, twisted_h01(p_, trivial_module(p_)).h1);
  }

  void property_checks() {
    double odd = 0;
    for (const auto& pt : all_points()) odd = std::max(odd, std::abs(pt.F + cont_germ_->F(-pt.w)));
    number(10, "oddness", 0.0, odd, 1e-8, false, "F(w) + F(-w) on all path samples");

    number(10, "trace_oracle", 0.0, trace_oracle_error(), 1e-9, false, "100 random pairs per word");

    double unit = 0;
    for (const auto& pt : paths_.real) unit = std::max(unit, unitarity_defect(pt.rep));
    number(10, "unitarity", 0.0, unit, 1e-8, false, "real-axis path");

    double jump = 0;
    for (const auto* path : {&paths_.real, &paths_.imaginary, &paths_.ray}) {
      std::optional<ComplexLength> lm, ll;
      ll = ComplexLength{};
      for (const auto& pt : *path) {
        auto m = complex_length(evaluate_word(pt.rep, sel_.slice.presentation.meridian), lm);
        auto l = complex_length(evaluate_word(pt.rep, sel_.slice.presentation.longitude), ll);
        if (lm) jump = std::max(jump, std::abs(m.value - lm->value));
        jump = std::max(jump, std::abs(l.value - ll->value));
        lm = m;
        ll = l;
      }
    }
    number(10, "branch_continuity", 0.0, jump, 0.1, false, "largest step of a threaded complex length");

    double gauge = 0, imag = 0;
    for (const auto& pt : all_points()) gauge = std::max(gauge, meridian_off_axis(sel_.slice, pt));
    for (const auto& pt : paths_.imaginary) imag = std::max(imag, std::abs(pt.F.real()));
    number(10, "gauge", 0.0, gauge, 1e-9, false);
    number(10, "imaginary_axis", 0.0, imag, 1e-8, false);
  }

  double trace_oracle_error() {
    auto red = two_generator_reduction(p_);
    const auto& two = red.reduced;
    std::vector<Word> words(two.relators.begin(), two.relators.end());
    words.push_back(two.longitude);
    words.push_back(two.meridian);
    words.push_back(two.longitude * two.meridian);
    std::mt19937_64 rng(o_.seed);
    std::normal_distribution<double> nd;
    double worst = 0;
    TraceEngine engine;
    for (const auto& w : words) {
      MultiPoly poly = engine.trace(w);
      for (int k = 0; k < 100; ++k) {
        std::vector<Mat2> im(2);
        for (auto& m : im) {
          do {
            for (int i = 0; i < 4; ++i) m(i / 2, i % 2) = cplx(nd(rng), nd(rng));
          } while (std::abs(m.determinant()) < 0.1);
          m /= std::sqrt(m.determinant());
        }
        const cplx direct = evaluate_word(im, w).trace();
        const cplx poly_val = poly.evaluate({im[0].trace(), im[1].trace(), (im[0] * im[1]).trace()});
        worst = std::max(worst, std::abs(direct - poly_val) / std::max(1.0, std::abs(direct)));
      }
    }
    return worst;
  }

  static constexpr double kConeTop = 0.05;
  static constexpr double kLadderTop = 0.05;

  const Presentation& p_;
  const VerifyOptions& o_;
  std::vector<CheckResult> results_;
  bool ready_ = false;
  BaseSelection sel_;
  Paths paths_;
  MultiPoly curve_;
  GermPtr curve_germ_, cont_germ_, germ_;
  std::optional<double> germ_a3_;
  std::vector<ConePathSample> cone_;
};

}  // namespace

std::vector<CheckResult> run_verification(const Presentation& p, const VerifyOptions& options) {
  return Runner(p, options).run();
}

}  // namespace regen
