// Command-line front end: curve elimination, germ tracing, Dehn map plots,
// cone path and the verification suite.
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "regen/cohom.hpp"
#include "regen/conepath.hpp"
#include "regen/dehnmap.hpp"
#include "regen/fixtures.hpp"
#include "regen/repsolve.hpp"
#include "regen/tracecalc.hpp"
#include "regen/verify.hpp"

namespace fs = std::filesystem;
using namespace regen;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kInputError = 2, kNumericalError = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string input;
  std::string out = "out";
  std::string germ = "curve";
  double radius = 0.3;
  int samples = 12;
  unsigned seed = 20240611;
  double tolerance = 1e-12;
  double tolerance_scale = 1.0;
  std::vector<std::string> only;
};

void validate(const RunConfig& c) {
  if (!(c.radius > 0 && c.radius <= 0.5)) throw InputError("radius must lie in (0, 0.5]");
  if (!(c.tolerance > 0)) throw InputError("tolerance must be positive");
  if (c.tolerance_scale < 0) throw InputError("tolerance scale must be nonnegative");
}

Presentation load(const RunConfig& c) {
  if (c.input.empty()) return example_presentation();
  std::ifstream f(c.input);
  if (!f) throw InputError("cannot read " + c.input);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_presentation(ss.str());
}

fs::path out_file(const RunConfig& c, const std::string& name) {
  fs::create_directories(c.out);
  return fs::path(c.out) / name;
}

void write(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path.string());
  f << text;
  std::cout << "wrote " << path.string() << "\n";
}

SolverOptions solver(const RunConfig& c) {
  SolverOptions o;
  o.tolerance = c.tolerance;
  return o;
}

struct Pipeline {
  Presentation presentation;
  BaseSelection selection;
  MultiPoly curve;
  std::vector<SlicePoint> steer;
};

Pipeline build(const RunConfig& c, bool with_curve) {
  Pipeline p;
  p.presentation = load(c);
  if (p.presentation.relators.empty())
    throw InputError("presentation has no relators; its character variety projects onto a 2-dimensional set");
  if (with_curve && p.presentation.generator_count() != 2 && p.presentation.substitutions.empty())
    throw InputError("a substitution block is needed to reduce to two generators");
  p.selection = select_base(p.presentation, c.radius, c.samples, solver(c));
  if (with_curve) {
    std::vector<cplx> ws;
    for (int k = 0; k <= 6; ++k) ws.push_back(c.radius * k / 6);
    p.steer = continue_path(p.selection.slice, ws);
    p.curve = plane_curve(p.presentation, character_samples(p.selection.slice, p.steer)).curve;
  }
  return p;
}

GermPtr germ_for(const RunConfig& c, Pipeline& p) {
  return make_germ(c.germ, p.selection.slice, p.curve, c.radius);
}

bool needs_curve(const RunConfig& c) { return c.germ == "curve"; }

int cmd_parse(const RunConfig& c) {
  auto p = load(c);
  std::cout << serialize_presentation(p);
  std::cout << "# exponent sums (relator x generator)\n";
  for (const auto& row : exponent_sum_matrix(p)) {
    std::cout << "#";
    for (int e : row) std::cout << " " << e;
    std::cout << "\n";
  }
  if (p.generator_count() != 2 || !p.substitutions.empty()) {
    auto red = two_generator_reduction(p);
    std::cout << "# two-generator form\n" << serialize_presentation(red.reduced);
  }
  return kOk;
}

int cmd_curve(const RunConfig& c) {
  auto p = build(c, true);
  std::vector<cplx> ws;
  for (int k = 0; k <= 2 * c.samples; ++k) ws.push_back(std::polar(c.radius * k / (2 * c.samples), 0.3));
  auto check = continue_path(p.selection.slice, ws);
  auto chars = character_samples(p.selection.slice, check);
  std::ostringstream report;
  report << std::setprecision(6);
  report << "terms " << p.curve.size() << "\n";
  report << "degree_x " << p.curve.degree(0) << "\n";
  report << "degree_y " << p.curve.degree(1) << "\n";
  report << "samples " << chars.size() << "\n";
  report << "max_relative_residual " << curve_residual(p.curve, chars) << "\n";
  write(out_file(c, "curve.txt"), p.curve.serialize());
  write(out_file(c, "curve_report.txt"), report.str());
  std::cout << p.curve.to_string() << "\n";
  return kOk;
}

int cmd_trace_f(const RunConfig& c) {
  auto p = build(c, false);
  const auto& s = p.selection.slice;
  for (const auto& line : p.selection.log) std::cout << line << "\n";
  std::vector<cplx> real, imag;
  for (int k = 0; k <= c.samples; ++k) {
    real.push_back(c.radius * k / c.samples);
    imag.push_back(cplx(0, c.radius * k / c.samples));
  }
  write(out_file(c, "trace_f_real.csv"), path_csv(continue_path(s, real)));
  write(out_file(c, "trace_f_imag.csv"), path_csv(continue_path(s, imag)));
  const auto& f = p.selection.series;
  std::cout << std::setprecision(10) << "a3 " << f.a3 << "\na5 " << f.a5 << "\na7 " << f.a7 << "\nresidual "
            << f.residual << "\nstable " << (f.stable ? "yes" : "no") << "\n";
  return kOk;
}

// --- SVG ------------------------------------------------------------------------

struct Frame {
  double q0, q1, p0, p1;
  double w = 640, h = 480, m = 60;
  double X(double q) const { return m + (q - q0) / (q1 - q0) * (w - 2 * m); }
  double Y(double p) const { return h - m - (p - p0) / (p1 - p0) * (h - 2 * m); }
};

std::string polyline(const Frame& fr, std::span<const CurveSample> pts, const std::string& colour,
                     const std::string& label) {
  std::ostringstream os;
  os << std::setprecision(6) << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
  for (const auto& c : pts) os << fr.X(c.q) << "," << fr.Y(c.p) << " ";
  os << "\"><title>" << label << "</title></polyline>\n";
  return os.str();
}

std::string dehn_svg(const std::vector<std::pair<DefPoint, DehnCoefficients>>& grid,
                     const std::vector<std::pair<std::string, std::vector<CurveSample>>>& curves) {
  Frame fr{1e300, -1e300, 1e300, -1e300};
  auto extend = [&](double q, double p) {
    fr.q0 = std::min(fr.q0, q);
    fr.q1 = std::max(fr.q1, q);
    fr.p0 = std::min(fr.p0, p);
    fr.p1 = std::max(fr.p1, p);
  };
  for (const auto& [pt, d] : grid) extend(d.q, d.p);
  for (const auto& [id, cs] : curves)
    for (const auto& c : cs) extend(c.q, c.p);
  const double dq = (fr.q1 - fr.q0) * 0.05 + 1e-12, dp = (fr.p1 - fr.p0) * 0.05 + 1e-12;
  fr.q0 -= dq;
  fr.q1 += dq;
  fr.p0 -= dp;
  fr.p1 += dp;

  std::ostringstream os;
  os << std::setprecision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fr.w << "\" height=\"" << fr.h << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<rect x=\"" << fr.m << "\" y=\"" << fr.m << "\" width=\"" << fr.w - 2 * fr.m << "\" height=\""
     << fr.h - 2 * fr.m << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double q = fr.q0 + (fr.q1 - fr.q0) * k / 4, p = fr.p0 + (fr.p1 - fr.p0) * k / 4;
    os << "<text x=\"" << fr.X(q) << "\" y=\"" << fr.h - fr.m + 18 << "\" font-size=\"10\" text-anchor=\"middle\">"
       << q << "</text>\n";
    os << "<text x=\"" << fr.m - 6 << "\" y=\"" << fr.Y(p) + 3 << "\" font-size=\"10\" text-anchor=\"end\">" << p
       << "</text>\n";
  }
  os << "<text x=\"" << fr.w / 2 << "\" y=\"" << fr.h - 15 << "\" font-size=\"12\" text-anchor=\"middle\">q</text>\n";
  os << "<text x=\"15\" y=\"" << fr.h / 2 << "\" font-size=\"12\">p</text>\n";
  for (const auto& [pt, d] : grid) {
    const char* colour = pt.geometry() == Geometry::hyperbolic  ? "#d62728"
                         : pt.geometry() == Geometry::spherical ? "#1f77b4"
                                                                : "#2ca02c";
    os << "<circle cx=\"" << fr.X(d.q) << "\" cy=\"" << fr.Y(d.p) << "\" r=\"1.6\" fill=\"" << colour
       << "\" fill-opacity=\"0.5\"/>\n";
  }
  const std::map<std::string, std::string> colours{
      {"fold", "black"}, {"g", "#9467bd"}, {"s0", "#ff7f0e"}, {"taums2", "#8c564b"}, {"conepath", "#17becf"}};
  for (const auto& [id, cs] : curves) os << polyline(fr, cs, colours.at(id), id);
  int row = 0;
  for (const auto& [id, colour] : colours)
    os << "<text x=\"" << fr.w - fr.m + 4 << "\" y=\"" << fr.m + 14 * ++row << "\" font-size=\"10\" fill=\""
       << colour << "\">" << id << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

int cmd_dehn_map(const RunConfig& c) {
  if (c.samples < 1) throw InputError("empty grid requested");
  auto p = build(c, needs_curve(c));
  auto F = germ_for(c, p);
  const double s_max = 0.3 * c.radius, tau_max = 0.1 * c.radius * c.radius;
  std::vector<double> sv, tv;
  for (int i = 0; i <= c.samples; ++i) sv.push_back(s_max * i / c.samples);
  for (int j = 0; j <= 2 * c.samples; ++j) tv.push_back(-tau_max + tau_max * j / c.samples);
  std::vector<std::pair<DefPoint, DehnCoefficients>> grid;
  for (double s : sv)
    for (double t : tv) grid.push_back({{s, t}, dehn_coefficients(*F, {s, t})});

  std::vector<double> fine;
  for (int i = 0; i <= 40; ++i) fine.push_back(s_max * i / 40);
  std::vector<double> taus;
  for (int i = 0; i <= 40; ++i) taus.push_back(-tau_max + 2 * tau_max * i / 40);
  std::vector<double> fold_s, diag_s;
  for (double s : fine) {
    if (9 * s * s <= tau_max) fold_s.push_back(s);
    if (s * s <= tau_max) diag_s.push_back(s);
  }
  std::vector<std::pair<std::string, std::vector<CurveSample>>> curves{
      {"fold", fold_curve(*F, fold_s)},
      {"g", g_curve(*F, fine)},
      {"s0", s0_segment(*F, taus)},
      {"taums2", spherical_diagonal(*F, diag_s)},
  };
  std::vector<double> cone_s;
  for (double s : fine)
    if (3 * s * s <= tau_max) cone_s.push_back(s);
  std::vector<CurveSample> cone;
  for (const auto& cp : cone_path(*F, cone_s)) cone.push_back({cp.s, cp.tau, 2 * kPi / cp.alpha, 0.0});
  curves.emplace_back("conepath", cone);

  write(out_file(c, "dehn_grid.csv"), grid_csv(*F, sv, tv));
  std::string csv;
  for (std::size_t k = 0; k < curves.size(); ++k) csv += curve_csv(curves[k].first, curves[k].second, k == 0);
  write(out_file(c, "dehn_curves.csv"), csv);
  write(out_file(c, "dehn_map.svg"), dehn_svg(grid, curves));
  return kOk;
}

int cmd_fold(const RunConfig& c) {
  auto p = build(c, needs_curve(c));
  auto F = germ_for(c, p);
  auto ladder = dyadic_ladder(0.05, std::max(c.samples / 2, 2));
  std::vector<std::string> skipped;
  auto fold = fold_curve(*F, ladder, &skipped);
  for (const auto& s : skipped) std::cerr << "skipped " << s << "\n";
  if (fold.size() < 2) throw DehnError("fold curve has fewer than two samples");
  write(out_file(c, "fold.csv"), curve_csv("fold", fold, true));
  std::vector<double> s, tau, q, pp;
  for (const auto& f : fold) {
    s.push_back(f.s);
    tau.push_back(f.tau / (f.s * f.s));
    q.push_back(f.q / (f.s * f.s));
    pp.push_back((f.p - 2) / std::pow(f.s, 3));
  }
  std::cout << std::setprecision(8) << "tau/s^2 -> " << fit_line(s, tau).c0 << "\nq/s^2 -> " << fit_line(s, q).c0
            << "\n(p-2)/s^3 -> " << fit_line(s, pp).c0 << "\n";
  auto lim = asymptotic_limits(*F);
  std::cout << "lim_f " << lim.lim_f << "\nlim_g " << lim.lim_g << "\nclosed_form " << lim.closed_form << "\n";
  return kOk;
}

int cmd_cone_path(const RunConfig& c) {
  auto p = build(c, needs_curve(c));
  auto F = germ_for(c, p);
  const double top = 0.05;
  auto path = schlafli_volume(cone_path(*F, cone_samples(top)));
  write(out_file(c, "cone_path.csv"), cone_path_csv(path));
  auto lim = path_limits(path, top);
  std::cout << std::setprecision(8) << "vol_ratio " << lim.ratio_vol << "\nl0 " << lim.l0_est << "\nvol/s^4 "
            << lim.vol_s4 << "\nrefinement " << volume_refinement_change(path) << "\n";
  return kOk;
}

int cmd_cohomology(const RunConfig& c) {
  auto p = build(c, false);
  const auto& base = p.selection.slice.base;
  auto show = [](const std::string& name, CohomologyDims d) {
    std::cout << name << " H0=" << d.h0 << " H1=" << d.h1 << "\n";
  };
  show("plane", twisted_h01(p.presentation, plane_module(base)));
  show("axis", twisted_h01(p.presentation, axis_module(base)));
  show("adjoint", twisted_h01(p.presentation, adjoint_module(base)));
  show("trivial", twisted_h01(p.presentation, trivial_module(p.presentation)));
  return kOk;
}

int cmd_verify(const RunConfig& c) {
  VerifyOptions o;
  o.tolerance_scale = c.tolerance_scale;
  o.only = c.only;
  o.seed = c.seed;
  o.radius = c.radius;
  o.samples_per_side = c.samples;
  o.germ = c.germ;
  for (const auto& g : o.only) {
    bool known = false;
    for (int i = 1; i <= 10; ++i) known = known || g == item_group(i) || g == std::to_string(i);
    if (!known) throw InputError("unknown check group: " + g);
  }
  o.on_result = [](const CheckResult& r) { std::cout << to_json(r).dump() << std::endl; };
  auto results = run_verification(load(c), o);
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; }) ? kOk
                                                                                                   : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace curves, deformation germs and Dehn filling maps near a dihedral representation"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file");
  RunConfig cfg;
  app.add_option("--input", cfg.input, "presentation file (default: bundled example)");
  app.add_option("--out", cfg.out, "output directory");
  app.add_option("--radius", cfg.radius, "germ trust radius");
  app.add_option("--samples", cfg.samples, "samples per side / grid size");
  app.add_option("--germ", cfg.germ, "continuation | curve | synthetic:<a3>");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--tolerance", cfg.tolerance, "Newton residual tolerance");

  std::map<CLI::App*, int (*)(const RunConfig&)> commands;
  commands[app.add_subcommand("parse", "normalize a presentation")] = cmd_parse;
  commands[app.add_subcommand("curve", "eliminate the peripheral trace curve")] = cmd_curve;
  commands[app.add_subcommand("trace-f", "continue the germ along the axes")] = cmd_trace_f;
  commands[app.add_subcommand("dehn-map", "grid and curves of the filling map")] = cmd_dehn_map;
  commands[app.add_subcommand("fold", "fold curve and boundary limits")] = cmd_fold;
  commands[app.add_subcommand("cone-path", "cone angle, length and volume along q = 0")] = cmd_cone_path;
  commands[app.add_subcommand("cohomology", "twisted cohomology dimensions")] = cmd_cohomology;
  auto* verify = app.add_subcommand("verify", "run the reproduction checks");
  commands[verify] = cmd_verify;
  verify->add_option("--only", cfg.only, "check groups or item numbers");
  verify->add_option("--tolerance-scale", cfg.tolerance_scale, "multiplies every check tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  try {
    validate(cfg);
    for (auto& [sub, fn] : commands)
      if (sub->parsed()) return fn(cfg);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ReductionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  }
  return kInputError;
}
