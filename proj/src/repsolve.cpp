#include "regen/repsolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace regen {

namespace {

// --- symbolic evaluation in the normalizer of the e3 torus -----------------

// exp(pi e1)^flip exp(A e3), with A = sum coeff_j u_j + pi_const * pi.
struct TorusElement {
  int flip = 0;
  std::vector<long> coeff;
  long pi_const = 0;
};

TorusElement torus_mul(const TorusElement& x, const TorusElement& y) {
  TorusElement r;
  r.coeff.resize(x.coeff.size());
  if (y.flip == 0) {
    r.flip = x.flip;
    for (std::size_t j = 0; j < r.coeff.size(); ++j) r.coeff[j] = x.coeff[j] + y.coeff[j];
    r.pi_const = x.pi_const + y.pi_const;
  } else {
    r.flip = x.flip + 1;
    for (std::size_t j = 0; j < r.coeff.size(); ++j) r.coeff[j] = -x.coeff[j] + y.coeff[j];
    r.pi_const = -x.pi_const + y.pi_const;
    if (r.flip == 2) {
      r.flip = 0;
      r.pi_const += 2;  // exp(pi e1)^2 = -I = exp(2 pi e3)
    }
  }
  return r;
}

TorusElement torus_inv(const TorusElement& x) {
  TorusElement r = x;
  if (x.flip == 0) {
    for (auto& c : r.coeff) c = -c;
    r.pi_const = -x.pi_const;
  } else {
    r.pi_const += 2;
  }
  return r;
}

TorusElement torus_word(const Word& w, const std::vector<int>& grading) {
  const std::size_t n = grading.size();
  TorusElement acc;
  acc.coeff.assign(n, 0);
  for (const auto& l : w.letters()) {
    TorusElement g;
    g.flip = grading[l.generator];
    g.coeff.assign(n, 0);
    g.coeff[l.generator] = 1;
    TorusElement gi = torus_inv(g);
    for (int k = 0; k < std::abs(l.exponent); ++k) acc = torus_mul(acc, l.exponent > 0 ? g : gi);
  }
  return acc;
}

// --- Smith form over Z: L * A * R = D ---------------------------------------

using IMat = std::vector<std::vector<long>>;

struct SmithForm {
  IMat D, L, R;
  int rank = 0;
};

IMat identity(int n) {
  IMat m(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

SmithForm smith(IMat a) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  SmithForm s{a, identity(rows), identity(cols), 0};
  IMat& A = s.D;
  auto swap_rows = [&](int i, int j) {
    std::swap(A[i], A[j]);
    std::swap(s.L[i], s.L[j]);
  };
  auto swap_cols = [&](int i, int j) {
    for (auto& r : A) std::swap(r[i], r[j]);
    for (auto& r : s.R) std::swap(r[i], r[j]);
  };
  for (int t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      int pi = -1, pj = -1;
      for (int i = t; i < rows; ++i)
        for (int j = t; j < cols; ++j)
          if (A[i][j] != 0 && (pi < 0 || std::abs(A[i][j]) < std::abs(A[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) return s;
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool clean = true;
      for (int i = t + 1; i < rows; ++i) {
        long q = A[i][t] / A[t][t];
        if (q)
          for (int j = 0; j < cols; ++j) A[i][j] -= q * A[t][j];
        if (q)
          for (int j = 0; j < rows; ++j) s.L[i][j] -= q * s.L[t][j];
        if (A[i][t]) clean = false;
      }
      for (int j = t + 1; j < cols; ++j) {
        long q = A[t][j] / A[t][t];
        if (q) {
          for (int i = 0; i < rows; ++i) A[i][j] -= q * A[i][t];
          for (int i = 0; i < cols; ++i) s.R[i][j] -= q * s.R[i][t];
        }
        if (A[t][j]) clean = false;
      }
      if (clean) break;
    }
    if (A[t][t] < 0) {
      for (auto& v : A[t]) v = -v;
      for (auto& v : s.L[t]) v = -v;
    }
    s.rank = t + 1;
  }
  return s;
}

long mod(long a, long m) { return ((a % m) + m) % m; }

double wrap4pi(double a) {
  double r = std::fmod(a, 4 * kPi);
  if (r < 0) r += 4 * kPi;
  if (r < 1e-12 || 4 * kPi - r < 1e-12) r = 0.0;
  return r;
}

bool multiple_of_2pi(double a) {
  double r = std::fmod(std::abs(a), 2 * kPi);
  return std::min(r, 2 * kPi - r) < 1e-9;
}

Sl2Element dihedral_image(int grading, double angle) {
  Sl2Element t = exp_basis(3, angle);
  return grading ? exp_basis(1, kPi) * t : t;
}

}  // namespace

std::vector<BaseCandidate> dihedral_candidates(const Presentation& p) {
  const int n = p.generator_count();
  if (n > 20) throw SolveError("too many generators for grading enumeration");
  std::vector<std::vector<int>> gradings;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> th(n);
    for (int j = 0; j < n; ++j) th[j] = (mask >> j) & 1u;
    auto parity = [&](const Word& w) {
      long s = 0;
      for (const auto& l : w.letters()) s += th[l.generator] * l.exponent;
      return mod(s, 2);
    };
    if (parity(p.meridian) != 1) continue;
    if (std::all_of(p.relators.begin(), p.relators.end(),
                    [&](const Word& r) { return parity(r) == 0; }))
      gradings.push_back(th);
  }
  if (gradings.empty()) throw NoGradingError("no grading with odd meridian (no theta-grading)");

  std::vector<BaseCandidate> out;
  bool degenerate = false;
  for (const auto& th : gradings) {
    // Rows: relators (must be 1) and the meridian gauge row.
    IMat C;
    std::vector<long> k;
    for (const auto& r : p.relators) {
      auto e = torus_word(r, th);
      C.push_back(e.coeff);
      k.push_back(e.pi_const);
    }
    auto em = torus_word(p.meridian, th);
    C.push_back(em.coeff);
    k.push_back(em.pi_const);  // torus gauge: rho(meridian) = exp(pi e1)
    // C v = -k (mod 4) with angles u = pi v.
    SmithForm sf = smith(C);
    if (sf.rank < n) {
      degenerate = true;
      continue;
    }
    const int rows = static_cast<int>(C.size());
    std::vector<long> beta(rows, 0);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < rows; ++j) beta[i] -= sf.L[i][j] * k[j];
    bool solvable = true;
    for (int i = sf.rank; i < rows; ++i)
      if (mod(beta[i], 4) != 0) solvable = false;
    if (!solvable) continue;
    // Enumerate y_i = (beta_i + 4 z_i) / d_i, z_i in [0, d_i).
    std::vector<long> d(n), z(n, 0);
    for (int i = 0; i < n; ++i) d[i] = sf.D[i][i];
    std::vector<BaseCandidate> group;
    while (true) {
      std::vector<double> y(n), v(n, 0.0);
      for (int i = 0; i < n; ++i) y[i] = static_cast<double>(beta[i] + 4 * z[i]) / d[i];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v[i] += sf.R[i][j] * y[j];
      BaseCandidate c;
      c.grading = th;
      for (int i = 0; i < n; ++i) c.angles.push_back(wrap4pi(kPi * v[i]));
      group.push_back(std::move(c));
      int i = 0;
      while (i < n && ++z[i] == d[i]) z[i++] = 0;
      if (i == n) break;
    }
    std::sort(group.begin(), group.end(),
              [](const BaseCandidate& a, const BaseCandidate& b) { return a.angles < b.angles; });
    for (auto& c : group) out.push_back(std::move(c));
  }
  if (out.empty())
    throw SolveError(degenerate ? "angle congruences have a continuous solution family"
                                : "angle congruences have no solution");

  for (auto& c : out) {
    for (int g = 0; g < n; ++g) c.rep.images.push_back(dihedral_image(c.grading[g], c.angles[g]));
    c.rep.residual = relator_residual(c.rep, p);
    c.meridian_trace = evaluate_word(c.rep, p.meridian).trace();
    c.longitude_trace = evaluate_word(c.rep, p.longitude).trace();
    for (int g = 0; g < n; ++g)
      if (c.grading[g] == 0 && !multiple_of_2pi(c.angles[g])) {
        c.g0 = g;
        break;
      }
    c.adjoint = twisted_h01(p, adjoint_module(c.rep));
    if (c.rep.residual > 1e-12)
      c.reason = "relators not satisfied";
    else if (std::abs(c.longitude_trace - 2.0) > 1e-9)
      c.reason = "longitude trace is not +2";
    else if (c.g0 < 0)
      c.reason = "no grading-0 generator with angle outside 2 pi Z";
    else if (!(c.adjoint == CohomologyDims{0, 1}))
      c.reason = "adjoint cohomology is (" + std::to_string(c.adjoint.h0) + "," +
                 std::to_string(c.adjoint.h1) + ")";
    c.admissible = c.reason.empty();
  }
  return out;
}

// --- slice Newton -------------------------------------------------------------

namespace {

std::vector<Mat2> unpack(const Eigen::VectorXcd& z, int n) {
  std::vector<Mat2> m(n);
  for (int g = 0; g < n; ++g) m[g] << z(4 * g), z(4 * g + 1), z(4 * g + 2), z(4 * g + 3);
  return m;
}

Eigen::VectorXcd pack(const std::vector<Mat2>& m) {
  Eigen::VectorXcd z(4 * m.size());
  for (std::size_t g = 0; g < m.size(); ++g) {
    z(4 * g) = m[g](0, 0);
    z(4 * g + 1) = m[g](0, 1);
    z(4 * g + 2) = m[g](1, 0);
    z(4 * g + 3) = m[g](1, 1);
  }
  return z;
}

std::vector<Mat2> images_of(const RepresentationPoint& rep) {
  std::vector<Mat2> m;
  for (const auto& g : rep.images) m.push_back(g.matrix());
  return m;
}

Eigen::VectorXcd slice_residual(const SliceSetup& s, const Eigen::VectorXcd& z, cplx target) {
  const auto& p = s.presentation;
  const int n = p.generator_count();
  auto im = unpack(z, n);
  const int rows = n + 3 * static_cast<int>(p.relators.size()) + 4;
  Eigen::VectorXcd r(rows);
  int k = 0;
  for (int g = 0; g < n; ++g) r(k++) = im[g].determinant() - 1.0;
  for (const auto& rel : p.relators) {
    Mat2 m = evaluate_word(im, rel);
    r(k++) = m(0, 0) - 1.0;
    r(k++) = m(0, 1);
    r(k++) = m(1, 0);
  }
  auto cm = algebra_coordinates(evaluate_word(im, p.meridian));
  r(k++) = cm[2];
  r(k++) = cm[3];
  r(k++) = algebra_coordinates(im[s.g0])[2];
  r(k++) = local_parameter(s, im) - target;
  return r;
}

Eigen::MatrixXcd slice_jacobian(const SliceSetup& s, const Eigen::VectorXcd& z, cplx target) {
  const int m = static_cast<int>(slice_residual(s, z, target).size());
  Eigen::MatrixXcd J(m, z.size());
  for (int j = 0; j < z.size(); ++j) {
    double h = 1e-7 * std::max(1.0, std::abs(z(j)));
    Eigen::VectorXcd zp = z, zm = z;
    zp(j) += h;
    zm(j) -= h;
    J.col(j) = (slice_residual(s, zp, target) - slice_residual(s, zm, target)) / (2 * h);
  }
  return J;
}

SlicePoint make_point(const SliceSetup& s, const std::vector<Mat2>& im, cplx w, double residual) {
  SlicePoint pt;
  pt.w = w;
  for (const auto& m : im) pt.rep.images.emplace_back(m);
  pt.rep.residual = relator_residual(pt.rep, s.presentation);
  cplx tm = evaluate_word(im, s.presentation.meridian).trace();
  pt.F = -2.0 * std::asin(0.5 * tm);
  pt.alpha = kPi + pt.F;
  pt.residual = std::max(residual, pt.rep.residual);
  return pt;
}

}  // namespace

SliceSetup make_slice(const Presentation& p, const BaseCandidate& base, SolverOptions options) {
  if (base.g0 < 0) throw SolveError("base representation has no gauge generator");
  SliceSetup s;
  s.presentation = p;
  s.base = base.rep;
  s.g0 = base.g0;
  s.options = options;
  return s;
}

cplx local_parameter(const SliceSetup& s, const std::vector<Mat2>& images) {
  const auto& p = s.presentation;
  cplx im = evaluate_word(images, p.meridian).trace();
  cplx ilm = evaluate_word(images, p.longitude * p.meridian).trace();
  return 2.0 * std::acos(0.5 * ilm) - 2.0 * std::acos(0.5 * im);
}

SlicePoint base_point(const SliceSetup& s) {
  auto im = images_of(s.base);
  return make_point(s, im, local_parameter(s, im), 0.0);
}

SlicePoint solve_slice(const SliceSetup& s, cplx target_w, const SlicePoint& seed) {
  const auto& o = s.options;
  Eigen::VectorXcd z = pack(images_of(seed.rep));
  Eigen::VectorXcd r = slice_residual(s, z, target_w);
  double norm = r.cwiseAbs().maxCoeff();
  Eigen::MatrixXcd J;
  for (int it = 0; it < o.max_iterations && norm > 1e-15; ++it) {
    J = slice_jacobian(s, z, target_w);
    Eigen::VectorXcd delta = J.colPivHouseholderQr().solve(-r);
    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h <= o.halvings; ++h, lambda *= 0.5) {
      Eigen::VectorXcd zt = z + lambda * delta;
      Eigen::VectorXcd rt = slice_residual(s, zt, target_w);
      double nt = rt.cwiseAbs().maxCoeff();
      if (std::isfinite(nt) && nt < norm) {
        z = zt;
        r = rt;
        norm = nt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (!(norm <= o.tolerance)) {
    if (J.size() == 0) J = slice_jacobian(s, z, target_w);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < 1e-10 * sv(0))
      throw SolveError("slice Jacobian rank drop (non-smooth point)");
    throw SolveError("Newton did not converge (residual " + std::to_string(norm) + ")");
  }
  return make_point(s, unpack(z, s.presentation.generator_count()), target_w, norm);
}

namespace {

SlicePoint advance(const SliceSetup& s, const SlicePoint& from, cplx target) {
  const auto& o = s.options;
  SlicePoint cur = from;
  double step = o.max_step;
  while (std::abs(target - cur.w) > 1e-15) {
    cplx delta = target - cur.w;
    cplx next = std::abs(delta) > step ? cur.w + delta / std::abs(delta) * step : target;
    try {
      cur = solve_slice(s, next, cur);
      step = std::min(o.max_step, 2 * step);
    } catch (const SolveError&) {
      step *= 0.5;
      if (step < o.min_step) throw SolveError("continuation stalled: minimum step reached");
    }
  }
  return cur;
}

}  // namespace

std::vector<SlicePoint> continue_path(const SliceSetup& s, std::span<const cplx> w_samples) {
  std::vector<SlicePoint> out;
  if (w_samples.empty()) return out;
  if (std::abs(w_samples[0]) > 1e-15) throw SolveError("path must start at w = 0");
  out.push_back(base_point(s));
  for (std::size_t k = 1; k < w_samples.size(); ++k) out.push_back(advance(s, out.back(), w_samples[k]));
  return out;
}

SlicePoint point_at(const SliceSetup& s, cplx w) { return advance(s, base_point(s), w); }

cplx F_of_w(const SlicePoint& pt) { return pt.F; }

void normalize_orientation(SliceSetup& s) {
  const double probe = 0.1;
  double ratio = point_at(s, probe).F.real() / (probe * probe * probe);
  if (ratio < 0) {
    s.presentation.longitude = word_invert(s.presentation.longitude);
    s.longitude_reversed = !s.longitude_reversed;
  }
}

double unitarity_defect(const RepresentationPoint& rep) {
  double d = 0.0;
  for (const auto& g : rep.images) {
    Mat2 u = g.matrix() * g.matrix().adjoint() - Mat2::Identity();
    d = std::max(d, u.cwiseAbs().maxCoeff());
  }
  return d;
}

double meridian_off_axis(const SliceSetup& s, const SlicePoint& pt) {
  auto c = algebra_coordinates(evaluate_word(pt.rep, s.presentation.meridian).matrix());
  return std::abs(c[2]) + std::abs(c[3]);
}

// --- odd series --------------------------------------------------------------

namespace {

bool fit3(std::span<const std::pair<double, double>> samples, double radius, double out[3],
          double* residual) {
  std::vector<std::pair<double, double>> use;
  std::vector<double> distinct;
  for (const auto& [w, f] : samples) {
    if (std::abs(w) > radius * (1 + 1e-12)) continue;
    use.emplace_back(w, f);
    if (w > 0) distinct.push_back(w);
  }
  if (distinct.size() < 3) return false;
  Eigen::MatrixXd A(use.size(), 3);
  Eigen::VectorXd b(use.size());
  for (std::size_t i = 0; i < use.size(); ++i) {
    double t = use[i].first / radius;
    A(i, 0) = t * t * t;
    A(i, 1) = A(i, 0) * t * t;
    A(i, 2) = A(i, 1) * t * t;
    b(i) = use[i].second;
  }
  auto qr = A.colPivHouseholderQr();
  if (qr.rank() < 3) return false;
  Eigen::Vector3d c = qr.solve(b);
  out[0] = c(0) / std::pow(radius, 3);
  out[1] = c(1) / std::pow(radius, 5);
  out[2] = c(2) / std::pow(radius, 7);
  if (residual) *residual = (A * c - b).cwiseAbs().maxCoeff();
  return true;
}

}  // namespace

OddSeries fit_odd_series(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 8) throw FitError("odd fit needs at least 8 samples");
  double radius = 0.0;
  for (const auto& s : samples) radius = std::max(radius, std::abs(s.first));
  for (const auto& [w, f] : samples) {
    bool mirrored = std::any_of(samples.begin(), samples.end(), [&](const auto& o) {
      return std::abs(o.first + w) <= 1e-12 * std::max(1.0, radius);
    });
    if (!mirrored) throw FitError("odd fit needs samples symmetric about 0");
  }
  OddSeries s;
  s.radius = radius;
  double c[3];
  if (!fit3(samples, radius, c, &s.residual)) throw FitError("odd fit is rank deficient");
  s.a3 = c[0];
  s.a5 = c[1];
  s.a7 = c[2];
  double h[3];
  if (fit3(samples, radius / 2, h, nullptr)) {
    s.a3_half = h[0];
    s.stable = std::abs(h[0] - s.a3) <= 0.01 * std::abs(s.a3);
  }
  return s;
}

std::vector<double> symmetric_grid(double radius, int n) {
  std::vector<double> g;
  for (int k = -n; k <= n; ++k) g.push_back(radius * k / n);
  return g;
}

namespace {

std::vector<std::pair<double, double>> real_axis_samples(const SliceSetup& s, double radius, int n) {
  std::vector<std::pair<double, double>> out{{0.0, 0.0}};
  for (int sign : {1, -1}) {
    std::vector<cplx> ws;
    for (int k = 0; k <= n; ++k) ws.emplace_back(sign * radius * k / n, 0.0);
    auto path = continue_path(s, ws);
    for (std::size_t k = 1; k < path.size(); ++k) out.emplace_back(ws[k].real(), path[k].F.real());
  }
  return out;
}

}  // namespace

BaseSelection select_base(const Presentation& p, double radius, int samples_per_side,
                          SolverOptions options) {
  BaseSelection sel;
  sel.candidates = dihedral_candidates(p);
  for (std::size_t i = 0; i < sel.candidates.size(); ++i) {
    const auto& c = sel.candidates[i];
    std::ostringstream os;
    os << "candidate " << i << " angles/pi (";
    for (std::size_t g = 0; g < c.angles.size(); ++g) os << (g ? "," : "") << c.angles[g] / kPi;
    os << ")";
    if (!c.admissible) {
      sel.log.push_back(os.str() + ": rejected, " + c.reason);
      continue;
    }
    try {
      SliceSetup s = make_slice(p, c, options);
      normalize_orientation(s);
      auto samples = real_axis_samples(s, radius, samples_per_side);
      OddSeries fit = fit_odd_series(samples);
      os << ": a3 = " << fit.a3 << (fit.stable ? " (stable)" : " (unstable)");
      if (fit.stable && fit.a3 > 0) {
        sel.log.push_back(os.str() + ", selected");
        sel.chosen = static_cast<int>(i);
        sel.slice = std::move(s);
        sel.series = fit;
        return sel;
      }
      sel.log.push_back(os.str() + ", rejected");
    } catch (const std::exception& e) {
      sel.log.push_back(os.str() + ": rejected, " + e.what());
    }
  }
  std::string msg = "no admissible base representation:";
  for (const auto& l : sel.log) msg += "\n  " + l;
  throw SolveError(msg);
}

RepresentationPoint dihedral_base_rep(const Presentation& p) {
  auto sel = select_base(p);
  return sel.slice.base;
}

std::vector<CharacterSample> character_samples(const SliceSetup& s, std::span<const SlicePoint> points) {
  const auto& p = s.presentation;
  std::vector<int> kept{0, 1};
  if (p.generator_count() != 2 || !p.substitutions.empty()) kept = two_generator_reduction(p).kept;
  std::vector<CharacterSample> out;
  for (const auto& pt : points) {
    const Mat2& A = pt.rep.images[kept[0]].matrix();
    const Mat2& B = pt.rep.images[kept[1]].matrix();
    CharacterSample c;
    c.x1 = A.trace();
    c.x2 = B.trace();
    c.x3 = (A * B).trace();
    c.x = evaluate_word(pt.rep, p.meridian).trace();
    c.y = evaluate_word(pt.rep, p.longitude).trace();
    out.push_back(c);
  }
  return out;
}

std::string path_csv(std::span<const SlicePoint> points) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "w_re,w_im,F_re,F_im,residual\n";
  for (const auto& p : points)
    os << p.w.real() << "," << p.w.imag() << "," << p.F.real() << "," << p.F.imag() << ","
       << p.residual << "\n";
  return os.str();
}

// --- germs ----------------------------------------------------------------------

ContinuationGerm::ContinuationGerm(SliceSetup setup, double trust_radius)
    : GermModel(trust_radius), setup_(std::move(setup)) {}

cplx ContinuationGerm::eval(cplx w) const {
  if (std::abs(w) < 1e-15) return 0.0;
  return point_at(setup_, w).F;
}

cplx ContinuationGerm::derivative(cplx w) const {
  const double h = 1e-3;
  auto D = [&](double hh) { return (eval(w + hh) - eval(w - hh)) / (2 * hh); };
  return (4.0 * D(h / 2) - D(h)) / 3.0;
}

CurveGerm::CurveGerm(const MultiPoly& curve, double trust_radius) : GermModel(trust_radius) {
  if (curve.vars() != std::vector<std::string>{"x", "y"})
    throw std::invalid_argument("curve must be a polynomial in (x, y)");
  const auto& v = curve.vars();
  MultiPoly shifted = curve.substitute(1, MultiPoly::variable(v, 1) + MultiPoly::constant(v, 2));
  coeff_.assign(std::max(shifted.degree(0) + 1, 1),
                std::vector<double>(std::max(shifted.degree(1) + 1, 1), 0.0));
  for (const auto& t : shifted.terms()) {
    auto e = shifted.exponents(t.first);
    coeff_[e[0]][e[1]] = t.second.get_d();
  }
  auto at0 = [&](std::size_t k) { return k < coeff_.size() ? coeff_[k][0] : 0.0; };
  if (at0(0) != 0.0 || at0(1) != 0.0 || at0(2) == 0.0)
    throw std::invalid_argument("curve does not have a double point at (x, y) = (0, 2)");
}

std::vector<cplx> CurveGerm::coefficients(cplx Y) const {
  std::vector<cplx> c(coeff_.size());
  for (std::size_t k = 0; k < coeff_.size(); ++k) {
    cplx s = 0.0;
    for (auto it = coeff_[k].rbegin(); it != coeff_[k].rend(); ++it) s = s * Y + *it;
    c[k] = s;
  }
  return c;
}

std::vector<cplx> CurveGerm::y_derivatives(cplx Y) const {
  std::vector<cplx> c(coeff_.size());
  for (std::size_t k = 0; k < coeff_.size(); ++k) {
    cplx s = 0.0;
    for (std::size_t j = coeff_[k].size(); j-- > 1;) s = s * Y + static_cast<double>(j) * coeff_[k][j];
    c[k] = s;
  }
  return c;
}

cplx CurveGerm::x_of(cplx w) const {
  if (std::abs(w) == 0.0) return 0.0;
  const cplx s4 = std::sin(0.25 * w);
  const cplx Y = -4.0 * s4 * s4;
  auto c = coefficients(Y);
  auto horner = [&](cplx x, cplx& dp) {
    cplx p = 0.0;
    dp = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      dp = dp * x + p;
      p = p * x + *it;
    }
    return p;
  };
  // Seeds from the quadratic part at the double point, then full Newton.
  cplx disc = std::sqrt(c[1] * c[1] - 4.0 * c[2] * c[0]);
  std::vector<cplx> roots{(-c[1] + disc) / (2.0 * c[2]), (-c[1] - disc) / (2.0 * c[2])};
  for (auto& x : roots) {
    for (int it = 0; it < 30; ++it) {
      cplx dp;
      cplx p = horner(x, dp);
      if (dp == 0.0) break;
      cplx dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * std::abs(x)) break;
    }
  }
  const cplx w3 = w * w * w;
  std::vector<cplx> picked;
  for (auto x : roots) {
    cplx F = -2.0 * std::asin(0.5 * x);
    if ((F / w3).real() > 0) picked.push_back(x);
  }
  if (picked.empty()) throw BranchCollisionError("no root on the positive branch", roots);
  if (picked.size() > 1) {
    if (std::abs(picked[0] - picked[1]) <= 1e-6)
      throw BranchCollisionError("branch collision near the double point", roots);
    std::sort(picked.begin(), picked.end(),
              [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
  }
  return picked[0];
}

cplx CurveGerm::eval(cplx w) const {
  if (std::abs(w) == 0.0) return 0.0;
  return -2.0 * std::asin(0.5 * x_of(w));
}

cplx CurveGerm::derivative(cplx w) const {
  if (std::abs(w) == 0.0) return 0.0;
  const cplx x = x_of(w);
  const cplx s4 = std::sin(0.25 * w);
  const cplx Y = -4.0 * s4 * s4;
  auto c = coefficients(Y);
  auto cy = y_derivatives(Y);
  cplx px = 0.0, py = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) {
    py = py * x + cy[k];
    if (k > 0) px = px * x + static_cast<double>(k) * c[k];
  }
  const cplx dY = -std::sin(0.5 * w);
  const cplx dx = -py * dY / px;
  return -dx / std::sqrt(1.0 - 0.25 * x * x);
}

cplx F_from_plane_curve(const MultiPoly& curve, cplx w) {
  CurveGerm g(curve, std::max(1.0, 2 * std::abs(w)));
  return g.F(w);
}

}  // namespace regen
