#include "regen/dehnmap.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <Eigen/Dense>

namespace regen {

std::string to_string(Geometry g) {
  switch (g) {
    case Geometry::hyperbolic:
      return "hyperbolic";
    case Geometry::spherical:
      return "spherical";
    case Geometry::euclidean:
      return "euclidean";
  }
  return "?";
}

Geometry DefPoint::geometry() const {
  if (tau > 0) return Geometry::hyperbolic;
  if (tau < 0) return Geometry::spherical;
  return Geometry::euclidean;
}

double DefPoint::t() const { return std::sqrt(std::abs(tau)); }

HolonomyLengths uv_lengths(const GermModel& F, DefPoint pt) {
  const double s = pt.s, t = pt.t();
  HolonomyLengths h;
  h.v_reg = cplx(1.0, s);
  switch (pt.geometry()) {
    case Geometry::hyperbolic: {
      cplx f = F.F(cplx(s, t));
      h.u_reg = cplx(f.imag() / t, kPi + f.real());
      h.u = cplx(f.imag(), kPi + f.real());
      h.v = cplx(t, s);
      break;
    }
    case Geometry::spherical: {
      cplx fp = F.F(s + t), fm = F.F(s - t);
      h.u = cplx((fp - fm).real() / 2, kPi + (fp + fm).real() / 2);
      h.u_reg = cplx((fp - fm).real() / (2 * t), h.u.imag());
      h.v = cplx(t, s);
      break;
    }
    case Geometry::euclidean: {
      h.u_reg = cplx(F.dF(s).real(), kPi + F.F(s).real());
      // real parts of u and v vanish with t
      h.u = cplx(0.0, h.u_reg.imag());
      h.v = cplx(0.0, s);
      break;
    }
  }
  return h;
}

DehnCoefficients dehn_coefficients(const GermModel& F, DefPoint pt) {
  auto h = uv_lengths(F, pt);
  const double den = h.u_reg.imag() * h.v_reg.real() - h.u_reg.real() * h.v_reg.imag();
  if (std::abs(den) < 1e-12) throw DehnError("singular filling system");
  DehnCoefficients d;
  d.p = 2 * kPi * h.v_reg.real() / den;
  d.q = -d.p * h.u_reg.real() / h.v_reg.real();
  return d;
}

MapDerivative map_derivative(const GermModel& F, DefPoint pt) {
  const double h = 1e-4 * std::max({1.0, std::abs(pt.s), std::abs(pt.tau)});
  auto diff = [&](double hh) {
    auto at = [&](double ds, double dt) { return dehn_coefficients(F, {pt.s + ds, pt.tau + dt}); };
    auto sp = at(hh, 0), sm = at(-hh, 0), tp = at(0, hh), tm = at(0, -hh);
    return MapDerivative{(sp.p - sm.p) / (2 * hh), (tp.p - tm.p) / (2 * hh), (sp.q - sm.q) / (2 * hh),
                         (tp.q - tm.q) / (2 * hh)};
  };
  MapDerivative a = diff(h), b = diff(h / 2);
  auto rich = [](double coarse, double fine) { return (4 * fine - coarse) / 3; };
  return {rich(a.p_s, b.p_s), rich(a.p_tau, b.p_tau), rich(a.q_s, b.q_s), rich(a.q_tau, b.q_tau)};
}

double jacobian(const GermModel& F, DefPoint pt) { return map_derivative(F, pt).det(); }

namespace {

CurveSample sample_at(const GermModel& F, double s, double tau) {
  auto d = dehn_coefficients(F, {s, tau});
  return {s, tau, d.p, d.q};
}

}  // namespace

std::vector<CurveSample> fold_curve(const GermModel& F, std::span<const double> s_samples,
                                    std::vector<std::string>* skipped) {
  std::vector<CurveSample> out;
  for (double s : s_samples) {
    if (s == 0.0) {
      out.push_back(sample_at(F, 0.0, 0.0));
      continue;
    }
    try {
      double t0 = -9 * s * s, t1 = t0 * 1.01;
      double j0 = jacobian(F, {s, t0}), j1 = jacobian(F, {s, t1});
      // J carries rounding noise of about 1e-13, so the iteration stops at
      // its noise floor; the iterate with the smallest |J| is kept.
      double best = std::abs(j0) < std::abs(j1) ? t0 : t1, best_j = std::min(std::abs(j0), std::abs(j1));
      bool close = false;
      for (int it = 0; it < 50; ++it) {
        if (j1 == j0) break;
        double t2 = t1 - j1 * (t1 - t0) / (j1 - j0);
        const double step = std::abs(t2 - t1);
        if (step <= 1e-3 * s * s) close = true;
        t0 = t1;
        j0 = j1;
        t1 = t2;
        try {
          j1 = jacobian(F, {s, t1});
        } catch (const TrustRadiusError&) {
          break;
        }
        if (std::abs(j1) < best_j) {
          best_j = std::abs(j1);
          best = t1;
        }
        if (step <= 1e-12 * s * s) break;
      }
      if (!close) throw DehnError("fold secant did not converge");
      t1 = best;
      out.push_back(sample_at(F, s, t1));
    } catch (const std::exception& e) {
      if (skipped) skipped->push_back("s=" + std::to_string(s) + ": " + e.what());
    }
  }
  return out;
}

std::vector<CurveSample> g_curve(const GermModel& F, std::span<const double> s_samples) {
  std::vector<CurveSample> out;
  for (double s : s_samples) {
    const double f = F.F(s).real(), df = F.dF(s).real();
    const double p = 2 * kPi / (kPi + f - s * df);
    out.push_back({s, 0.0, p, -p * df});
  }
  return out;
}

std::vector<CurveSample> s0_segment(const GermModel& F, std::span<const double> tau_samples) {
  std::vector<CurveSample> out;
  for (double tau : tau_samples) out.push_back(sample_at(F, 0.0, tau));
  return out;
}

std::vector<CurveSample> spherical_diagonal(const GermModel& F, std::span<const double> s_samples) {
  std::vector<CurveSample> out;
  for (double s : s_samples) out.push_back(sample_at(F, s, -s * s));
  return out;
}

std::vector<DefPoint> seed_grid(double s_max, double tau_max, int n) {
  std::vector<DefPoint> seeds;
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < n; ++j)
      seeds.push_back({s_max * i / n, n > 1 ? -tau_max + 2 * tau_max * j / (n - 1) : 0.0});
  return seeds;
}

std::vector<DefPoint> invert_dehn(const GermModel& F, DehnCoefficients target,
                                  std::span<const DefPoint> seeds) {
  auto miss = [&](DefPoint x) {
    auto d = dehn_coefficients(F, x);
    return std::max(std::abs(d.p - target.p), std::abs(d.q - target.q));
  };
  std::vector<DefPoint> found;
  for (const auto& seed : seeds) {
    DefPoint x = seed;
    try {
      bool converged = false;
      for (int it = 0; it < 60; ++it) {
        auto d = dehn_coefficients(F, x);
        Eigen::Vector2d r(d.p - target.p, d.q - target.q);
        if (r.cwiseAbs().maxCoeff() <= 1e-13) {
          converged = true;
          break;
        }
        auto D = map_derivative(F, x);
        Eigen::Matrix2d J;
        J << D.p_s, D.p_tau, D.q_s, D.q_tau;
        Eigen::Vector2d step = J.fullPivLu().solve(-r);
        if (!step.allFinite()) break;
        // Keep steps inside the seed's neighbourhood scale.
        const double limit = 0.5 * std::max(std::abs(x.s) + std::sqrt(std::abs(x.tau)), 1e-8);
        const double len = std::max(std::abs(step(0)), std::sqrt(std::abs(step(1))));
        if (len > limit) step *= limit / len;
        x.s += step(0);
        x.tau += step(1);
      }
      if (!converged || x.s < -1e-10) continue;
      x.s = std::max(x.s, 0.0);
      if (miss(x) > 1e-8) continue;
      // Near a degenerate root Newton stalls at scattered points; two solutions
      // whose midpoint also solves the system belong to the same root.
      auto same = std::find_if(found.begin(), found.end(), [&](const DefPoint& y) {
        if (std::abs(y.s - x.s) <= 1e-6 && std::abs(y.tau - x.tau) <= 1e-6) return true;
        return miss({0.5 * (x.s + y.s), 0.5 * (x.tau + y.tau)}) <= 1e-8;
      });
      if (same == found.end())
        found.push_back(x);
      else if (miss(x) < miss(*same))
        *same = x;
    } catch (const std::exception&) {
      // Seed left the trust region or hit a singular system.
    }
  }
  if (found.empty()) throw DehnError("no preimage found from any seed");
  std::sort(found.begin(), found.end(), [](const DefPoint& a, const DefPoint& b) {
    return a.s != b.s ? a.s < b.s : a.tau < b.tau;
  });
  return found;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("line fit needs >= 2 points");
  Eigen::MatrixXd A(x.size(), 2);
  Eigen::VectorXd b(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = x[i];
    b(i) = y[i];
  }
  Eigen::Vector2d c = A.colPivHouseholderQr().solve(b);
  return {c(0), c(1)};
}

std::vector<double> dyadic_ladder(double top, int levels) {
  std::vector<double> out;
  for (int k = 0; k < levels; ++k) out.push_back(std::ldexp(top, -k));
  return out;
}

OddSeries germ_series(const GermModel& F, int samples_per_side) {
  std::vector<std::pair<double, double>> samples;
  for (double w : symmetric_grid(F.trust_radius(), samples_per_side))
    samples.emplace_back(w, F.F(w).real());
  return fit_odd_series(samples);
}

namespace {

// Extrapolates a ladder to |q| -> 0; throws if the two halves of the ladder
// disagree by more than 5%.
double extrapolate(const std::vector<double>& root_q, const std::vector<double>& values) {
  LinearFit all = fit_line(root_q, values);
  const std::size_t n = values.size();
  if (n >= 4) {
    std::vector<double> xa(root_q.begin(), root_q.end() - 1), ya(values.begin(), values.end() - 1);
    std::vector<double> xb(root_q.begin() + 1, root_q.end()), yb(values.begin() + 1, values.end());
    double a = fit_line(xa, ya).c0, b = fit_line(xb, yb).c0;
    if (std::abs(a - b) > 0.05 * std::abs(b)) throw DehnError("limit ladder does not converge");
  }
  return all.c0;
}

}  // namespace

AsymptoticLimits asymptotic_limits(const GermModel& F, double s_top, int levels) {
  AsymptoticLimits lim;
  OddSeries series = germ_series(F);
  if (!series.stable || series.a3 <= 0) throw DehnError("germ is not a validated branch (a3 <= 0 or unstable)");
  lim.a3 = series.a3;
  lim.l0 = std::sqrt(3.0) / (2 * std::cbrt(lim.a3));
  lim.closed_form = 4 * std::pow(lim.l0, 1.5) / (9 * std::pow(3.0, 0.25) * kPi);

  auto ladder = dyadic_ladder(s_top, levels);
  std::vector<std::string> skipped;
  auto fold = fold_curve(F, ladder, &skipped);
  if (fold.size() != ladder.size()) throw DehnError("fold curve failed on the ladder");
  auto g = g_curve(F, ladder);
  std::vector<double> xf, xg;
  for (const auto& c : fold) {
    xf.push_back(std::sqrt(std::abs(c.q)));
    lim.f_ladder.push_back((2 - c.p) / std::pow(std::abs(c.q), 1.5));
  }
  for (const auto& c : g) {
    xg.push_back(std::sqrt(std::abs(c.q)));
    lim.g_ladder.push_back((c.p - 2) / std::pow(std::abs(c.q), 1.5));
  }
  lim.lim_f = extrapolate(xf, lim.f_ladder);
  lim.lim_g = extrapolate(xg, lim.g_ladder);
  return lim;
}

std::string grid_csv(const GermModel& F, std::span<const double> s_values,
                     std::span<const double> tau_values) {
  std::ostringstream os;
  os << std::setprecision(12) << "s,tau,p,q,J,region\n";
  for (double s : s_values)
    for (double tau : tau_values) {
      DefPoint pt{s, tau};
      auto d = dehn_coefficients(F, pt);
      os << s << "," << tau << "," << d.p << "," << d.q << "," << jacobian(F, pt) << ","
         << to_string(pt.geometry()) << "\n";
    }
  return os.str();
}

std::string curve_csv(const std::string& id, std::span<const CurveSample> samples, bool header) {
  std::ostringstream os;
  os << std::setprecision(12);
  if (header) os << "curve,s,tau,p,q\n";
  for (const auto& c : samples) os << id << "," << c.s << "," << c.tau << "," << c.p << "," << c.q << "\n";
  return os.str();
}

}  // namespace regen
