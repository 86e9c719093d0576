#include "regen/conepath.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace regen {

std::vector<double> cone_samples(double s_max, int per_octave, int octaves) {
  std::vector<double> s{0.0};
  for (int j = octaves * per_octave; j >= 0; --j)
    s.push_back(s_max * std::exp2(-static_cast<double>(j) / per_octave));
  return s;
}

std::vector<ConePathSample> cone_path(const GermModel& F, std::span<const double> s_samples) {
  std::vector<ConePathSample> out;
  double prev_s = -1.0, ratio = 3.0;
  for (double s : s_samples) {
    if (s <= prev_s) throw ConePathError("cone path samples must increase");
    prev_s = s;
    if (s == 0.0) {
      out.push_back({0.0, 0.0, kPi, 0.0, 0.0, 0.0});
      continue;
    }
    auto q_at = [&](double tau) { return dehn_coefficients(F, {s, tau}).q; };
    // Secant in tau, seeded from the previous sample's tau / s^2.
    double t0 = ratio * s * s, t1 = t0 * 1.01;
    double q0 = q_at(t0), q1 = q_at(t1);
    bool done = false;
    for (int it = 0; it < 60 && !done; ++it) {
      if (q1 == q0) {
        done = true;
        break;
      }
      double t2 = t1 - q1 * (t1 - t0) / (q1 - q0);
      if (t2 <= 0) throw ConePathError("cone path left the hyperbolic side at s=" + std::to_string(s));
      t0 = t1;
      q0 = q1;
      t1 = t2;
      q1 = q_at(t1);
      done = std::abs(t1 - t0) <= 1e-14 * t1 || q1 == 0.0;
    }
    if (!done) throw ConePathError("cone path secant failed at s=" + std::to_string(s));
    auto d = dehn_coefficients(F, {s, t1});
    if (std::abs(d.q) > 1e-10) throw ConePathError("cone path q residual too large at s=" + std::to_string(s));
    ratio = t1 / (s * s);
    out.push_back({s, t1, 2 * kPi / d.p, std::sqrt(t1), 0.0, std::abs(d.q)});
  }
  return out;
}

std::vector<ConePathSample> schlafli_volume(std::vector<ConePathSample> path) {
  for (std::size_t k = 1; k < path.size(); ++k) {
    const double da = path[k].alpha - path[k - 1].alpha;
    if (da > 0) throw ConePathError("cone angle is not monotone along the path");
    path[k].vol = path[k - 1].vol - 0.25 * (path[k].length + path[k - 1].length) * da;
  }
  if (!path.empty()) path[0].vol = 0.0;
  return path;
}

double volume_refinement_change(std::span<const ConePathSample> path) {
  if (path.size() < 3) return 0.0;
  std::vector<ConePathSample> coarse;
  for (std::size_t k = 0; k < path.size(); k += 2) coarse.push_back(path[k]);
  if (coarse.back().s != path.back().s) coarse.push_back(path.back());
  const double fine = schlafli_volume({path.begin(), path.end()}).back().vol;
  const double rough = schlafli_volume(coarse).back().vol;
  return fine == 0.0 ? 0.0 : std::abs(rough - fine) / std::abs(fine);
}

PathLimits path_limits(std::span<const ConePathSample> path, double s_top, int levels) {
  PathLimits lim;
  for (double s : dyadic_ladder(s_top, levels)) {
    auto it = std::find_if(path.begin(), path.end(),
                           [&](const ConePathSample& c) { return std::abs(c.s - s) <= 1e-12 * s; });
    if (it == path.end()) throw ConePathError("path has no sample at ladder point s=" + std::to_string(s));
    const double gap = kPi - it->alpha;
    lim.ladder_s.push_back(s);
    lim.ratio_ladder.push_back(it->vol / (gap * it->length));
    lim.l0_ladder.push_back(it->length / std::cbrt(gap));
    lim.vol_ladder.push_back(it->vol / std::pow(s, 4));
  }
  auto converge = [&](const std::vector<double>& y) {
    double c0 = fit_line(lim.ladder_s, y).c0;
    if (y.size() >= 4) {
      std::vector<double> xa(lim.ladder_s.begin(), lim.ladder_s.end() - 1), ya(y.begin(), y.end() - 1);
      std::vector<double> xb(lim.ladder_s.begin() + 1, lim.ladder_s.end()), yb(y.begin() + 1, y.end());
      double a = fit_line(xa, ya).c0, b = fit_line(xb, yb).c0;
      if (std::abs(a - b) > 0.05 * std::abs(b)) throw ConePathError("limit ladder does not converge");
    }
    return c0;
  };
  lim.ratio_vol = converge(lim.ratio_ladder);
  lim.l0_est = converge(lim.l0_ladder);
  lim.vol_s4 = converge(lim.vol_ladder);
  return lim;
}

std::string cone_path_csv(std::span<const ConePathSample> path) {
  std::ostringstream os;
  os << std::setprecision(12) << "s,tau,alpha,length,vol,vol_ratio,l0_running\n";
  for (const auto& c : path) {
    const double gap = kPi - c.alpha;
    const double ratio = gap > 0 && c.length > 0 ? c.vol / (gap * c.length) : 0.0;
    const double l0 = gap > 0 ? c.length / std::cbrt(gap) : 0.0;
    os << c.s << "," << c.tau << "," << c.alpha << "," << c.length << "," << c.vol << "," << ratio << ","
       << l0 << "\n";
  }
  return os.str();
}

}  // namespace regen
