// The cone-manifold path q = 0: cone angle, singular length and volume.
#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "regen/dehnmap.hpp"
#include "regen/germ.hpp"

namespace regen {

struct ConePathSample {
  double s = 0;
  double tau = 0;
  double alpha = 0;   // 2 pi / p
  double length = 0;  // sqrt(tau)
  double vol = 0;
  double q_residual = 0;
};

class ConePathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 0 followed by s_max 2^(-j/per_octave), j = octaves*per_octave .. 0, so
/// every dyadic fraction of s_max down to 2^-octaves is a sample.
std::vector<double> cone_samples(double s_max, int per_octave = 16, int octaves = 12);

/// Solves q(s, tau) = 0 for tau near 3 s^2 at each s (increasing from 0).
std::vector<ConePathSample> cone_path(const GermModel& F, std::span<const double> s_samples);

/// Cumulative trapezoidal integral of -length/2 d(alpha), vol(pi) = 0.
std::vector<ConePathSample> schlafli_volume(std::vector<ConePathSample> path);

/// Relative change of the final volume when every other sample is dropped.
double volume_refinement_change(std::span<const ConePathSample> path);

struct PathLimits {
  /// vol / ((pi - alpha) length) extrapolated to s = 0.
  double ratio_vol = 0;
  /// length / (pi - alpha)^(1/3) extrapolated to s = 0.
  double l0_est = 0;
  /// vol / s^4 extrapolated to s = 0.
  double vol_s4 = 0;
  std::vector<double> ladder_s, ratio_ladder, l0_ladder, vol_ladder;
};

/// c0 + c1 s fits over the samples at s_top / 2^k, k < levels.
PathLimits path_limits(std::span<const ConePathSample> path, double s_top, int levels = 6);

/// s,tau,alpha,length,vol,vol_ratio,l0_running
std::string cone_path_csv(std::span<const ConePathSample> path);

}  // namespace regen
