// Dehn filling coefficients (p, q) on the deformation half-disc (s, tau),
// their Jacobian, fold and boundary curves, inversion and limits.
#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "regen/germ.hpp"
#include "regen/repsolve.hpp"

namespace regen {

enum class Geometry { hyperbolic, spherical, euclidean };

std::string to_string(Geometry g);

/// tau = t^2 on the hyperbolic side, tau = -t^2 on the spherical side.
struct DefPoint {
  double s = 0.0;
  double tau = 0.0;
  Geometry geometry() const;
  double t() const;
};

struct HolonomyLengths {
  std::complex<double> u, v;
  /// Real parts divided by t (Euclidean limit at tau = 0).
  std::complex<double> u_reg, v_reg;
};

struct DehnCoefficients {
  double p = 0.0;
  double q = 0.0;
};

class DehnError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

HolonomyLengths uv_lengths(const GermModel& F, DefPoint pt);

/// Solves p u + q v = 2 pi i in the regularized lengths.
DehnCoefficients dehn_coefficients(const GermModel& F, DefPoint pt);

struct MapDerivative {
  double p_s = 0, p_tau = 0, q_s = 0, q_tau = 0;
  double det() const { return p_s * q_tau - p_tau * q_s; }
};

/// Central differences with h = 1e-4 max(1, |s|, |tau|), one Richardson step.
MapDerivative map_derivative(const GermModel& F, DefPoint pt);

double jacobian(const GermModel& F, DefPoint pt);

/// (s, tau, p, q) along one of the distinguished curves.
struct CurveSample {
  double s = 0, tau = 0, p = 0, q = 0;
};

/// Zero set of the Jacobian near tau = -9 s^2 by secant iteration in tau.
/// Samples where the iteration fails are skipped and described in `skipped`.
std::vector<CurveSample> fold_curve(const GermModel& F, std::span<const double> s_samples,
                                    std::vector<std::string>* skipped = nullptr);

/// Image of the Euclidean segment tau = 0.
std::vector<CurveSample> g_curve(const GermModel& F, std::span<const double> s_samples);

/// Segments s = 0 (tau in the given list) and tau = -s^2.
std::vector<CurveSample> s0_segment(const GermModel& F, std::span<const double> tau_samples);
std::vector<CurveSample> spherical_diagonal(const GermModel& F, std::span<const double> s_samples);

/// n x n seeds on (0, s_max] x [-tau_max, tau_max].
std::vector<DefPoint> seed_grid(double s_max, double tau_max, int n);

/// Newton from every seed; solutions with s >= 0 are merged when they agree to
/// 1e-6 or their midpoint is also a solution, and are
/// verified by forward evaluation to 1e-8.
std::vector<DefPoint> invert_dehn(const GermModel& F, DehnCoefficients target,
                                  std::span<const DefPoint> seeds);

struct LinearFit {
  double c0 = 0, c1 = 0;
};

/// Least squares y = c0 + c1 x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// top, top/2, ..., top/2^(levels-1).
std::vector<double> dyadic_ladder(double top, int levels);

/// Odd fit of F on a symmetric real grid filling its trust radius.
OddSeries germ_series(const GermModel& F, int samples_per_side = 12);

struct AsymptoticLimits {
  double a3 = 0;
  double lim_f = 0;
  double lim_g = 0;
  /// sqrt(3) / (2 a3^(1/3)).
  double l0 = 0;
  /// 4 l0^(3/2) / (9 3^(1/4) pi).
  double closed_form = 0;
  std::vector<double> f_ladder, g_ladder;
};

/// Extrapolates (2 - f(q))/|q|^(3/2) on the fold image and (g(q) - 2)/|q|^(3/2)
/// on the g-curve by c0 + c1 |q|^(1/2) over a dyadic ladder in s.
AsymptoticLimits asymptotic_limits(const GermModel& F, double s_top = 0.05, int levels = 6);

/// s,tau,p,q,J,region over the product grid.
std::string grid_csv(const GermModel& F, std::span<const double> s_values,
                     std::span<const double> tau_values);

/// curve,s,tau,p,q rows.
std::string curve_csv(const std::string& id, std::span<const CurveSample> samples, bool header);

}  // namespace regen
