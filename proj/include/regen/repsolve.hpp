// Numerical representation variety near a binary dihedral representation:
// base point, slice continuation in the parameter w, and the germ F(w).
#pragma once

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "regen/cohom.hpp"
#include "regen/germ.hpp"
#include "regen/liealg.hpp"
#include "regen/multipoly.hpp"
#include "regen/presentation.hpp"
#include "regen/tracecalc.hpp"

namespace regen {

class SolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoGradingError : public SolveError {
 public:
  using SolveError::SolveError;
};

/// A binary dihedral representation: generator g with grading 0 goes to
/// exp(angle_g e3), grading 1 goes to exp(pi e1) exp(angle_g e3).
struct BaseCandidate {
  std::vector<int> grading;
  std::vector<double> angles;  // in [0, 4 pi)
  RepresentationPoint rep;
  std::complex<double> meridian_trace;
  std::complex<double> longitude_trace;
  /// First grading-0 generator whose angle is not a multiple of 2 pi, or -1.
  int g0 = -1;
  CohomologyDims adjoint{-1, -1};
  bool admissible = false;
  std::string reason;
};

/// All solutions of the angle congruences over all gradings with odd
/// meridian, in a deterministic order, each checked for admissibility:
/// tr rho(longitude) = +2, a gauge generator exists, and the adjoint
/// cohomology is (0, 1).
std::vector<BaseCandidate> dihedral_candidates(const Presentation& p);

struct SolverOptions {
  double tolerance = 1e-12;
  int max_iterations = 50;
  int halvings = 20;
  /// Largest w increment per corrector call during continuation.
  double max_step = 0.05;
  double min_step = 1e-6;
};

/// Presentation plus gauge data for the slice through a base representation.
struct SliceSetup {
  Presentation presentation;
  RepresentationPoint base;
  int g0 = -1;
  /// True when the longitude was replaced by its inverse so that the germ's
  /// cubic coefficient is positive.
  bool longitude_reversed = false;
  SolverOptions options;
};

SliceSetup make_slice(const Presentation& p, const BaseCandidate& base, SolverOptions options = {});

struct SlicePoint {
  std::complex<double> w;
  RepresentationPoint rep;
  std::complex<double> alpha;  // rho(meridian) = exp(alpha e1)
  std::complex<double> F;      // alpha - pi
  double residual = 0.0;       // worst of relator, gauge and w residuals
};

SlicePoint base_point(const SliceSetup& s);

/// w = 2 acos(tr(lm)/2) - 2 acos(tr(m)/2) of a representation.
std::complex<double> local_parameter(const SliceSetup& s, const std::vector<Mat2>& images);

/// Newton corrector onto the slice point with the given w.
SlicePoint solve_slice(const SliceSetup& s, std::complex<double> target_w, const SlicePoint& seed);

/// Threads the slice along the samples (first sample must be 0), halving the
/// step on failure down to options.min_step.
std::vector<SlicePoint> continue_path(const SliceSetup& s,
                                      std::span<const std::complex<double>> w_samples);

/// Point at w reached along the straight segment from the base point.
SlicePoint point_at(const SliceSetup& s, std::complex<double> w);

std::complex<double> F_of_w(const SlicePoint& pt);

/// Reverses the longitude if the germ has a negative cubic coefficient.
void normalize_orientation(SliceSetup& s);

/// Largest deviation of any image from SU(2).
double unitarity_defect(const RepresentationPoint& rep);

/// Off-axis part of rho(meridian): |e2| + |e3| coefficients.
double meridian_off_axis(const SliceSetup& s, const SlicePoint& pt);

struct OddSeries {
  double a3 = 0, a5 = 0, a7 = 0;
  double residual = 0;  // max |fit - F|
  double radius = 0;
  double a3_half = 0;   // refit on |w| <= radius / 2
  bool stable = false;  // |a3_half - a3| <= 1% of |a3|
};

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Least squares on w^3, w^5, w^7 over real samples symmetric about 0.
OddSeries fit_odd_series(std::span<const std::pair<double, double>> samples);

/// Symmetric sample grid {-r, ..., r} with 2n+1 points.
std::vector<double> symmetric_grid(double radius, int n);

struct BaseSelection {
  std::vector<BaseCandidate> candidates;
  int chosen = -1;
  SliceSetup slice;
  OddSeries series;
  std::vector<std::string> log;
};

/// Picks the first admissible candidate whose real-axis continuation gives a
/// stable odd fit with positive cubic coefficient.
BaseSelection select_base(const Presentation& p, double radius = 0.3, int samples_per_side = 12,
                          SolverOptions options = {});

/// Convenience: the selected base representation.
RepresentationPoint dihedral_base_rep(const Presentation& p);

/// Characters (x1, x2, x3, x, y) of slice points, in the trace coordinates of
/// the two-generator reduction.
std::vector<CharacterSample> character_samples(const SliceSetup& s,
                                               std::span<const SlicePoint> points);

/// Path dump: w_re,w_im,F_re,F_im,residual.
std::string path_csv(std::span<const SlicePoint> points);

/// Germ evaluated by continuation from the base point along the ray to w.
class ContinuationGerm final : public GermModel {
 public:
  ContinuationGerm(SliceSetup setup, double trust_radius = 0.3);
  std::string name() const override { return "continuation"; }
  const SliceSetup& setup() const { return setup_; }

 protected:
  std::complex<double> eval(std::complex<double> w) const override;
  std::complex<double> derivative(std::complex<double> w) const override;

 private:
  SliceSetup setup_;
};

class BranchCollisionError : public std::runtime_error {
 public:
  BranchCollisionError(const std::string& what, std::vector<std::complex<double>> roots)
      : std::runtime_error(what), roots_(std::move(roots)) {}
  const std::vector<std::complex<double>>& roots() const { return roots_; }

 private:
  std::vector<std::complex<double>> roots_;
};

/// Germ read off a plane curve P(x, y) with a double point at (0, 2):
/// x(w) solves P(x, 2 cos(w/2)) = 0 on the branch through 0 with
/// Re(F / w^3) > 0, and F = -2 asin(x/2).
class CurveGerm final : public GermModel {
 public:
  CurveGerm(const MultiPoly& curve, double trust_radius = 0.3);
  std::string name() const override { return "curve"; }
  /// Root x(w) of the selected branch.
  std::complex<double> x_of(std::complex<double> w) const;

 protected:
  std::complex<double> eval(std::complex<double> w) const override;
  std::complex<double> derivative(std::complex<double> w) const override;

 private:
  std::vector<std::complex<double>> coefficients(std::complex<double> Y) const;
  std::vector<std::complex<double>> y_derivatives(std::complex<double> Y) const;

  // coeff_[k][j]: coefficient of x^k Y^j with Y = y - 2.
  std::vector<std::vector<double>> coeff_;
};

std::complex<double> F_from_plane_curve(const MultiPoly& curve, std::complex<double> w);

}  // namespace regen
