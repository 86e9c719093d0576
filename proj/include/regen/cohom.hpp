// Group cohomology in degrees 0 and 1 with twisted real coefficients,
// computed from a presentation by Fox calculus.
#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "regen/liealg.hpp"
#include "regen/presentation.hpp"

namespace regen {

/// A real representation of the generators; relators must act trivially.
struct TwistedModule {
  int dimension = 0;
  std::vector<Eigen::MatrixXd> action;
};

struct CohomologyDims {
  int h0 = 0;
  int h1 = 0;
  friend bool operator==(const CohomologyDims&, const CohomologyDims&) = default;
};

/// Image of a word under the module action.
Eigen::MatrixXd act(const TwistedModule& m, const Word& w);

/// Fox derivative d w / d x_j evaluated in the module, one matrix per generator.
std::vector<Eigen::MatrixXd> fox_jacobian(const TwistedModule& m, const Word& w);

/// Coboundary V -> V^g, v -> (g_i v - v).
Eigen::MatrixXd coboundary0(const Presentation& p, const TwistedModule& m);
/// Cocycle map V^g -> V^r given by the Fox Jacobian of the relators.
Eigen::MatrixXd coboundary1(const Presentation& p, const TwistedModule& m);

/// Number of singular values above threshold * max(1, largest).
int numerical_rank(const Eigen::MatrixXd& a, double threshold = 1e-8);

/// dim H^0 = dim of the fixed space; dim H^1 = dim ker d1 - rank d0.
CohomologyDims twisted_h01(const Presentation& p, const TwistedModule& m,
                           double threshold = 1e-8);

TwistedModule trivial_module(const Presentation& p);
/// Adjoint action on su(2) in the basis (e1, e2, e3). The images must be
/// unitary up to rounding so that the action is real.
TwistedModule adjoint_module(const RepresentationPoint& rep);
/// Restriction of the adjoint action to the (e1, e2) plane.
TwistedModule plane_module(const RepresentationPoint& rep);
/// Action on the e3 line: the sign by which each image flips the axis.
TwistedModule axis_module(const RepresentationPoint& rep);

}  // namespace regen
