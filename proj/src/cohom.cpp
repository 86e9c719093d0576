#include "regen/cohom.hpp"

#include <stdexcept>

namespace regen {

namespace {

void check(const Presentation& p, const TwistedModule& m) {
  if (static_cast<int>(m.action.size()) != p.generator_count())
    throw std::invalid_argument("module needs one action matrix per generator");
  for (const auto& a : m.action)
    if (a.rows() != m.dimension || a.cols() != m.dimension)
      throw std::invalid_argument("action matrix has the wrong size");
}

Eigen::MatrixXd power(const Eigen::MatrixXd& a, int k) {
  Eigen::MatrixXd b = k < 0 ? Eigen::MatrixXd(a.inverse()) : a;
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  for (int i = 0; i < std::abs(k); ++i) r = r * b;
  return r;
}

Eigen::Matrix3d real_adjoint(const Sl2Element& g) {
  Mat3 ad = adjoint(g);
  if (ad.imag().cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("adjoint action is not real; image is not unitary");
  return ad.real();
}

}  // namespace

Eigen::MatrixXd act(const TwistedModule& m, const Word& w) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(m.dimension, m.dimension);
  for (const auto& l : w.letters()) r = r * power(m.action.at(l.generator), l.exponent);
  return r;
}

std::vector<Eigen::MatrixXd> fox_jacobian(const TwistedModule& m, const Word& w) {
  const int d = m.dimension;
  std::vector<Eigen::MatrixXd> jac(m.action.size(), Eigen::MatrixXd::Zero(d, d));
  Eigen::MatrixXd prefix = Eigen::MatrixXd::Identity(d, d);
  for (const auto& l : w.letters()) {
    const Eigen::MatrixXd& g = m.action.at(l.generator);
    Eigen::MatrixXd ginv = g.inverse();
    for (int k = 0; k < std::abs(l.exponent); ++k) {
      if (l.exponent > 0) {
        jac[l.generator] += prefix;
        prefix = prefix * g;
      } else {
        prefix = prefix * ginv;
        jac[l.generator] -= prefix;
      }
    }
  }
  return jac;
}

Eigen::MatrixXd coboundary0(const Presentation& p, const TwistedModule& m) {
  check(p, m);
  const int d = m.dimension, g = p.generator_count();
  Eigen::MatrixXd d0(g * d, d);
  for (int i = 0; i < g; ++i)
    d0.block(i * d, 0, d, d) = m.action[i] - Eigen::MatrixXd::Identity(d, d);
  return d0;
}

Eigen::MatrixXd coboundary1(const Presentation& p, const TwistedModule& m) {
  check(p, m);
  const int d = m.dimension, g = p.generator_count();
  const int r = static_cast<int>(p.relators.size());
  Eigen::MatrixXd d1 = Eigen::MatrixXd::Zero(r * d, g * d);
  for (int k = 0; k < r; ++k) {
    auto jac = fox_jacobian(m, p.relators[k]);
    for (int j = 0; j < g; ++j) d1.block(k * d, j * d, d, d) = jac[j];
  }
  return d1;
}

int numerical_rank(const Eigen::MatrixXd& a, double threshold) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  double cut = threshold * std::max(1.0, s.size() ? s(0) : 0.0);
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++rank;
  return rank;
}

CohomologyDims twisted_h01(const Presentation& p, const TwistedModule& m, double threshold) {
  check(p, m);
  const int d = m.dimension, g = p.generator_count();
  int r0 = numerical_rank(coboundary0(p, m), threshold);
  int r1 = numerical_rank(coboundary1(p, m), threshold);
  return CohomologyDims{d - r0, g * d - r1 - r0};
}

TwistedModule trivial_module(const Presentation& p) {
  TwistedModule m{1, {}};
  for (int i = 0; i < p.generator_count(); ++i) m.action.push_back(Eigen::MatrixXd::Identity(1, 1));
  return m;
}

TwistedModule adjoint_module(const RepresentationPoint& rep) {
  TwistedModule m{3, {}};
  for (const auto& g : rep.images) m.action.push_back(real_adjoint(g));
  return m;
}

TwistedModule plane_module(const RepresentationPoint& rep) {
  TwistedModule m{2, {}};
  for (const auto& g : rep.images) {
    Eigen::Matrix3d ad = real_adjoint(g);
    if (std::abs(ad(2, 0)) + std::abs(ad(2, 1)) + std::abs(ad(0, 2)) + std::abs(ad(1, 2)) > 1e-8)
      throw std::invalid_argument("image does not preserve the e3 axis");
    m.action.push_back(ad.topLeftCorner(2, 2));
  }
  return m;
}

TwistedModule axis_module(const RepresentationPoint& rep) {
  TwistedModule m{1, {}};
  for (const auto& g : rep.images) {
    Eigen::Matrix3d ad = real_adjoint(g);
    if (std::abs(ad(2, 0)) + std::abs(ad(2, 1)) + std::abs(ad(0, 2)) + std::abs(ad(1, 2)) > 1e-8)
      throw std::invalid_argument("image does not preserve the e3 axis");
    m.action.push_back(Eigen::MatrixXd::Constant(1, 1, ad(2, 2) > 0 ? 1.0 : -1.0));
  }
  return m;
}

}  // namespace regen
