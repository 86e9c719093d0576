// The odd holomorphic germ F(w) that drives the Dehn filling map.
#pragma once

#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace regen {

class TrustRadiusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// F(w) with F(0) = 0, F odd, real on the real axis. Implementations are
/// immutable after construction and safe to share between threads.
class GermModel {
 public:
  explicit GermModel(double trust_radius) : radius_(trust_radius) {}
  virtual ~GermModel() = default;

  std::complex<double> F(std::complex<double> w) const {
    guard(w);
    return eval(w);
  }
  std::complex<double> dF(std::complex<double> w) const {
    guard(w);
    return derivative(w);
  }
  double trust_radius() const { return radius_; }
  virtual std::string name() const = 0;

 protected:
  virtual std::complex<double> eval(std::complex<double> w) const = 0;
  virtual std::complex<double> derivative(std::complex<double> w) const = 0;

 private:
  void guard(std::complex<double> w) const {
    if (std::abs(w) > radius_ * (1 + 1e-12))
      throw TrustRadiusError("germ evaluated outside its trust radius");
  }
  double radius_;
};

/// F(w) = sum_k c_k w^(2k+1), coefficients listed from w^3 upward.
class SyntheticGerm final : public GermModel {
 public:
  SyntheticGerm(std::vector<double> odd_coefficients, double trust_radius = 0.3);
  std::string name() const override;

 protected:
  std::complex<double> eval(std::complex<double> w) const override;
  std::complex<double> derivative(std::complex<double> w) const override;

 private:
  std::vector<double> coeffs_;
};

using GermPtr = std::shared_ptr<const GermModel>;

}  // namespace regen
