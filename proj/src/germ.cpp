#include "regen/germ.hpp"

#include <sstream>

namespace regen {

SyntheticGerm::SyntheticGerm(std::vector<double> odd_coefficients, double trust_radius)
    : GermModel(trust_radius), coeffs_(std::move(odd_coefficients)) {}

std::string SyntheticGerm::name() const {
  std::ostringstream os;
  os << "synthetic";
  for (double c : coeffs_) os << ":" << c;
  return os.str();
}

std::complex<double> SyntheticGerm::eval(std::complex<double> w) const {
  std::complex<double> w2 = w * w, p = w * w2, s = 0.0;
  for (double c : coeffs_) {
    s += c * p;
    p *= w2;
  }
  return s;
}

std::complex<double> SyntheticGerm::derivative(std::complex<double> w) const {
  std::complex<double> w2 = w * w, p = w2, s = 0.0;
  double k = 3;
  for (double c : coeffs_) {
    s += k * c * p;
    p *= w2;
    k += 2;
  }
  return s;
}

}  // namespace regen
