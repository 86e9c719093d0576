// SL(2,C) kernel: the su(2) basis, exponentials, complex lengths, word evaluation.
#pragma once

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "regen/presentation.hpp"

namespace regen {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat3 = Eigen::Matrix3cd;

inline constexpr double kPi = 3.14159265358979323846;
inline const cplx kI{0.0, 1.0};

/// Unimodular 2x2 complex matrix. Construction checks |det - 1| <= 1e-10.
class Sl2Element {
 public:
  Sl2Element() : m_(Mat2::Identity()) {}
  explicit Sl2Element(const Mat2& m);

  static Sl2Element identity() { return Sl2Element(); }

  const Mat2& matrix() const { return m_; }
  cplx operator()(int r, int c) const { return m_(r, c); }
  cplx trace() const { return m_.trace(); }
  cplx det() const { return m_.determinant(); }

  Sl2Element operator*(const Sl2Element& o) const { return Sl2Element(m_ * o.m_); }
  Sl2Element operator-() const { return Sl2Element(Mat2(-m_)); }
  Sl2Element inverse() const;
  Sl2Element pow(int k) const;

 private:
  Mat2 m_;
};

/// e_j = -(i/2) sigma_j, so [e1,e2] = e3 and exp(t e3) has trace 2 cos(t/2).
const std::array<Mat2, 3>& basis_matrices();

/// Coordinates (c0, c1, c2, c3) with M = c0 I + c1 e1 + c2 e2 + c3 e3.
std::array<cplx, 4> algebra_coordinates(const Mat2& m);
Mat2 from_algebra_coordinates(const std::array<cplx, 4>& c);

/// exp of a trace-zero matrix.
Sl2Element exp_algebra(const Mat2& v);
Sl2Element exp_basis(int j, cplx angle);

/// Adjoint action on the Lie algebra, in the basis (e1, e2, e3).
Mat3 adjoint(const Sl2Element& g);

/// Largest entrywise deviation of M from +I or -I, whichever is closer.
double central_deviation(const Mat2& m);

/// l with tr M = +-2 cosh(l/2). The representative is fixed by `branch`.
struct ComplexLength {
  cplx value{0.0, 0.0};
};

class ComplexLengthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Picks, among +-l0 + 2 pi i k, the value closest to the reference.
/// Without a reference the principal value (acosh branch) is returned.
/// Throws for parabolic input and for +-I without a reference.
ComplexLength complex_length(const Sl2Element& m,
                             std::optional<ComplexLength> reference = std::nullopt);

/// Images of the generators of a presentation.
struct RepresentationPoint {
  std::vector<Sl2Element> images;
  /// Largest relator deviation from +-I.
  double residual = 0.0;
};

Sl2Element evaluate_word(const RepresentationPoint& rep, const Word& w);
Mat2 evaluate_word(const std::vector<Mat2>& images, const Word& w);

double relator_residual(const RepresentationPoint& rep, const Presentation& p);

}  // namespace regen
