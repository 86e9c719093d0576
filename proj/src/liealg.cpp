#include "regen/liealg.hpp"

#include <cmath>
#include <limits>

namespace regen {

namespace {
constexpr double kDetTol = 1e-10;

Mat2 inverse2(const Mat2& m) {
  cplx d = m.determinant();
  Mat2 r;
  r << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return r / d;
}

Mat2 power(const Mat2& base, int k) {
  Mat2 b = k < 0 ? inverse2(base) : base;
  unsigned n = static_cast<unsigned>(std::abs(k));
  Mat2 acc = Mat2::Identity();
  while (n) {
    if (n & 1u) acc = acc * b;
    b = b * b;
    n >>= 1u;
  }
  return acc;
}
}  // namespace

Sl2Element::Sl2Element(const Mat2& m) : m_(m) {
  if (std::abs(m.determinant() - 1.0) > kDetTol)
    throw std::invalid_argument("matrix is not unimodular");
}

Sl2Element Sl2Element::inverse() const { return Sl2Element(inverse2(m_)); }

Sl2Element Sl2Element::pow(int k) const { return Sl2Element(power(m_, k)); }

const std::array<Mat2, 3>& basis_matrices() {
  static const std::array<Mat2, 3> e = [] {
    const cplx h = -0.5 * kI;
    Mat2 s1, s2, s3;
    s1 << 0, 1, 1, 0;
    s2 << 0, -kI, kI, 0;
    s3 << 1, 0, 0, -1;
    return std::array<Mat2, 3>{h * s1, h * s2, h * s3};
  }();
  return e;
}

std::array<cplx, 4> algebra_coordinates(const Mat2& m) {
  return {0.5 * (m(0, 0) + m(1, 1)), kI * (m(0, 1) + m(1, 0)), m(1, 0) - m(0, 1),
          -kI * (m(1, 1) - m(0, 0))};
}

Mat2 from_algebra_coordinates(const std::array<cplx, 4>& c) {
  const auto& e = basis_matrices();
  Mat2 m = c[0] * Mat2::Identity();
  for (int j = 0; j < 3; ++j) m += c[j + 1] * e[j];
  return m;
}

Sl2Element exp_algebra(const Mat2& v) {
  if (std::abs(v.trace()) > 1e-12 * (1.0 + v.norm()))
    throw std::invalid_argument("exp_algebra expects a trace-zero matrix");
  // v^2 = -det(v) I, so exp(v) = cosh(d) I + sinh(d)/d v with d^2 = -det v.
  cplx d = std::sqrt(-v.determinant());
  cplx shc = std::abs(d) < 1e-8 ? 1.0 + d * d / 6.0 : std::sinh(d) / d;
  Mat2 r = std::cosh(d) * Mat2::Identity() + shc * v;
  // Drive det back to 1 against rounding.
  r /= std::sqrt(r.determinant());
  return Sl2Element(r);
}

Sl2Element exp_basis(int j, cplx angle) {
  return exp_algebra(angle * basis_matrices().at(static_cast<std::size_t>(j - 1)));
}

Mat3 adjoint(const Sl2Element& g) {
  const auto& e = basis_matrices();
  Mat2 gi = inverse2(g.matrix());
  Mat3 ad;
  for (int j = 0; j < 3; ++j) {
    auto c = algebra_coordinates(g.matrix() * e[j] * gi);
    for (int i = 0; i < 3; ++i) ad(i, j) = c[i + 1];
  }
  return ad;
}

double central_deviation(const Mat2& m) {
  double plus = (m - Mat2::Identity()).cwiseAbs().maxCoeff();
  double minus = (m + Mat2::Identity()).cwiseAbs().maxCoeff();
  return std::min(plus, minus);
}

ComplexLength complex_length(const Sl2Element& m, std::optional<ComplexLength> reference) {
  const double scale = 1.0 + m.matrix().norm();
  if (central_deviation(m.matrix()) <= 1e-12 * scale) {
    if (!reference) throw ComplexLengthError("complex length of +-I needs a reference branch");
    // Nearest point of 2 pi i Z to the reference.
    double k = std::round(reference->value.imag() / (2 * kPi));
    return ComplexLength{cplx(0.0, 2 * kPi * k)};
  }
  cplx tr = m.trace();
  if (std::abs(tr - 2.0) <= 1e-12 * scale || std::abs(tr + 2.0) <= 1e-12 * scale)
    throw ComplexLengthError("parabolic element has no complex length");
  cplx l0 = 2.0 * std::acosh(0.5 * tr);
  if (!reference) return ComplexLength{l0};
  const cplx ref = reference->value;
  cplx best = l0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int sign : {1, -1}) {
    cplx base = static_cast<double>(sign) * l0;
    double k0 = std::round((ref.imag() - base.imag()) / (2 * kPi));
    for (double k = k0 - 1; k <= k0 + 1; k += 1) {
      cplx cand = base + cplx(0.0, 2 * kPi * k);
      double dist = std::abs(cand - ref);
      // Ties go to the principal candidate, which is visited first.
      if (dist < best_d - 1e-12 * (1.0 + std::abs(ref))) {
        best_d = dist;
        best = cand;
      }
    }
  }
  return ComplexLength{best};
}

Mat2 evaluate_word(const std::vector<Mat2>& images, const Word& w) {
  Mat2 acc = Mat2::Identity();
  for (const auto& l : w.letters()) acc = acc * power(images.at(l.generator), l.exponent);
  return acc;
}

Sl2Element evaluate_word(const RepresentationPoint& rep, const Word& w) {
  Sl2Element acc;
  for (const auto& l : w.letters()) acc = acc * rep.images.at(l.generator).pow(l.exponent);
  return acc;
}

double relator_residual(const RepresentationPoint& rep, const Presentation& p) {
  double r = 0.0;
  for (const auto& w : p.relators) r = std::max(r, central_deviation(evaluate_word(rep, w).matrix()));
  return r;
}

}  // namespace regen
