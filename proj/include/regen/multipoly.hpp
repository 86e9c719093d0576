// Exact multivariate polynomials over Q.
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace regen {

/// Sparse polynomial with rational coefficients in a fixed, named set of at
/// most 8 variables. Terms are kept sorted in descending lex order (first
/// variable most significant) and never carry a zero coefficient.
///
/// Monomials are packed into one 64-bit word; the per-variable field width is
/// min(16, 64 / nvars) bits. Arithmetic that would overflow a field throws.
class MultiPoly {
 public:
  using Monomial = std::uint64_t;
  using Term = std::pair<Monomial, mpq_class>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars);

  static MultiPoly constant(std::vector<std::string> vars, const mpq_class& c);
  static MultiPoly variable(std::vector<std::string> vars, int index);
  static MultiPoly variable(std::vector<std::string> vars, std::string_view name);
  /// Builds c * prod vars[i]^exps[i].
  static MultiPoly monomial(std::vector<std::string> vars, const std::vector<int>& exps,
                            const mpq_class& c);

  const std::vector<std::string>& vars() const { return vars_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  int var_index(std::string_view name) const;
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  mpq_class constant_term() const;

  std::vector<int> exponents(Monomial m) const;
  Monomial pack(const std::vector<int>& exps) const;
  int exponent(Monomial m, int var) const;

  int degree(int var) const;
  int total_degree() const;
  /// Indices of variables that occur.
  std::vector<int> support() const;
  bool contains(int var) const { return degree(var) > 0; }

  const mpq_class& leading_coefficient() const;

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(const mpq_class& c) const;
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly pow(unsigned k) const;

  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  /// Coefficients of var^0 .. var^deg; each keeps the full variable set.
  std::vector<MultiPoly> coefficients_in(int var) const;
  static MultiPoly from_coefficients(const std::vector<MultiPoly>& coeffs, int var,
                                     const std::vector<std::string>& vars);

  MultiPoly derivative(int var) const;
  /// Replaces var by an integer value.
  MultiPoly substitute(int var, const mpz_class& value) const;
  MultiPoly substitute(int var, const mpq_class& value) const;
  /// Replaces var by a polynomial over the same variables.
  MultiPoly substitute(int var, const MultiPoly& value) const;
  /// Re-expresses the polynomial over a new variable list; every variable
  /// that occurs must appear in `vars` under the same name.
  MultiPoly with_vars(const std::vector<std::string>& vars) const;
  /// Replaces var^(2k) by var^k. Requires every exponent of var to be even.
  MultiPoly deflate(int var) const;

  /// Positive integer content: the rational c with this / c primitive in Z[vars]
  /// and positive leading coefficient.
  mpq_class content() const;
  MultiPoly primitive() const;
  bool is_integral() const;

  /// Exact division; nullopt when the divisor does not divide.
  std::optional<MultiPoly> divide(const MultiPoly& d) const;

  std::complex<double> evaluate(const std::vector<std::complex<double>>& point) const;
  /// Sum of |coefficient| * |monomial| at the point; the natural error scale.
  double magnitude(const std::vector<std::complex<double>>& point) const;
  /// Largest |coefficient| as a double.
  double max_coefficient() const;

  /// One `coeff * v1^e1 * ... * vn^en` per line, descending lex order.
  std::string serialize() const;
  static MultiPoly parse(std::string_view text, const std::vector<std::string>& vars);
  /// Human-readable infix form.
  std::string to_string() const;

 private:
  void check_same_vars(const MultiPoly& o) const;
  void normalize_sorted();
  int field_bits() const;

  std::vector<std::string> vars_;
  std::vector<Term> terms_;
};

MultiPoly operator*(const mpq_class& c, const MultiPoly& p);

/// Resultant with respect to var via the subresultant remainder sequence.
MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, int var);
/// Pseudo-remainder of f by g as polynomials in var.
MultiPoly pseudo_remainder(const MultiPoly& f, const MultiPoly& g, int var);

/// Primitive gcd over Z with positive leading coefficient (0 if both are 0).
MultiPoly gcd(const MultiPoly& f, const MultiPoly& g);

/// Squarefree decomposition: pairs (factor, multiplicity) with primitive
/// factors whose product, raised to the multiplicities, is the primitive part
/// of f. Constant factors are dropped.
std::vector<std::pair<MultiPoly, int>> squarefree_decomposition(const MultiPoly& f);

}  // namespace regen
