#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace equideriv {

namespace detail {
struct CyclotomicField;
}

/// Exact element of the cyclotomic field Q(z_m).
///
/// The value is stored as a polynomial in z_m of degree < phi(m), reduced
/// modulo the m-th cyclotomic polynomial, so within one order two values are
/// equal iff their coefficient vectors are equal. Binary operations between
/// values of different orders lift both operands to the least common order.
/// Values whose reduced form is rational are kept at order 1.
class CyclotomicScalar {
 public:
  CyclotomicScalar();
  CyclotomicScalar(long value);  // NOLINT(google-explicit-constructor)
  explicit CyclotomicScalar(mpq_class value);

  /// z_m^exponent; negative exponents are allowed.
  static CyclotomicScalar root_of_unity(unsigned order, long exponent = 1);
  /// Coefficients w.r.t. 1, z, ..., z^(k-1); any length, reduced on entry.
  static CyclotomicScalar from_coefficients(unsigned order,
                                            std::vector<mpq_class> coeffs);

  unsigned order() const noexcept;
  const std::vector<mpq_class>& coefficients() const noexcept { return c_; }

  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  bool is_rational() const noexcept { return order() == 1; }
  /// Rational value; throws ArithmeticError when the value is not rational.
  const mpq_class& rational() const;

  /// Same value expressed in Q(z_target); target must be a multiple of order().
  CyclotomicScalar lifted(unsigned target) const;
  /// Image under z -> z^-1 (complex conjugation).
  CyclotomicScalar conjugate() const;
  /// Image under z -> z^k, k coprime to the order.
  CyclotomicScalar galois(long k) const;
  CyclotomicScalar inverse() const;
  CyclotomicScalar pow(long exponent) const;

  /// Literal in the "p/q*z^k + ..." grammar, using z = z_m with m = order().
  std::string to_string() const;
  /// Same, but written in Q(z_order) with order a multiple of this->order().
  std::string to_string(unsigned order) const;

  CyclotomicScalar& operator+=(const CyclotomicScalar& rhs);
  CyclotomicScalar& operator-=(const CyclotomicScalar& rhs);
  CyclotomicScalar& operator*=(const CyclotomicScalar& rhs);
  CyclotomicScalar& operator/=(const CyclotomicScalar& rhs);

  friend CyclotomicScalar operator+(CyclotomicScalar a, const CyclotomicScalar& b) { return a += b; }
  friend CyclotomicScalar operator-(CyclotomicScalar a, const CyclotomicScalar& b) { return a -= b; }
  friend CyclotomicScalar operator*(CyclotomicScalar a, const CyclotomicScalar& b) { return a *= b; }
  friend CyclotomicScalar operator/(CyclotomicScalar a, const CyclotomicScalar& b) { return a /= b; }
  CyclotomicScalar operator-() const;

  friend bool operator==(const CyclotomicScalar& a, const CyclotomicScalar& b);
  /// Total order for use as a map key; not compatible with field structure.
  friend bool canonical_less(const CyclotomicScalar& a, const CyclotomicScalar& b);

 private:
  CyclotomicScalar(const detail::CyclotomicField* field, std::vector<mpq_class> c);
  void normalize();
  // Same value in Q(z_target) without dropping back to the rationals.
  CyclotomicScalar lift_to(unsigned target) const;
  static void unify(CyclotomicScalar& a, CyclotomicScalar& b);

  const detail::CyclotomicField* field_;
  std::vector<mpq_class> c_;
};

using Scalar = CyclotomicScalar;

std::ostream& operator<<(std::ostream& os, const CyclotomicScalar& x);

/// Parses a scalar literal such as "1/2*z^3 - 2" where z denotes z_order.
/// Throws ParseError on malformed input and ArithmeticError on division by 0.
CyclotomicScalar parse_scalar(std::string_view text, unsigned order);

unsigned euler_phi(unsigned m);
/// Integer coefficients of the m-th cyclotomic polynomial, constant term first.
std::vector<long> cyclotomic_polynomial(unsigned m);

unsigned lcm_order(unsigned a, unsigned b);

}  // namespace equideriv
