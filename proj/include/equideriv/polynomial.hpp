#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "equideriv/matrix.hpp"
#include "equideriv/scalar.hpp"

namespace equideriv {

/// Exponent vector of a monomial, trailing zeros trimmed.
using Exponents = std::vector<std::uint16_t>;

/// Degree first; within a degree, x0^d comes first and x_n^d last
/// (exponent vectors compared from the last variable down).
struct MonomialOrder {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

std::size_t total_degree(const Exponents& e);

/// Polynomial in x0, x1, ... over Q(z_m). No zero coefficients are stored.
class Polynomial {
 public:
  using Terms = std::map<Exponents, CyclotomicScalar, MonomialOrder>;

  Polynomial() = default;
  Polynomial(long c);  // NOLINT(google-explicit-constructor)
  Polynomial(const CyclotomicScalar& c);  // NOLINT(google-explicit-constructor)

  static Polynomial variable(std::size_t index);
  static Polynomial monomial(Exponents e, const CyclotomicScalar& c = CyclotomicScalar(1));

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  CyclotomicScalar constant_term() const;
  CyclotomicScalar coefficient(const Exponents& e) const;
  /// Highest total degree, nullopt for the zero polynomial.
  std::optional<std::size_t> degree() const;
  /// The zero polynomial is homogeneous of every degree.
  bool is_homogeneous(std::size_t d) const;
  Polynomial homogeneous_part(std::size_t d) const;
  /// 1 + largest variable index that occurs (0 for constants).
  std::size_t variable_count() const;

  /// f(M x): x_i is replaced by sum_j M(i, j) x_j.
  Polynomial substitute(const ScalarMatrix& m) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const CyclotomicScalar& s);
  Polynomial operator-() const;
  Polynomial pow(std::size_t e) const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  /// Literal such as "(1/2)*x0^2 - z*x1"; z is written in Q(z_order).
  std::string to_string(unsigned order = 0) const;

 private:
  void add_term(const Exponents& e, const CyclotomicScalar& c);
  Terms terms_;
};

inline bool is_zero(const Polynomial& p) { return p.is_zero(); }

using PolyMatrix = Matrix<Polynomial>;

/// Monomials of the given degree in nvars variables, in MonomialOrder.
std::vector<Exponents> monomials(std::size_t nvars, std::size_t degree);
std::size_t monomial_count(std::size_t nvars, std::size_t degree);
/// Position of a degree-d monomial inside monomials(nvars, d).
std::size_t monomial_index(const Exponents& e, std::size_t nvars);

/// Matrix of f -> f(M x) on the degree-d monomial basis (column = input monomial).
ScalarMatrix substitution_matrix(const ScalarMatrix& m, std::size_t degree);
/// Coefficient vector of a homogeneous degree-d polynomial.
std::vector<CyclotomicScalar> coefficient_vector(const Polynomial& p, std::size_t nvars, std::size_t degree);
Polynomial from_coefficients(const std::vector<CyclotomicScalar>& v, std::size_t nvars, std::size_t degree);

/// Entrywise substitution x -> M x.
PolyMatrix substitute(const PolyMatrix& p, const ScalarMatrix& m);
PolyMatrix to_poly(const ScalarMatrix& m);
/// Entrywise value at the origin.
ScalarMatrix constant_part(const PolyMatrix& p);

/// Parses a polynomial literal in variables x0, x1, ...; z is z_order.
Polynomial parse_polynomial(std::string_view text, unsigned order);

}  // namespace equideriv
