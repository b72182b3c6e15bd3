#include "equideriv/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "equideriv/detail/expression.hpp"
#include "equideriv/errors.hpp"

namespace equideriv {

std::size_t total_degree(const Exponents& e) {
  std::size_t d = 0;
  for (auto x : e) d += x;
  return d;
}

bool MonomialOrder::operator()(const Exponents& a, const Exponents& b) const {
  std::size_t da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = n; i-- > 0;) {
    std::uint16_t x = i < a.size() ? a[i] : 0;
    std::uint16_t y = i < b.size() ? b[i] : 0;
    if (x != y) return x < y;
  }
  return false;
}

namespace {

Exponents trimmed(Exponents e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
  return e;
}

Exponents product(const Exponents& a, const Exponents& b) {
  Exponents r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

}  // namespace

Polynomial::Polynomial(long c) {
  if (c != 0) terms_.emplace(Exponents{}, CyclotomicScalar(c));
}

Polynomial::Polynomial(const CyclotomicScalar& c) {
  if (!c.is_zero()) terms_.emplace(Exponents{}, c);
}

Polynomial Polynomial::variable(std::size_t index) {
  Exponents e(index + 1, 0);
  e[index] = 1;
  return monomial(std::move(e));
}

Polynomial Polynomial::monomial(Exponents e, const CyclotomicScalar& c) {
  Polynomial p;
  p.add_term(trimmed(std::move(e)), c);
  return p;
}

void Polynomial::add_term(const Exponents& e, const CyclotomicScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

CyclotomicScalar Polynomial::constant_term() const { return coefficient({}); }

CyclotomicScalar Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(trimmed(e));
  return it == terms_.end() ? CyclotomicScalar() : it->second;
}

std::optional<std::size_t> Polynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  return total_degree(terms_.rbegin()->first);
}

bool Polynomial::is_homogeneous(std::size_t d) const {
  for (const auto& [e, c] : terms_)
    if (total_degree(e) != d) return false;
  return true;
}

Polynomial Polynomial::homogeneous_part(std::size_t d) const {
  Polynomial p;
  for (const auto& [e, c] : terms_)
    if (total_degree(e) == d) p.terms_.emplace(e, c);
  return p;
}

std::size_t Polynomial::variable_count() const {
  std::size_t n = 0;
  for (const auto& [e, c] : terms_) n = std::max(n, e.size());
  return n;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(product(ea, eb), ca * cb);
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial operator*(Polynomial a, const CyclotomicScalar& s) {
  if (s.is_zero()) return Polynomial();
  for (auto& [e, c] : a.terms_) c *= s;
  return a;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& [e, c] : p.terms_) c = -c;
  return p;
}

Polynomial Polynomial::pow(std::size_t e) const {
  Polynomial result(1), base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Polynomial Polynomial::substitute(const ScalarMatrix& m) const {
  const std::size_t n = variable_count();
  if (n > m.rows()) throw ValidationError("substitution matrix has too few rows");
  std::vector<Polynomial> forms(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) forms[i] += Polynomial::variable(j) * m(i, j);
  std::vector<std::vector<Polynomial>> powers(n);
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    Polynomial t(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Polynomial(1));
      while (pw.size() <= e[i]) pw.push_back(pw.back() * forms[i]);
      t *= pw[e[i]];
    }
    out += t;
  }
  return out;
}

std::string Polynomial::to_string(unsigned order) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string coeff = (order && order % c.order() == 0) ? c.to_string(order) : c.to_string();
    bool simple = c.is_rational();
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (simple) {
      const mpq_class& q = c.rational();
      if (!first) os << (sgn(q) < 0 ? " - " : " + ");
      else if (sgn(q) < 0) os << "-";
      mpq_class mag = abs(q);
      if (mono.empty()) {
        os << mag.get_str();
      } else {
        if (mag != 1) os << (mag.get_den() == 1 ? mag.get_str() : "(" + mag.get_str() + ")") << "*";
        os << mono;
      }
    } else {
      if (!first) os << " + ";
      os << "(" << coeff << ")";
      if (!mono.empty()) os << "*" << mono;
    }
    first = false;
  }
  return os.str();
}

std::vector<Exponents> monomials(std::size_t nvars, std::size_t degree) {
  std::vector<Exponents> out;
  if (nvars == 0) {
    if (degree == 0) out.push_back({});
    return out;
  }
  Exponents cur(nvars, 0);
  // Enumerate all compositions, then sort into MonomialOrder.
  auto rec = [&](auto&& self, std::size_t var, std::size_t left) -> void {
    if (var + 1 == nvars) {
      cur[var] = static_cast<std::uint16_t>(left);
      out.push_back(trimmed(cur));
      return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
      cur[var] = static_cast<std::uint16_t>(k);
      self(self, var + 1, left - k);
    }
  };
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end(), MonomialOrder{});
  return out;
}

std::size_t monomial_count(std::size_t nvars, std::size_t degree) {
  if (nvars == 0) return degree == 0 ? 1 : 0;
  // C(nvars - 1 + degree, degree)
  std::size_t r = 1;
  for (std::size_t i = 1; i <= degree; ++i) r = r * (nvars - 1 + i) / i;
  return r;
}

std::size_t monomial_index(const Exponents& e, std::size_t nvars) {
  Exponents t = trimmed(e);
  if (t.size() > nvars) throw ValidationError("monomial uses more variables than available");
  // Count monomials of the same degree that precede e: walk from the last
  // variable down, counting choices with a smaller exponent in that slot.
  std::size_t d = total_degree(t);
  std::size_t idx = 0;
  std::size_t left = d;
  for (std::size_t i = nvars; i-- > 1;) {
    std::uint16_t ei = i < t.size() ? t[i] : 0;
    // smaller exponent k in slot i, remaining left-k spread over i variables
    for (std::size_t k = 0; k < ei; ++k) idx += monomial_count(i, left - k);
    left -= ei;
  }
  return idx;
}

ScalarMatrix substitution_matrix(const ScalarMatrix& m, std::size_t degree) {
  const std::size_t n = m.rows();
  auto basis = monomials(n, degree);
  ScalarMatrix out(basis.size(), basis.size());
  for (std::size_t col = 0; col < basis.size(); ++col) {
    Polynomial img = Polynomial::monomial(basis[col]).substitute(m);
    for (const auto& [e, c] : img.terms()) out(monomial_index(e, n), col) = c;
  }
  return out;
}

std::vector<CyclotomicScalar> coefficient_vector(const Polynomial& p, std::size_t nvars, std::size_t degree) {
  std::vector<CyclotomicScalar> v(monomial_count(nvars, degree));
  for (const auto& [e, c] : p.terms()) {
    if (total_degree(e) != degree) throw ValidationError("polynomial " + p.to_string() + " is not homogeneous of degree " + std::to_string(degree));
    v[monomial_index(e, nvars)] = c;
  }
  return v;
}

Polynomial from_coefficients(const std::vector<CyclotomicScalar>& v, std::size_t nvars, std::size_t degree) {
  auto basis = monomials(nvars, degree);
  Polynomial p;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!v[i].is_zero()) p += Polynomial::monomial(basis[i], v[i]);
  return p;
}

PolyMatrix substitute(const PolyMatrix& p, const ScalarMatrix& m) {
  return p.map([&](const Polynomial& f) { return f.is_constant() ? f : f.substitute(m); });
}

PolyMatrix to_poly(const ScalarMatrix& m) {
  return m.map([](const CyclotomicScalar& c) { return Polynomial(c); });
}

ScalarMatrix constant_part(const PolyMatrix& p) {
  return p.map([](const Polynomial& f) { return f.constant_term(); });
}

namespace {

struct PolynomialTraits {
  unsigned order;

  Polynomial integer(const mpz_class& v) const { return Polynomial(CyclotomicScalar(mpq_class(v))); }
  Polynomial identifier(std::string_view name, std::size_t column) const {
    if (name == "z") return Polynomial(CyclotomicScalar::root_of_unity(order, 1));
    if (name.size() >= 2 && name[0] == 'x') {
      std::size_t idx = 0;
      for (std::size_t i = 1; i < name.size(); ++i) {
        if (name[i] < '0' || name[i] > '9') throw ParseError("unknown identifier '" + std::string(name) + "'", column);
        idx = idx * 10 + static_cast<std::size_t>(name[i] - '0');
        if (idx > 64) throw ParseError("variable index too large", column);
      }
      return Polynomial::variable(idx);
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", column);
  }
  Polynomial divide(const Polynomial& a, const Polynomial& b, std::size_t column) const {
    if (!b.is_constant()) throw ParseError("division by a non-constant polynomial", column);
    if (b.is_zero()) throw ArithmeticError("division by zero");
    return a * b.constant_term().inverse();
  }
  Polynomial power(const Polynomial& a, long e, std::size_t column) const {
    if (e < 0) {
      if (!a.is_constant() || a.is_zero()) throw ParseError("negative power of a non-constant", column);
      return Polynomial(a.constant_term().pow(e));
    }
    return a.pow(static_cast<std::size_t>(e));
  }
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, unsigned order) {
  PolynomialTraits traits{order};
  return detail::ExpressionParser<Polynomial, PolynomialTraits>(text, traits).parse();
}

}  // namespace equideriv
