#include "equideriv/scalar.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

#include "equideriv/detail/expression.hpp"
#include "equideriv/errors.hpp"

namespace equideriv {

namespace detail {

struct CyclotomicField {
  unsigned order = 1;
  unsigned phi = 1;
  // Monic modulus, constant term first, degree phi.
  std::vector<mpz_class> modulus;
  // power[k] = z^k reduced, for k < max(order, 2*phi - 1).
  std::vector<std::vector<mpz_class>> power;
};

namespace {

std::vector<mpz_class> exact_divide(std::vector<mpz_class> num, const std::vector<mpz_class>& den) {
  // den is monic.
  std::size_t dn = den.size() - 1;
  std::vector<mpz_class> q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    mpz_class c = num[i];
    if (c == 0) continue;
    q[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

class FieldRegistry {
 public:
  const CyclotomicField* get(unsigned m) {
    std::lock_guard lock(mutex_);
    return build(m);
  }

 private:
  const CyclotomicField* build(unsigned m) {
    if (auto it = fields_.find(m); it != fields_.end()) return it->second.get();
    auto f = std::make_unique<CyclotomicField>();
    f->order = m;
    // x^m - 1 divided by all Phi_d, d | m, d < m.
    std::vector<mpz_class> poly(m + 1, 0);
    poly[0] = -1;
    poly[m] = 1;
    for (unsigned d = 1; d < m; ++d) {
      if (m % d != 0) continue;
      poly = exact_divide(std::move(poly), build(d)->modulus);
    }
    f->modulus = std::move(poly);
    f->phi = static_cast<unsigned>(f->modulus.size() - 1);
    unsigned phi = f->phi;
    std::size_t count = std::max<std::size_t>(m, 2 * phi - 1);
    f->power.reserve(count);
    std::vector<mpz_class> cur(phi, 0);
    cur[0] = 1;
    for (std::size_t k = 0; k < count; ++k) {
      f->power.push_back(cur);
      // multiply by x and reduce
      mpz_class top = cur[phi - 1];
      for (std::size_t i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
      cur[0] = 0;
      if (top != 0)
        for (std::size_t i = 0; i < phi; ++i) cur[i] -= top * f->modulus[i];
    }
    const CyclotomicField* out = f.get();
    fields_.emplace(m, std::move(f));
    return out;
  }

  std::mutex mutex_;
  std::map<unsigned, std::unique_ptr<CyclotomicField>> fields_;
};

FieldRegistry& registry() {
  static FieldRegistry r;
  return r;
}

}  // namespace

const CyclotomicField* cyclotomic_field(unsigned m) {
  if (m == 0) throw ArithmeticError("cyclotomic order must be positive");
  static const CyclotomicField* rationals = registry().get(1);
  if (m == 1) return rationals;
  return registry().get(m);
}

}  // namespace detail

using detail::cyclotomic_field;

unsigned euler_phi(unsigned m) { return cyclotomic_field(m)->phi; }

std::vector<long> cyclotomic_polynomial(unsigned m) {
  std::vector<long> out;
  for (const auto& c : cyclotomic_field(m)->modulus) out.push_back(c.get_si());
  return out;
}

unsigned lcm_order(unsigned a, unsigned b) { return std::lcm(a, b); }

CyclotomicScalar::CyclotomicScalar() : field_(cyclotomic_field(1)), c_(1, mpq_class(0)) {}

CyclotomicScalar::CyclotomicScalar(long value) : field_(cyclotomic_field(1)), c_(1, mpq_class(value)) {}

CyclotomicScalar::CyclotomicScalar(mpq_class value) : field_(cyclotomic_field(1)), c_(1, std::move(value)) {
  c_[0].canonicalize();
}

CyclotomicScalar::CyclotomicScalar(const detail::CyclotomicField* field, std::vector<mpq_class> c)
    : field_(field), c_(std::move(c)) {
  normalize();
}

CyclotomicScalar CyclotomicScalar::root_of_unity(unsigned order, long exponent) {
  const auto* f = cyclotomic_field(order);
  long k = exponent % static_cast<long>(order);
  if (k < 0) k += order;
  std::vector<mpq_class> c(f->phi);
  for (unsigned i = 0; i < f->phi; ++i) c[i] = f->power[k][i];
  return CyclotomicScalar(f, std::move(c));
}

CyclotomicScalar CyclotomicScalar::from_coefficients(unsigned order, std::vector<mpq_class> coeffs) {
  const auto* f = cyclotomic_field(order);
  std::vector<mpq_class> c(f->phi, 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    coeffs[i].canonicalize();
    const auto& p = f->power[i % order];
    for (unsigned j = 0; j < f->phi; ++j)
      if (p[j] != 0) c[j] += coeffs[i] * p[j];
  }
  return CyclotomicScalar(f, std::move(c));
}

unsigned CyclotomicScalar::order() const noexcept { return field_->order; }

bool CyclotomicScalar::is_zero() const noexcept { return order() == 1 && sgn(c_[0]) == 0; }

bool CyclotomicScalar::is_one() const noexcept { return order() == 1 && c_[0] == 1; }

const mpq_class& CyclotomicScalar::rational() const {
  if (!is_rational()) throw ArithmeticError("value " + to_string() + " is not rational");
  return c_[0];
}

void CyclotomicScalar::normalize() {
  if (field_->order == 1) return;
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return;
  field_ = cyclotomic_field(1);
  c_.resize(1);
}

CyclotomicScalar CyclotomicScalar::lifted(unsigned target) const {
  CyclotomicScalar out = lift_to(target);
  out.normalize();
  return out;
}

CyclotomicScalar CyclotomicScalar::lift_to(unsigned target) const {
  unsigned m = order();
  if (target == m) return *this;
  if (target == 0 || target % m != 0)
    throw ArithmeticError("cannot lift Q(z_" + std::to_string(m) + ") into Q(z_" + std::to_string(target) + ")");
  const auto* f = cyclotomic_field(target);
  CyclotomicScalar out;
  out.field_ = f;
  out.c_.assign(f->phi, mpq_class(0));
  unsigned step = target / m;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    const auto& p = f->power[i * step];
    for (unsigned j = 0; j < f->phi; ++j)
      if (p[j] != 0) out.c_[j] += c_[i] * p[j];
  }
  return out;
}

void CyclotomicScalar::unify(CyclotomicScalar& a, CyclotomicScalar& b) {
  if (a.field_ == b.field_) return;
  unsigned m = std::lcm(a.order(), b.order());
  if (a.order() != m) a = a.lift_to(m);
  if (b.order() != m) b = b.lift_to(m);
}

CyclotomicScalar& CyclotomicScalar::operator+=(const CyclotomicScalar& rhs) {
  if (rhs.order() == 1) {
    c_[0] += rhs.c_[0];
    normalize();
    return *this;
  }
  if (field_ == rhs.field_) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
    normalize();
    return *this;
  }
  CyclotomicScalar r = rhs;
  unify(*this, r);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += r.c_[i];
  normalize();
  return *this;
}

CyclotomicScalar& CyclotomicScalar::operator-=(const CyclotomicScalar& rhs) { return *this += -rhs; }

CyclotomicScalar CyclotomicScalar::operator-() const {
  CyclotomicScalar out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

CyclotomicScalar& CyclotomicScalar::operator*=(const CyclotomicScalar& rhs) {
  if (rhs.order() == 1) {
    if (sgn(rhs.c_[0]) == 0) {
      *this = CyclotomicScalar();
      return *this;
    }
    for (auto& c : c_) c *= rhs.c_[0];
    return *this;
  }
  if (order() == 1) {
    mpq_class s = c_[0];
    *this = rhs;
    if (sgn(s) == 0) {
      *this = CyclotomicScalar();
      return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
  }
  CyclotomicScalar r = rhs;
  unify(*this, r);
  const auto* f = field_;
  const unsigned phi = f->phi;
  std::vector<mpq_class> prod(2 * phi - 1, mpq_class(0));
  for (unsigned i = 0; i < phi; ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (unsigned j = 0; j < phi; ++j) {
      if (sgn(r.c_[j]) == 0) continue;
      prod[i + j] += c_[i] * r.c_[j];
    }
  }
  std::vector<mpq_class> out(prod.begin(), prod.begin() + phi);
  for (unsigned k = phi; k < 2 * phi - 1; ++k) {
    if (sgn(prod[k]) == 0) continue;
    const auto& p = f->power[k];
    for (unsigned j = 0; j < phi; ++j)
      if (p[j] != 0) out[j] += prod[k] * p[j];
  }
  c_ = std::move(out);
  normalize();
  return *this;
}

CyclotomicScalar CyclotomicScalar::galois(long k) const {
  unsigned m = order();
  if (m == 1) return *this;
  long kk = k % static_cast<long>(m);
  if (kk < 0) kk += m;
  if (std::gcd(static_cast<unsigned>(kk), m) != 1)
    throw ArithmeticError("galois exponent must be coprime to the order");
  const auto* f = field_;
  std::vector<mpq_class> out(f->phi, mpq_class(0));
  for (unsigned i = 0; i < f->phi; ++i) {
    if (sgn(c_[i]) == 0) continue;
    const auto& p = f->power[(static_cast<unsigned long>(i) * kk) % m];
    for (unsigned j = 0; j < f->phi; ++j)
      if (p[j] != 0) out[j] += c_[i] * p[j];
  }
  return CyclotomicScalar(f, std::move(out));
}

CyclotomicScalar CyclotomicScalar::conjugate() const {
  if (order() <= 2) return *this;
  return galois(static_cast<long>(order()) - 1);
}

CyclotomicScalar CyclotomicScalar::inverse() const {
  if (is_zero()) throw ArithmeticError("division by zero");
  if (order() == 1) return CyclotomicScalar(mpq_class(1) / c_[0]);
  // x^-1 = (product of the other conjugates) / norm(x)
  unsigned m = order();
  CyclotomicScalar others(1);
  for (unsigned k = 2; k < m; ++k)
    if (std::gcd(k, m) == 1) others *= galois(k);
  CyclotomicScalar norm = *this * others;
  if (!norm.is_rational()) throw ConsistencyError("field norm is not rational");
  return others * CyclotomicScalar(mpq_class(1) / norm.c_[0]);
}

CyclotomicScalar& CyclotomicScalar::operator/=(const CyclotomicScalar& rhs) {
  if (rhs.order() == 1) {
    if (sgn(rhs.c_[0]) == 0) throw ArithmeticError("division by zero");
    for (auto& c : c_) c /= rhs.c_[0];
    return *this;
  }
  return *this *= rhs.inverse();
}

CyclotomicScalar CyclotomicScalar::pow(long exponent) const {
  CyclotomicScalar base = exponent < 0 ? inverse() : *this;
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
  CyclotomicScalar result(1);
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

bool operator==(const CyclotomicScalar& a, const CyclotomicScalar& b) {
  if (a.field_ == b.field_) return a.c_ == b.c_;
  // Normalized values of different orders can only agree when neither is
  // rational, e.g. z_3 lifted into Q(z_6).
  if (a.order() == 1 || b.order() == 1) return false;
  CyclotomicScalar x = a, y = b;
  CyclotomicScalar::unify(x, y);
  return x.c_ == y.c_;
}

bool canonical_less(const CyclotomicScalar& a, const CyclotomicScalar& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    int c = cmp(a.c_[i], b.c_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::string CyclotomicScalar::to_string(unsigned target) const {
  const CyclotomicScalar v = lift_to(target);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < v.c_.size(); ++i) {
    const mpq_class& c = v.c_[i];
    if (sgn(c) == 0) continue;
    mpq_class mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

std::string CyclotomicScalar::to_string() const { return to_string(order()); }

std::ostream& operator<<(std::ostream& os, const CyclotomicScalar& x) { return os << x.to_string(); }

namespace {

struct ScalarTraits {
  unsigned order;

  CyclotomicScalar integer(const mpz_class& v) const { return CyclotomicScalar(mpq_class(v)); }
  CyclotomicScalar identifier(std::string_view name, std::size_t column) const {
    if (name == "z") return CyclotomicScalar::root_of_unity(order, 1);
    throw ParseError("unknown identifier '" + std::string(name) + "'", column);
  }
  CyclotomicScalar divide(const CyclotomicScalar& a, const CyclotomicScalar& b, std::size_t) const {
    return a / b;
  }
  CyclotomicScalar power(const CyclotomicScalar& a, long e, std::size_t) const { return a.pow(e); }
};

}  // namespace

CyclotomicScalar parse_scalar(std::string_view text, unsigned order) {
  ScalarTraits traits{order};
  return detail::ExpressionParser<CyclotomicScalar, ScalarTraits>(text, traits).parse();
}

}  // namespace equideriv
