#include <doctest.h>

#include "equideriv/errors.hpp"
#include "support.hpp"

using namespace equideriv;
using namespace testing_support;

namespace {

Polynomial x(std::size_t i) { return Polynomial::variable(i); }
Polynomial p(const char* s, unsigned order = 1) { return parse_polynomial(s, order); }

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("parse and print") {
  CHECK(p("x0 + x1") == x(0) + x(1));
  CHECK(p("(x0 - x1)^2") == x(0) * x(0) - Polynomial(2) * x(0) * x(1) + x(1) * x(1));
  CHECK(p("1/2*z*x0", 4) == x(0) * CyclotomicScalar(mpq_class(1, 2)) * CyclotomicScalar::root_of_unity(4));
  CHECK(p("0").is_zero());
  CHECK_THROWS_AS(p("x0 +"), ParseError);
  CHECK_THROWS_AS(p("y"), ParseError);
  std::mt19937 rng(2);
  for (int t = 0; t < 20; ++t) {
    Polynomial f = random_homogeneous(rng, 3, 2) + random_homogeneous(rng, 3, 1);
    CHECK(parse_polynomial(f.to_string(1), 1) == f);
  }
}

TEST_CASE("degrees and homogeneity") {
  Polynomial f = x(0) * x(1) + x(2);
  CHECK(f.degree() == 2u);
  CHECK_FALSE(f.is_homogeneous(2));
  CHECK(f.homogeneous_part(2) == x(0) * x(1));
  CHECK(Polynomial().is_homogeneous(7));
  CHECK_FALSE(Polynomial().degree().has_value());
  CHECK(f.variable_count() == 3);
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(9);
  for (int t = 0; t < 15; ++t) {
    Polynomial a = random_homogeneous(rng, 2, 1) + Polynomial(1);
    Polynomial b = random_homogeneous(rng, 2, 2);
    Polynomial c = random_homogeneous(rng, 2, 1);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
    CHECK(a.pow(3) == a * a * a);
  }
}

TEST_CASE("monomial basis") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t d = 0; d <= 5; ++d) {
      auto mons = monomials(n, d);
      CHECK(mons.size() == binomial(n + d - 1, d));
      CHECK(monomial_count(n, d) == mons.size());
      for (std::size_t i = 0; i < mons.size(); ++i) {
        CHECK(total_degree(mons[i]) == d);
        CHECK(monomial_index(mons[i], n) == i);
        if (i > 0) CHECK(MonomialOrder{}(mons[i - 1], mons[i]));
      }
    }
}

TEST_CASE("substitution") {
  auto s2 = builtin_group("S2");
  ScalarMatrix swap = builtin_rep("perm", s2).matrix(1);
  CHECK(x(0).substitute(swap) == x(1));
  CHECK((x(0) + x(1)).substitute(swap) == x(0) + x(1));
  CHECK((x(0) - x(1)).substitute(swap) == -(x(0) - x(1)));

  std::mt19937 rng(4);
  for (int t = 0; t < 10; ++t) {
    ScalarMatrix a = random_invertible(rng, 3), b = random_invertible(rng, 3);
    Polynomial f = random_homogeneous(rng, 3, 3);
    // f(ABx) = (f(Ax))(Bx)
    CHECK(f.substitute(a * b) == f.substitute(a).substitute(b));
    auto coeff = coefficient_vector(f, 3, 3);
    ScalarMatrix v(coeff.size(), 1);
    for (std::size_t i = 0; i < coeff.size(); ++i) v(i, 0) = coeff[i];
    ScalarMatrix w = substitution_matrix(a, 3) * v;
    std::vector<CyclotomicScalar> got(w.rows());
    for (std::size_t i = 0; i < w.rows(); ++i) got[i] = w(i, 0);
    CHECK(from_coefficients(got, 3, 3) == f.substitute(a));
  }
}

TEST_CASE("the variable action is a left action") {
  for (const auto& name : {"S3", "D4"}) {
    auto g = builtin_group(name);
    Representation act = builtin_action(g, 3);
    std::mt19937 rng(1);
    Polynomial f = random_homogeneous(rng, 3, 2) + random_homogeneous(rng, 3, 3);
    auto apply = [&](std::size_t e, const Polynomial& h) { return h.substitute(act.matrix(g->inverse(e))); };
    for (std::size_t a = 0; a < g->order(); ++a)
      for (std::size_t b = 0; b < g->order(); ++b) CHECK(apply(g->mul(a, b), f) == apply(a, apply(b, f)));
  }
}
