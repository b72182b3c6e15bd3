#include <doctest.h>

#include "equideriv/errors.hpp"
#include "support.hpp"

using namespace equideriv;
using namespace testing_support;

namespace {

CyclotomicScalar q(long n, long d = 1) { return CyclotomicScalar(mpq_class(n, d)); }

std::size_t as_count(const CyclotomicScalar& x) {
  REQUIRE(x.is_rational());
  REQUIRE(x.rational().get_den() == 1);
  return x.rational().get_num().get_ui();
}

const Representation& irrep(const std::vector<Representation>& list, const std::string& label) {
  for (const auto& r : list)
    if (r.label() == label) return r;
  FAIL("no irrep " << label);
  return list.front();
}

}  // namespace

TEST_CASE("characters from traces") {
  auto c2 = builtin_group("C2");
  for (const auto& x : element_traces(trivial_rep(c2))) CHECK(x.is_one());
  CHECK(element_traces(regular_rep(c2)) == std::vector<CyclotomicScalar>{q(2), q(0)});

  // standard rep of S3 = permutation rep on k^3 minus its trivial summand
  auto s3 = builtin_group("S3");
  Representation perm = permutation_rep(s3);
  auto perm_tr = element_traces(perm);
  auto std_tr = element_traces(irrep(builtin_irreps(s3), "std"));
  for (std::size_t g = 0; g < s3->order(); ++g) {
    CHECK(std_tr[g] == perm_tr[g] - q(1));
    const std::size_t o = s3->element_order(g);
    CHECK(std_tr[g] == (o == 1 ? q(2) : o == 3 ? q(-1) : q(0)));
  }
  Character chi = character(irrep(builtin_irreps(s3), "std"));
  for (std::size_t g = 0; g < s3->order(); ++g) CHECK(chi.at(g) == std_tr[g]);
}

TEST_CASE("inner products") {
  auto s3 = builtin_group("S3");
  auto irr = builtin_irreps(s3);
  CHECK(inner_product(character(trivial_rep(s3)), character(trivial_rep(s3))).is_one());
  CHECK(inner_product(character(regular_rep(s3)), character(trivial_rep(s3))).is_one());
  const auto& st = irrep(irr, "std");
  CHECK(inner_product(character(st), character(st)).is_one());
  CHECK(pairing(element_traces(st), element_traces(st)).is_one());
}

TEST_CASE("orthogonality of built-in irreducibles against an element-wise pairing") {
  for (const auto& name : all_builtin_names()) {
    CAPTURE(name);
    auto g = builtin_group(name);
    auto irr = builtin_irreps(g);
    std::size_t sum_sq = 0;
    for (std::size_t i = 0; i < irr.size(); ++i) {
      CHECK(irr[i].is_homomorphism());
      sum_sq += irr[i].dim() * irr[i].dim();
      for (std::size_t j = 0; j < irr.size(); ++j) {
        CyclotomicScalar want = i == j ? q(1) : q(0);
        CHECK(inner_product(character(irr[i]), character(irr[j])) == want);
        CHECK(pairing(element_traces(irr[i]), element_traces(irr[j])) == want);
      }
    }
    CHECK(sum_sq == g->order());
    CHECK(irr.size() == g->classes().size());
  }
}

TEST_CASE("decomposition") {
  auto s3 = builtin_group("S3");
  auto irr = builtin_irreps(s3);
  Decomposition reg = decompose(regular_rep(s3), irr);
  CHECK(reg.multiplicities == std::vector<std::size_t>{1, 1, 2});
  Decomposition perm = decompose(permutation_rep(s3), irr);
  CHECK(perm.multiplicities == std::vector<std::size_t>{1, 0, 1});
  for (std::size_t k = 0; k < irr.size(); ++k)
    CHECK(perm.multiplicities[k] == as_count(pairing(element_traces(permutation_rep(s3)), element_traces(irr[k]))));

  auto triv_g = builtin_group("trivial");
  Decomposition t = decompose(trivial_rep(triv_g, 5), builtin_irreps(triv_g));
  CHECK(t.multiplicities == std::vector<std::size_t>{5});
}

TEST_CASE("projector algebra on random reps") {
  std::mt19937 rng(3);
  for (const auto& name : {"S3", "D4", "C4", "Klein", "C6"}) {
    CAPTURE(name);
    auto g = builtin_group(name);
    auto irr = builtin_irreps(g);
    for (int t = 0; t < 3; ++t) {
      std::vector<std::size_t> mult;
      Representation r = random_rep(rng, g, irr, 8, &mult);
      CHECK(r.is_homomorphism());
      Decomposition d = decompose(r, irr);
      CHECK(d.multiplicities == mult);
      ScalarMatrix total(r.dim(), r.dim());
      for (std::size_t i = 0; i < irr.size(); ++i) {
        CHECK(d.projectors[i] * d.projectors[i] == d.projectors[i]);
        CHECK(rank(d.projectors[i]) == d.multiplicities[i] * irr[i].dim());
        for (std::size_t j = 0; j < irr.size(); ++j)
          if (i != j) CHECK(is_zero_matrix(d.projectors[i] * d.projectors[j]));
        total += d.projectors[i];
      }
      CHECK(total == ScalarMatrix::identity(r.dim()));
    }
  }
}

TEST_CASE("trivial isotypic") {
  auto s2 = builtin_group("S2");
  CHECK(is_trivial_isotypic(trivial_rep(s2, 3)));
  CHECK_FALSE(is_trivial_isotypic(builtin_rep("sign", s2)));
  CHECK_FALSE(is_trivial_isotypic(regular_rep(builtin_group("C2"))));
}

TEST_CASE("restriction") {
  auto s3 = builtin_group("S3");
  auto irr = builtin_irreps(s3);
  Subgroup one(s3, {0});
  Representation r = restrict_rep(irrep(irr, "std"), one);
  CHECK(r.dim() == 2);
  CHECK(is_trivial_isotypic(r));

  for (const auto& h : all_subgroups(s3)) {
    if (h.order() == 3) {
      Representation res = restrict_rep(irrep(irr, "std"), h);
      auto lin = linear_characters(*h.as_group());
      REQUIRE(lin.size() == 3);
      std::size_t nontrivial = 0;
      for (const auto& chi : lin) {
        auto m = as_count(pairing(element_traces(res), element_traces(one_dim_rep(h.as_group(), chi))));
        bool trivial = std::all_of(chi.begin(), chi.end(), [](const auto& x) { return x.is_one(); });
        CHECK(m == (trivial ? 0u : 1u));
        nontrivial += trivial ? 0 : m;
      }
      CHECK(nontrivial == 2);
    }
    if (h.order() == 2) {
      Representation res = restrict_rep(irrep(irr, "sign"), h);
      CHECK(res.matrix(1)(0, 0) == q(-1));
    }
  }
}

TEST_CASE("tensor, dual and sums") {
  auto s2 = builtin_group("S2");
  auto sign = builtin_rep("sign", s2);
  CHECK(is_trivial_isotypic(tensor_rep(sign, sign)));
  auto s3 = builtin_group("S3");
  auto irr = builtin_irreps(s3);
  const auto& st = irrep(irr, "std");
  Representation sq = tensor_rep(st, st);
  auto tr = element_traces(sq);
  auto base = element_traces(st);
  for (std::size_t g = 0; g < s3->order(); ++g) CHECK(tr[g] == base[g] * base[g]);
  CHECK(decompose(sq, irr).multiplicities == std::vector<std::size_t>{1, 1, 1});
  CHECK(element_traces(tensor_rep(trivial_rep(s3), st)) == base);

  auto c3 = builtin_group("C3");
  auto chi1 = builtin_rep("chi1", c3);
  Representation d = dual_rep(chi1);
  CHECK(d.matrix(1)(0, 0) == chi1.matrix(1)(0, 0).conjugate());
  CHECK(direct_sum(chi1, d).dim() == 2);
}

TEST_CASE("symmetric powers against Newton's identities") {
  auto c2 = builtin_group("C2");
  auto minus = builtin_rep("chi1", c2);
  for (std::size_t d = 0; d <= 5; ++d) {
    auto tr = element_traces(sym_power_rep(minus, d));
    CHECK(tr[1] == q(d % 2 == 0 ? 1 : -1));
  }
  auto s2 = builtin_group("S2");
  CHECK(element_traces(sym_power_rep(builtin_rep("perm", s2), 1))[1] == q(0));
  CHECK(sym_power_rep(builtin_rep("perm", s2), 0).dim() == 1);
  CHECK(is_trivial_isotypic(sym_power_rep(builtin_rep("perm", s2), 0)));

  for (const auto& name : {"S3", "D4", "C4", "C5", "Klein"}) {
    auto g = builtin_group(name);
    for (std::size_t n = 1; n <= 3; ++n) {
      Representation act = builtin_action(g, n);
      for (std::size_t d = 0; d <= 4; ++d) {
        Representation s = sym_power_rep(act, d);
        CHECK(s.is_homomorphism());
        auto tr = element_traces(s);
        for (std::size_t x = 0; x < g->order(); ++x)
          CHECK(tr[x] == sym_trace(act.matrix(g->inverse(x)), d));
      }
    }
  }
}

TEST_CASE("exterior powers") {
  auto s2 = builtin_group("S2");
  auto swap = builtin_rep("perm", s2);
  CHECK(ext_power_rep(swap, 0).dim() == 1);
  CHECK(is_trivial_isotypic(ext_power_rep(swap, 0)));
  CHECK(ext_power_rep(swap, 2).matrix(1)(0, 0) == q(-1));
  CHECK(same_rep(ext_power_rep(swap, 1), swap));
  auto s3 = builtin_group("S3");
  Representation std3 = irrep(builtin_irreps(s3), "std");
  CHECK(element_traces(ext_power_rep(std3, 2)) == element_traces(builtin_rep("sign", s3)));
  CHECK(ext_power_rep(std3, 3).dim() == 0);
}

TEST_CASE("validation of inputs") {
  auto s3 = builtin_group("S3");
  std::map<std::size_t, ScalarMatrix> bad{{1, scalar_matrix({{q(1), q(1)}, {q(0), q(1)}})}};
  CHECK_THROWS_AS(Representation::from_generators(s3, 2, bad), ValidationError);
  // sign and std of S3 is reducible
  auto irr = builtin_irreps(s3);
  std::vector<Representation> list{irr[0], direct_sum(irr[1], irr[2])};
  CHECK_THROWS_AS(validate_irreducible_list(list), ValidationError);
  CHECK_THROWS_AS(builtin_rep("nonsense", s3), ValidationError);
}
