#include <doctest.h>

#include "equideriv/errors.hpp"
#include "support.hpp"

using namespace equideriv;
using namespace testing_support;

namespace {

Polynomial x(std::size_t i) { return Polynomial::variable(i); }
CyclotomicScalar q(long n, long d = 1) { return CyclotomicScalar(mpq_class(n, d)); }

PolyMatrix pm(std::initializer_list<std::initializer_list<Polynomial>> rows) {
  std::size_t r = 0, cols = rows.begin()->size();
  PolyMatrix m(rows.size(), cols);
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (const auto& e : row) m(r, c++) = e;
    ++r;
  }
  return m;
}

// Degrees and the conjugated action are checked directly, without the
// library's own round-trip check.
void check_normal_form(const RawEquivariantModule& raw, const NormalForm& nf) {
  const std::size_t n = raw.rank();
  REQUIRE(nf.change_of_basis.rows() == n);
  CHECK(nf.change_of_basis * nf.inverse == to_poly(ScalarMatrix::identity(n)));
  Polynomial det = determinant(nf.change_of_basis);
  CHECK(det.is_constant());
  CHECK_FALSE(det.is_zero());
  const auto& new_deg = nf.module.degrees();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const Polynomial& f = nf.change_of_basis(r, c);
      if (new_deg[c] < raw.degrees()[r]) {
        CHECK(f.is_zero());
      } else {
        CHECK(f.is_homogeneous(new_deg[c] - raw.degrees()[r]));
      }
    }
  for (std::size_t b = 1; b < nf.module.blocks().size(); ++b)
    CHECK(nf.module.blocks()[b - 1].shift < nf.module.blocks()[b].shift);
  const Representation& act = raw.action();
  for (std::size_t g = 0; g < raw.group()->order(); ++g) {
    PolyMatrix moved = act_on_entries(act, g, nf.change_of_basis);
    CHECK(nf.inverse * raw.matrix(g) * moved == to_poly(nf.module.generator_matrix(g)));
  }
}

}  // namespace

TEST_CASE("normal form of the worked C2 example") {
  auto c2 = builtin_group("C2");
  Representation act = trivial_rep(c2);
  RawEquivariantModule raw = RawEquivariantModule::from_generators(act, {0, 1}, {{1, pm({{1, x(0)}, {0, -1}})}});
  NormalForm nf = normalize_module(raw);
  check_normal_form(raw, nf);
  REQUIRE(nf.module.blocks().size() == 2);
  CHECK(nf.module.blocks()[0].shift == 0);
  CHECK(is_trivial_isotypic(nf.module.blocks()[0].rep));
  CHECK(nf.module.blocks()[1].shift == 1);
  CHECK(nf.module.blocks()[1].rep.matrix(1)(0, 0) == q(-1));
  CHECK(nf.change_of_basis(0, 1) == x(0) * q(-1, 2));
  CHECK(nf.change_of_basis(1, 1) == Polynomial(1));
}

TEST_CASE("normal form of block input and of the trivial group") {
  auto s3 = builtin_group("S3");
  auto irr = builtin_irreps(s3);
  BlockModule m(builtin_action(s3, 2), {{0, irr[2]}, {2, irr[1]}});
  NormalForm nf = normalize_module(as_raw(m));
  CHECK(nf.change_of_basis == to_poly(ScalarMatrix::identity(3)));
  CHECK(nf.module == m);

  auto one = builtin_group("trivial");
  Representation act1 = trivial_rep(one, 2);
  RawEquivariantModule raw(act1, {2, 0, 2, 1}, {to_poly(ScalarMatrix::identity(4))});
  NormalForm t = normalize_module(raw);
  REQUIRE(t.module.blocks().size() == 3);
  CHECK(t.module.degrees() == std::vector<std::size_t>{0, 1, 2, 2});
  CHECK(t.module.blocks()[2].rep.dim() == 2);
}

TEST_CASE("normal form of random disguised modules") {
  std::mt19937 rng(21);
  for (const auto& name : {"C2", "S3", "C4", "Klein", "D4"}) {
    auto g = builtin_group(name);
    auto irr = builtin_irreps(g);
    for (std::size_t n = 1; n <= 2; ++n) {
      Representation act = builtin_action(g, n);
      for (int t = 0; t < 2; ++t) {
        CAPTURE(name);
        auto rr = random_raw_module(rng, act, irr, 5, 3);
        NormalForm nf = normalize_module(rr.module);
        check_normal_form(rr.module, nf);
        CHECK(nf.module.degrees() == rr.source.degrees());
        // same representation in each degree, up to isomorphism
        for (std::size_t d = 0; d <= 3; ++d) {
          std::vector<CyclotomicScalar> a(g->order()), b(g->order());
          for (const auto& blk : nf.module.blocks())
            if (blk.shift == d) a = element_traces(blk.rep);
          for (const auto& blk : rr.source.blocks())
            if (blk.shift == d)
              for (std::size_t e = 0; e < g->order(); ++e) b[e] += element_traces(blk.rep)[e];
          CHECK(a == b);
        }
      }
    }
  }
}

TEST_CASE("raw modules are validated") {
  auto s2 = builtin_group("S2");
  Representation swap = builtin_rep("perm", s2);
  // entry of the wrong degree
  CHECK_THROWS_AS(RawEquivariantModule::from_generators(swap, {0, 1}, {{1, pm({{1, x(0) * x(1)}, {0, 1}})}}),
                  ValidationError);
  // fails the cocycle condition
  CHECK_THROWS_AS(RawEquivariantModule::from_generators(swap, {0, 1}, {{1, pm({{1, x(0) - x(1)}, {0, -1}})}}),
                  ValidationError);
  CHECK_NOTHROW(RawEquivariantModule::from_generators(swap, {0, 1}, {{1, pm({{1, x(0) + x(1)}, {0, -1}})}}));
}

TEST_CASE("generator Hom table") {
  auto s2 = builtin_group("S2");
  Representation swap = builtin_rep("perm", s2);
  auto triv = builtin_rep("triv", s2), sign = builtin_rep("sign", s2);
  CHECK(hom_generators(swap, triv, 0, sign, 1) == 0);
  CHECK(hom_generators(swap, sign, 2, sign, 2) == 1);
  CHECK(hom_generators(swap, triv, 1, triv, 0) == 1);
  CHECK(equivariant_maps(swap, triv, 1, triv, 0).size() == 1);
  Polynomial f = equivariant_maps(swap, triv, 1, triv, 0)[0](0, 0);
  CHECK(f.is_homogeneous(1));
  CHECK_FALSE(f.is_zero());
  CHECK(f.substitute(swap.matrix(1)) == f);
  CHECK(hom_generators(swap, triv, 1, sign, 0) == 1);
  CHECK_THROWS_AS(hom_generators(swap, regular_rep(s2), 0, triv, 0), ValidationError);

  for (const auto& name : {"S3", "D4", "C3"}) {
    auto g = builtin_group(name);
    auto irr = builtin_irreps(g);
    Representation act = builtin_action(g, 2);
    for (const auto& v : irr)
      for (const auto& w : irr)
        for (std::size_t i = 0; i <= 2; ++i)
          for (std::size_t j = 0; j <= i; ++j) {
            std::size_t want = reynolds_hom_dim(act, v, i, w, j);
            CHECK(hom_generators(act, v, i, w, j) == want);
            auto basis = equivariant_maps(act, v, i, w, j);
            CHECK(basis.size() == want);
            BlockModule src(act, {{i, v}}), tgt(act, {{j, w}});
            for (const auto& f : basis) CHECK(is_equivariant(src, tgt, f));
          }
  }
}

TEST_CASE("hom_basis between block modules") {
  auto s2 = builtin_group("S2");
  Representation swap = builtin_rep("perm", s2);
  auto triv = builtin_rep("triv", s2), sign = builtin_rep("sign", s2);
  BlockModule a(swap, {{0, triv}, {1, sign}}), b(swap, {{0, triv}, {1, triv}});
  auto basis = hom_basis(a, b);
  // triv->triv deg 0: 1; sign(1)->triv(0): x0-x1; sign(1)->triv(1): 0; triv(0)->triv(1): 0
  CHECK(basis.size() == 2);
  for (const auto& f : basis) CHECK(is_equivariant(a, b, f));
}

TEST_CASE("complexes are validated") {
  auto c2 = builtin_group("C2");
  Representation minus = builtin_rep("chi1", c2);
  auto triv = builtin_rep("chi0", c2), sgn = builtin_rep("chi1", c2);
  BlockModule top(minus, {{0, triv}}), bottom(minus, {{1, sgn}});
  // 0 -> sign (x) A(-1) -> A -> 0, multiplication by x
  EquivariantComplex k(minus, {{-1, bottom}, {0, top}}, {{-1, pm({{x(0)}})}});
  CHECK(k == koszul_complex(minus));
  // wrong rep: triv (x) A(-1) -> A by x is not equivariant
  BlockModule bad(minus, {{1, triv}});
  CHECK_THROWS_AS(EquivariantComplex(minus, {{-1, bad}, {0, top}}, {{-1, pm({{x(0)}})}}), ValidationError);
  // d^2 != 0
  CHECK_THROWS_AS(EquivariantComplex(minus, {{-1, top}, {0, top}, {1, top}}, {{-1, pm({{1}})}, {0, pm({{1}})}}),
                  ValidationError);
}

TEST_CASE("shift and cone") {
  auto s2 = builtin_group("S2");
  Representation swap = builtin_rep("perm", s2);
  EquivariantComplex k = koszul_complex(swap);
  CHECK(shift(shift(k, 1), -1) == k);
  EquivariantComplex k1 = shift(k, 1);
  CHECK(k1.positions() == std::vector<int>{-3, -2, -1});
  CHECK(k1.differential(-3) == -k.differential(-2));

  EquivariantComplex c = cone(identity_map(k));
  for (std::size_t d = 0; d <= 4; ++d)
    for (const auto& piece : graded_homology(c, d)) CHECK(piece.dim == 0);

  ChainMap zero{EquivariantComplex(swap, {}), k, {}};
  CHECK(cone(zero) == k);
}

TEST_CASE("Koszul complexes resolve the residue field") {
  for (const auto& name : {"S2", "S3", "C4", "Klein"}) {
    auto g = builtin_group(name);
    for (std::size_t n = 1; n <= 3; ++n) {
      Representation act = builtin_action(g, n);
      EquivariantComplex k = koszul_complex(act);
      CHECK(k.positions().front() == -static_cast<int>(n));
      for (std::size_t d = 0; d <= 4; ++d) {
        long euler = 0;
        for (const auto& piece : graded_homology(k, d)) {
          euler += (piece.position % 2 == 0 ? 1 : -1) * static_cast<long>(piece.slice_dim);
          if (d == 0 && piece.position == 0) {
            CHECK(piece.dim == 1);
            REQUIRE(piece.rep.has_value());
            CHECK(is_trivial_isotypic(*piece.rep));
          } else {
            CHECK(piece.dim == 0);
          }
        }
        CHECK(euler == (d == 0 ? 1 : 0));
      }
    }
  }
}

TEST_CASE("graded homology carries the induced representation") {
  auto s2 = builtin_group("S2");
  Representation swap = builtin_rep("perm", s2);
  BlockModule m(swap, {{0, builtin_rep("sign", s2)}});
  auto pieces = graded_homology(EquivariantComplex::single(m), 1);
  REQUIRE(pieces.size() == 1);
  CHECK(pieces[0].dim == 2);
  REQUIRE(pieces[0].rep);
  // sign (x) (triv + sign) = sign + triv
  auto tr = element_traces(*pieces[0].rep);
  CHECK(tr[1] == q(0));
}

TEST_CASE("Hom in the homotopy category") {
  auto s2 = builtin_group("S2");
  Representation swap = builtin_rep("perm", s2);
  auto triv = builtin_rep("triv", s2);
  auto single = EquivariantComplex::single(BlockModule(swap, {{1, triv}}));
  CHECK(hom_complexes(single, single, 0) == 1);
  CHECK(hom_complexes(single, single, 1) == 0);
  CHECK(hom_complexes(single, single, -1) == 0);

  auto c2 = builtin_group("C2");
  for (const Representation& act : {builtin_rep("chi1", c2), trivial_rep(builtin_group("trivial"))}) {
    EquivariantComplex k = koszul_complex(act);
    CHECK(hom_complexes(k, shift(k, 1), -1) == 1);
    CHECK(hom_complexes(k, k, 0) == 1);
    // a contractible complex has no maps up to homotopy
    EquivariantComplex c = cone(identity_map(k));
    for (int l = -2; l <= 2; ++l) CHECK(hom_complexes(c, k, l) == 0);
  }
}
