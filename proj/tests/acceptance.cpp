// One PASS/FAIL line per acceptance criterion. Every comparison is exact.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "equideriv/errors.hpp"
#include "support.hpp"

using namespace equideriv;
using namespace testing_support;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

using Clock = std::chrono::steady_clock;

bool report(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (limit_s > 0 && secs >= limit_s) {
    if (out.ok) out.detail = "time limit exceeded";
    out.ok = false;
  }
  std::printf("%s %d %s (%.2f s", out.ok ? "PASS" : "FAIL", id, title.c_str(), secs);
  if (limit_s > 0) std::printf(", limit %.0f s", limit_s);
  std::printf(")");
  if (!out.detail.empty()) std::printf(": %s", out.detail.c_str());
  std::printf("\n");
  std::fflush(stdout);
  return out.ok;
}

std::string id(const std::string& group, const Representation& v, std::size_t i, const Representation& w,
               std::size_t j, std::size_t n) {
  std::ostringstream os;
  os << group << " " << v.label() << "(" << i << ") -> " << w.label() << "(" << j << "), " << n << " vars";
  return os.str();
}

Outcome orthogonality() {
  Outcome out;
  for (const auto& name : all_builtin_names()) {
    auto irr = builtin_irreps(builtin_group(name));
    for (std::size_t i = 0; i < irr.size(); ++i)
      for (std::size_t j = 0; j < irr.size(); ++j) {
        CyclotomicScalar want(i == j ? 1 : 0);
        out.require(inner_product(character(irr[i]), character(irr[j])) == want,
                    name + " " + irr[i].label() + "/" + irr[j].label());
        out.require(pairing(element_traces(irr[i]), element_traces(irr[j])) == want,
                    name + " element-wise " + irr[i].label() + "/" + irr[j].label());
      }
  }
  return out;
}

Outcome isotypic() {
  Outcome out;
  std::mt19937 rng(2024);
  auto names = all_builtin_names();
  for (int t = 0; t < 50; ++t) {
    const std::string& name = names[static_cast<std::size_t>(t) % names.size()];
    auto g = builtin_group(name);
    auto irr = builtin_irreps(g);
    std::vector<std::size_t> mult;
    Representation r = random_rep(rng, g, irr, 12, &mult);
    Decomposition d = decompose(r, irr);
    const std::string tag = name + " #" + std::to_string(t);
    out.require(d.multiplicities == mult, tag + ": multiplicities");
    std::size_t dim = 0;
    ScalarMatrix total(r.dim(), r.dim());
    for (std::size_t i = 0; i < irr.size(); ++i) {
      dim += d.multiplicities[i] * irr[i].dim();
      out.require(d.projectors[i] * d.projectors[i] == d.projectors[i], tag + ": idempotent");
      for (std::size_t j = 0; j < irr.size(); ++j)
        if (i != j) out.require(is_zero_matrix(d.projectors[i] * d.projectors[j]), tag + ": annihilating");
      total += d.projectors[i];
    }
    out.require(total == ScalarMatrix::identity(r.dim()), tag + ": sum to identity");
    out.require(dim == r.dim(), tag + ": dimension count");
  }
  return out;
}

Outcome structure_theorem() {
  Outcome out;
  std::size_t disguised = 0;
  std::mt19937 rng(77);
  std::vector<std::string> names;
  for (const auto& n : all_builtin_names())
    if (builtin_group(n)->order() <= 8) names.push_back(n);
  for (int t = 0; t < 100; ++t) {
    const std::string& name = names[static_cast<std::size_t>(t) % names.size()];
    auto g = builtin_group(name);
    const std::size_t nvars = 1 + static_cast<std::size_t>(t / static_cast<int>(names.size())) % 2;
    Representation act = builtin_action(g, nvars);
    auto rr = random_raw_module(rng, act, builtin_irreps(g), 5, 3);
    const RawEquivariantModule& raw = rr.module;
    const std::string tag = name + " #" + std::to_string(t);
    bool polynomial = false;
    for (std::size_t x = 0; x < g->order(); ++x)
      for (const auto& f : raw.matrix(x).data()) polynomial = polynomial || !f.is_constant();
    disguised += polynomial ? 1 : 0;
    NormalForm nf = normalize_module(raw);
    const std::size_t n = raw.rank();
    Polynomial det = determinant(nf.change_of_basis);
    out.require(det.is_constant() && !det.is_zero(), tag + ": determinant");
    out.require(nf.change_of_basis * nf.inverse == to_poly(ScalarMatrix::identity(n)), tag + ": inverse");
    out.require(nf.inverse * nf.change_of_basis == to_poly(ScalarMatrix::identity(n)), tag + ": inverse");
    const auto& nd = nf.module.degrees();
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        const Polynomial& f = nf.change_of_basis(r, c);
        out.require(nd[c] >= raw.degrees()[r] ? f.is_homogeneous(nd[c] - raw.degrees()[r]) : f.is_zero(),
                    tag + ": homogeneous columns");
      }
    for (std::size_t x = 0; x < g->order(); ++x) {
      PolyMatrix conj = nf.inverse * raw.matrix(x) * act_on_entries(act, x, nf.change_of_basis);
      const PolyMatrix block = to_poly(nf.module.generator_matrix(x));
      out.require(conj == block, tag + ": block-constant action");
      // round trip back to the raw action
      PolyMatrix back = nf.change_of_basis * block * act_on_entries(act, x, nf.inverse);
      out.require(back == raw.matrix(x), tag + ": round trip");
    }
  }
  if (out.ok) out.detail = std::to_string(disguised) + " with non-constant action entries";
  return out;
}

template <class F>
void hom_sweep(F&& f) {
  for (const auto& name : all_builtin_names()) {
    auto g = builtin_group(name);
    auto irr = builtin_irreps(g);
    for (std::size_t n = 1; n <= 3; ++n) {
      Representation act = builtin_action(g, n);
      for (const auto& v : irr)
        for (const auto& w : irr)
          for (std::size_t i = 0; i <= 3; ++i)
            for (std::size_t j = 0; j <= i; ++j) f(name, act, v, i, w, j, n);
    }
  }
}

Outcome hom_table() {
  Outcome out;
  hom_sweep([&](const std::string& name, const Representation& act, const Representation& v, std::size_t i,
                const Representation& w, std::size_t j, std::size_t n) {
    const std::size_t formula = hom_generators(act, v, i, w, j);
    const std::size_t solved = equivariant_maps(act, v, i, w, j).size();
    out.require(formula == solved, id(name, v, i, w, j, n));
  });
  return out;
}

Outcome ext_vanishing() {
  Outcome out;
  hom_sweep([&](const std::string& name, const Representation& act, const Representation& v, std::size_t i,
                const Representation& w, std::size_t j, std::size_t n) {
    auto c = EquivariantComplex::single(BlockModule(act, {{i, v}}));
    auto d = EquivariantComplex::single(BlockModule(act, {{j, w}}));
    for (int l : {-2, -1, 1, 2}) out.require(hom_complexes(c, d, l) == 0, id(name, v, i, w, j, n) + " l=" + std::to_string(l));
  });
  return out;
}

Outcome koszul() {
  Outcome out;
  for (const auto& name : all_builtin_names()) {
    auto g = builtin_group(name);
    for (std::size_t n = 1; n <= 4; ++n) {
      Representation act = builtin_action(g, n);
      EquivariantComplex k = koszul_complex(act);
      const std::string tag = name + " " + std::to_string(n) + " vars";
      for (int p : k.positions()) {
        out.require(is_zero_matrix(k.differential(p + 1) * k.differential(p)), tag + ": d^2");
        out.require(is_equivariant(k.term(p), k.term(p + 1), k.differential(p)), tag + ": equivariance");
      }
      for (std::size_t deg = 0; deg <= 5; ++deg)
        for (const auto& piece : graded_homology(k, deg)) {
          if (deg == 0 && piece.position == 0) {
            out.require(piece.dim == 1 && piece.rep && is_trivial_isotypic(*piece.rep), tag + ": H^0 in degree 0");
          } else {
            out.require(piece.dim == 0, tag + ": homology at position " + std::to_string(piece.position) +
                                            ", degree " + std::to_string(deg));
          }
        }
    }
  }
  return out;
}

Outcome descent() {
  Outcome out;
  for (const auto& c : descent_suite()) {
    DescentCertificate cert = descends(c.module, c.space, builtin_irreps(c.module.group()));
    OracleReport oracle = invariant_oracle(c.module, std::nullopt, c.space);
    out.require(cert.descends == c.expected, c.name + ": verdict");
    out.require(oracle.deficit == !cert.descends, c.name + ": criterion and oracle disagree");
  }
  return out;
}

Outcome morphisms() {
  Outcome out;
  std::size_t checked = 0;
  for (const auto& c : descent_suite()) {
    if (!descends(c.module, Space::affine).descends) continue;
    std::vector<BlockModule> family;
    for (std::size_t k = 0; k <= 2; ++k) {
      std::vector<Block> blocks;
      for (const auto& b : c.module.blocks()) blocks.push_back({b.shift + k, b.rep});
      family.emplace_back(c.module.action(), blocks);
    }
    family.emplace_back(c.module.action(), std::vector<Block>{{0, c.module.blocks()[0].rep}, {1, c.module.blocks()[0].rep}});
    for (const auto& src : family)
      for (const auto& tgt : family)
        for (const auto& phi : hom_basis(src, tgt)) {
          PolyMatrix out_phi = descend_morphism(src, tgt, phi);
          for (const auto& f : out_phi.data()) out.require(is_invariant(f, c.module.action()), c.name + ": entry");
          ++checked;
        }
  }
  out.require(checked > 0, "no morphisms generated");
  if (out.ok) out.detail = std::to_string(checked) + " maps";
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome out;
  namespace fs = std::filesystem;
  const fs::path work = fs::temp_directory_path() / "equideriv_acceptance";
  fs::create_directories(work);
  std::size_t files = 0;
  std::vector<fs::path> inputs;
  for (const auto& e : fs::directory_iterator(EQUIDERIV_TEST_DATA))
    if (e.path().extension() == ".json") inputs.push_back(e.path());
  std::sort(inputs.begin(), inputs.end());
  for (const auto& in : inputs) {
    std::string runs[2];
    for (int r = 0; r < 2; ++r) {
      const fs::path js = work / (in.stem().string() + "_" + std::to_string(r) + ".json");
      fs::remove(js);
      const std::string cmd = std::string("\"") + EQUIDERIV_CLI + "\" run \"" + in.string() + "\" --json \"" +
                              js.string() + "\" > /dev/null 2>&1";
      const int status = std::system(cmd.c_str());
      out.require(status != -1, in.filename().string() + ": could not start the CLI");
      runs[r] = slurp(js);
    }
    out.require(!runs[0].empty(), in.filename().string() + ": no report written");
    out.require(runs[0] == runs[1], in.filename().string() + ": reports differ");
    ++files;
  }
  out.require(files > 0, "no problem files");
  if (out.ok) out.detail = std::to_string(files) + " problem files";
  return out;
}

}  // namespace

int main() {
  bool all = true;
  all &= report(1, "character orthogonality", 1, orthogonality);
  all &= report(2, "isotypic projector algebra on 50 random reps", 10, isotypic);
  all &= report(3, "normal form of 100 random raw modules", 30, structure_theorem);
  all &= report(4, "Hom table formula against the equivariant solver", 30, hom_table);
  all &= report(5, "no Hom between single generators in nonzero degree", 0, ext_vanishing);
  all &= report(6, "Koszul complexes resolve the residue field", 10, koszul);
  all &= report(7, "descent suite against the invariant oracle", 10, descent);
  all &= report(8, "equivariant maps between descending modules have invariant entries", 0, morphisms);
  all &= report(9, "CLI reports are byte-identical across runs", 0, determinism);
  return all ? 0 : 1;
}
