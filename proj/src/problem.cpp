#include "equideriv/problem.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <variant>

#include "equideriv/errors.hpp"

#ifndef EQUIDERIV_VERSION
#define EQUIDERIV_VERSION "0.0.0"
#endif

namespace equideriv {

const char* version() { return EQUIDERIV_VERSION; }

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw ConsistencyError("SHA-256 computation failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ValidationError(path + ": " + message);
}

void allow_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [k, v] : obj.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) fail(path, "unknown key '" + k + "'");
  }
}

const json& need(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) fail(path, std::string("missing key '") + key + "'");
  return obj.at(key);
}

long as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<long>();
}

std::size_t as_size(const json& v, const std::string& path) {
  long x = as_int(v, path);
  if (x < 0) fail(path, "expected a non-negative integer");
  return static_cast<std::size_t>(x);
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

// Literal text of a scalar or polynomial entry; integers are accepted too.
std::string literal(const json& v, const std::string& path) {
  if (v.is_number_integer()) return std::to_string(v.get<long>());
  if (v.is_string()) return v.get<std::string>();
  fail(path, "expected a literal string or integer");
}

template <class F>
auto with_column(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    fail(path, e.what());
  } catch (const ArithmeticError& e) {
    fail(path, e.what());
  }
}

// Prefixes errors raised below a named item with its path, once.
template <class F>
auto in_context(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const LimitError&) {
    throw;
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    if (what.rfind("objects.", 0) == 0 || what.rfind("reps.", 0) == 0) throw;
    throw ValidationError(path + ": " + what);
  }
}

struct Morphism {
  BlockModule source;
  BlockModule target;
  PolyMatrix matrix;
};

using Object = std::variant<BlockModule, RawEquivariantModule, EquivariantComplex, Morphism>;

const char* kind(const Object& o) {
  switch (o.index()) {
    case 0: return "module";
    case 1: return "raw module";
    case 2: return "complex";
    default: return "morphism";
  }
}

class Problem {
 public:
  Problem(const json& root, const RunOptions& options) : root_(root), options_(options) {
    allow_keys(root, "problem", {"scalars", "group", "irreps", "reps", "action", "objects", "tasks", "name"});
    parse_group();
    parse_irreps();
    if (root.contains("reps")) {
      const json& reps = root.at("reps");
      if (!reps.is_object()) fail("reps", "expected an object");
      for (const auto& [k, v] : reps.items()) rep_specs_.emplace(k, &v);
      for (const auto& [k, v] : reps.items()) named_rep(k, "reps." + k);
    }
    if (root.contains("action")) {
      action_ = parse_rep(root.at("action"), "action");
      if (action_->dim() == 0) fail("action", "needs at least one variable");
      if (action_->dim() > kMaxVariables)
        throw LimitError("action: at most " + std::to_string(kMaxVariables) + " variables are supported");
    }
    if (root.contains("objects")) {
      const json& objs = root.at("objects");
      if (!objs.is_object()) fail("objects", "expected an object");
      for (const auto& [k, v] : objs.items()) object_specs_.emplace(k, &v);
      for (const auto& [k, v] : objs.items()) object(k, "objects");
    }
    if (root.contains("tasks") && !root.at("tasks").is_array()) fail("tasks", "expected an array");
  }

  RunResult run() {
    RunResult out;
    json tasks = json::array();
    std::ostringstream text;
    text << "equideriv " << version() << ": group " << group_->name() << " of order " << group_->order() << "\n";
    std::size_t selected = 0;
    bool ok = true;
    if (root_.contains("tasks")) {
      const json& list = root_.at("tasks");
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = "tasks[" + std::to_string(i) + "]";
        const json& t = list[i];
        const std::string type = as_string(need(t, "task", path), path + ".task");
        const std::string name = t.contains("name") ? as_string(t.at("name"), path + ".name") : type;
        if (options_.task && *options_.task != name && *options_.task != type) continue;
        ++selected;
        json result = run_task(type, t, path, text, ok);
        tasks.push_back({{"index", i}, {"name", name}, {"task", type}, {"result", std::move(result)}});
      }
    }
    if (options_.task && selected == 0) throw ValidationError("no task named '" + *options_.task + "'");
    if (selected == 0) text << "no tasks: input validated\n";

    json group = {{"name", group_->name()}, {"order", group_->order()}};
    json classes = json::array();
    for (const auto& c : group_->classes()) classes.push_back(c.size());
    group["class_sizes"] = classes;
    out.report = {{"group", group}, {"scalar_order", order_}, {"tasks", tasks}, {"status", ok ? "ok" : "failed"}};
    out.text = text.str();
    ok_ = ok;
    return out;
  }

  bool ok() const { return ok_; }

 private:
  // ---- literals -------------------------------------------------------

  std::string str(const CyclotomicScalar& x) const {
    return order_ % x.order() == 0 ? x.to_string(order_) : x.to_string();
  }
  std::string str(const Polynomial& p) const { return p.to_string(order_); }

  json matrix_json(const ScalarMatrix& m) const {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(str(m(r, c)));
      rows.push_back(row);
    }
    return rows;
  }
  json matrix_json(const PolyMatrix& m) const {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(str(m(r, c)));
      rows.push_back(row);
    }
    return rows;
  }

  ScalarMatrix scalar_matrix_at(const json& v, const std::string& path) const {
    if (!v.is_array()) fail(path, "expected a matrix (list of rows)");
    std::vector<std::vector<CyclotomicScalar>> rows;
    for (std::size_t r = 0; r < v.size(); ++r) {
      if (!v[r].is_array()) fail(path, "expected a list of rows");
      rows.emplace_back();
      for (std::size_t c = 0; c < v[r].size(); ++c) {
        const std::string p = path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
        std::string lit = literal(v[r][c], p);
        rows.back().push_back(with_column(p, [&] { return parse_scalar(lit, order_); }));
      }
    }
    return with_column(path, [&] { return scalar_matrix(rows); });
  }

  PolyMatrix poly_matrix_at(const json& v, const std::string& path, std::size_t rows, std::size_t cols) const {
    if (!v.is_array()) fail(path, "expected a matrix (list of rows)");
    if (v.size() != rows) fail(path, "expected " + std::to_string(rows) + " rows");
    PolyMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      if (!v[r].is_array() || v[r].size() != cols) fail(path, "expected rows of length " + std::to_string(cols));
      for (std::size_t c = 0; c < cols; ++c) {
        const std::string p = path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
        std::string lit = literal(v[r][c], p);
        m(r, c) = with_column(p, [&] { return parse_polynomial(lit, order_); });
      }
    }
    return m;
  }

  // ---- group, irreps, reps ---------------------------------------------

  void parse_group() {
    const json& g = need(root_, "group", "problem");
    allow_keys(g, "group", {"builtin", "permutation_generators", "table", "name"});
    const int forms = g.contains("builtin") + g.contains("permutation_generators") + g.contains("table");
    if (forms != 1) fail("group", "give exactly one of builtin, permutation_generators, table");
    std::string name = g.contains("name") ? as_string(g.at("name"), "group.name") : "G";
    if (g.contains("builtin")) {
      group_ = builtin_group(as_string(g.at("builtin"), "group.builtin"));
    } else if (g.contains("permutation_generators")) {
      const json& gens = g.at("permutation_generators");
      if (!gens.is_array()) fail("group.permutation_generators", "expected a list of permutations");
      std::vector<Permutation> perms;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const std::string p = "group.permutation_generators[" + std::to_string(i) + "]";
        if (!gens[i].is_array()) fail(p, "expected a one-line permutation");
        Permutation perm;
        for (const auto& x : gens[i]) {
          std::size_t v = as_size(x, p);
          if (v == 0) fail(p, "permutations are 1-based");
          perm.push_back(v - 1);
        }
        perms.push_back(std::move(perm));
      }
      group_ = std::make_shared<const FiniteGroup>(FiniteGroup::from_permutations(perms, name));
    } else {
      const json& t = g.at("table");
      if (!t.is_array()) fail("group.table", "expected a square table");
      std::vector<std::vector<std::size_t>> table;
      for (std::size_t r = 0; r < t.size(); ++r) {
        const std::string p = "group.table[" + std::to_string(r) + "]";
        if (!t[r].is_array()) fail(p, "expected a row");
        table.emplace_back();
        for (const auto& x : t[r]) table.back().push_back(as_size(x, p));
      }
      group_ = std::make_shared<const FiniteGroup>(FiniteGroup::from_table(table, name));
    }
    const auto exponent = static_cast<unsigned>(group_->exponent());
    order_ = exponent;
    if (root_.contains("scalars")) {
      const json& s = root_.at("scalars");
      allow_keys(s, "scalars", {"order"});
      if (s.contains("order")) {
        std::size_t m = as_size(s.at("order"), "scalars.order");
        if (m == 0 || m > 1000) fail("scalars.order", "order must be between 1 and 1000");
        if (m % exponent != 0)
          fail("scalars.order", "must be a multiple of the group exponent " + std::to_string(exponent));
        order_ = static_cast<unsigned>(m);
      }
    }
  }

  void parse_irreps() {
    if (!root_.contains("irreps")) {
      try {
        irreps_ = builtin_irreps(group_);
      } catch (const ValidationError&) {
        return;  // tasks that need irreducibles will complain
      }
    } else {
      const json& v = root_.at("irreps");
      if (v.is_object() && v.contains("builtin")) {
        allow_keys(v, "irreps", {"builtin"});
        const std::string name = as_string(v.at("builtin"), "irreps.builtin");
        if (name != group_->name()) fail("irreps.builtin", "group is " + group_->name() + ", not " + name);
        irreps_ = builtin_irreps(group_);
      } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
          Representation r = parse_rep(v[i], "irreps[" + std::to_string(i) + "]");
          if (r.label().empty()) r = r.relabeled("irrep" + std::to_string(i));
          irreps_.push_back(std::move(r));
        }
      } else {
        fail("irreps", "expected {\"builtin\": name} or a list of representations");
      }
    }
    std::set<std::string> labels;
    for (const auto& r : irreps_)
      if (!labels.insert(r.label()).second) fail("irreps", "duplicate label '" + r.label() + "'");
    validate_irreducible_list(irreps_);
    have_irreps_ = true;
  }

  const std::vector<Representation>& irreps(const std::string& path) const {
    if (!have_irreps_) fail(path, "this task needs an irreducible list (\"irreps\")");
    return irreps_;
  }

  const Representation& action(const std::string& path) const {
    if (!action_) fail(path, "no variable action given (\"action\")");
    return *action_;
  }

  Representation named_rep(const std::string& name, const std::string& path) {
    if (auto it = reps_.find(name); it != reps_.end()) return it->second;
    if (auto it = rep_specs_.find(name); it != rep_specs_.end()) {
      if (!resolving_reps_.insert(name).second) fail(path, "representation '" + name + "' refers to itself");
      Representation r = in_context("reps." + name, [&] { return parse_rep(*it->second, "reps." + name); });
      if (r.label().empty()) r = r.relabeled(name);
      resolving_reps_.erase(name);
      reps_.emplace(name, r);
      return r;
    }
    for (const auto& r : irreps_)
      if (r.label() == name) return r;
    try {
      return builtin_rep(name, group_);
    } catch (const ValidationError& e) {
      fail(path, "unknown representation '" + name + "' (" + e.what() + ")");
    }
  }

  Representation parse_rep(const json& v, const std::string& path) {
    if (v.is_string()) return named_rep(v.get<std::string>(), path);
    allow_keys(v, path,
               {"builtin", "ref", "matrices", "dim", "label", "sum", "tensor", "dual", "sym", "ext", "degree",
                "builtin_action", "trivial"});
    std::optional<std::string> label;
    if (v.contains("label")) label = as_string(v.at("label"), path + ".label");
    auto finish = [&](Representation r) { return label ? r.relabeled(*label) : r; };
    if (v.contains("builtin")) return finish(named_rep(as_string(v.at("builtin"), path + ".builtin"), path));
    if (v.contains("ref")) return finish(named_rep(as_string(v.at("ref"), path + ".ref"), path));
    if (v.contains("trivial")) return finish(trivial_rep(group_, as_size(v.at("trivial"), path + ".trivial")));
    if (v.contains("builtin_action")) {
      std::size_t n = as_size(v.at("builtin_action"), path + ".builtin_action");
      if (n > kMaxVariables) throw LimitError(path + ": at most " + std::to_string(kMaxVariables) + " variables");
      return finish(builtin_action(group_, n));
    }
    if (v.contains("matrices")) {
      const json& mats = v.at("matrices");
      if (!mats.is_object()) fail(path + ".matrices", "expected {element index: matrix}");
      std::map<std::size_t, ScalarMatrix> images;
      std::optional<std::size_t> dim;
      if (v.contains("dim")) dim = as_size(v.at("dim"), path + ".dim");
      for (const auto& [k, m] : mats.items()) {
        std::size_t e = 0;
        try {
          std::size_t used = 0;
          e = std::stoul(k, &used);
          if (used != k.size()) throw std::invalid_argument(k);
        } catch (const std::exception&) {
          fail(path + ".matrices", "element key '" + k + "' is not an index");
        }
        ScalarMatrix sm = scalar_matrix_at(m, path + ".matrices." + k);
        if (!sm.square()) fail(path + ".matrices." + k, "matrix is not square");
        if (!dim) dim = sm.rows();
        images.emplace(e, std::move(sm));
      }
      if (!dim) fail(path, "give \"dim\" when no matrices are listed");
      return Representation::from_generators(group_, *dim, images, label.value_or(""));
    }
    if (v.contains("sum") || v.contains("tensor")) {
      const bool sum = v.contains("sum");
      const json& parts = v.at(sum ? "sum" : "tensor");
      const std::string p = path + (sum ? ".sum" : ".tensor");
      if (!parts.is_array() || parts.empty()) fail(p, "expected a non-empty list");
      Representation acc = parse_rep(parts[0], p + "[0]");
      for (std::size_t i = 1; i < parts.size(); ++i) {
        Representation r = parse_rep(parts[i], p + "[" + std::to_string(i) + "]");
        acc = sum ? direct_sum(acc, r) : tensor_rep(acc, r);
      }
      return finish(acc);
    }
    if (v.contains("dual")) return finish(dual_rep(parse_rep(v.at("dual"), path + ".dual")));
    if (v.contains("sym") || v.contains("ext")) {
      const bool sym = v.contains("sym");
      Representation base = parse_rep(v.at(sym ? "sym" : "ext"), path);
      std::size_t d = as_size(need(v, "degree", path), path + ".degree");
      return finish(sym ? sym_power_rep(base, d) : ext_power_rep(base, d));
    }
    fail(path, "representation needs one of builtin, ref, matrices, sum, tensor, dual, sym, ext, builtin_action, "
               "trivial");
  }

  // ---- objects ---------------------------------------------------------

  std::vector<Block> parse_blocks(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected a list of {shift, rep}");
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string p = path + "[" + std::to_string(i) + "]";
      allow_keys(v[i], p, {"shift", "rep"});
      blocks.push_back({as_size(need(v[i], "shift", p), p + ".shift"), parse_rep(need(v[i], "rep", p), p + ".rep")});
    }
    return blocks;
  }

  BlockModule module_at(const json& v, const std::string& path) {
    if (v.is_string()) {
      const Object& o = object(v.get<std::string>(), path);
      if (const auto* m = std::get_if<BlockModule>(&o)) return *m;
      fail(path, "object '" + v.get<std::string>() + "' is a " + kind(o) + ", expected a module");
    }
    if (v.is_array()) return BlockModule(action(path), parse_blocks(v, path));
    allow_keys(v, path, {"blocks"});
    return BlockModule(action(path), parse_blocks(need(v, "blocks", path), path + ".blocks"));
  }

  EquivariantComplex complex_at(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected the name of a complex or module");
    const Object& o = object(v.get<std::string>(), path);
    if (const auto* c = std::get_if<EquivariantComplex>(&o)) return *c;
    if (const auto* m = std::get_if<BlockModule>(&o)) return EquivariantComplex::single(*m);
    fail(path, "object '" + v.get<std::string>() + "' is a " + kind(o) + ", expected a complex");
  }

  static int position_key(const std::string& k, const std::string& path) {
    try {
      std::size_t used = 0;
      int p = std::stoi(k, &used);
      if (used == k.size()) return p;
    } catch (const std::exception&) {
    }
    fail(path, "position key '" + k + "' is not an integer");
  }

  ChainMap chain_map_at(const json& v, const std::string& path) {
    allow_keys(v, path, {"identity", "source", "target", "components"});
    if (v.contains("identity")) return identity_map(complex_at(v.at("identity"), path + ".identity"));
    ChainMap f{complex_at(need(v, "source", path), path + ".source"),
               complex_at(need(v, "target", path), path + ".target"),
               {}};
    if (v.contains("components")) {
      const json& comps = v.at("components");
      if (!comps.is_object()) fail(path + ".components", "expected {position: matrix}");
      for (const auto& [k, m] : comps.items()) {
        int p = position_key(k, path + ".components");
        f.components.emplace(p, poly_matrix_at(m, path + ".components." + k, f.target.term(p).rank(),
                                               f.source.term(p).rank()));
      }
    }
    return f;
  }

  Object build_object(const json& v, const std::string& path) {
    allow_keys(v, path, {"blocks", "raw", "complex", "koszul", "shift", "cone", "morphism"});
    if (v.size() != 1) fail(path, "an object has exactly one kind");
    if (v.contains("blocks")) return BlockModule(action(path), parse_blocks(v.at("blocks"), path + ".blocks"));
    if (v.contains("raw")) {
      const json& r = v.at("raw");
      const std::string p = path + ".raw";
      allow_keys(r, p, {"degrees", "matrices"});
      const json& dj = need(r, "degrees", p);
      if (!dj.is_array()) fail(p + ".degrees", "expected a list");
      std::vector<std::size_t> degrees;
      for (const auto& d : dj) degrees.push_back(as_size(d, p + ".degrees"));
      const json& mats = need(r, "matrices", p);
      if (!mats.is_object()) fail(p + ".matrices", "expected {element index: matrix}");
      std::map<std::size_t, PolyMatrix> images;
      for (const auto& [k, m] : mats.items()) {
        std::size_t e = 0;
        try {
          std::size_t used = 0;
          e = std::stoul(k, &used);
          if (used != k.size()) throw std::invalid_argument(k);
        } catch (const std::exception&) {
          fail(p + ".matrices", "element key '" + k + "' is not an index");
        }
        images.emplace(e, poly_matrix_at(m, p + ".matrices." + k, degrees.size(), degrees.size()));
      }
      return RawEquivariantModule::from_generators(action(path), std::move(degrees), images);
    }
    if (v.contains("koszul")) return koszul_complex(action(path));
    if (v.contains("complex")) {
      const json& c = v.at("complex");
      const std::string p = path + ".complex";
      allow_keys(c, p, {"terms", "differentials"});
      const json& terms = need(c, "terms", p);
      if (!terms.is_object()) fail(p + ".terms", "expected {position: module}");
      std::map<int, BlockModule> mods;
      for (const auto& [k, t] : terms.items())
        mods.emplace(position_key(k, p + ".terms"), module_at(t, p + ".terms." + k));
      std::map<int, PolyMatrix> diffs;
      if (c.contains("differentials")) {
        const json& ds = c.at("differentials");
        if (!ds.is_object()) fail(p + ".differentials", "expected {position: matrix}");
        for (const auto& [k, d] : ds.items()) {
          int pos = position_key(k, p + ".differentials");
          auto rank_at = [&](int q) { return mods.count(q) ? mods.at(q).rank() : 0; };
          diffs.emplace(pos, poly_matrix_at(d, p + ".differentials." + k, rank_at(pos + 1), rank_at(pos)));
        }
      }
      return EquivariantComplex(action(path), std::move(mods), std::move(diffs));
    }
    if (v.contains("shift")) {
      const json& s = v.at("shift");
      allow_keys(s, path + ".shift", {"of", "by"});
      return shift(complex_at(need(s, "of", path + ".shift"), path + ".shift.of"),
                   static_cast<int>(as_int(need(s, "by", path + ".shift"), path + ".shift.by")));
    }
    if (v.contains("cone")) return cone(chain_map_at(v.at("cone"), path + ".cone"));
    const json& m = v.at("morphism");
    const std::string p = path + ".morphism";
    allow_keys(m, p, {"source", "target", "matrix"});
    BlockModule src = module_at(need(m, "source", p), p + ".source");
    BlockModule tgt = module_at(need(m, "target", p), p + ".target");
    PolyMatrix mat = poly_matrix_at(need(m, "matrix", p), p + ".matrix", tgt.rank(), src.rank());
    return Morphism{std::move(src), std::move(tgt), std::move(mat)};
  }

  const Object& object(const std::string& name, const std::string& path) {
    if (auto it = objects_.find(name); it != objects_.end()) return it->second;
    auto entry = object_specs_.find(name);
    if (entry == object_specs_.end()) fail(path, "unknown object '" + name + "'");
    if (!resolving_objects_.insert(name).second) fail(path, "object '" + name + "' refers to itself");
    Object o = in_context("objects." + name, [&] { return build_object(*entry->second, "objects." + name); });
    resolving_objects_.erase(name);
    return objects_.emplace(name, std::move(o)).first->second;
  }

  // ---- reports ---------------------------------------------------------

  json character_json(const Representation& r) const {
    json vals = json::array();
    for (const auto& x : character(r).values) vals.push_back(str(x));
    return vals;
  }

  json rep_json(const Representation& r) const {
    json out = {{"dim", r.dim()}, {"character", character_json(r)}};
    if (!r.label().empty()) out["label"] = r.label();
    if (have_irreps_ && same_group(*r.group(), *group_) && r.dim() > 0) {
      Decomposition d = decompose(r, irreps_);
      json mult = json::object();
      for (std::size_t i = 0; i < irreps_.size(); ++i) mult[irreps_[i].label()] = d.multiplicities[i];
      out["multiplicities"] = mult;
    }
    out["trivial_isotypic"] = is_trivial_isotypic(r);
    return out;
  }

  json module_json(const BlockModule& m) const {
    json blocks = json::array();
    for (const auto& b : m.blocks()) blocks.push_back({{"shift", b.shift}, {"rep", rep_json(b.rep)}});
    return {{"rank", m.rank()}, {"blocks", blocks}};
  }

  std::string multiplicity_text(const json& mult) const {
    std::string s;
    for (const auto& r : irreps_) {
      if (!mult.contains(r.label())) continue;
      if (!s.empty()) s += " ";
      s += r.label() + "=" + std::to_string(mult.at(r.label()).get<std::size_t>());
    }
    return s;
  }

  Space space_for(const json& t, const std::string& path) const {
    if (options_.space) return *options_.space;
    if (t.contains("space")) return parse_space(as_string(t.at("space"), path + ".space"));
    return Space::affine;
  }

  std::vector<std::size_t> degree_list(const json& t, const std::string& path, std::size_t last) const {
    std::vector<std::size_t> out;
    if (t.contains("degrees")) {
      const json& ds = t.at("degrees");
      if (!ds.is_array()) fail(path + ".degrees", "expected a list");
      for (const auto& d : ds) out.push_back(as_size(d, path + ".degrees"));
    } else {
      for (std::size_t d = 0; d <= last; ++d) out.push_back(d);
    }
    return out;
  }

  json homology_json(const EquivariantComplex& c, const std::vector<std::size_t>& degrees) const {
    json out = json::array();
    for (std::size_t d : degrees) {
      json pieces = json::array();
      long euler_h = 0, euler_terms = 0;
      for (const auto& piece : graded_homology(c, d)) {
        json pj = {{"position", piece.position}, {"dim", piece.dim}, {"slice_dim", piece.slice_dim}};
        if (piece.rep) pj["rep"] = rep_json(*piece.rep);
        const long sign = (piece.position % 2 == 0) ? 1 : -1;
        euler_h += sign * static_cast<long>(piece.dim);
        euler_terms += sign * static_cast<long>(piece.slice_dim);
        pieces.push_back(pj);
      }
      if (euler_h != euler_terms) throw ConsistencyError("Euler characteristic mismatch in degree " + std::to_string(d));
      out.push_back({{"degree", d}, {"positions", pieces}, {"euler_characteristic", euler_h}});
    }
    return out;
  }

  json certificate_json(const DescentCertificate& c) const {
    json out = {{"verdict", c.descends ? "descends" : "fails"},
                {"subgroups_checked", c.subgroups_checked},
                {"strata_checked", c.strata_checked}};
    if (c.witness) {
      const auto& w = *c.witness;
      json stratum = {{"mode", to_string(w.stratum.mode)}, {"label", w.stratum.label}, {"dim", w.stratum.dim()}};
      json basis = json::array();
      for (std::size_t k = 0; k < w.stratum.basis.cols(); ++k) {
        json col = json::array();
        for (std::size_t r = 0; r < w.stratum.basis.rows(); ++r) col.push_back(str(w.stratum.basis(r, k)));
        basis.push_back(col);
      }
      stratum["basis"] = basis;
      json chi = json::array();
      for (const auto& x : w.stratum.character) chi.push_back(str(x));
      stratum["character"] = chi;
      json wj = {{"subgroup", w.stratum.subgroup.members()},
                 {"stratum", stratum},
                 {"block", w.shift},
                 {"block_index", w.block},
                 {"component", w.component},
                 {"multiplicity", w.multiplicity}};
      if (w.position) wj["position"] = *w.position;
      out["witness"] = wj;
    }
    return out;
  }

  std::string witness_text(const DescentCertificate& c) const {
    if (c.descends) return "descends";
    const auto& w = *c.witness;
    std::ostringstream os;
    os << "fails: H = {";
    for (std::size_t i = 0; i < w.stratum.subgroup.members().size(); ++i)
      os << (i ? "," : "") << w.stratum.subgroup.members()[i];
    os << "}, stratum " << w.stratum.label;
    if (w.position) os << ", position " << *w.position;
    os << ", block A(-" << w.shift << "), component " << w.component << " x" << w.multiplicity;
    return os.str();
  }

  // ---- tasks -----------------------------------------------------------

  json run_task(const std::string& type, const json& t, const std::string& path, std::ostringstream& text, bool& ok) {
    const std::string label = "[" + (t.contains("name") ? t.at("name").get<std::string>() : type) + "] ";
    if (type == "decompose") {
      allow_keys(t, path, {"task", "name", "rep"});
      Representation r = parse_rep(need(t, "rep", path), path + ".rep");
      Decomposition d = decompose(r, irreps(path));
      json mult = json::object();
      for (std::size_t i = 0; i < irreps_.size(); ++i) mult[irreps_[i].label()] = d.multiplicities[i];
      json proj = json::object();
      for (std::size_t i = 0; i < irreps_.size(); ++i) proj[irreps_[i].label()] = matrix_json(d.projectors[i]);
      text << label << "decompose: " << multiplicity_text(mult) << "\n";
      return {{"dim", r.dim()}, {"character", character_json(r)}, {"multiplicities", mult}, {"projectors", proj}};
    }
    if (type == "normalize") {
      allow_keys(t, path, {"task", "name", "object"});
      const std::string name = as_string(need(t, "object", path), path + ".object");
      const Object& o = object(name, path);
      const auto* raw = std::get_if<RawEquivariantModule>(&o);
      if (!raw) fail(path, "object '" + name + "' is a " + std::string(kind(o)) + ", expected a raw module");
      NormalForm nf = normalize_module(*raw);
      Polynomial det = determinant(nf.change_of_basis);
      if (!det.is_constant() || det.is_zero()) throw ConsistencyError("change of basis is not invertible over A");
      auto conj = conjugate_action(*raw, nf.change_of_basis, nf.inverse);
      bool roundtrip = true;
      for (std::size_t g = 0; g < group_->order(); ++g)
        roundtrip = roundtrip && conj[g] == to_poly(nf.module.generator_matrix(g));
      if (!roundtrip) throw ConsistencyError("normal form round trip failed");
      text << label << "normalize: ";
      for (const auto& b : nf.module.blocks()) text << "A(-" << b.shift << ")^" << b.rep.dim() << " ";
      text << "det " << str(det) << "\n";
      return {{"module", module_json(nf.module)},
              {"change_of_basis", matrix_json(nf.change_of_basis)},
              {"inverse", matrix_json(nf.inverse)},
              {"determinant", str(det)},
              {"roundtrip", roundtrip}};
    }
    if (type == "hom") {
      allow_keys(t, path, {"task", "name", "source", "target", "l", "degrees"});
      const json& s = need(t, "source", path);
      const json& g = need(t, "target", path);
      if (s.is_object() && s.contains("rep")) {
        allow_keys(s, path + ".source", {"rep", "shift"});
        allow_keys(g, path + ".target", {"rep", "shift"});
        Representation v = parse_rep(s.at("rep"), path + ".source.rep");
        Representation w = parse_rep(need(g, "rep", path + ".target"), path + ".target.rep");
        std::size_t i = as_size(need(s, "shift", path + ".source"), path + ".source.shift");
        std::size_t j = as_size(need(g, "shift", path + ".target"), path + ".target.shift");
        const Representation& act = action(path);
        auto basis = equivariant_maps(act, v, i, w, j);
        json out = {{"brute_force", basis.size()}};
        json bj = json::array();
        for (const auto& b : basis) bj.push_back(matrix_json(b));
        out["basis"] = bj;
        Character cv = character(v), cw = character(w);
        const bool irreducible =
            inner_product(cv, cv) == CyclotomicScalar(1) && inner_product(cw, cw) == CyclotomicScalar(1);
        if (irreducible) {
          std::size_t f = hom_generators(act, v, i, w, j);
          out["formula"] = f;
          out["agree"] = f == basis.size();
          if (f != basis.size()) throw ConsistencyError("Hom formula and solver disagree");
        } else {
          out["formula"] = nullptr;
        }
        text << label << "hom: " << basis.size() << "\n";
        return out;
      }
      EquivariantComplex c = complex_at(s, path + ".source");
      EquivariantComplex d = complex_at(g, path + ".target");
      std::vector<long> ls;
      if (t.contains("l")) ls.push_back(as_int(t.at("l"), path + ".l"));
      if (t.contains("degrees")) {
        if (!t.at("degrees").is_array()) fail(path + ".degrees", "expected a list");
        for (const auto& l : t.at("degrees")) ls.push_back(as_int(l, path + ".degrees"));
      }
      if (ls.empty()) ls.push_back(0);
      json dims = json::array();
      text << label << "hom:";
      for (long l : ls) {
        std::size_t n = hom_complexes(c, d, static_cast<int>(l));
        dims.push_back({{"l", l}, {"dim", n}});
        text << " Hom^" << l << "=" << n;
      }
      text << "\n";
      return {{"dims", dims}};
    }
    if (type == "koszul") {
      allow_keys(t, path, {"task", "name", "degrees"});
      EquivariantComplex k = koszul_complex(action(path));
      json ranks = json::array();
      for (int p : k.positions()) ranks.push_back({{"position", p}, {"rank", k.term(p).rank()}});
      auto degrees = degree_list(t, path, 5);
      json hom = homology_json(k, degrees);
      bool exact = true;
      for (const auto& dj : hom)
        for (const auto& pj : dj.at("positions")) {
          std::size_t dim = pj.at("dim");
          const bool origin = dj.at("degree") == 0 && pj.at("position") == 0;
          if (origin ? (dim != 1 || !pj.at("rep").at("trivial_isotypic").get<bool>()) : dim != 0) exact = false;
        }
      text << label << "koszul: ranks";
      for (int p : k.positions()) text << " " << k.term(p).rank();
      text << (exact ? ", resolves the residue field" : ", NOT exact as expected") << "\n";
      if (!exact) throw ConsistencyError("Koszul complex homology is not the residue field");
      return {{"ranks", ranks}, {"d_squared_zero", true}, {"equivariant", true}, {"homology", hom},
              {"resolves_residue_field", exact}};
    }
    if (type == "homology") {
      allow_keys(t, path, {"task", "name", "object", "degrees"});
      EquivariantComplex c = complex_at(need(t, "object", path), path + ".object");
      auto degrees = degree_list(t, path, 3);
      json hom = homology_json(c, degrees);
      text << label << "homology:";
      for (const auto& dj : hom) {
        text << " d=" << dj.at("degree").get<std::size_t>() << "[";
        bool first = true;
        for (const auto& pj : dj.at("positions")) {
          text << (first ? "" : ",") << pj.at("dim").get<std::size_t>();
          first = false;
        }
        text << "]";
      }
      text << "\n";
      return {{"degrees", hom}};
    }
    if (type == "descend") {
      allow_keys(t, path, {"task", "name", "object", "space"});
      const std::string name = as_string(need(t, "object", path), path + ".object");
      const Object& o = object(name, path);
      const Space sp = space_for(t, path);
      const std::vector<Representation> none;
      const auto& irr = have_irreps_ ? irreps_ : none;
      if (const auto* m = std::get_if<BlockModule>(&o)) {
        DescentCertificate c = descends(*m, sp, irr);
        text << label << "descend (" << to_string(sp) << "): " << witness_text(c) << "\n";
        json out = certificate_json(c);
        out["space"] = to_string(sp);
        return out;
      }
      if (const auto* c = std::get_if<EquivariantComplex>(&o)) {
        DescentCertificate cert = descends(*c, sp, irr);
        text << label << "descend (" << to_string(sp) << "): " << witness_text(cert) << "\n";
        json out = certificate_json(cert);
        out["space"] = to_string(sp);
        return out;
      }
      if (const auto* f = std::get_if<Morphism>(&o)) {
        if (sp != Space::affine) fail(path, "morphism descent is checked over affine space only");
        PolyMatrix phi = descend_morphism(f->source, f->target, f->matrix);
        text << label << "descend morphism: all entries invariant\n";
        return {{"verdict", "descends"}, {"space", "affine"}, {"invariant_entries", true},
                {"matrix", matrix_json(phi)}};
      }
      fail(path, "object '" + name + "' is a raw module; normalize it first");
    }
    if (type == "oracle") {
      allow_keys(t, path, {"task", "name", "object", "degree_bound", "space"});
      BlockModule m = module_at(need(t, "object", path), path + ".object");
      std::optional<std::size_t> bound = options_.degree_bound;
      if (!bound && t.contains("degree_bound")) bound = as_size(t.at("degree_bound"), path + ".degree_bound");
      const Space sp = space_for(t, path);
      OracleReport r = invariant_oracle(m, bound, sp);
      json degrees = json::array();
      for (const auto& d : r.degrees)
        degrees.push_back({{"degree", d.degree}, {"dim", d.dim}, {"invariants", d.invariants}, {"span", d.span},
                           {"full", d.full()}});
      const std::string verdict = r.deficit ? "deficit" : "consistent up to " + std::to_string(r.bound);
      text << label << "oracle (" << to_string(sp) << "): " << verdict << "\n";
      return {{"space", to_string(sp)}, {"bound", r.bound}, {"degrees", degrees}, {"verdict", verdict},
              {"deficit", r.deficit}};
    }
    if (type == "verify") {
      allow_keys(t, path, {"task", "name"});
      json checks = json::array();
      bool all = true;
      auto check = [&](const std::string& what, bool good) {
        checks.push_back({{"check", what}, {"ok", good}});
        all = all && good;
      };
      check("group axioms", group_->verify_axioms());
      for (const auto& r : irreps_) check("irrep " + r.label() + " homomorphism", r.is_homomorphism());
      if (action_) check("action homomorphism", action_->is_homomorphism());
      for (const auto& [name, r] : reps_) check("rep " + name + " homomorphism", r.is_homomorphism());
      for (const auto& [name, o] : objects_) {
        if (const auto* m = std::get_if<BlockModule>(&o)) {
          bool good = true;
          for (const auto& b : m->blocks()) good = good && b.rep.is_homomorphism();
          check("module " + name + " blocks", good);
        } else if (const auto* raw = std::get_if<RawEquivariantModule>(&o)) {
          bool good = true;
          try {
            RawEquivariantModule again(raw->action(), raw->degrees(), raw->matrices());
          } catch (const ValidationError&) {
            good = false;
          }
          check("raw module " + name + " cocycle and degrees", good);
        } else if (const auto* c = std::get_if<EquivariantComplex>(&o)) {
          bool d2 = true, eq = true;
          for (int p : c->positions()) {
            d2 = d2 && is_zero_matrix(c->differential(p + 1) * c->differential(p));
            eq = eq && is_equivariant(c->term(p), c->term(p + 1), c->differential(p));
          }
          check("complex " + name + " d^2 = 0", d2);
          check("complex " + name + " equivariance", eq);
        } else if (const auto* f = std::get_if<Morphism>(&o)) {
          check("morphism " + name + " equivariance", is_equivariant(f->source, f->target, f->matrix));
        }
      }
      if (!all) ok = false;
      text << label << "verify: " << checks.size() << " checks, " << (all ? "all passed" : "FAILURES") << "\n";
      return {{"checks", checks}, {"ok", all}};
    }
    fail(path + ".task", "unknown task '" + type + "'");
  }

  const json& root_;
  RunOptions options_;
  GroupPtr group_;
  unsigned order_ = 1;
  std::vector<Representation> irreps_;
  bool have_irreps_ = false;
  std::map<std::string, const json*> rep_specs_;
  std::map<std::string, Representation> reps_;
  std::set<std::string> resolving_reps_;
  std::optional<Representation> action_;
  std::map<std::string, const json*> object_specs_;
  std::map<std::string, Object> objects_;
  std::set<std::string> resolving_objects_;
  bool ok_ = true;
};

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

RunResult run_problem(const std::string& input, const RunOptions& options) {
  json root;
  try {
    root = json::parse(input);
  } catch (const json::parse_error& e) {
    // byte is one past the offending character
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    std::string what = e.what();
    if (auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
    throw ValidationError("JSON parse error at " + line_column(input, at) + ": " + what);
  }
  Problem problem(root, options);
  RunResult r = problem.run();
  r.report["version"] = version();
  r.report["input_sha256"] = sha256_hex(input);
  if (!problem.ok()) r.report["status"] = "failed";
  return r;
}

int run_file(const std::string& path, const RunOptions& options, const std::optional<std::string>& json_path,
             std::ostream& out, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: cannot read " << path << "\n";
    return kExitInvalid;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  int code = kExitOk;
  json report;
  try {
    RunResult r = run_problem(buf.str(), options);
    out << r.text;
    report = std::move(r.report);
    if (report.at("status") != "ok") code = kExitInvalid;
  } catch (const ConsistencyError& e) {
    err << "internal error: " << e.what() << "\n";
    code = kExitInternal;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    code = kExitInvalid;
  } catch (const ArithmeticError& e) {
    err << "error: " << e.what() << "\n";
    code = kExitInvalid;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    code = kExitInternal;
  }
  if (code != kExitOk && report.is_null()) {
    report = {{"version", version()},
              {"input_sha256", sha256_hex(buf.str())},
              {"status", code == kExitInternal ? "internal_error" : "invalid"}};
  }
  if (json_path) {
    std::ofstream js(*json_path, std::ios::binary);
    if (!js) {
      err << "error: cannot write " << *json_path << "\n";
      return code == kExitOk ? kExitInvalid : code;
    }
    js << report.dump(2) << "\n";
  }
  return code;
}

}  // namespace equideriv
