#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ratdg/ce_harrison.hpp"
#include "ratdg/definitions.hpp"
#include "ratdg/mc.hpp"
#include "ratdg/minimal_model.hpp"
#include "ratdg/tensor_words.hpp"

using namespace ratdg;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0, kExitVerdict = 1, kExitUsage = 2, kExitCap = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Human text and its JSON mirror are written side by side.
class Report {
 public:
  explicit Report(const std::string& command) { j_["command"] = command; }

  void param(const std::string& key, const json& v, const std::string& source) {
    os_ << "  " << key << " = " << v.dump() << " (" << source << ")\n";
    j_["parameters"][key] = {{"value", v}, {"source", source}};
  }
  void section(const std::string& name) {
    os_ << name << "\n";
    cur_ = name;
  }
  void row(const std::string& key, const json& v, const std::string& flag) {
    os_ << "  " << key << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << " [" << flag
        << "]\n";
    j_["sections"][cur_].push_back({{"key", key}, {"value", v}, {"flag", flag}});
  }
  void note(const std::string& text) {
    os_ << "  " << text << "\n";
    j_["sections"][cur_].push_back({{"note", text}});
  }
  void verdict(bool pass, const std::string& what) {
    os_ << (pass ? "PASS" : "FAIL") << ": " << what << "\n";
    j_["verdicts"].push_back({{"pass", pass}, {"what", what}});
    if (!pass) failed_ = true;
  }
  void header(const std::string& text) { os_ << text << "\n"; }
  bool failed() const { return failed_; }
  std::string text() const { return os_.str(); }
  const json& data() const { return j_; }

 private:
  std::ostringstream os_;
  json j_;
  std::string cur_ = "main";
  bool failed_ = false;
};

struct Inputs {
  std::vector<std::string> files;
  std::vector<std::string> builtins;
  std::optional<int> size, weight, words, simplex, poly_degree, arity;
  std::string range, element, at, json_path;
};

std::vector<AlgebraDefinition> load(const Inputs& in) {
  std::vector<AlgebraDefinition> out;
  for (const auto& f : in.files) out.push_back(load_definition(f));
  for (const auto& b : in.builtins) {
    try {
      out.push_back(builtin_definition(b, in.size));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (out.empty()) throw UsageError("no algebra given (pass a definition file or --builtin)");
  return out;
}

const AlgebraDefinition& one(const std::vector<AlgebraDefinition>& defs, size_t k = 1) {
  if (defs.size() != k) throw UsageError("expected " + std::to_string(k) + " algebra(s)");
  return defs[0];
}

// Weight window: the flag wins, else the definition must state it.
int weight_of(const Inputs& in, const std::vector<AlgebraDefinition>& defs, Report& r) {
  if (in.weight) {
    r.param("m", *in.weight, "flag");
    return *in.weight;
  }
  std::optional<int> m;
  for (const auto& d : defs)
    if (auto v = d.param("m")) m = std::max(m.value_or(0), *v);
  if (!m) throw UsageError("state the weight window with --weight or 'truncation m'");
  r.param("m", *m, "definition");
  return *m;
}

int required(const std::optional<int>& v, const AlgebraDefinition& d, const std::string& key,
             const std::string& flag, Report& r) {
  if (v) {
    r.param(key, *v, "flag");
    return *v;
  }
  if (auto p = d.param(key)) {
    r.param(key, *p, "definition");
    return *p;
  }
  throw UsageError("state " + key + " with " + flag + " or 'truncation " + key + "'");
}

const FiniteCdga& need_cdga(const AlgebraDefinition& d) {
  if (!d.cdga) throw UsageError(d.name + " is not a cdga");
  return *d.cdga;
}
const DglaPresentation& need_presentation(const AlgebraDefinition& d) {
  if (!d.presentation) throw UsageError(d.name + " is not a dgla");
  return *d.presentation;
}

// Finite dgla, or the weight-m truncation of a free one.
struct Working {
  Dgla g;
  std::string flag;
};
Working working_dgla(const Inputs& in, const AlgebraDefinition& d, Report& r) {
  if (d.dgla && !in.weight) return {*d.dgla, "exact"};
  int m = weight_of(in, {d}, r);
  return {realize(need_presentation(d), m).dgla, "window m=" + std::to_string(m)};
}

std::pair<int, int> parse_range(const std::string& s, int lo, int hi) {
  if (s.empty()) return {lo, hi};
  auto pos = s.find("..");
  if (pos == std::string::npos) throw UsageError("range looks like a..b");
  try {
    return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 2))};
  } catch (const std::exception&) {
    throw UsageError("range looks like a..b");
  }
}

std::string vec_text(const GradedVectorSpace& sp, const Vec& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : v) {
    os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    first = false;
    if (abs(c) != 1) os << ratdg::to_string(abs(c)) << " ";
    os << sp.label(i);
  }
  return os.str();
}

void cmd_check(const Inputs& in, Report& r) {
  for (const auto& d : load(in)) {
    r.section(d.name);
    if (d.cdga) {
      d.cdga->check_axioms();
      r.row("dim", d.cdga->dim(), "exact");
    } else if (d.dgla) {
      d.dgla->check_axioms();
      r.row("dim", d.dgla->dim(), "exact");
    } else {
      int m = weight_of(in, {d}, r);
      Dgla g = realize(*d.presentation, m).dgla;
      g.check_axioms();
      r.row("dim", g.dim(), "window m=" + std::to_string(m));
    }
    r.verdict(true, d.name + " passes the axiom suite");
  }
}

void print_dims(Report& r, const std::string& prefix, const std::map<int, int>& dims, int lo, int hi,
                const std::function<std::string(int)>& flag) {
  for (int n = lo; n <= hi; ++n) {
    auto it = dims.find(n);
    r.row(prefix + std::to_string(n), it == dims.end() ? 0 : it->second, flag(n));
  }
}

std::pair<int, int> span_of(const GradedVectorSpace& sp) {
  auto occ = sp.occupied_degrees();
  if (occ.empty()) return {0, 0};
  return {*std::min_element(occ.begin(), occ.end()), *std::max_element(occ.begin(), occ.end())};
}

void cmd_homology(const Inputs& in, Report& r) {
  const auto defs = load(in);
  const auto& d = one(defs);
  r.section("homology of " + d.name);
  if (d.cdga) {
    auto [lo, hi] = span_of(d.cdga->space());
    auto [a, b] = parse_range(in.range, -hi, -lo);
    std::map<int, int> dims;
    for (const auto& [n, k] : homology(d.cdga->complex()).dims()) dims[-n] = k;
    print_dims(r, "H^", dims, a, b, [](int) { return "exact"; });
    return;
  }
  if (d.dgla && !in.weight) {
    auto [lo, hi] = span_of(d.dgla->space());
    auto [a, b] = parse_range(in.range, lo, hi);
    print_dims(r, "H_", homology(*d.dgla).dims(), a, b, [](int) { return "exact"; });
    return;
  }
  int m = weight_of(in, {d}, r);
  StableHomology sh = stable_homology(*d.presentation, m);
  int lo = 0, hi = 0;
  if (!sh.dims.empty()) {
    lo = sh.dims.begin()->first;
    hi = sh.dims.rbegin()->first;
  }
  auto [a, b] = parse_range(in.range, lo, hi);
  print_dims(r, "H_", sh.dims, a, b, [&](int n) {
    auto it = sh.stable.find(n);
    if (it == sh.stable.end() || it->second) return std::string("stable m=") + std::to_string(m);
    return "unstable, lifts " + std::to_string(sh.stable_dims[n]);
  });
}

void cmd_ce(const Inputs& in, Report& r) {
  const auto defs = load(in);
  const auto& d = one(defs);
  int P = required(in.words, d, "P", "--words", r);
  Working w = working_dgla(in, d, r);
  auto [a, b] = parse_range(in.range, 1, 4);
  CEReport ce = ce_cohomology(w.g, P, a, b);
  r.section("CE cohomology of " + d.name + " (" + w.flag + ")");
  for (const auto& [c, cell] : ce.degrees)
    r.row("H^" + std::to_string(c), cell.dim,
          cell.exact ? "exact" : (cell.stable ? "stable P->P+1" : "truncated"));
}

void cmd_harrison(const Inputs& in, Report& r) {
  const auto defs = load(in);
  const auto& d = one(defs);
  const FiniteCdga& A = need_cdga(d);
  int m = weight_of(in, {d}, r);
  PresentedDgla h = harrison(A, m);
  r.section("Harrison complex of " + d.name);
  auto [lo, hi] = span_of(h.dgla.space());
  for (int n = lo; n <= hi; ++n)
    r.row("dim_" + std::to_string(n), h.dgla.space().dim(n), "window m=" + std::to_string(m));
  StableHomology sh = stable_homology(harrison_presentation(A), m);
  r.section("homology");
  for (const auto& [n, k] : sh.dims)
    r.row("H_" + std::to_string(n), k, sh.stable[n] ? "stable" : "unstable");
}

void product_cmd(const Inputs& in, Report& r, bool disjoint) {
  auto defs = load(in);
  const auto& d1 = one(defs, 2);
  const auto& d2 = defs[1];
  int m = weight_of(in, defs, r);
  DglaPresentation p = disjoint ? disjoint_product(need_presentation(d1), need_presentation(d2))
                                : free_product(need_presentation(d1), need_presentation(d2));
  PresentedDgla real = realize(p, m);
  std::string flag = "window m=" + std::to_string(m);
  r.section((disjoint ? "disjoint product " : "free product ") + d1.name + ", " + d2.name);
  auto [lo, hi] = span_of(real.dgla.space());
  for (int n = lo; n <= hi; ++n) r.row("dim_" + std::to_string(n), real.dgla.space().dim(n), flag);
  if (disjoint && p.mc) {
    bool ok = is_mc(real.dgla, real.element(*p.mc)).ok;
    r.verdict(ok, "distinguished element is MC in the truncation");
  }
  StableHomology sh = stable_homology(p, m);
  r.section("homology");
  for (const auto& [n, k] : sh.dims) r.row("H_" + std::to_string(n), k, sh.stable[n] ? "stable" : "unstable");
}

void cmd_mc_verify(const Inputs& in, Report& r) {
  const auto defs = load(in);
  const auto& d = one(defs);
  if (in.element.empty()) throw UsageError("--element is required");
  Dgla g;
  Vec xi;
  std::string flag = "exact";
  if (d.dgla && !in.weight) {
    g = *d.dgla;
    xi = parse_combination(g.space(), in.element);
  } else {
    int m = weight_of(in, {d}, r);
    PresentedDgla real = realize(need_presentation(d), m);
    g = real.dgla;
    try {
      xi = real.element(parse_lie_expression(d.presentation->gens, in.element));
    } catch (const std::invalid_argument& e) {
      throw ParseError(1, 1, e.what());
    }
    flag = "window m=" + std::to_string(m);
  }
  McCheck c = is_mc(g, xi);
  r.section("MC check of " + in.element);
  r.row("residual", vec_text(g.space(), c.residual), flag);
  r.verdict(c.ok, "d xi + 1/2 [xi, xi] = 0");
}

void print_family(Report& r, const McSystem& s, const McFamily& f, size_t idx) {
  std::ostringstream os;
  bool first = true;
  for (size_t u = 0; u < f.values.size(); ++u) {
    if (std::find(f.free.begin(), f.free.end(), static_cast<int>(u)) != f.free.end()) continue;
    os << (first ? "" : ", ") << s.unknowns[u].name << " = " << s.to_string(f.values[u]);
    first = false;
  }
  for (int u : f.free) {
    os << (first ? "" : ", ") << s.unknowns[u].name << " free";
    if (f.constant.count(u)) os << " constant";
    if (f.closed.count(u)) os << " closed";
    first = false;
  }
  r.row("family " + std::to_string(idx), os.str().empty() ? "(no unknowns)" : os.str(),
        f.complete ? "complete" : "incomplete");
}

void cmd_mc_constraints(const Inputs& in, Report& r) {
  const auto defs = load(in);
  const auto& d = one(defs);
  int n = required(in.simplex, d, "n", "--simplex", r);
  int D = required(in.poly_degree, d, "D", "--poly-degree", r);
  Working w = working_dgla(in, d, r);
  McSimplices s = mc_simplices(w.g, n, D);
  r.section("equations (" + w.flag + ")");
  for (const auto& t : s.system.texts()) r.note(t);
  r.section("solutions");
  r.row("families", static_cast<int>(s.solution.families.size()),
        s.solution.complete ? "complete" : "incomplete");
  for (size_t i = 0; i < s.solution.families.size(); ++i) print_family(r, s.system, s.solution.families[i], i);
  r.note("certificate: " + s.solution.certificate);
  r.row("samples", s.samples, "exact");
  r.verdict(s.samples_mc, "sampled solutions are MC");
  if (n >= 1) r.verdict(s.faces_mc, "faces stay MC");
  r.verdict(s.degeneracies_mc, "degeneracies stay MC");
}

void print_moduli(Report& r, const McModuli& mod) {
  r.note("method: " + mod.method);
  r.note("certificate: " + mod.certificate);
  std::string flag = std::string(mod.complete ? "complete" : "incomplete") + (mod.sampled ? ", sampled" : "");
  if (mod.abelian && mod.h_minus1 > 0) {
    r.row("components", "affine space of dim " + std::to_string(mod.h_minus1), flag);
    return;
  }
  r.row("components", mod.count(), flag);
  for (size_t i = 0; i < mod.classes.size(); ++i)
    r.row("class " + std::to_string(i), mod.classes[i].text, flag);
}

void cmd_mc_moduli(const Inputs& in, Report& r) {
  const auto defs = load(in);
  const auto& d = one(defs);
  McModuli mod;
  if (d.dgla && !in.weight) {
    r.section("pi_0 MC(" + d.name + ") (exact)");
    mod = pi0_moduli(*d.dgla);
  } else {
    int m = weight_of(in, {d}, r);
    r.section("pi_0 MC(" + d.name + ") (window m=" + std::to_string(m) + ")");
    mod = pi0_moduli(need_presentation(d), m);
  }
  print_moduli(r, mod);
}

void cmd_theorem_f(const Inputs& in, Report& r) {
  auto defs = load(in);
  int m = weight_of(in, defs, r);
  std::vector<DglaPresentation> ps;
  std::string names;
  for (const auto& d : defs) {
    ps.push_back(need_presentation(d));
    names += (names.empty() ? "" : " (-) ") + d.name;
  }
  TheoremFReport rep = verify_theorem_f(ps, m);
  std::string flag = std::string(rep.all_complete ? "complete" : "incomplete") +
                     (rep.sampled ? ", sampled" : "") + ", window m=" + std::to_string(m);
  r.section("pi_0 of " + names);
  r.row("lhs", rep.lhs, flag);
  for (size_t i = 0; i < rep.rhs_parts.size(); ++i) r.row("pi_0(" + defs[i].name + ")", rep.rhs_parts[i], flag);
  r.row("rhs", rep.rhs, flag);
  for (size_t i = 0; i < rep.acyclic_with_zero.size(); ++i)
    r.verdict(rep.acyclic_with_zero[i], defs[i].name + " (-) 0 is acyclic in stable degrees");
  r.verdict(rep.counts_match && rep.all_complete,
            std::to_string(rep.lhs) + " = " + [&] {
              std::string s;
              for (size_t i = 0; i < rep.rhs_parts.size(); ++i)
                s += (i ? " + " : "") + std::to_string(rep.rhs_parts[i]);
              return s;
            }() + " classes");
}

void cmd_components(const Inputs& in, Report& r) {
  const auto defs = load(in);
  const auto& d = one(defs);
  ComponentReport rep;
  std::string flag = "exact";
  if (d.dgla && !in.weight) {
    rep = verify_component_decomposition(*d.dgla);
  } else {
    int m = weight_of(in, {d}, r);
    rep = verify_component_decomposition(need_presentation(d), m);
    flag = "window m=" + std::to_string(m);
  }
  r.section("components of " + d.name);
  print_moduli(r, rep.moduli);
  for (const auto& row : rep.rows) {
    r.section("at " + row.representative);
    for (const auto& [n, k] : row.twisted) {
      r.row("H_" + std::to_string(n) + "(g^xi)", k, flag);
      r.row("H_" + std::to_string(n) + "(cover)", row.cover.at(n), flag);
    }
  }
  r.verdict(rep.ok(), "connected covers agree with the twisted dglas in degrees 0..3");
}

void cmd_fp_cohomology(const Inputs& in, Report& r) {
  auto defs = load(in);
  const auto& d1 = one(defs, 2);
  int m = weight_of(in, defs, r);
  int P = required(in.words, d1, "P", "--words", r);
  FreeProductReport rep = compare_free_product(need_presentation(d1), need_presentation(defs[1]), m, P);
  r.section("CE cohomology of " + d1.name + " * " + defs[1].name + " by (weight, degree)");
  for (const auto& c : rep.cells) {
    std::string key = "(" + std::to_string(c.weight) + "," + std::to_string(c.degree) + ")";
    r.row(key + " product", c.product, "exact per weight");
    r.row(key + " sum", c.sum, "exact per weight");
  }
  r.verdict(rep.ok(), "product equals sum in every cell");
}

void cmd_localize(const Inputs& in, Report& r) {
  const auto defs = load(in);
  const auto& d = one(defs);
  const FiniteCdga& A = need_cdga(d);
  if (in.at.empty()) throw UsageError("--at is required");
  Vec u = parse_combination(A.space(), in.at);
  Localization L = localize(A, u);
  r.section("localization of " + d.name + " at " + in.at);
  r.row("dim A", A.dim(), "exact");
  r.row("dim A[u^-1]", L.algebra.dim(), "exact");
  r.row("idempotent", vec_text(A.space(), L.idempotent), "exact");
  for (const auto& [n, k] : homology(L.algebra.complex()).dims()) r.row("H^" + std::to_string(-n), k, "exact");
}

void cmd_split(const Inputs& in, Report& r) {
  const auto defs = load(in);
  const auto& d = one(defs);
  auto parts = idempotent_split(need_cdga(d));
  r.section("idempotent splitting of " + d.name);
  r.row("factors", static_cast<int>(parts.size()), "exact");
  for (size_t i = 0; i < parts.size(); ++i) {
    auto dims = homology(parts[i].factor.algebra.complex()).dims();
    r.row("factor " + std::to_string(i) + " H^0", dims.count(0) ? dims[0] : 0, "exact");
    r.row("factor " + std::to_string(i) + " idempotent", vec_text(need_cdga(d).space(), parts[i].idempotent), "exact");
  }
}

void cmd_minimal_model(const Inputs& in, Report& r) {
  const auto defs = load(in);
  const auto& d = one(defs);
  int N = required(in.arity, d, "N", "--arity", r);
  Working w = working_dgla(in, d, r);
  MinimalModel mm = minimal_model(w.g, N);
  r.section("minimal model of " + d.name + " (" + w.flag + ", arity <= " + std::to_string(N) + ")");
  const auto& H = mm.data.homology;
  for (int n : H.occupied_degrees()) r.row("dim H_" + std::to_string(n), H.dim(n), w.flag);
  for (int k = 0; k < H.size(); ++k) {
    auto dt = mm.dual.d(mm.dual.gen(k));
    r.row("d t" + std::to_string(k), dt.empty() ? "0" : mm.dual.to_string(dt),
          "arity <= " + std::to_string(N));
  }
  r.verdict(mm.linear_part_zero, "differential has no linear part");
  r.verdict(mm.relations_hold, "d^2 = 0 up to the arity bound");
  r.verdict(mm.quasi_iso, "inclusion of homology is a quasi-isomorphism");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational dg Lie and cdga computations"};
  app.require_subcommand(1);
  Inputs in;
  std::function<void(Report&)> run;
  std::string command;

  auto common = [&](CLI::App* sub) {
    sub->add_option("defs", in.files, "definition files");
    sub->add_option("--builtin", in.builtins, "builtin algebra, e.g. g_S:3 or abelian:1:0");
    sub->add_option("--size", in.size, "parameter for a builtin given without one");
    sub->add_option("--weight", in.weight, "weight window m");
    sub->add_option("--json", in.json_path, "also write a JSON report here");
  };
  auto add = [&](CLI::App* parent, const std::string& name, const std::string& help,
                 std::function<void(const Inputs&, Report&)> f) {
    CLI::App* sub = parent->add_subcommand(name, help);
    common(sub);
    sub->callback([&, f, name] {
      command = name;
      run = [&, f](Report& r) { f(in, r); };
    });
    return sub;
  };

  add(&app, "check", "run the axiom suite", cmd_check);
  add(&app, "homology", "homology table", cmd_homology)->add_option("--range", in.range, "degrees a..b");
  {
    auto* s = add(&app, "ce", "Chevalley-Eilenberg cohomology", cmd_ce);
    s->add_option("--words", in.words, "word length bound P");
    s->add_option("--range", in.range, "cohomological degrees a..b");
  }
  add(&app, "harrison", "Harrison complex of a cdga", cmd_harrison);
  add(&app, "free-product", "free product of two dglas",
      [](const Inputs& i, Report& r) { product_cmd(i, r, false); });
  add(&app, "disjoint-product", "disjoint product of two dglas",
      [](const Inputs& i, Report& r) { product_cmd(i, r, true); });
  add(&app, "mc-verify", "check the MC equation", cmd_mc_verify)
      ->add_option("--element", in.element, "element, e.g. '-1/2 x' or '[a,x]'");
  {
    auto* s = add(&app, "mc-constraints", "symbolic MC system on a simplex", cmd_mc_constraints);
    s->add_option("--simplex", in.simplex, "simplex dimension n");
    s->add_option("--poly-degree", in.poly_degree, "form degree bound D for sample checks");
  }
  add(&app, "mc-moduli", "connected components of MC", cmd_mc_moduli);
  {
    CLI::App* verify = app.add_subcommand("verify", "theorem checks");
    verify->require_subcommand(1);
    add(verify, "theorem-f", "pi_0 of disjoint products", cmd_theorem_f);
    add(verify, "components", "homology of components", cmd_components);
    add(verify, "free-product-cohomology", "CE cohomology of free products", cmd_fp_cohomology)
        ->add_option("--words", in.words, "word length bound P");
  }
  add(&app, "localize", "localize a cdga at a cocycle", cmd_localize)
      ->add_option("--at", in.at, "cocycle, e.g. 'e1'");
  add(&app, "split", "split a cdga by idempotents", cmd_split);
  add(&app, "minimal-model", "transferred structure on homology", cmd_minimal_model)
      ->add_option("--arity", in.arity, "arity bound N");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  std::string echo = "ratdg-cli";
  for (int i = 1; i < argc; ++i) echo += std::string(" ") + argv[i];
  Report r(command);
  r.header(echo);
  int status = kExitPass;
  try {
    run(r);
    if (r.failed()) status = kExitVerdict;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const TruncationTooLarge& e) {
    std::cerr << e.what() << "\n";
    return kExitCap;
  } catch (const Error& e) {
    r.verdict(false, e.what());
    status = kExitVerdict;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  }
  std::cout << r.text();
  if (!in.json_path.empty()) {
    std::ofstream out(in.json_path);
    out << r.data().dump(2) << "\n";
  }
  return status;
}
