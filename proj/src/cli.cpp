#include "modelglass/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "modelglass/ax.hpp"
#include "modelglass/definable.hpp"
#include "modelglass/error.hpp"
#include "modelglass/eval.hpp"
#include "modelglass/filters.hpp"
#include "modelglass/half_graph.hpp"
#include "modelglass/parallel.hpp"
#include "modelglass/parser.hpp"
#include "modelglass/ramsey.hpp"
#include "modelglass/regularity.hpp"
#include "modelglass/stable_regularity.hpp"
#include "modelglass/types_space.hpp"
#include "modelglass/ultraproduct.hpp"

#ifndef MODELGLASS_VERSION
#define MODELGLASS_VERSION "0.0.0"
#endif

namespace modelglass::cli {

namespace {

using Json = nlohmann::ordered_json;

// Bad flag combinations found after CLI11 is done.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

template <typename T>
std::string join(const std::vector<T>& items, const std::string& sep = ", ") {
  std::ostringstream s;
  for (std::size_t i = 0; i < items.size(); ++i) s << (i ? sep : "") << items[i];
  return s.str();
}

std::vector<Element> as_elements(const std::vector<std::size_t>& v) {
  std::vector<Element> out;
  for (std::size_t x : v) out.push_back(static_cast<Element>(x));
  return out;
}

std::vector<Vertex> as_vertices(const std::vector<std::size_t>& v) {
  std::vector<Vertex> out;
  for (std::size_t x : v) out.push_back(static_cast<Vertex>(x));
  return out;
}

std::string tuple_text(const std::vector<Element>& t) { return "(" + join(t) + ")"; }

// Everything a subcommand may read, filled in by CLI11.
struct Config {
  std::string format = "text";
  std::uint64_t seed = 0;
  std::string sig_path;
  std::string sig_text;
  std::string model_path;
  std::vector<std::string> model_paths;
  std::string sentence;
  std::string formula;
  std::vector<std::string> formulas;
  std::vector<std::string> vars;
  std::vector<std::string> assign;
  bool reference = false;
  std::vector<std::size_t> params;
  std::size_t rank = 1;
  std::size_t k = 1;
  std::optional<std::size_t> dlo;
  bool members = false;
  std::string family;
  bool generate = false;
  std::optional<std::size_t> enumerate;
  std::optional<std::size_t> principal_at;
  std::string ultrafilter;
  std::string representatives = "least";
  bool fast_path = false;
  std::size_t n = 1;
  std::size_t p = 2;
  bool print = false;
  std::string file;
  std::string eps = "1/4";
  std::size_t trials = 10000;
  std::int64_t budget_base = 2;
  std::size_t max_pieces = 0;
  std::size_t exact_cap = 12;
  std::vector<std::size_t> xs, ys;
  bool sampled = false;
  std::vector<std::size_t> sizes;
  std::size_t seeds = 1;
  std::size_t clique_cap = 64;
  std::size_t iso_nodes = 1000000;
  std::size_t table_budget = std::size_t{1} << 24;
};

class Runner {
 public:
  Runner(const Config& c, std::ostream& out) : c_(c), out_(out) {}

  Json envelope(const std::string& command) const {
    Json j;
    j["tool"] = "modelglass";
    j["version"] = MODELGLASS_VERSION;
    j["schema"] = kSchemaVersion;
    j["command"] = command;
    j["seed"] = c_.seed;
    return j;
  }

  bool json() const { return c_.format == "json"; }

  void emit(const std::string& command, Json caps, Json result, const std::string& text) {
    if (json()) {
      Json j = envelope(command);
      j["caps"] = std::move(caps);
      j["result"] = std::move(result);
      out_ << j.dump(2) << "\n";
    } else {
      out_ << text;
    }
  }

  Signature signature() const {
    if (!c_.sig_path.empty() && !c_.sig_text.empty()) throw UsageError("give --sig or --sig-text, not both");
    if (!c_.sig_path.empty()) return parse_signature(read_file(c_.sig_path));
    if (!c_.sig_text.empty()) return parse_signature(c_.sig_text);
    return Signature();
  }

  Model model(const std::string& path, const Signature& sig) const { return load_model(read_file(path), sig); }

  Model required_model(const Signature& sig) const {
    if (c_.model_path.empty()) throw UsageError("--model is required");
    return model(c_.model_path, sig);
  }

  EvalOptions eval_options() const {
    EvalOptions o;
    o.table_budget = c_.table_budget;
    return o;
  }

  Json eval_caps() const { return Json{{"table_budget", c_.table_budget}}; }

  // ---------------------------------------------------------------------

  int parse_cmd() {
    Signature sig = signature();
    if (c_.formula.empty()) throw UsageError("--formula is required");
    Formula f = parse_formula(c_.formula, sig);
    auto free = free_variables(f);
    std::vector<std::string> fv(free.begin(), free.end());
    std::ostringstream t;
    t << print_formula(f) << "\n";
    t << "free: " << (fv.empty() ? "none" : join(fv)) << "\n";
    t << "rank: " << quantifier_rank(f) << "\n";
    Json r{{"formula", print_formula(f)},
           {"free_variables", fv},
           {"sentence", fv.empty()},
           {"quantifier_rank", quantifier_rank(f)},
           {"size", formula_size(f)}};
    emit("parse", Json::object(), r, t.str());
    return kOk;
  }

  Assignment assignment() const {
    Assignment a;
    for (const auto& item : c_.assign) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("--assign expects NAME=ELEMENT, got '" + item + "'");
      try {
        a[item.substr(0, eq)] = static_cast<Element>(std::stoul(item.substr(eq + 1)));
      } catch (const std::exception&) {
        throw UsageError("--assign expects NAME=ELEMENT, got '" + item + "'");
      }
    }
    return a;
  }

  int eval_cmd() {
    Signature sig = signature();
    if (c_.sentence.empty() == c_.formula.empty()) throw UsageError("give exactly one of --sentence and --formula");
    Formula f = parse_formula(c_.sentence.empty() ? c_.formula : c_.sentence, sig);
    Model m = required_model(sig);
    if (!c_.sentence.empty()) {
      if (!is_sentence(f)) throw Error("'" + print_formula(f) + "' has free variables; use --formula and --vars");
      bool v = c_.reference ? reference::eval_formula(m, f, {}) : eval_formula(m, f, {}, eval_options());
      emit("eval", eval_caps(), Json{{"sentence", print_formula(f)}, {"value", v}}, v ? "true\n" : "false\n");
      return kOk;
    }
    Assignment params = assignment();
    std::vector<std::string> vars = c_.vars;
    if (vars.empty()) {
      for (const auto& v : free_variables(f)) {
        if (!params.count(v)) vars.push_back(v);
      }
    }
    Relation rel = c_.reference ? reference::solution_set(m, f, vars, params)
                                : solution_set(m, f, vars, params, eval_options()).extension;
    Json tuples = Json::array();
    std::ostringstream t;
    for (const auto& tuple : rel.tuples()) {
      tuples.push_back(tuple);
      t << tuple_text(tuple) << "\n";
    }
    t << rel.count() << " of " << checked_power(m.size(), vars.size()) << " tuples\n";
    emit("eval", eval_caps(),
         Json{{"formula", print_formula(f)}, {"variables", vars}, {"count", rel.count()}, {"tuples", tuples}},
         t.str());
    return kOk;
  }

  int definable_cmd() {
    Signature sig = signature();
    Model m = required_model(sig);
    AlgebraOptions opts;
    auto params = as_elements(c_.params);
    std::ostringstream t;
    Json r;
    auto put_partition = [&](const AtomPartition& p) {
      t << "atoms: " << p.atoms.size() << " (rank <= " << p.rank_bound << ", " << p.arity << " variable"
        << (p.arity == 1 ? "" : "s") << ", parameters " << (p.parameters.empty() ? "none" : join(p.parameters))
        << ")\n";
      Json atoms = Json::array();
      for (const auto& a : p.atoms) {
        Relation rel(p.domain, p.arity, a.tuples);
        std::vector<std::string> shown;
        for (const auto& tuple : rel.tuples()) shown.push_back(tuple_text(tuple));
        t << "  {" << join(shown) << "}  " << print_formula(a.witness) << "\n";
        atoms.push_back(Json{{"tuples", rel.tuples()}, {"witness", print_formula(a.witness)}});
      }
      r["variables"] = p.variables;
      r["parameter_names"] = p.parameter_names;
      r["parameters"] = p.parameters;
      r["atoms"] = atoms;
      for (const auto& note : p.notes) t << "note: " << note << "\n";
      r["notes"] = p.notes;
    };
    if (c_.members) {
      DefinableAlgebra alg = definable_algebra(m, params, c_.rank, c_.k, opts);
      put_partition(alg.partition);
      t << "definable sets: " << alg.members.size() << (alg.complete ? "" : " (incomplete)") << "\n";
      Json members = Json::array();
      for (const auto& mem : alg.members) {
        Relation rel(m.size(), c_.k, mem.extension);
        std::vector<std::string> shown;
        for (const auto& tuple : rel.tuples()) shown.push_back(tuple_text(tuple));
        t << "  {" << join(shown) << "}  " << print_formula(mem.witness) << "\n";
        members.push_back(Json{{"tuples", rel.tuples()}, {"witness", print_formula(mem.witness)}});
      }
      r["members"] = members;
      r["complete"] = alg.complete;
    } else {
      AtomPartition p = atom_partition(m, params, c_.rank, c_.k, opts);
      put_partition(p);
      std::size_t count = p.atoms.size() < 63 ? (std::size_t{1} << p.atoms.size()) : 0;
      t << "definable sets: " << (count ? std::to_string(count) : "2^" + std::to_string(p.atoms.size())) << "\n";
      r["definable_sets"] = count;
      r["complete"] = p.complete;
    }
    emit("definable", Json{{"max_terms", opts.max_terms}, {"max_formulas", opts.max_formulas},
                           {"max_table", opts.max_table}, {"max_family", opts.max_family}},
         r, t.str());
    return kOk;
  }

  int types_cmd() {
    std::ostringstream t;
    if (c_.dlo) {
      DloTypes d = count_dlo_types(*c_.dlo);
      t << d.count << " types over " << *c_.dlo << " parameters\n";
      for (const auto& s : d.descriptions) t << "  " << s << "\n";
      emit("types", Json::object(), Json{{"parameters", *c_.dlo}, {"count", d.count}, {"types", d.descriptions}},
           t.str());
      return kOk;
    }
    Signature sig = signature();
    Model m = required_model(sig);
    auto params = as_elements(c_.params);
    if (!c_.formulas.empty()) {
      std::vector<Formula> fs;
      for (const auto& text : c_.formulas) fs.push_back(parse_formula(text, sig));
      PartialType p = make_partial_type(m, params, fs);
      PartialTypeCheck check = check_partial_type(m, p);
      auto real = check.realizations.elements();
      t << (check.is_partial_type ? "partial type" : "not a partial type") << " in " << check.variable << "\n";
      t << "realized by: " << (real.empty() ? "none" : join(real)) << "\n";
      if (!check.is_partial_type) {
        std::vector<std::string> bad;
        for (auto i : check.inconsistent) bad.push_back(print_formula(fs[i]));
        t << "inconsistent: " << join(bad, " ; ") << "\n";
      }
      emit("types", Json::object(),
           Json{{"parameter_names", p.parameter_names},
                {"parameters", p.parameters},
                {"is_partial_type", check.is_partial_type},
                {"variable", check.variable},
                {"realizations", real},
                {"inconsistent", check.inconsistent}},
           t.str());
      return kOk;
    }
    AlgebraOptions opts;
    TypePartition part = complete_types(m, params, c_.rank, opts);
    t << part.blocks.size() << " complete types of rank <= " << part.rank_bound << " over "
      << (params.empty() ? "no parameters" : "{" + join(params) + "}") << "\n";
    Json blocks = Json::array();
    for (const auto& b : part.blocks) {
      t << "  {" << join(b.elements) << "}  " << print_formula(b.formula) << "\n";
      blocks.push_back(Json{{"elements", b.elements}, {"formula", print_formula(b.formula)}});
    }
    for (const auto& note : part.notes) t << "note: " << note << "\n";
    emit("types", Json{{"max_terms", opts.max_terms}, {"max_formulas", opts.max_formulas}},
         Json{{"rank", part.rank_bound},
              {"parameter_names", part.parameter_names},
              {"parameters", part.parameters},
              {"types", blocks},
              {"complete", part.complete}},
         t.str());
    return kOk;
  }

  static Json family_json(const SetFamily& f) {
    Json sets = Json::array();
    for (Subset s : f.members()) sets.push_back(subset_elements(s));
    return Json{{"base", f.base()}, {"sets", sets}};
  }

  int filter_cmd() {
    FilterOptions opts;
    Json caps{{"max_base", opts.max_base}, {"max_members", opts.max_members}};
    std::ostringstream t;
    if (c_.enumerate) {
      auto ufs = enumerate_ultrafilters(*c_.enumerate, opts);
      Json list = Json::array();
      for (const auto& u : ufs) {
        t << format_subset(limit_points(u)) << ": " << u.size() << " sets\n";
        list.push_back(Json{{"point", subset_elements(limit_points(u))}, {"size", u.size()}});
      }
      emit("filter", caps, Json{{"base", *c_.enumerate}, {"ultrafilters", list}}, t.str());
      return kOk;
    }
    if (c_.family.empty()) throw UsageError("give a family such as '{{2,3},{3,4}} over 5', or --enumerate N");
    SetFamily fam = parse_family(c_.family);
    if (c_.generate) {
      SetFamily g = generated_filter(fam, opts);
      t << format_family(g) << "\n";
      emit("filter", caps, Json{{"generators", family_json(fam)}, {"filter", family_json(g)}}, t.str());
      return kOk;
    }
    FilterCheck check = is_filter(fam);
    bool ultra = is_ultrafilter(fam);
    t << "filter: " << (check.ok ? "yes" : "no (" + check.violation + ")") << "\n";
    if (!check.ok && !check.witness.empty()) {
      std::vector<std::string> shown;
      for (Subset s : check.witness) shown.push_back(format_subset(s));
      t << "witness: " << join(shown) << "\n";
    }
    t << "ultrafilter: " << (ultra ? "yes" : "no") << "\n";
    t << "limit points: " << format_subset(limit_points(fam)) << "\n";
    Json w = Json::array();
    for (Subset s : check.witness) w.push_back(subset_elements(s));
    emit("filter", caps,
         Json{{"family", family_json(fam)},
              {"filter", check.ok},
              {"violation", check.violation},
              {"witness", w},
              {"ultrafilter", ultra},
              {"limit_points", subset_elements(limit_points(fam))}},
         t.str());
    return kOk;
  }

  int ultraproduct_cmd() {
    Signature sig = signature();
    if (c_.model_paths.empty()) throw UsageError("--models needs at least one model file");
    IndexedFamily fam;
    for (const auto& path : c_.model_paths) fam.models.push_back(model(path, sig));
    if (c_.principal_at.has_value() == !c_.ultrafilter.empty()) {
      throw UsageError("give exactly one of --principal-at and --ultrafilter");
    }
    SetFamily d = c_.principal_at ? principal_ultrafilter(fam.models.size(), *c_.principal_at)
                                  : parse_family(c_.ultrafilter);
    UltraproductOptions opts;
    opts.seed = c_.seed;
    opts.principal_fast_path = c_.fast_path;
    if (c_.representatives == "least") {
      opts.representatives = Representatives::LexLeast;
    } else if (c_.representatives == "greatest") {
      opts.representatives = Representatives::LexGreatest;
    } else {
      opts.representatives = Representatives::Seeded;
    }
    UltraproductModel up = ultraproduct(fam, d, opts);
    std::ostringstream t;
    std::vector<std::size_t> sizes;
    for (const auto& m : fam.models) sizes.push_back(m.size());
    Subset point = limit_points(d);
    t << "factors: " << join(sizes) << "\n";
    t << "ultrafilter: " << format_family(d) << "\n";
    t << "ultraproduct size: " << up.model.size() << (up.fast_path ? " (fast path)" : "") << "\n";
    Json reps = Json::array();
    for (const auto& r : up.representatives) reps.push_back(r);
    Json r{{"factor_sizes", sizes},
           {"ultrafilter", family_json(d)},
           {"size", up.model.size()},
           {"fast_path", up.fast_path},
           {"representatives", reps}};
    auto pts = subset_elements(point);
    if (pts.size() == 1) {
      IsoOptions io;
      io.max_nodes = c_.iso_nodes;
      IsoResult iso = iso_check(up.model, fam.models[pts.front()], io);
      t << "iso_check against factor " << pts.front() << ": " << to_string(iso.verdict) << "\n";
      Json ij{{"factor", pts.front()}, {"verdict", to_string(iso.verdict)}, {"nodes", iso.nodes}};
      if (iso.verdict == IsoVerdict::Isomorphic) {
        t << "  map: " << join(iso.map) << "\n";
        ij["map"] = iso.map;
      }
      if (iso.distinguishing) {
        t << "  distinguishing: " << print_formula(*iso.distinguishing) << "\n";
        ij["distinguishing"] = print_formula(*iso.distinguishing);
      }
      r["iso_check"] = ij;
    }
    if (!c_.sentence.empty()) {
      Formula s = parse_formula(c_.sentence, sig);
      LosReport los = los_check(up, fam, s);
      t << "sentence: " << print_formula(s) << "\n";
      t << "  in ultraproduct: " << (los.in_ultraproduct ? "true" : "false") << "\n";
      t << "  true in factors: " << format_subset(los.truth_set) << (los.truth_set_large ? " (in D)" : " (not in D)")
        << "\n";
      t << "  transfer: " << (los.transfer_holds ? "holds" : "FAILS") << "\n";
      r["los"] = Json{{"sentence", print_formula(s)},
                      {"in_ultraproduct", los.in_ultraproduct},
                      {"truth_set", subset_elements(los.truth_set)},
                      {"truth_set_large", los.truth_set_large},
                      {"transfer_holds", los.transfer_holds}};
    }
    emit("ultraproduct", Json{{"max_product", opts.max_product}, {"iso_max_nodes", c_.iso_nodes}}, r, t.str());
    return kOk;
  }

  int ax_cmd() {
    Formula s = build_ax_sentence(c_.n, c_.k);
    Model f = prime_field(c_.p);
    bool v = eval_formula(f, s, {}, eval_options());
    std::ostringstream t;
    if (c_.print) t << print_formula(s) << "\n";
    t << "phi(" << c_.n << ", " << c_.k << ") in F_" << c_.p << ": " << (v ? "true" : "false") << "\n";
    Json r{{"n", c_.n}, {"k", c_.k}, {"p", c_.p}, {"coefficients", ax_coefficient_count(c_.n, c_.k)},
           {"quantifier_rank", quantifier_rank(s)}, {"value", v}};
    if (c_.print) r["sentence"] = print_formula(s);
    emit("ax-check", eval_caps(), r, t.str());
    return kOk;
  }

  // --- graphs -----------------------------------------------------------

  Graph graph() const {
    if (c_.file.empty()) throw UsageError("a graph file is required");
    return load_graph(read_file(c_.file));
  }

  static Json witness_json(const HalfGraphWitness& w) { return Json{{"a", w.a}, {"b", w.b}}; }
  static std::string witness_text(const HalfGraphWitness& w) {
    return "a = " + join(w.a) + "; b = " + join(w.b);
  }

  int half_graph_cmd() {
    Graph g = graph();
    auto w = find_half_graph(g, c_.k);
    Json r{{"vertices", g.size()}, {"k", c_.k}};
    r["witness"] = w ? witness_json(*w) : Json(nullptr);
    emit("graph half-graph", Json::object(), r, w ? witness_text(*w) + "\n" : "none\n");
    return kOk;
  }

  static Json verdict_json(const PairVerdict& v) {
    Json j{{"regular", v.regular},
           {"method", to_string(v.method)},
           {"density", format_rational(v.density)},
           {"eps", format_rational(v.eps)}};
    if (v.method == PairMethod::Sampled) {
      j["trials"] = v.trials;
      j["seed"] = v.seed;
      j["transcript"] = v.transcript;
    }
    if (v.witness) {
      j["witness"] = Json{{"x", v.witness->x}, {"y", v.witness->y}, {"density", format_rational(v.witness->density)}};
    }
    return j;
  }

  static std::string verdict_text(const PairVerdict& v) {
    std::string s = (v.regular ? (v.method == PairMethod::Sampled ? "no violation found" : "regular")
                               : "irregular");
    s += " (" + to_string(v.method);
    if (v.method == PairMethod::Sampled) s += ", " + std::to_string(v.trials) + " trials, seed " + std::to_string(v.seed);
    s += "), density " + format_rational(v.density);
    if (v.witness) {
      s += "\n  witness X' = {" + join(v.witness->x) + "}, Y' = {" + join(v.witness->y) + "}, density " +
           format_rational(v.witness->density);
    }
    return s;
  }

  int pair_cmd() {
    Graph g = graph();
    Rational eps = parse_rational(c_.eps);
    auto x = as_vertices(c_.xs), y = as_vertices(c_.ys);
    PairVerdict v = c_.sampled ? regular_pair_sampled(g, x, y, eps, c_.trials, c_.seed)
                               : regular_pair_exact(g, x, y, eps, RegularityOptions{c_.exact_cap});
    emit("graph pair", Json{{"exact_cap", c_.exact_cap}, {"trials", c_.trials}}, verdict_json(v),
         verdict_text(v) + "\n");
    return kOk;
  }

  int regularity_cmd() {
    Graph g = graph();
    Rational eps = parse_rational(c_.eps);
    StableRegularityOptions opts;
    opts.budget_base = c_.budget_base;
    opts.max_pieces = c_.max_pieces;
    opts.exact_cap = c_.exact_cap;
    opts.trials = c_.trials;
    opts.seed = c_.seed;
    PartitionCertificate cert = stable_regularity(g, eps, c_.k, opts);
    CertificateCheck check = validate_certificate(g, cert, opts);
    std::ostringstream t;
    t << (cert.pass ? "pass" : "FAIL") << ": " << cert.blocks.size() << " blocks of size " << cert.min_block
      << (cert.max_block != cert.min_block ? "-" + std::to_string(cert.max_block) : "") << ", "
      << cert.irregular_pairs() << " irregular pairs of " << cert.pairs.size() << ", eps " << format_rational(eps)
      << "\n";
    Json blocks = Json::array();
    for (std::size_t b = 0; b < cert.blocks.size(); ++b) {
      t << "  V" << b << " = {" << join(cert.blocks[b]) << "}\n";
      blocks.push_back(cert.blocks[b]);
    }
    Json pairs = Json::array();
    for (const auto& p : cert.pairs) {
      t << "  (V" << p.i << ", V" << p.j << "): " << verdict_text(p.verdict) << "\n";
      Json pj = verdict_json(p.verdict);
      pj["i"] = p.i;
      pj["j"] = p.j;
      pairs.push_back(pj);
    }
    for (const auto& note : cert.notes) t << "note: " << note << "\n";
    t << "budget: " << cert.budget << " pieces (base " << cert.budget_base << ")\n";
    t << "re-validation: " << (check.ok ? "ok" : "FAILED") << "\n";
    for (const auto& p : check.problems) t << "  " << p << "\n";
    emit("graph regularity",
         Json{{"budget_base", opts.budget_base}, {"budget", cert.budget}, {"exact_cap", opts.exact_cap},
              {"trials", opts.trials}},
         Json{{"pass", cert.pass},
              {"eps", format_rational(eps)},
              {"k", cert.k},
              {"blocks", blocks},
              {"balance", Json{{"min", cert.min_block}, {"max", cert.max_block}, {"equitable", cert.equitable}}},
              {"pairs", pairs},
              {"irregular_pairs", cert.irregular_pairs()},
              {"rounds", cert.rounds},
              {"notes", cert.notes},
              {"validated", check.ok},
              {"problems", check.problems}},
         t.str());
    return kOk;
  }

  int ramsey_cmd() {
    if (c_.sizes.empty()) throw UsageError("--sizes is required");
    Family fam = parse_graph_family(c_.family);
    HomogeneousOptions opts;
    opts.exact_cap = c_.clique_cap;
    RamseyReport rep = stable_ramsey_report(fam, c_.k, c_.sizes, c_.seeds, c_.seed, opts);
    std::ostringstream t;
    t << "family " << to_string(fam) << ", k = " << c_.k << "\n";
    t << "n\tseed\thom\tclique\tindep\tlog_n hom\thom^2>=n\n";
    Json rows = Json::array();
    for (const auto& row : rep.rows) {
      Json rj{{"n", row.n}, {"seed", row.seed}, {"stable", row.stable}};
      if (!row.stable) {
        t << row.n << "\t" << row.seed << "\trejected: " << witness_text(*row.rejected_by) << "\n";
        rj["rejected_by"] = witness_json(*row.rejected_by);
      } else {
        char exp[32];
        std::snprintf(exp, sizeof exp, "%.4f", row.exponent);
        t << row.n << "\t" << row.seed << "\t" << row.hom << "\t" << row.clique << "\t" << row.independent << "\t"
          << exp << (row.exact ? "" : " (heuristic)") << "\t" << (row.at_least_sqrt ? "yes" : "no") << "\n";
        rj["hom"] = row.hom;
        rj["clique"] = row.clique;
        rj["independent"] = row.independent;
        rj["exponent"] = exp;
        rj["exact"] = row.exact;
        rj["hom_squared_at_least_n"] = row.at_least_sqrt;
      }
      rows.push_back(rj);
    }
    for (const auto& line : rep.log) t << "log: " << line << "\n";
    emit("graph ramsey", Json{{"clique_exact_cap", opts.exact_cap}},
         Json{{"family", to_string(fam)}, {"k", c_.k}, {"rows", rows}, {"log", rep.log}}, t.str());
    return kOk;
  }

  int homogeneous_cmd() {
    Graph g = graph();
    HomogeneousOptions opts;
    opts.exact_cap = c_.clique_cap;
    HomogeneousSets h = max_homogeneous(g, opts);
    std::ostringstream t;
    t << "clique (" << h.clique.size() << "): " << join(h.clique) << "\n";
    t << "independent (" << h.independent.size() << "): " << join(h.independent) << "\n";
    t << "hom: " << h.hom << (h.exact ? "" : " (heuristic, over the exact cap)") << "\n";
    emit("graph homogeneous", Json{{"clique_exact_cap", opts.exact_cap}},
         Json{{"clique", h.clique}, {"independent", h.independent}, {"hom", h.hom}, {"exact", h.exact}}, t.str());
    return kOk;
  }

 private:
  const Config& c_;
  std::ostream& out_;
};

void add_common(CLI::App* app, Config& c) {
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app->add_option("--seed", c.seed, "Seed for every randomized step");
}

void add_sig(CLI::App* app, Config& c) {
  app->add_option("--sig", c.sig_path, "Signature file (rel NAME /ARITY [infix]; fun ...; const NAME)");
  app->add_option("--sig-text", c.sig_text, "Signature given inline");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  apply_thread_limit_from_env();
  Config c;
  CLI::App app{"modelglass: finite model theory workbench"};
  app.name("modelglass");
  app.require_subcommand(1);
  app.set_version_flag("--version", MODELGLASS_VERSION);

  auto* parse = app.add_subcommand("parse", "Parse and pretty-print a first-order formula (syntax of the language)");
  add_common(parse, c);
  add_sig(parse, c);
  parse->add_option("--formula", c.formula, "Formula text")->required();

  auto* eval = app.add_subcommand(
      "eval", "Tarski satisfaction: truth of a sentence, or the definable set of a formula, in a finite model");
  add_common(eval, c);
  add_sig(eval, c);
  eval->add_option("--model", c.model_path, "Model file");
  eval->add_option("--sentence", c.sentence, "Sentence to evaluate");
  eval->add_option("--formula", c.formula, "Formula whose solution set is listed");
  eval->add_option("--vars", c.vars, "Variable order of the solution tuples")->delimiter(',');
  eval->add_option("--assign", c.assign, "Parameter values NAME=ELEMENT")->delimiter(',');
  eval->add_option("--table-budget", c.table_budget, "Largest memo table the evaluator builds");
  eval->add_flag("--reference", c.reference, "Use the direct recursive evaluator");

  auto* definable = app.add_subcommand(
      "definable", "Boolean algebra of definable sets with parameters, generated by rank-bounded formulas");
  add_common(definable, c);
  add_sig(definable, c);
  definable->add_option("--model", c.model_path, "Model file");
  definable->add_option("--params", c.params, "Parameter elements")->delimiter(',');
  definable->add_option("--rank", c.rank, "Quantifier rank bound");
  definable->add_option("--k", c.k, "Number of free variables");
  definable->add_flag("--members", c.members, "List every definable set, not just the atoms");

  auto* types = app.add_subcommand(
      "types", "Types over a parameter set: partial types, complete types, and the Stone space of (Q,<)");
  add_common(types, c);
  add_sig(types, c);
  types->add_option("--model", c.model_path, "Model file");
  types->add_option("--params", c.params, "Parameter elements, named p1, p2, ... in formulas")->delimiter(',');
  types->add_option("--rank", c.rank, "Quantifier rank bound for complete types");
  types->add_option("--formula", c.formulas, "Formula of a partial type (repeatable)");
  types->add_option("--dlo", c.dlo, "Count 1-types of a dense linear order over N parameters");

  auto* filter =
      app.add_subcommand("filter", "Filters and ultrafilters on a finite base, e.g. '{{2,3},{3,4}} over 5'");
  add_common(filter, c);
  filter->add_option("family", c.family, "Family in brace notation");
  filter->add_flag("--generate", c.generate, "Print the filter generated by the family");
  filter->add_option("--enumerate", c.enumerate, "List the ultrafilters on a base of size N");

  auto* up = app.add_subcommand(
      "ultraproduct", "Ultraproduct of finite models by an ultrafilter, with the Los transfer check");
  add_common(up, c);
  add_sig(up, c);
  up->add_option("--models", c.model_paths, "Factor model files, indexed from 0")->expected(1, -1);
  up->add_option("--principal-at", c.principal_at, "Index (0-based) of the principal ultrafilter's point");
  up->add_option("--ultrafilter", c.ultrafilter, "Ultrafilter in brace notation over the index set");
  up->add_option("--sentence", c.sentence, "Sentence for the Los check");
  up->add_option("--representatives", c.representatives, "Class representatives")
      ->check(CLI::IsMember({"least", "greatest", "seeded"}));
  up->add_flag("--fast-path", c.fast_path, "Copy the principal factor instead of building the product");
  up->add_option("--iso-nodes", c.iso_nodes, "Search nodes for the isomorphism check");

  auto* ax = app.add_subcommand(
      "ax-check", "Ax's theorem: injective polynomial maps are surjective, checked in a prime field");
  add_common(ax, c);
  ax->add_option("--n", c.n, "Number of variables")->required();
  ax->add_option("--k", c.k, "Degree bound")->required();
  ax->add_option("--p", c.p, "Prime")->required();
  ax->add_option("--table-budget", c.table_budget, "Largest memo table the evaluator builds");
  ax->add_flag("--print", c.print, "Print the sentence");

  auto* graph = app.add_subcommand("graph", "Stable graphs: half-graphs, regularity, homogeneous sets");
  graph->require_subcommand(1);
  auto* hg = graph->add_subcommand("half-graph", "Search for a half-graph of height k (the order property)");
  add_common(hg, c);
  hg->add_option("--k", c.k, "Height")->required();
  hg->add_option("file", c.file, "Edge list or model with rel E /2")->required();

  auto* pair = graph->add_subcommand("pair", "Check one pair of vertex sets for eps-regularity");
  add_common(pair, c);
  pair->add_option("--eps", c.eps, "eps as a rational, e.g. 1/4");
  pair->add_option("--x", c.xs, "First side")->delimiter(',')->required();
  pair->add_option("--y", c.ys, "Second side")->delimiter(',')->required();
  pair->add_flag("--sampled", c.sampled, "Random sub-pairs instead of the exact check");
  pair->add_option("--trials", c.trials, "Trials for the sampled check");
  pair->add_option("--exact-cap", c.exact_cap, "Largest side for the exact check");
  pair->add_option("file", c.file, "Edge list or model with rel E /2")->required();

  auto* reg = graph->add_subcommand(
      "regularity", "Stable regularity: equitable partition with no irregular pairs, as a checked certificate");
  add_common(reg, c);
  reg->add_option("--eps", c.eps, "eps as a rational, e.g. 1/4");
  reg->add_option("--k", c.k, "Half-graph bound the input must satisfy")->required();
  reg->add_option("--trials", c.trials, "Trials for sampled pair checks");
  reg->add_option("--budget-base", c.budget_base, "Piece budget is ceil(base^(1/eps))");
  reg->add_option("--max-pieces", c.max_pieces, "Explicit piece budget");
  reg->add_option("--exact-cap", c.exact_cap, "Largest side for exact pair checks");
  reg->add_option("file", c.file, "Edge list or model with rel E /2")->required();

  auto* ram = graph->add_subcommand(
      "ramsey", "Stable Ramsey: hom(G) against n on a generated family, unstable instances rejected");
  add_common(ram, c);
  ram->add_option("--family", c.family, "cliques, multipartite or random")->required();
  ram->add_option("--sizes", c.sizes, "Vertex counts")->delimiter(',')->required();
  ram->add_option("--k", c.k, "Half-graph bound")->required();
  ram->add_option("--seeds", c.seeds, "Instances per size, seeded from --seed on");
  ram->add_option("--clique-cap", c.clique_cap, "Largest n searched exactly");

  auto* hom = graph->add_subcommand("homogeneous", "Largest clique and independent set");
  add_common(hom, c);
  hom->add_option("--clique-cap", c.clique_cap, "Largest n searched exactly");
  hom->add_option("file", c.file, "Edge list or model with rel E /2")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsageError;
  }

  Runner r(c, out);
  auto fail = [&](const std::string& kind, const std::string& message, int code, Json extra = Json::object()) {
    if (c.format == "json") {
      Json j = r.envelope(app.get_subcommands().front()->get_name());
      j["error"] = Json{{"kind", kind}, {"message", message}};
      for (auto& [key, value] : extra.items()) j["error"][key] = value;
      out << j.dump(2) << "\n";
    }
    err << "error: " << message << "\n";
    return code;
  };
  try {
    if (parse->parsed()) return r.parse_cmd();
    if (eval->parsed()) return r.eval_cmd();
    if (definable->parsed()) return r.definable_cmd();
    if (types->parsed()) return r.types_cmd();
    if (filter->parsed()) return r.filter_cmd();
    if (up->parsed()) return r.ultraproduct_cmd();
    if (ax->parsed()) return r.ax_cmd();
    if (hg->parsed()) return r.half_graph_cmd();
    if (pair->parsed()) return r.pair_cmd();
    if (reg->parsed()) return r.regularity_cmd();
    if (ram->parsed()) return r.ramsey_cmd();
    if (hom->parsed()) return r.homogeneous_cmd();
  } catch (const UsageError& e) {
    return fail("usage", e.what(), kUsageError);
  } catch (const ParseError& e) {
    return fail("parse", e.what(), kUsageError, Json{{"line", e.line()}, {"column", e.column()}});
  } catch (const NotStable& e) {
    return fail("not-stable", e.what(), kDomainError,
                Json{{"witness", Json{{"a", e.witness().a}, {"b", e.witness().b}}}});
  } catch (const CapExceeded& e) {
    return fail("cap", e.what(), kDomainError);
  } catch (const Error& e) {
    return fail("domain", e.what(), kDomainError);
  }
  return kUsageError;
}

}  // namespace modelglass::cli
