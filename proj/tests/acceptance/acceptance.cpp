// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "modelglass/ax.hpp"
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
#include "random.hpp"

using namespace modelglass;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void criterion(const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double t = seconds_since(t0);
  if (limit_seconds > 0 && t > limit_seconds) {
    r.pass = false;
    r.detail += "; over the " + std::to_string(static_cast<int>(limit_seconds)) + " s limit";
  }
  if (!r.pass) ++failures;
  std::printf("%s  %-34s %8.2f s  %s\n", r.pass ? "PASS" : "FAIL", name.c_str(), t, r.detail.c_str());
  std::fflush(stdout);
}

std::string count(std::size_t good, std::size_t total) { return std::to_string(good) + "/" + std::to_string(total); }

Outcome parser_round_trip() {
  testing::Rng rng(1001);
  std::size_t ok = 0;
  const std::size_t total = 1000;
  for (std::size_t i = 0; i < total; ++i) {
    Signature sig = testing::random_signature(rng);
    Formula f = testing::random_formula(sig, rng, rng.between(0, 6), {"x", "y", "z", "w'", "v1"});
    Formula back = parse_formula(print_formula(f), sig);
    ok += back == f;
  }
  return {ok == total, count(ok, total) + " formulas round-trip"};
}

Outcome eval_coherence() {
  testing::Rng rng(1002);
  auto sigs = testing::fixed_signatures();
  const std::vector<std::string> vars{"x", "y", "z"};
  std::size_t mismatches = 0, checks = 0;
  for (std::size_t i = 0; i < 500; ++i) {
    const Signature& sig = sigs[i % sigs.size()];
    Formula f = testing::random_formula(sig, rng, rng.between(1, 5), vars);
    Formula g = testing::random_formula(sig, rng, rng.between(1, 4), vars);
    for (std::size_t n = 1; n <= 5; ++n) {
      Model m = testing::random_model(sig, n, rng);
      auto sf = solution_set(m, f, vars).extension;
      auto sg = solution_set(m, g, vars).extension;
      std::vector<Element> t(3);
      for (t[0] = 0; t[0] < n; ++t[0]) {
        for (t[1] = 0; t[1] < n; ++t[1]) {
          for (t[2] = 0; t[2] < n; ++t[2]) {
            Assignment a{{"x", t[0]}, {"y", t[1]}, {"z", t[2]}};
            ++checks;
            mismatches += sf.contains(t) != eval_formula(m, f, a);
          }
        }
      }
      ++checks;
      mismatches += sf != reference::solution_set(m, f, vars);
      const Bitset& bf = sf.members();
      const Bitset& bg = sg.members();
      mismatches += solution_set(m, Formula::conj(f, g), vars).extension.members() != (bf & bg);
      mismatches += solution_set(m, Formula::disj(f, g), vars).extension.members() != (bf | bg);
      mismatches += solution_set(m, Formula::negation(f), vars).extension.members() != ~bf;
      mismatches += solution_set(m, Formula::implies(f, g), vars).extension.members() != (~bf | bg);
      // exists z: a tuple is in iff its z-fibre meets f.
      auto proj = solution_set(m, Formula::exists("z", f), vars).extension;
      auto all = solution_set(m, Formula::forall("z", f), vars).extension;
      for (t[0] = 0; t[0] < n; ++t[0]) {
        for (t[1] = 0; t[1] < n; ++t[1]) {
          bool some = false, every = true;
          for (t[2] = 0; t[2] < n; ++t[2]) {
            some = some || sf.contains(t);
            every = every && sf.contains(t);
          }
          for (t[2] = 0; t[2] < n; ++t[2]) {
            mismatches += proj.contains(t) != some;
            mismatches += all.contains(t) != every;
          }
        }
      }
      checks += 6;
    }
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches in " + std::to_string(checks) + " checks"};
}

Outcome finite_compactness() {
  testing::Rng rng(1003);
  auto sigs = testing::fixed_signatures();
  std::size_t consistent = 0, realized = 0, rejected_ok = 0, rejected = 0, wrong = 0;
  for (std::size_t i = 0; i < 500; ++i) {
    const Signature& sig = sigs[i % sigs.size()];
    Model m = testing::random_model(sig, rng.between(1, 5), rng);
    const std::size_t nparams = rng.below(3);
    std::vector<Element> params;
    for (std::size_t j = 0; j < nparams; ++j) params.push_back(static_cast<Element>(rng.below(m.size())));
    auto names = parameter_names(sig, nparams);
    std::vector<std::string> vars{"x", "y"};
    vars.insert(vars.end(), names.begin(), names.end());
    Assignment pa;
    for (std::size_t j = 0; j < nparams; ++j) pa[names[j]] = params[j];

    // A type of some element: each random formula, or its negation, holds there.
    const auto target = static_cast<Element>(rng.below(m.size()));
    std::vector<Formula> type_of, arbitrary;
    for (std::size_t j = rng.between(1, 6); j > 0; --j) {
      Formula f = testing::random_formula(sig, rng, 3, vars);
      if (free_variables(f).count("y")) f = Formula::exists("y", f);
      f = Formula::conj(Formula::equals(Term::variable("x"), Term::variable("x")), f);
      arbitrary.push_back(f);
      Assignment a = pa;
      a["x"] = target;
      type_of.push_back(reference::eval_formula(m, f, a) ? f : Formula::negation(f));
    }
    auto good = check_partial_type(m, make_partial_type(m, params, type_of));
    ++consistent;
    if (good.is_partial_type && good.realizations.test(target)) ++realized;

    auto mixed = check_partial_type(m, make_partial_type(m, params, arbitrary));
    Bitset meet(m.size(), true);
    for (const auto& f : arbitrary) meet &= reference::solution_set(m, f, {"x"}, pa).members();
    if (mixed.is_partial_type != meet.any() || mixed.realizations != meet) ++wrong;
    if (!mixed.is_partial_type) {
      ++rejected;
      Bitset core(m.size(), true);
      for (std::size_t idx : mixed.inconsistent) core &= mixed.solution_sets[idx];
      if (core.none() && !mixed.inconsistent.empty()) ++rejected_ok;
    }
  }
  const bool pass = realized == consistent && wrong == 0 && rejected_ok == rejected;
  return {pass, count(realized, consistent) + " types realized; " + count(rejected_ok, rejected) +
                    " empty intersections rejected with a witness; " + std::to_string(wrong) + " wrong verdicts"};
}

Outcome dlo_types() {
  std::string detail;
  bool pass = true;
  for (std::size_t n = 0; n <= 8; ++n) {
    auto t = count_dlo_types(n);
    const std::size_t oracle = testing::dlo_sign_vectors(n);
    pass = pass && t.count == 2 * n + 1 && t.count == oracle;
    detail += (n ? " " : "") + std::to_string(t.count);
  }
  // Element types, cut types, and the two ends at -inf and +inf.
  auto d = count_dlo_types(3).descriptions;
  std::size_t points = 0, cuts = 0, ends = 0;
  for (const auto& s : d) {
    if (s.rfind("x = ", 0) == 0) {
      ++points;
    } else if (s.rfind("x < ", 0) == 0 || s.size() > 4 && s.compare(s.size() - 4, 4, " < x") == 0) {
      ++ends;
    } else {
      ++cuts;
    }
  }
  pass = pass && points == 3 && cuts == 2 && ends == 2;
  return {pass, "counts " + detail + " for n = 0..8; over 3 points: " + std::to_string(points) + " element, " +
                    std::to_string(cuts) + " cut, " + std::to_string(ends) + " end types"};
}

Outcome los_transfer() {
  testing::Rng rng(1005);
  auto sigs = testing::fixed_signatures();
  std::size_t held = 0, collapsed = 0;
  const std::size_t total = 200;
  for (std::size_t i = 0; i < total; ++i) {
    const Signature& sig = sigs[i % sigs.size()];
    IndexedFamily fam;
    const std::size_t m = rng.between(1, 3);
    std::vector<std::size_t> sizes;
    do {
      sizes.clear();
      std::size_t product = 1;
      for (std::size_t j = 0; j < m; ++j) {
        sizes.push_back(rng.between(1, 8));
        product *= sizes.back();
      }
      if (product <= 64) break;
    } while (true);
    for (std::size_t s : sizes) fam.models.push_back(testing::random_model(sig, s, rng));
    const std::size_t point = rng.below(m);
    SetFamily d = principal_ultrafilter(m, point);
    auto up = ultraproduct(fam, d);
    Formula s = testing::close_formula(testing::random_formula(sig, rng, rng.between(1, 5), {"x", "y", "z"}), rng);
    auto r = los_check(up, fam, s);
    const bool direct = eval_formula(up.model, s, {});
    Subset truth = 0;
    for (std::size_t j = 0; j < m; ++j) truth |= Subset{reference::eval_formula(fam.models[j], s, {})} << j;
    held += r.transfer_holds && r.in_ultraproduct == direct && r.truth_set == truth &&
            direct == d.contains(truth);
    auto iso = iso_check(up.model, fam.models[point]);
    collapsed += iso.verdict == IsoVerdict::Isomorphic && is_isomorphism(up.model, fam.models[point], iso.map);
  }
  return {held == total && collapsed == total,
          count(held, total) + " transfers, " + count(collapsed, total) + " principal collapses"};
}

Outcome ax_instances() {
  struct Case {
    std::size_t n, k, p;
  };
  std::vector<Case> cases;
  for (std::size_t n : {1, 2}) {
    for (std::size_t k : {1, 2}) {
      for (std::size_t p : {2, 3, 5}) cases.push_back({n, k, p});
    }
  }
  cases.push_back({1, 1, 7});
  cases.push_back({1, 2, 7});
  std::size_t ok = 0;
  double slowest = 0;
  std::string slow_case;
  for (const auto& c : cases) {
    auto t0 = Clock::now();
    bool truth = eval_formula(prime_field(c.p), build_ax_sentence(c.n, c.k), {});
    const double t = seconds_since(t0);
    if (t > slowest) {
      slowest = t;
      slow_case = "(" + std::to_string(c.n) + "," + std::to_string(c.k) + "," + std::to_string(c.p) + ")";
    }
    ok += truth && t < 300;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", slowest);
  return {ok == cases.size(), count(ok, cases.size()) + " instances true in time; slowest " + slow_case + " " + buf + " s"};
}

Outcome half_graph_irregular() {
  Graph h = generators::half_graph(8);
  std::vector<Vertex> a, b;
  for (Vertex i = 0; i < 8; ++i) {
    a.push_back(i);
    b.push_back(8 + i);
  }
  auto v = regular_pair_exact(h, a, b, Rational(1, 4));
  if (v.regular || !v.witness) return {false, "reported regular"};
  const bool valid = witness_violates(h, a, b, Rational(1, 4), *v.witness);
  std::string w = "X'=";
  for (Vertex x : v.witness->x) w += std::to_string(x) + ",";
  w.back() = ' ';
  w += "Y'=";
  for (Vertex y : v.witness->y) w += std::to_string(y) + ",";
  w.pop_back();
  return {valid, "irregular; witness " + w + " density " + format_rational(v.witness->density) + " vs " +
                     format_rational(v.density)};
}

Outcome stable_certificates() {
  testing::Rng rng(1008);
  std::size_t passed = 0;
  const std::size_t total = 20;
  std::string failed;
  for (std::size_t i = 0; i < total; ++i) {
    const std::size_t n = rng.between(32, 64);
    const std::size_t parts = rng.between(2, n / 12);
    auto sizes = generators::random_part_sizes(n, parts, 12, 2000 + i);
    Graph g = i % 2 == 0 ? generators::clique_union(sizes) : generators::complete_multipartite(sizes);
    if (i % 4 >= 2) g = g.complement();
    StableRegularityOptions opts;
    opts.seed = 3000 + i;
    auto cert = stable_regularity(g, Rational(1, 4), 3, opts);
    auto check = validate_certificate(g, cert, opts);
    if (cert.pass && cert.irregular_pairs() == 0 && check.ok) {
      ++passed;
    } else {
      failed += " #" + std::to_string(i);
    }
  }
  return {passed == total, count(passed, total) + " certificates pass and re-validate" +
                               (failed.empty() ? "" : "; failed:" + failed)};
}

Outcome ramsey_trend() {
  const std::vector<std::size_t> sizes{16, 32, 64};
  auto cliques = stable_ramsey_report(Family::Cliques, 4, sizes);
  bool sqrt_ok = true;
  std::string homs;
  for (const auto& row : cliques.rows) {
    sqrt_ok = sqrt_ok && row.stable && row.at_least_sqrt && row.exact;
    homs += (homs.empty() ? "" : ",") + std::to_string(row.hom);
  }
  bool rejected_ok = true;
  std::string rej;
  for (std::size_t n : sizes) {
    auto random = stable_ramsey_report(Family::Random, 4, {n}, 20, 0);
    std::size_t rejected = 0;
    for (const auto& row : random.rows) {
      if (!row.stable && row.rejected_by) {
        Graph g = family_instance(Family::Random, n, row.seed);
        rejected += is_half_graph_witness(g, *row.rejected_by);
      }
    }
    rejected_ok = rejected_ok && rejected >= 18;
    rej += (rej.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + " " + count(rejected, 20);
  }
  return {sqrt_ok && rejected_ok, "clique-union hom " + homs + " at n=16,32,64; G(n,1/2) rejected " + rej};
}

Outcome oracle_equivalences() {
  testing::Rng rng(1010);
  std::size_t disagreements = 0, graphs = 0;
  for (std::size_t n = 1; n <= 7; ++n) {
    const std::size_t pairs = n * (n - 1) / 2;
    const bool exhaustive = (std::size_t{1} << pairs) <= 2000;
    const std::size_t samples = exhaustive ? std::size_t{1} << pairs : 2000;
    for (std::size_t s = 0; s < samples; ++s) {
      const std::uint64_t code = exhaustive ? s : rng.engine()() & ((std::uint64_t{1} << pairs) - 1);
      Graph g(n);
      std::size_t bit = 0;
      for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v, ++bit) {
          if (code >> bit & 1U) g.add_edge(u, v);
        }
      }
      ++graphs;
      for (std::size_t k = 2; 2 * k <= n; ++k) {
        auto w = find_half_graph(g, k);
        const bool oracle = testing::brute_half_graph(g, k);
        disagreements += w.has_value() != oracle;
        if (w) disagreements += !is_half_graph_witness(g, *w);
      }
    }
  }
  std::size_t small_hom = 0;
  for (std::uint32_t code = 0; code < (1U << 15); ++code) {
    Graph g(6);
    std::size_t bit = 0;
    for (Vertex u = 0; u < 6; ++u) {
      for (Vertex v = u + 1; v < 6; ++v, ++bit) {
        if (code >> bit & 1U) g.add_edge(u, v);
      }
    }
    auto h = max_homogeneous(g);
    const std::size_t oracle = std::max(testing::brute_clique_number(g), testing::brute_clique_number(g.complement()));
    disagreements += h.hom != oracle;
    disagreements += !is_clique(g, h.clique) || !is_independent(g, h.independent);
    small_hom += h.hom < 3;
  }
  return {disagreements == 0 && small_hom == 0,
          std::to_string(disagreements) + " disagreements over " + std::to_string(graphs) +
              " half-graph cases and 32768 six-vertex graphs; " + std::to_string(small_hom) + " with hom < 3"};
}

}  // namespace

int main() {
  const int threads = apply_thread_limit_from_env();
  std::printf("acceptance suite, %d OpenMP thread(s)\n", threads);
  criterion("parser round-trip", 10, parser_round_trip);
  criterion("evaluation coherence", 60, eval_coherence);
  criterion("finite compactness", 0, finite_compactness);
  criterion("dense order type count", 0, dlo_types);
  criterion("los transfer", 120, los_transfer);
  criterion("ax in prime fields", 0, ax_instances);
  criterion("half-graph irregularity", 0, half_graph_irregular);
  criterion("stable partition certificates", 0, stable_certificates);
  criterion("stable ramsey trend", 0, ramsey_trend);
  criterion("oracle equivalences", 0, oracle_equivalences);
  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
