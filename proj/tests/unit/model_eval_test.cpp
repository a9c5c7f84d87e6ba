#include <doctest.h>

#include <set>

#include "modelglass/definable.hpp"
#include "modelglass/error.hpp"
#include "modelglass/eval.hpp"
#include "modelglass/parser.hpp"
#include "random.hpp"

using namespace modelglass;

namespace {

Model z5() { return cyclic_ring(5); }

Assignment at(std::initializer_list<std::pair<const std::string, Element>> items) { return Assignment(items); }

std::set<std::vector<Element>> tuples(const Relation& r) {
  auto t = r.tuples();
  return {t.begin(), t.end()};
}

}  // namespace

TEST_CASE("loading models") {
  Signature ring = ring_signature();
  std::string text = "# Z/5\nmodel 5\nfun +:";
  for (Element a = 0; a < 5; ++a) {
    for (Element b = 0; b < 5; ++b) text += " (" + std::to_string(a) + "," + std::to_string(b) + ")->" + std::to_string((a + b) % 5);
  }
  text += "\nfun *:";
  for (Element a = 0; a < 5; ++a) {
    for (Element b = 0; b < 5; ++b) text += " (" + std::to_string(a) + "," + std::to_string(b) + ")->" + std::to_string((a * b) % 5);
  }
  text += "\nconst 0 = 0\nconst 1 = 1\n";
  Model m = load_model(text, ring);
  CHECK(m == z5());
  for (Element a = 0; a < 5; ++a) {
    for (Element b = 0; b < 5; ++b) {
      const Element args[2] = {a, b};
      CHECK(m.apply(0, args) == (a + b) % 5);
      CHECK(m.apply(1, args) == (a * b) % 5);
    }
  }
  CHECK(load_model(model_to_text(m), ring) == m);

  Model single = load_model("model 1\nrel E:\n", graph_signature());
  CHECK(single.size() == 1);
  CHECK(single.relation_table(1).none());

  Signature unary = parse_signature("fun f /1");
  CHECK_THROWS_WITH_AS(load_model("model 2\nfun f: (0)->1 (0)->0 (1)->1", unary), doctest::Contains("redefinition"),
                       ParseError);
  CHECK_THROWS_AS(load_model("model 2\nfun f: (0)->1", unary), Error);
  CHECK_THROWS_AS(load_model("model 2\nfun f: (0)->1 (1)->2", unary), ParseError);
  CHECK_THROWS_AS(load_model("model 2\nrel E: (0,1)", unary), ParseError);
  CHECK_THROWS_AS(load_model("model 0\n", graph_signature()), Error);
}

TEST_CASE("terms") {
  Model m = z5();
  CHECK(eval_term(m, parse_term("1 + 1", m.signature()), {}) == 2);
  CHECK(eval_term(m, parse_term("x * x * x", m.signature()), at({{"x", 2}})) == 3);
  CHECK(eval_term(m, parse_term("0", m.signature()), {}) == 0);
  CHECK_THROWS_AS(eval_term(m, parse_term("x + 1", m.signature()), {}), Error);
}

TEST_CASE("sentences") {
  Model m = z5();
  const Signature& s = m.signature();
  CHECK(eval_formula(m, parse_formula("forall x. x + 0 = x", s), {}));
  CHECK_FALSE(eval_formula(m, parse_formula("exists x. x * x = 1 + 1", s), {}));
  Model one = linear_order(1);
  CHECK(eval_formula(one, parse_formula("forall x. exists y. x = y", one.signature()), {}));
  CHECK_THROWS_AS(eval_formula(m, parse_formula("x = 0", s), {}), Error);
}

TEST_CASE("solution sets") {
  Model chain = linear_order(5);
  auto below = solution_set(chain, parse_formula("x < p", chain.signature()), {"x"}, at({{"p", 2}}));
  CHECK(tuples(below.extension) == std::set<std::vector<Element>>{{0}, {1}});

  auto all = solution_set(chain, parse_formula("x = x", chain.signature()), {"x"});
  CHECK(all.extension.count() == 5);

  Model m = z5();
  auto sq = solution_set(m, parse_formula("exists x. y + x*x = z", m.signature()), {"y", "z"});
  std::set<std::vector<Element>> expect;
  for (Element a = 0; a < 5; ++a) {
    for (Element b = 0; b < 5; ++b) {
      Element d = (b + 5 - a) % 5;
      if (d == 0 || d == 1 || d == 4) expect.insert({a, b});
    }
  }
  CHECK(tuples(sq.extension) == expect);
}

TEST_CASE("membership coherence and boolean identities on random models") {
  testing::Rng rng(21);
  auto sigs = testing::fixed_signatures();
  for (int trial = 0; trial < 120; ++trial) {
    const Signature& sig = sigs[trial % sigs.size()];
    Model m = testing::random_model(sig, rng.between(1, 4), rng);
    Formula f = testing::random_formula(sig, rng, 4, {"x", "y", "z"});
    Formula g = testing::random_formula(sig, rng, 3, {"x", "y", "z"});
    const std::vector<std::string> vars{"x", "y", "z"};
    auto sf = solution_set(m, f, vars).extension;
    auto sg = solution_set(m, g, vars).extension;
    REQUIRE(sf == reference::solution_set(m, f, vars));
    EvalOptions plain;
    plain.memoize = false;
    CHECK(solution_set(m, f, vars, {}, plain).extension == sf);

    CHECK(solution_set(m, Formula::conj(f, g), vars).extension.members() == (sf.members() & sg.members()));
    CHECK(solution_set(m, Formula::disj(f, g), vars).extension.members() == (sf.members() | sg.members()));
    CHECK(solution_set(m, Formula::negation(f), vars).extension.members() == ~sf.members());
    // Projection: (a, b, c) satisfies exists z. f iff some c' has (a, b, c') in f.
    auto proj = solution_set(m, Formula::exists("z", f), vars).extension;
    const std::size_t n = m.size();
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b) {
        bool some = false;
        for (Element c = 0; c < n; ++c) {
          const Element t[3] = {a, b, c};
          some = some || sf.contains(t);
        }
        for (Element c = 0; c < n; ++c) {
          const Element t[3] = {a, b, c};
          CHECK(proj.contains(t) == some);
        }
      }
    }
  }
}

TEST_CASE("definable algebras") {
  Model edgeless = load_model("model 3\nrel E:\n", graph_signature());
  auto a = definable_algebra(edgeless, {}, 0, 1);
  CHECK(a.members.size() == 2);
  CHECK(a.complete);

  Model chain = linear_order(5);
  auto b = definable_algebra(chain, {2}, 0, 1);
  CHECK(b.members.size() == 8);
  std::vector<Bitset> family;
  for (const auto& mem : b.members) family.push_back(mem.extension);
  CHECK(is_boolean_algebra(family, 5));
  // Every witness defines its own extension.
  Assignment params = b.partition.parameter_assignment();
  for (const auto& mem : b.members) {
    CHECK(reference::solution_set(chain, mem.witness, {"x1"}, params).members() == mem.extension);
  }
}

TEST_CASE("definable algebras are boolean algebras of distinct sets") {
  testing::Rng rng(22);
  auto sigs = testing::fixed_signatures();
  for (int trial = 0; trial < 24; ++trial) {
    const Signature& sig = sigs[trial % sigs.size()];
    Model m = testing::random_model(sig, rng.between(2, 4), rng);
    std::vector<Element> params;
    if (rng.chance(1, 2)) params.push_back(static_cast<Element>(rng.below(m.size())));
    auto alg = definable_algebra(m, params, rng.below(2), 1);
    if (!alg.complete) continue;
    std::vector<Bitset> family;
    std::set<Bitset> distinct;
    for (const auto& mem : alg.members) {
      family.push_back(mem.extension);
      distinct.insert(mem.extension);
    }
    CHECK(distinct.size() == family.size());
    CHECK(is_boolean_algebra(family, m.size()));
  }
}

TEST_CASE("atoms agree with random formulas of bounded rank") {
  // Two tuples in one atom must satisfy the same formulas of rank <= r.
  testing::Rng rng(23);
  Model m = testing::random_model(testing::fixed_signatures()[0], 4, rng);
  auto part = atom_partition(m, {}, 1, 1);
  REQUIRE(part.complete);
  for (int trial = 0; trial < 200; ++trial) {
    Formula f = testing::random_formula(m.signature(), rng, 3, {"x1", "y"});
    if (quantifier_rank(f) > 1) continue;
    f = Formula::exists("y", f);
    if (quantifier_rank(f) > 1) continue;
    auto ext = reference::solution_set(m, f, {"x1"});
    for (const auto& atom : part.atoms) {
      const bool first = ext.members().test(atom.tuples.find_first());
      atom.tuples.for_each([&](std::size_t e) { CHECK(ext.members().test(e) == first); });
    }
  }
}

TEST_CASE("boolean algebra check") {
  Bitset none(2), all(2, true), zero(2);
  zero.set(0);
  CHECK(is_boolean_algebra({none, all}, 2));
  CHECK_FALSE(is_boolean_algebra({none, zero, all}, 2));
  Bitset one(2);
  one.set(1);
  CHECK(is_boolean_algebra({none, zero, one, all}, 2));
}

TEST_CASE("same theory on a sentence list") {
  Model m = z5();
  std::vector<Formula> list{parse_formula("forall x. x + 0 = x", m.signature()),
                            parse_formula("exists x. x * x = 1 + 1", m.signature())};
  CHECK(same_theory_on(m, m, list).agree);

  Model two = linear_order(2), three = linear_order(3);
  auto r = same_theory_on(two, three,
                          {parse_formula("exists x. exists y. exists z. (x < y & y < z)", two.signature())});
  CHECK_FALSE(r.agree);
  CHECK_FALSE(r.rows[0].in_first);
  CHECK(r.rows[0].in_second);

  Model z7 = cyclic_ring(7);
  CHECK(same_theory_on(m, z7, {parse_formula("forall x. exists y. y + y = x", m.signature())}).agree);
  CHECK_THROWS_AS(same_theory_on(m, z7, {parse_formula("x = x", m.signature())}), Error);
}
