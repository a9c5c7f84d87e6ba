#include <doctest.h>

#include "modelglass/ax.hpp"
#include "modelglass/error.hpp"
#include "modelglass/eval.hpp"
#include "modelglass/parser.hpp"
#include "random.hpp"

using namespace modelglass;

namespace {

Signature ordered_ring() {
  return parse_signature("rel < /2 infix; fun + /2 infix; fun * /2 infix; fun - /2 infix; const 0; const 1");
}

std::vector<std::string> names(const VariableSet& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("signatures") {
  Signature s = ordered_ring();
  CHECK(s.relations().size() == 2);
  CHECK(s.relations()[0].name == "=");
  CHECK(s.find_function("*").has_value());
  CHECK(s.constants() == std::vector<std::string>{"0", "1"});

  Signature empty = parse_signature("");
  REQUIRE(empty.relations().size() == 1);
  CHECK(empty.relations()[0].name == "=");
  CHECK(empty.functions().empty());

  Signature g = parse_signature("rel E /2");
  CHECK(g == graph_signature());

  CHECK_THROWS_AS(parse_signature("rel E /2; rel E /1"), ParseError);
  CHECK_THROWS_AS(parse_signature("fun f /3 infix"), ParseError);
  CHECK_THROWS_AS(parse_signature("rel = /2"), ParseError);
  try {
    parse_signature("rel E /2;\nfun + 2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("parsing the textbook examples") {
  Signature s = ordered_ring();
  Formula f = parse_formula("forall x. x + 0 = x", s);
  CHECK(f.kind() == Connective::ForAll);
  CHECK(f.variable() == "x");
  CHECK(f.body() == Formula::equals(Term::apply("+", {Term::variable("x"), Term::constant("0")}, true),
                                    Term::variable("x")));
  CHECK(print_formula(f) == "forall x. ((x + 0) = x)");

  Formula g = parse_formula("exists x. y + x*x = z", s);
  CHECK(names(free_variables(g)) == std::vector<std::string>{"y", "z"});

  Formula h = parse_formula("x = x", s);
  CHECK(h.kind() == Connective::Atomic);
  CHECK(print_formula(h) == "(x = x)");
  CHECK(names(free_variables(h)) == std::vector<std::string>{"x"});

  CHECK(names(free_variables(parse_formula("x < y & exists y. y = x", s))) == std::vector<std::string>{"x", "y"});
}

TEST_CASE("precedence and scope") {
  Signature s = ordered_ring();
  // * binds tighter than +, & tighter than |, -> is right associative.
  CHECK(print_formula(parse_formula("x + y * z = 0", s)) == "((x + (y * z)) = 0)");
  CHECK(print_formula(parse_formula("x = 0 | x = 1 & x < 1", s)) == "((x = 0) | ((x = 1) & (x < 1)))");
  CHECK(print_formula(parse_formula("x = 0 -> x = 1 -> x < 1", s)) == "((x = 0) -> ((x = 1) -> (x < 1)))");
  CHECK(print_formula(parse_formula("x = 0 <-> x = 1 -> x < 1", s)) == "((x = 0) <-> ((x = 1) -> (x < 1)))");
  // A quantifier reaches to the end of its group.
  Formula q = parse_formula("(exists x. x = y & x < y) | y = 0", s);
  CHECK(q.kind() == Connective::Or);
  CHECK(q.lhs().kind() == Connective::Exists);
  CHECK(q.lhs().body().kind() == Connective::And);
  CHECK(print_formula(parse_formula("!x = 0", s)) == "!(x = 0)");
}

TEST_CASE("parse errors") {
  Signature s = ordered_ring();
  CHECK_THROWS_AS(parse_formula("forall x. (", s), ParseError);
  CHECK_THROWS_AS(parse_formula("R(x)", s), ParseError);
  CHECK_THROWS_AS(parse_formula("(x = 0", s), ParseError);
  CHECK_THROWS_AS(parse_formula("x + = 0", s), ParseError);
  Signature f = parse_signature("fun g /2");
  CHECK_THROWS_AS(parse_formula("g(x) = x", f), ParseError);
  std::vector<ParseWarning> warnings;
  parse_formula("exists x. exists x. x = x", s, &warnings);
  CHECK(warnings.size() == 1);
}

TEST_CASE("substitution") {
  Signature s = ordered_ring();
  Signature with_c = parse_signature("rel < /2 infix; const c");
  Formula f = parse_formula("x < y", with_c);
  CHECK(print_formula(substitute(f, "x", Term::constant("c"))) == "(c < y)");

  Formula capture = parse_formula("exists y. y = x", s);
  Formula sub = substitute(capture, "x", Term::variable("y"));
  CHECK(print_formula(sub) == "exists y'. (y' = y)");

  Formula sentence = parse_formula("forall x. x + 0 = x", s);
  CHECK(substitute(sentence, "x", Term::variable("z")) == sentence);
}

TEST_CASE("capture-avoiding substitution preserves meaning") {
  // substitute(f, x, t) evaluated at a equals f evaluated at a[x := t(a)],
  // on every model of size <= 4 over a unary-function signature.
  testing::Rng rng(11);
  Signature sig = parse_signature("rel E /2; fun f /1");
  for (int trial = 0; trial < 60; ++trial) {
    Formula f = testing::random_formula(sig, rng, 3, {"x", "y", "z"});
    Term t = testing::random_term(sig, rng, 2, {"x", "y", "z"});
    Formula g = substitute(f, "x", t);
    for (std::size_t n = 1; n <= 4; ++n) {
      Model m = testing::random_model(sig, n, rng);
      for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
          for (Element c = 0; c < n; ++c) {
            Assignment as{{"x", a}, {"y", b}, {"z", c}};
            Assignment shifted = as;
            shifted["x"] = reference::eval_term(m, t, as);
            REQUIRE(reference::eval_formula(m, g, as) == reference::eval_formula(m, f, shifted));
          }
        }
      }
    }
  }
}

TEST_CASE("free variables after substituting a closed term") {
  testing::Rng rng(12);
  Signature sig = parse_signature("rel < /2 infix; fun + /2 infix; const c");
  for (int trial = 0; trial < 300; ++trial) {
    Formula f = testing::random_formula(sig, rng, 4, {"x", "y", "z"});
    Term closed = Term::apply("+", {Term::constant("c"), Term::constant("c")}, true);
    auto expected = free_variables(f);
    expected.erase("x");
    CHECK(free_variables(substitute(f, "x", closed)) == expected);
  }
}

TEST_CASE("quantifier rank") {
  testing::Rng rng(13);
  Signature sig = ordered_ring();
  for (int trial = 0; trial < 200; ++trial) {
    Formula f = testing::random_formula(sig, rng, 4, {"x", "y"});
    CHECK(quantifier_rank(Formula::negation(f)) == quantifier_rank(f));
    CHECK(quantifier_rank(Formula::forall("x", f)) == 1 + quantifier_rank(f));
  }
  CHECK(quantifier_rank(parse_formula("x = x", sig)) == 0);
}

TEST_CASE("round trip on random formulas") {
  testing::Rng rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    Signature sig = testing::random_signature(rng);
    Formula f = testing::random_formula(sig, rng, rng.between(0, 6), {"x", "y", "z", "u'", "v1"});
    std::string text = print_formula(f);
    Formula back = parse_formula(text, sig);
    REQUIRE_MESSAGE(back == f, text);
    CHECK(print_formula(back) == text);
  }
}

TEST_CASE("ax sentences") {
  Formula phi = build_ax_sentence(1, 1);
  CHECK(print_formula(phi) ==
        "forall a. forall b. ((forall x. forall y. ((((a * x) + b) = ((a * y) + b)) -> (x = y))) -> "
        "forall z. exists x. (((a * x) + b) = z))");
  // The hand-built tree.
  auto ax_b = [](const char* v) {
    return Term::apply("+", {Term::apply("*", {Term::variable("a"), Term::variable(v)}, true), Term::variable("b")},
                       true);
  };
  Formula injective = Formula::forall(
      "x", Formula::forall("y", Formula::implies(Formula::equals(ax_b("x"), ax_b("y")),
                                                 Formula::equals(Term::variable("x"), Term::variable("y")))));
  Formula surjective = Formula::forall("z", Formula::exists("x", Formula::equals(ax_b("x"), Term::variable("z"))));
  CHECK(phi == Formula::forall("a", Formula::forall("b", Formula::implies(injective, surjective))));
  CHECK(quantifier_rank(phi) == 4);

  for (std::size_t n = 1; n <= 2; ++n) {
    for (std::size_t k = 1; k <= 3; ++k) {
      Formula s = build_ax_sentence(n, k);
      CHECK(is_sentence(s));
      CHECK(parse_formula(print_formula(s), ring_signature()) == s);
    }
  }
  CHECK(ax_coefficient_count(1, 1) == 2);
  CHECK(ax_coefficient_count(2, 2) == 12);
  CHECK(graded_lex_monomials(2, 1) == std::vector<std::vector<std::size_t>>{{1, 0}, {0, 1}, {0, 0}});
  CHECK_THROWS_AS(build_ax_sentence(1, 0), Error);
  CHECK_THROWS_AS(build_ax_sentence(3, 4), Error);
}
