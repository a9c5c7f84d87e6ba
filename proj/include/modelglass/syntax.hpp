#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace modelglass {

/// Immutable first-order term. Copies share structure.
class Term {
 public:
  enum class Kind : unsigned char { Variable, Constant, Apply };

  static Term variable(std::string name);
  static Term constant(std::string name);
  /// `infix` defaults to true for binary symbols with non-identifier names.
  static Term apply(std::string function, std::vector<Term> args);
  static Term apply(std::string function, std::vector<Term> args, bool infix);

  Kind kind() const noexcept { return node_->kind; }
  bool is_variable() const noexcept { return kind() == Kind::Variable; }
  /// Variable, constant or function name.
  const std::string& name() const noexcept { return node_->name; }
  const std::vector<Term>& args() const noexcept { return node_->args; }
  bool infix() const noexcept { return node_->infix; }

  const void* identity() const noexcept { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Term> args;
    bool infix = false;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

enum class Connective : unsigned char { Atomic, Not, And, Or, Implies, Iff, ForAll, Exists };

bool is_binary(Connective c) noexcept;
bool is_quantifier(Connective c) noexcept;

/// Immutable first-order formula. Copies share structure.
class Formula {
 public:
  static Formula atomic(std::string relation, std::vector<Term> args);
  static Formula atomic(std::string relation, std::vector<Term> args, bool infix);
  static Formula equals(Term lhs, Term rhs);
  static Formula negation(Formula f);
  static Formula binary(Connective c, Formula lhs, Formula rhs);
  static Formula quantified(Connective q, std::string variable, Formula body);

  static Formula conj(Formula lhs, Formula rhs) { return binary(Connective::And, std::move(lhs), std::move(rhs)); }
  static Formula disj(Formula lhs, Formula rhs) { return binary(Connective::Or, std::move(lhs), std::move(rhs)); }
  static Formula implies(Formula lhs, Formula rhs) { return binary(Connective::Implies, std::move(lhs), std::move(rhs)); }
  static Formula iff(Formula lhs, Formula rhs) { return binary(Connective::Iff, std::move(lhs), std::move(rhs)); }
  static Formula forall(std::string v, Formula body) { return quantified(Connective::ForAll, std::move(v), std::move(body)); }
  static Formula exists(std::string v, Formula body) { return quantified(Connective::Exists, std::move(v), std::move(body)); }

  Connective kind() const noexcept { return node_->kind; }

  // Atomic
  const std::string& relation() const noexcept { return node_->name; }
  const std::vector<Term>& terms() const noexcept { return node_->terms; }
  bool infix() const noexcept { return node_->infix; }

  // Not / binary
  const Formula& child() const noexcept { return node_->children[0]; }
  const Formula& lhs() const noexcept { return node_->children[0]; }
  const Formula& rhs() const noexcept { return node_->children[1]; }

  // Quantifiers
  const std::string& variable() const noexcept { return node_->name; }
  const Formula& body() const noexcept { return node_->children[0]; }

  const void* identity() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Connective kind;
    std::string name;
    std::vector<Term> terms;
    std::vector<Formula> children;
    bool infix = false;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

using VariableSet = std::set<std::string>;

VariableSet variables(const Term& t);
VariableSet free_variables(const Formula& f);
bool is_sentence(const Formula& f);
std::size_t quantifier_rank(const Formula& f);
/// Number of AST nodes, terms included.
std::size_t formula_size(const Formula& f);

Term substitute(const Term& t, const std::string& v, const Term& replacement);
/// Capture-avoiding: a binder that would capture a variable of `replacement`
/// is renamed by appending primes until the name is fresh.
Formula substitute(const Formula& f, const std::string& v, const Term& replacement);

/// Canonical text: every infix term, atom and binary connective is
/// parenthesized; quantifier chains are written `forall x. forall y. ...`.
std::string print_term(const Term& t);
std::string print_formula(const Formula& f);

/// Conjunction / disjunction of a non-empty list, associated to the left.
Formula conjoin(const std::vector<Formula>& parts);
Formula disjoin(const std::vector<Formula>& parts);

}  // namespace modelglass
