#include "modelglass/syntax.hpp"

#include <stdexcept>

#include "modelglass/signature.hpp"

namespace modelglass {

Term Term::variable(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Variable, std::move(name), {}, false}));
}

Term Term::constant(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Constant, std::move(name), {}, false}));
}

Term Term::apply(std::string function, std::vector<Term> args) {
  bool infix = args.size() == 2 && !is_identifier_name(function);
  return apply(std::move(function), std::move(args), infix);
}

Term Term::apply(std::string function, std::vector<Term> args, bool infix) {
  return Term(std::make_shared<const Node>(Node{Kind::Apply, std::move(function), std::move(args), infix}));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  return a.kind() == b.kind() && a.name() == b.name() && a.infix() == b.infix() && a.args() == b.args();
}

bool is_binary(Connective c) noexcept {
  return c == Connective::And || c == Connective::Or || c == Connective::Implies || c == Connective::Iff;
}

bool is_quantifier(Connective c) noexcept { return c == Connective::ForAll || c == Connective::Exists; }

Formula Formula::atomic(std::string relation, std::vector<Term> args) {
  bool infix = args.size() == 2 && !is_identifier_name(relation);
  return atomic(std::move(relation), std::move(args), infix);
}

Formula Formula::atomic(std::string relation, std::vector<Term> args, bool infix) {
  return Formula(std::make_shared<const Node>(Node{Connective::Atomic, std::move(relation), std::move(args), {}, infix}));
}

Formula Formula::equals(Term lhs, Term rhs) {
  return atomic(std::string(Signature::kEquality), {std::move(lhs), std::move(rhs)}, true);
}

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Connective::Not, {}, {}, {std::move(f)}, false}));
}

Formula Formula::binary(Connective c, Formula lhs, Formula rhs) {
  if (!is_binary(c)) throw std::invalid_argument("binary(): not a binary connective");
  return Formula(std::make_shared<const Node>(Node{c, {}, {}, {std::move(lhs), std::move(rhs)}, false}));
}

Formula Formula::quantified(Connective q, std::string variable, Formula body) {
  if (!is_quantifier(q)) throw std::invalid_argument("quantified(): not a quantifier");
  return Formula(std::make_shared<const Node>(Node{q, std::move(variable), {}, {std::move(body)}, false}));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.name == y.name && x.infix == y.infix && x.terms == y.terms &&
         x.children == y.children;
}

namespace {

void collect_variables(const Term& t, VariableSet& out) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      out.insert(t.name());
      break;
    case Term::Kind::Constant:
      break;
    case Term::Kind::Apply:
      for (const auto& a : t.args()) collect_variables(a, out);
      break;
  }
}

}  // namespace

VariableSet variables(const Term& t) {
  VariableSet out;
  collect_variables(t, out);
  return out;
}

VariableSet free_variables(const Formula& f) {
  switch (f.kind()) {
    case Connective::Atomic: {
      VariableSet out;
      for (const auto& t : f.terms()) collect_variables(t, out);
      return out;
    }
    case Connective::Not:
      return free_variables(f.child());
    case Connective::ForAll:
    case Connective::Exists: {
      VariableSet out = free_variables(f.body());
      out.erase(f.variable());
      return out;
    }
    default: {
      VariableSet out = free_variables(f.lhs());
      out.merge(free_variables(f.rhs()));
      return out;
    }
  }
}

bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

std::size_t quantifier_rank(const Formula& f) {
  switch (f.kind()) {
    case Connective::Atomic:
      return 0;
    case Connective::Not:
      return quantifier_rank(f.child());
    case Connective::ForAll:
    case Connective::Exists:
      return 1 + quantifier_rank(f.body());
    default:
      return std::max(quantifier_rank(f.lhs()), quantifier_rank(f.rhs()));
  }
}

namespace {
std::size_t term_size(const Term& t) {
  std::size_t n = 1;
  for (const auto& a : t.args()) n += term_size(a);
  return n;
}
}  // namespace

std::size_t formula_size(const Formula& f) {
  switch (f.kind()) {
    case Connective::Atomic: {
      std::size_t n = 1;
      for (const auto& t : f.terms()) n += term_size(t);
      return n;
    }
    case Connective::Not:
    case Connective::ForAll:
    case Connective::Exists:
      return 1 + formula_size(f.child());
    default:
      return 1 + formula_size(f.lhs()) + formula_size(f.rhs());
  }
}

Term substitute(const Term& t, const std::string& v, const Term& replacement) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return t.name() == v ? replacement : t;
    case Term::Kind::Constant:
      return t;
    case Term::Kind::Apply: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(substitute(a, v, replacement));
      return Term::apply(t.name(), std::move(args), t.infix());
    }
  }
  return t;
}

Formula substitute(const Formula& f, const std::string& v, const Term& replacement) {
  switch (f.kind()) {
    case Connective::Atomic: {
      std::vector<Term> terms;
      terms.reserve(f.terms().size());
      for (const auto& t : f.terms()) terms.push_back(substitute(t, v, replacement));
      return Formula::atomic(f.relation(), std::move(terms), f.infix());
    }
    case Connective::Not:
      return Formula::negation(substitute(f.child(), v, replacement));
    case Connective::ForAll:
    case Connective::Exists: {
      const std::string& bound = f.variable();
      if (bound == v) return f;
      VariableSet body_free = free_variables(f.body());
      if (!body_free.contains(v)) return f;
      VariableSet repl_vars = variables(replacement);
      if (!repl_vars.contains(bound)) {
        return Formula::quantified(f.kind(), bound, substitute(f.body(), v, replacement));
      }
      std::string fresh = bound + "'";
      while (repl_vars.contains(fresh) || body_free.contains(fresh)) fresh += "'";
      Formula renamed = substitute(f.body(), bound, Term::variable(fresh));
      return Formula::quantified(f.kind(), fresh, substitute(renamed, v, replacement));
    }
    default:
      return Formula::binary(f.kind(), substitute(f.lhs(), v, replacement), substitute(f.rhs(), v, replacement));
  }
}

namespace {

void print_term_to(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Variable:
    case Term::Kind::Constant:
      out += t.name();
      return;
    case Term::Kind::Apply:
      if (t.infix()) {
        out += '(';
        print_term_to(t.args()[0], out);
        out += ' ' + t.name() + ' ';
        print_term_to(t.args()[1], out);
        out += ')';
      } else {
        out += t.name();
        out += '(';
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          if (i) out += ", ";
          print_term_to(t.args()[i], out);
        }
        out += ')';
      }
      return;
  }
}

// A printed formula "ends open" when its last construct is a quantifier whose
// scope would swallow whatever follows it.
bool ends_open(const Formula& f) {
  switch (f.kind()) {
    case Connective::ForAll:
    case Connective::Exists:
      return true;
    case Connective::Not:
      return ends_open(f.child());
    default:
      return false;
  }
}

const char* connective_text(Connective c) {
  switch (c) {
    case Connective::And:
      return " & ";
    case Connective::Or:
      return " | ";
    case Connective::Implies:
      return " -> ";
    case Connective::Iff:
      return " <-> ";
    default:
      return "?";
  }
}

void print_formula_to(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Connective::Atomic:
      if (f.infix()) {
        out += '(';
        print_term_to(f.terms()[0], out);
        out += ' ' + f.relation() + ' ';
        print_term_to(f.terms()[1], out);
        out += ')';
      } else {
        out += f.relation();
        out += '(';
        for (std::size_t i = 0; i < f.terms().size(); ++i) {
          if (i) out += ", ";
          print_term_to(f.terms()[i], out);
        }
        out += ')';
      }
      return;
    case Connective::Not:
      out += '!';
      print_formula_to(f.child(), out);
      return;
    case Connective::ForAll:
    case Connective::Exists:
      out += f.kind() == Connective::ForAll ? "forall " : "exists ";
      out += f.variable();
      out += ". ";
      print_formula_to(f.body(), out);
      return;
    default:
      out += '(';
      if (ends_open(f.lhs())) {
        out += '(';
        print_formula_to(f.lhs(), out);
        out += ')';
      } else {
        print_formula_to(f.lhs(), out);
      }
      out += connective_text(f.kind());
      print_formula_to(f.rhs(), out);
      out += ')';
      return;
  }
}

}  // namespace

std::string print_term(const Term& t) {
  std::string out;
  print_term_to(t, out);
  return out;
}

std::string print_formula(const Formula& f) {
  std::string out;
  print_formula_to(f, out);
  return out;
}

Formula conjoin(const std::vector<Formula>& parts) {
  if (parts.empty()) throw std::invalid_argument("conjoin(): empty list");
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::conj(acc, parts[i]);
  return acc;
}

Formula disjoin(const std::vector<Formula>& parts) {
  if (parts.empty()) throw std::invalid_argument("disjoin(): empty list");
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::disj(acc, parts[i]);
  return acc;
}

}  // namespace modelglass
