#include "modelglass/error.hpp"
#include "modelglass/eval.hpp"

namespace modelglass::reference {

Element eval_term(const Model& m, const Term& t, const Assignment& a) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      auto it = a.find(t.name());
      if (it == a.end()) throw Error("unassigned variable '" + t.name() + "'");
      return it->second;
    }
    case Term::Kind::Constant: {
      auto c = m.signature().find_constant(t.name());
      if (!c) throw Error("unknown constant '" + t.name() + "'");
      return m.constant(*c);
    }
    case Term::Kind::Apply: {
      auto f = m.signature().find_function(t.name());
      if (!f) throw Error("unknown function '" + t.name() + "'");
      if (m.signature().functions()[*f].arity != t.args().size()) {
        throw Error("arity mismatch for function '" + t.name() + "'");
      }
      std::vector<Element> args;
      for (const auto& arg : t.args()) args.push_back(reference::eval_term(m, arg, a));
      return m.apply(*f, args);
    }
  }
  return 0;
}

bool eval_formula(const Model& m, const Formula& f, const Assignment& a) {
  switch (f.kind()) {
    case Connective::Atomic: {
      auto r = m.signature().find_relation(f.relation());
      if (!r) throw Error("unknown relation '" + f.relation() + "'");
      if (m.signature().relations()[*r].arity != f.terms().size()) {
        throw Error("arity mismatch for relation '" + f.relation() + "'");
      }
      std::vector<Element> args;
      for (const auto& t : f.terms()) args.push_back(reference::eval_term(m, t, a));
      return m.holds(*r, args);
    }
    case Connective::Not:
      return !reference::eval_formula(m, f.child(), a);
    case Connective::And:
      return reference::eval_formula(m, f.lhs(), a) && reference::eval_formula(m, f.rhs(), a);
    case Connective::Or:
      return reference::eval_formula(m, f.lhs(), a) || reference::eval_formula(m, f.rhs(), a);
    case Connective::Implies:
      return !reference::eval_formula(m, f.lhs(), a) || reference::eval_formula(m, f.rhs(), a);
    case Connective::Iff:
      return reference::eval_formula(m, f.lhs(), a) == reference::eval_formula(m, f.rhs(), a);
    case Connective::ForAll:
    case Connective::Exists: {
      const bool universal = f.kind() == Connective::ForAll;
      Assignment inner = a;
      for (Element e = 0; e < m.size(); ++e) {
        inner[f.variable()] = e;
        if (reference::eval_formula(m, f.body(), inner) != universal) return !universal;
      }
      return universal;
    }
  }
  return false;
}

Relation solution_set(const Model& m, const Formula& f, const std::vector<std::string>& vars,
                      const Assignment& parameters) {
  const std::size_t n = m.size();
  Relation out(n, vars.size());
  Assignment a = parameters;
  std::vector<Element> tuple(vars.size(), 0);
  for (std::size_t idx = 0; idx < out.members().size(); ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = vars.size(); i-- > 0;) {
      tuple[i] = static_cast<Element>(rest % n);
      rest /= n;
      a[vars[i]] = tuple[i];
    }
    if (reference::eval_formula(m, f, a)) out.members().set(idx);
  }
  return out;
}

}  // namespace modelglass::reference
