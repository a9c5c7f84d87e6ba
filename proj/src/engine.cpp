#include <algorithm>
#include <atomic>
#include <map>
#include <unordered_map>

#include <omp.h>

#include "modelglass/error.hpp"
#include "modelglass/eval.hpp"

namespace modelglass {

Relation::Relation(std::size_t domain, std::size_t arity)
    : domain_(domain), arity_(arity), members_(checked_power(domain, arity)) {}

Relation::Relation(std::size_t domain, std::size_t arity, Bitset members)
    : domain_(domain), arity_(arity), members_(std::move(members)) {
  if (members_.size() != checked_power(domain, arity)) throw Error("relation bitset has the wrong size");
}

std::vector<std::vector<Element>> Relation::tuples() const {
  std::vector<std::vector<Element>> out;
  members_.for_each([&](std::size_t idx) {
    std::vector<Element> t(arity_);
    for (std::size_t i = arity_; i-- > 0;) {
      t[i] = static_cast<Element>(idx % domain_);
      idx /= domain_;
    }
    out.push_back(std::move(t));
  });
  return out;
}

namespace {

using OpId = std::uint32_t;
using Slot = std::uint32_t;

// Formula compiled against one model: a hash-consed DAG of term and formula
// operations over variable slots. Tables hold the value of an operation for
// every assignment of its free slots.
class Plan {
 public:
  Plan(const Model& m, const EvalOptions& options) : m_(m), n_(m.size()), options_(options) {}

  Slot slot_of(const std::string& name) {
    auto [it, inserted] = slots_.try_emplace(name, static_cast<Slot>(slots_.size()));
    return it->second;
  }

  std::size_t slot_count() const { return slots_.size(); }

  /// `scope` holds the variables fixed from outside (solution-set variables
  /// and parameters); a subformula is worth a table only if some occurrence
  /// sits below more variables than it depends on, or it occurs twice.
  OpId compile(const Formula& f, const std::vector<std::string>& scope_names) {
    std::vector<Slot> scope;
    for (const auto& name : scope_names) scope.push_back(slot_of(name));
    std::sort(scope.begin(), scope.end());
    scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
    return formula_op(f, scope);
  }

  void prepare() {
    for (auto& op : terms_) op.tabulated = false;
    for (auto& op : forms_) op.tabulated = false;
    if (options_.memoize) {
      for (OpId i = 0; i < terms_.size(); ++i) {
        auto& op = terms_[i];
        if (op.kind == Term::Kind::Apply && worth_table(op) && table_size(op.free) <= options_.table_budget) {
          build_term_table(i);
        }
      }
    }
    // Ids are assigned children first, so every body is settled before the
    // chains and tables above it.
    for (OpId i = 0; i < forms_.size(); ++i) {
      auto& op = forms_[i];
      link_chain(i);
      if (options_.memoize && worth_table(op) && table_size(op.free) <= options_.table_budget) {
        build_formula_table(i);
      }
    }
  }

  bool eval(OpId id, Element* vals) const {
    const FormOp& op = forms_[id];
    if (op.tabulated) return op.table[index(op.free, vals)] != 0;
    return step(op, vals);
  }

  const std::vector<Slot>& free_slots(OpId id) const { return forms_[id].free; }

 private:
  struct TermOp {
    Term::Kind kind = Term::Kind::Variable;
    Slot slot = 0;
    Element value = 0;
    std::size_t function = 0;
    std::vector<OpId> args;
    std::vector<Slot> free;
    std::size_t occurrences = 0;
    bool reused = false;
    bool tabulated = false;
    std::vector<Element> table;
  };

  struct FormOp {
    Connective kind = Connective::Atomic;
    std::size_t relation = 0;
    std::vector<OpId> terms;
    OpId a = 0, b = 0;
    Slot slot = 0;
    std::vector<Slot> free;
    std::size_t occurrences = 0;
    bool reused = false;
    bool tabulated = false;
    std::vector<std::uint8_t> table;
    // Quantifier block evaluated as one loop: slots and the body below it.
    std::vector<Slot> chain;
    OpId chain_body = 0;
    std::size_t chain_total = 0;
  };

  template <typename Op>
  static bool worth_table(const Op& op) {
    return op.reused || op.occurrences > 1;
  }

  template <typename Op>
  static void note_occurrence(Op& op, const std::vector<Slot>& scope) {
    ++op.occurrences;
    if (scope.size() > op.free.size()) op.reused = true;
  }

  std::size_t table_size(const std::vector<Slot>& free) const {
    std::size_t size = 1;
    for (std::size_t i = 0; i < free.size(); ++i) {
      if (size > options_.table_budget / std::max<std::size_t>(n_, 1)) return options_.table_budget + 1;
      size *= n_;
    }
    return size;
  }

  std::size_t index(const std::vector<Slot>& free, const Element* vals) const {
    std::size_t idx = 0;
    for (Slot s : free) idx = idx * n_ + vals[s];
    return idx;
  }

  static std::vector<Slot> merge(std::vector<Slot> a, const std::vector<Slot>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
  }

  OpId term_op(const Term& t, const std::vector<Slot>& scope) {
    TermOp op;
    op.kind = t.kind();
    std::string key;
    switch (t.kind()) {
      case Term::Kind::Variable:
        op.slot = slot_of(t.name());
        op.free = {op.slot};
        key = "v" + std::to_string(op.slot);
        break;
      case Term::Kind::Constant: {
        auto c = m_.signature().find_constant(t.name());
        if (!c) throw Error("unknown constant '" + t.name() + "'");
        op.value = m_.constant(*c);
        key = "c" + std::to_string(op.value);
        break;
      }
      case Term::Kind::Apply: {
        auto f = m_.signature().find_function(t.name());
        if (!f) throw Error("unknown function '" + t.name() + "'");
        if (m_.signature().functions()[*f].arity != t.args().size()) {
          throw Error("arity mismatch for function '" + t.name() + "'");
        }
        op.function = *f;
        key = "f" + std::to_string(*f) + "(";
        for (const auto& arg : t.args()) {
          OpId child = term_op(arg, scope);
          op.args.push_back(child);
          op.free = merge(std::move(op.free), terms_[child].free);
          key += std::to_string(child) + ",";
        }
        key += ")";
        break;
      }
    }
    auto it = term_ids_.find(key);
    if (it != term_ids_.end()) {
      note_occurrence(terms_[it->second], scope);
      return it->second;
    }
    note_occurrence(op, scope);
    terms_.push_back(std::move(op));
    OpId id = static_cast<OpId>(terms_.size() - 1);
    term_ids_.emplace(std::move(key), id);
    return id;
  }

  OpId formula_op(const Formula& f, const std::vector<Slot>& scope) {
    FormOp op;
    op.kind = f.kind();
    std::string key;
    switch (f.kind()) {
      case Connective::Atomic: {
        auto r = m_.signature().find_relation(f.relation());
        if (!r) throw Error("unknown relation '" + f.relation() + "'");
        if (m_.signature().relations()[*r].arity != f.terms().size()) {
          throw Error("arity mismatch for relation '" + f.relation() + "'");
        }
        op.relation = *r;
        key = "a" + std::to_string(*r) + "(";
        for (const auto& t : f.terms()) {
          OpId child = term_op(t, scope);
          op.terms.push_back(child);
          op.free = merge(std::move(op.free), terms_[child].free);
          key += std::to_string(child) + ",";
        }
        key += ")";
        break;
      }
      case Connective::Not:
        op.a = formula_op(f.child(), scope);
        op.free = forms_[op.a].free;
        key = "n" + std::to_string(op.a);
        break;
      case Connective::ForAll:
      case Connective::Exists: {
        op.slot = slot_of(f.variable());
        std::vector<Slot> inner = scope;
        if (auto pos = std::lower_bound(inner.begin(), inner.end(), op.slot); pos == inner.end() || *pos != op.slot) {
          inner.insert(pos, op.slot);
        }
        op.a = formula_op(f.body(), inner);
        op.free = forms_[op.a].free;
        std::erase(op.free, op.slot);
        key = std::string(f.kind() == Connective::ForAll ? "A" : "E") + std::to_string(op.slot) + "." +
              std::to_string(op.a);
        break;
      }
      default:
        op.a = formula_op(f.lhs(), scope);
        op.b = formula_op(f.rhs(), scope);
        op.free = merge(forms_[op.a].free, forms_[op.b].free);
        key = "b" + std::to_string(static_cast<int>(f.kind())) + "(" + std::to_string(op.a) + "," +
              std::to_string(op.b) + ")";
        break;
    }
    auto it = form_ids_.find(key);
    if (it != form_ids_.end()) {
      note_occurrence(forms_[it->second], scope);
      return it->second;
    }
    note_occurrence(op, scope);
    forms_.push_back(std::move(op));
    OpId id = static_cast<OpId>(forms_.size() - 1);
    form_ids_.emplace(std::move(key), id);
    return id;
  }

  // Collapses nested same-kind quantifiers into one loop, stopping at a
  // tabulated body or a repeated variable.
  void link_chain(OpId id) {
    FormOp& op = forms_[id];
    if (!is_quantifier(op.kind)) return;
    op.chain = {op.slot};
    OpId body = op.a;
    while (forms_[body].kind == op.kind && !forms_[body].tabulated &&
           std::find(op.chain.begin(), op.chain.end(), forms_[body].slot) == op.chain.end()) {
      op.chain.push_back(forms_[body].slot);
      body = forms_[body].a;
    }
    op.chain_body = body;
    op.chain_total = checked_power(n_, op.chain.size());
  }

  Element term_value(OpId id, const Element* vals) const {
    const TermOp& op = terms_[id];
    switch (op.kind) {
      case Term::Kind::Variable:
        return vals[op.slot];
      case Term::Kind::Constant:
        return op.value;
      case Term::Kind::Apply:
        break;
    }
    if (op.tabulated) return op.table[index(op.free, vals)];
    return term_step(op, vals);
  }

  Element term_step(const TermOp& op, const Element* vals) const {
    std::size_t idx = 0;
    for (OpId arg : op.args) idx = idx * n_ + term_value(arg, vals);
    return m_.apply_at(op.function, idx);
  }

  bool step(const FormOp& op, Element* vals) const {
    switch (op.kind) {
      case Connective::Atomic: {
        if (op.relation == 0) return term_value(op.terms[0], vals) == term_value(op.terms[1], vals);
        std::size_t idx = 0;
        for (OpId t : op.terms) idx = idx * n_ + term_value(t, vals);
        return m_.holds_at(op.relation, idx);
      }
      case Connective::Not:
        return !eval(op.a, vals);
      case Connective::And:
        return eval(op.a, vals) && eval(op.b, vals);
      case Connective::Or:
        return eval(op.a, vals) || eval(op.b, vals);
      case Connective::Implies:
        return !eval(op.a, vals) || eval(op.b, vals);
      case Connective::Iff:
        return eval(op.a, vals) == eval(op.b, vals);
      case Connective::ForAll:
      case Connective::Exists:
        return quantifier_block(op, vals);
    }
    return false;
  }

  // Forall: true unless some assignment of the block falsifies the body.
  // Exists: true as soon as one assignment satisfies it.
  bool quantifier_block(const FormOp& op, Element* vals) const {
    const bool universal = op.kind == Connective::ForAll;
    const auto& chain = op.chain;
    const std::size_t m = chain.size();
    const std::size_t total = op.chain_total;

    // Blocks are short; keep the saved values off the heap on the hot path.
    Element inline_saved[16];
    std::vector<Element> spill;
    Element* saved = inline_saved;
    if (m > 16) {
      spill.resize(m);
      saved = spill.data();
    }
    for (std::size_t i = 0; i < m; ++i) saved[i] = vals[chain[i]];

    bool result = universal;
    if (total >= options_.parallel_grain && omp_get_max_threads() > 1 && !omp_in_parallel()) {
      std::atomic<bool> decided{false};
      const std::size_t width = slot_count();
      const std::int64_t count = static_cast<std::int64_t>(total);
#pragma omp parallel
      {
        std::vector<Element> local(vals, vals + width);
#pragma omp for schedule(dynamic, 64)
        for (std::int64_t idx = 0; idx < count; ++idx) {
          if (decided.load(std::memory_order_relaxed)) continue;
          std::size_t rest = static_cast<std::size_t>(idx);
          for (std::size_t i = m; i-- > 0;) {
            local[chain[i]] = static_cast<Element>(rest % n_);
            rest /= n_;
          }
          if (eval(op.chain_body, local.data()) != universal) decided.store(true, std::memory_order_relaxed);
        }
      }
      if (decided.load()) result = !universal;
    } else {
      for (std::size_t i = 0; i < m; ++i) vals[chain[i]] = 0;
      while (true) {
        if (eval(op.chain_body, vals) != universal) {
          result = !universal;
          break;
        }
        std::size_t i = m;
        while (i-- > 0) {
          if (++vals[chain[i]] < n_) break;
          vals[chain[i]] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
      }
    }
    for (std::size_t i = 0; i < m; ++i) vals[chain[i]] = saved[i];
    return result;
  }

  template <typename Fill>
  void for_each_assignment(const std::vector<Slot>& free, std::size_t size, Fill&& fill) const {
    const std::size_t width = slot_count();
    const std::size_t k = free.size();
    const std::int64_t count = static_cast<std::int64_t>(size);
    const bool parallel = size >= options_.parallel_grain && omp_get_max_threads() > 1 && !omp_in_parallel();
#pragma omp parallel if (parallel)
    {
      std::vector<Element> vals(width, 0);
#pragma omp for schedule(static)
      for (std::int64_t idx = 0; idx < count; ++idx) {
        std::size_t rest = static_cast<std::size_t>(idx);
        for (std::size_t i = k; i-- > 0;) {
          vals[free[i]] = static_cast<Element>(rest % n_);
          rest /= n_;
        }
        fill(static_cast<std::size_t>(idx), vals.data());
      }
    }
  }

  void build_term_table(OpId id) {
    TermOp& op = terms_[id];
    std::vector<Element> table(table_size(op.free));
    for_each_assignment(op.free, table.size(),
                        [&](std::size_t idx, const Element* vals) { table[idx] = term_step(op, vals); });
    op.table = std::move(table);
    op.tabulated = true;
  }

  void build_formula_table(OpId id) {
    FormOp& op = forms_[id];
    std::vector<std::uint8_t> table(table_size(op.free));
    for_each_assignment(op.free, table.size(),
                        [&](std::size_t idx, Element* vals) { table[idx] = step(op, vals) ? 1 : 0; });
    op.table = std::move(table);
    op.tabulated = true;
  }

  const Model& m_;
  std::size_t n_;
  EvalOptions options_;
  std::map<std::string, Slot> slots_;
  std::vector<TermOp> terms_;
  std::vector<FormOp> forms_;
  std::unordered_map<std::string, OpId> term_ids_;
  std::unordered_map<std::string, OpId> form_ids_;
};

void require_assigned(const VariableSet& free, const Assignment& a, const std::vector<std::string>& extra = {}) {
  for (const auto& v : free) {
    if (!a.contains(v) && std::find(extra.begin(), extra.end(), v) == extra.end()) {
      throw Error("unassigned free variable '" + v + "'");
    }
  }
}

void check_assignment_range(const Model& m, const Assignment& a) {
  for (const auto& [name, value] : a) {
    if (value >= m.size()) throw Error("assignment of '" + name + "' is out of range");
  }
}

}  // namespace

Element eval_term(const Model& m, const Term& t, const Assignment& a) {
  return reference::eval_term(m, t, a);
}

bool eval_formula(const Model& m, const Formula& f, const Assignment& a, const EvalOptions& options) {
  require_assigned(free_variables(f), a);
  check_assignment_range(m, a);
  Plan plan(m, options);
  std::vector<std::string> scope;
  for (const auto& [name, value] : a) scope.push_back(name);
  OpId root = plan.compile(f, scope);
  plan.prepare();
  std::vector<Element> vals(plan.slot_count(), 0);
  for (const auto& [name, value] : a) vals[plan.slot_of(name)] = value;
  // slot_of may have grown the slot table for unused assignment names.
  vals.resize(plan.slot_count(), 0);
  return plan.eval(root, vals.data());
}

DefinableSet solution_set(const Model& m, const Formula& f, const std::vector<std::string>& vars,
                          const Assignment& parameters, const EvalOptions& options) {
  if (vars.empty()) throw Error("solution_set needs at least one variable");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (std::find(vars.begin() + static_cast<std::ptrdiff_t>(i) + 1, vars.end(), vars[i]) != vars.end()) {
      throw Error("duplicate variable '" + vars[i] + "' in solution_set");
    }
    if (parameters.contains(vars[i])) throw Error("'" + vars[i] + "' is both a variable and a parameter");
  }
  require_assigned(free_variables(f), parameters, vars);
  check_assignment_range(m, parameters);

  Plan plan(m, options);
  std::vector<std::string> scope = vars;
  for (const auto& [name, value] : parameters) scope.push_back(name);
  OpId root = plan.compile(f, scope);
  std::vector<Slot> var_slots;
  for (const auto& v : vars) var_slots.push_back(plan.slot_of(v));
  std::vector<std::pair<Slot, Element>> fixed;
  for (const auto& [name, value] : parameters) fixed.emplace_back(plan.slot_of(name), value);
  plan.prepare();

  const std::size_t n = m.size();
  const std::size_t k = vars.size();
  const std::size_t total = checked_power(n, k);
  const std::size_t width = plan.slot_count();
  std::vector<std::uint8_t> hits(total, 0);
  const std::int64_t count = static_cast<std::int64_t>(total);
  const bool parallel = total >= options.parallel_grain && omp_get_max_threads() > 1;
#pragma omp parallel if (parallel)
  {
    std::vector<Element> vals(width, 0);
    for (auto [slot, value] : fixed) vals[slot] = value;
#pragma omp for schedule(static)
    for (std::int64_t idx = 0; idx < count; ++idx) {
      std::size_t rest = static_cast<std::size_t>(idx);
      for (std::size_t i = k; i-- > 0;) {
        vals[var_slots[i]] = static_cast<Element>(rest % n);
        rest /= n;
      }
      hits[static_cast<std::size_t>(idx)] = plan.eval(root, vals.data()) ? 1 : 0;
    }
  }
  Relation extension(n, k);
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (hits[idx]) extension.members().set(idx);
  }
  return DefinableSet{f, vars, parameters, std::move(extension)};
}

SameTheoryReport same_theory_on(const Model& first, const Model& second, const std::vector<Formula>& sentences,
                                const EvalOptions& options) {
  if (!(first.signature() == second.signature())) throw Error("models have different signatures");
  SameTheoryReport report;
  for (const auto& s : sentences) {
    if (!is_sentence(s)) throw Error("not a sentence: " + print_formula(s));
    SentenceComparison row{s, eval_formula(first, s, {}, options), eval_formula(second, s, {}, options)};
    report.agree = report.agree && row.in_first == row.in_second;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace modelglass
