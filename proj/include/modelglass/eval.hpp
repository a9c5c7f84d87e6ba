#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "modelglass/bitset.hpp"
#include "modelglass/model.hpp"
#include "modelglass/syntax.hpp"

namespace modelglass {

struct EvalOptions {
  /// Largest subformula table (entries) the engine will materialize.
  std::size_t table_budget = std::size_t{1} << 24;
  /// When false every subformula is evaluated top-down, without tables.
  bool memoize = true;
  /// Minimum iteration count before a quantifier block or table build is
  /// split across OpenMP threads.
  std::size_t parallel_grain = 4096;
};

/// A set of k-tuples over a domain of size n, stored as a bitset over
/// row-major tuple indices.
class Relation {
 public:
  Relation() = default;
  Relation(std::size_t domain, std::size_t arity);
  Relation(std::size_t domain, std::size_t arity, Bitset members);

  std::size_t domain() const noexcept { return domain_; }
  std::size_t arity() const noexcept { return arity_; }
  const Bitset& members() const noexcept { return members_; }
  Bitset& members() noexcept { return members_; }

  bool contains(std::span<const Element> tuple) const { return members_.test(tuple_index(tuple, domain_)); }
  std::size_t count() const noexcept { return members_.count(); }
  std::vector<std::vector<Element>> tuples() const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::size_t domain_ = 0;
  std::size_t arity_ = 0;
  Bitset members_;
};

/// A formula's solution set under a fixed variable order and parameters.
struct DefinableSet {
  Formula formula;
  std::vector<std::string> variables;
  Assignment parameters;
  Relation extension;
};

Element eval_term(const Model& m, const Term& t, const Assignment& a);

/// Tarskian satisfaction. Throws if a free variable is unassigned.
bool eval_formula(const Model& m, const Formula& f, const Assignment& a, const EvalOptions& options = {});

/// Materializes { (e1..ek) : M |= f[vars := e] } bottom-up with per-call
/// subformula tables. `parameters` fixes any further free variables.
DefinableSet solution_set(const Model& m, const Formula& f, const std::vector<std::string>& vars,
                          const Assignment& parameters = {}, const EvalOptions& options = {});

struct SentenceComparison {
  Formula sentence;
  bool in_first = false;
  bool in_second = false;
};

struct SameTheoryReport {
  std::vector<SentenceComparison> rows;
  /// Agreement on the listed sentences only; a necessary condition for
  /// elementary equivalence, never a sufficient one.
  bool agree = true;
};

SameTheoryReport same_theory_on(const Model& first, const Model& second, const std::vector<Formula>& sentences,
                                const EvalOptions& options = {});

/// Plain recursive evaluation with no tables, no hash-consing and no
/// threads. Kept as the oracle the engine is tested against.
namespace reference {

Element eval_term(const Model& m, const Term& t, const Assignment& a);
bool eval_formula(const Model& m, const Formula& f, const Assignment& a);
Relation solution_set(const Model& m, const Formula& f, const std::vector<std::string>& vars,
                      const Assignment& parameters = {});

}  // namespace reference

}  // namespace modelglass
