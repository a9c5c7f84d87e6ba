#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "modelglass/bitset.hpp"
#include "modelglass/eval.hpp"
#include "modelglass/model.hpp"
#include "modelglass/syntax.hpp"

namespace modelglass {

struct AlgebraOptions {
  /// Distinct term functions kept per tuple space.
  std::size_t max_terms = 256;
  /// Generators (atomic formulas and projected atoms) examined overall.
  std::size_t max_formulas = 100000;
  /// Largest tuple space n^(k + rank) that is materialized.
  std::size_t max_table = std::size_t{1} << 22;
  /// Largest family returned; the family has 2^atoms members.
  std::size_t max_family = 1 << 16;
};

/// One class of the partition of n^k by formulas of bounded rank.
struct Atom {
  Bitset tuples;
  /// Conjunction of the literals that separated this class.
  Formula witness;
};

struct AtomPartition {
  std::size_t domain = 0;
  std::size_t arity = 0;
  std::size_t rank_bound = 0;
  std::vector<std::string> variables;   // x1..xk
  std::vector<std::string> parameter_names;
  std::vector<Element> parameters;
  std::vector<Atom> atoms;               // ordered by least tuple
  bool complete = true;
  std::vector<std::string> notes;

  Assignment parameter_assignment() const;
};

struct DefinableMember {
  Bitset extension;
  Formula witness;
};

struct DefinableAlgebra {
  AtomPartition partition;
  std::vector<DefinableMember> members;
  bool complete = true;
};

/// Names used for parameters: p1, p2, ... avoiding the signature's symbols.
std::vector<std::string> parameter_names(const Signature& sig, std::size_t count);

/// Partition of the k-tuples into classes agreeing on every formula of
/// quantifier rank <= rank_bound with parameters from `params`.
///
/// Rank 0 classes come from the atomic formulas over the closure of the
/// variables, parameters and constants under the functions. Rank r adds the
/// projections of the rank r-1 classes one variable up, which is enough
/// because an existential distributes over the union of classes below it.
AtomPartition atom_partition(const Model& m, const std::vector<Element>& params, std::size_t rank_bound,
                             std::size_t k, const AlgebraOptions& options = {});

/// All distinct extensions of k-variable formulas of rank <= rank_bound with
/// parameters among `params`, one witness formula each: the unions of the
/// atoms. Caps flag the result incomplete instead of truncating silently.
DefinableAlgebra definable_algebra(const Model& m, const std::vector<Element>& params, std::size_t rank_bound,
                                   std::size_t k, const AlgebraOptions& options = {});

/// Contains the empty set and the base, closed under complement and
/// pairwise intersection. Every member must have `base_size` bits.
bool is_boolean_algebra(const std::vector<Bitset>& family, std::size_t base_size);

}  // namespace modelglass
