#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "modelglass/bitset.hpp"
#include "modelglass/definable.hpp"
#include "modelglass/model.hpp"
#include "modelglass/syntax.hpp"

namespace modelglass {

/// Formulas in one free variable, with parameters written as variables
/// named by `parameter_names` (p1, p2, ... by default) and bound to the
/// elements of `parameters`.
struct PartialType {
  std::vector<Element> parameters;
  std::vector<std::string> parameter_names;
  std::vector<Formula> formulas;
};

/// Builds a PartialType with the default parameter names for `m`.
PartialType make_partial_type(const Model& m, std::vector<Element> parameters, std::vector<Formula> formulas);

struct PartialTypeCheck {
  bool is_partial_type = false;
  /// The type variable; empty when no formula has one.
  std::string variable;
  /// Solution set of each formula, in input order.
  std::vector<Bitset> solution_sets;
  /// Intersection of all solution sets.
  Bitset realizations;
  /// When rejected: indices of a minimal subfamily with empty intersection.
  std::vector<std::size_t> inconsistent;
};

/// On a finite model the finite intersection property reduces to the full
/// intersection being nonempty. Throws unless every formula has exactly one
/// free variable besides the parameters, the same one throughout.
PartialTypeCheck check_partial_type(const Model& m, const PartialType& p);

/// Intersection of the solution sets; throws if `p` is not a partial type.
Bitset realizations(const Model& m, const PartialType& p);

struct TypeBlock {
  std::vector<Element> elements;
  Element witness = 0;
  /// Isolates the block among rank-bounded formulas over the parameters.
  Formula formula;
};

struct TypePartition {
  std::size_t rank_bound = 0;
  std::vector<Element> parameters;
  std::vector<std::string> parameter_names;
  std::vector<TypeBlock> blocks;  // ordered by least element
  bool complete = true;
  std::vector<std::string> notes;

  /// Block index of each element.
  std::vector<std::size_t> block_of(std::size_t domain) const;
};

/// Elements share a block iff they satisfy the same one-variable formulas of
/// quantifier rank <= rank_bound with parameters from `params`.
TypePartition complete_types(const Model& m, const std::vector<Element>& params, std::size_t rank_bound,
                             const AlgebraOptions& options = {});

struct DloTypes {
  std::size_t count = 0;
  std::vector<std::string> descriptions;
};

/// Complete 1-types of a dense linear order without endpoints over
/// parameters a1 < ... < an: the n points, the n-1 gaps and the two ends.
DloTypes count_dlo_types(std::size_t n);

struct SaturationEntry {
  TypeBlock block;
  /// Elements of the block that are images of the embedding.
  std::vector<Element> image_realizers;
  bool realized_in_image = false;
};

struct SaturationReport {
  std::size_t rank_bound = 0;
  std::vector<Element> parameters_in_target;
  std::vector<SaturationEntry> types;
  std::size_t omitted = 0;
  bool complete = true;
};

/// Throws unless `embedding` (element i of `source` to embedding[i]) is
/// injective and preserves and reflects every relation, function and
/// constant.
void check_embedding(const Model& source, const Model& target, const std::vector<Element>& embedding);

/// The complete rank-bounded types of `target` over the image of `params`
/// (elements of `source`), each marked realized or omitted by the image.
SaturationReport saturation_report(const Model& source, const Model& target, const std::vector<Element>& embedding,
                                   const std::vector<Element>& params, std::size_t rank_bound,
                                   const AlgebraOptions& options = {});

}  // namespace modelglass
