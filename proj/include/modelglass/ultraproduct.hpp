#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modelglass/filters.hpp"
#include "modelglass/model.hpp"
#include "modelglass/syntax.hpp"

namespace modelglass {

/// Models M_i, i in I = {0..m-1}, over one signature.
struct IndexedFamily {
  std::vector<Model> models;
};

enum class Representatives { LexLeast, LexGreatest, Seeded };

struct UltraproductOptions {
  /// Which tuple stands for each class. The quotient never depends on it.
  Representatives representatives = Representatives::LexLeast;
  std::uint64_t seed = 0;
  /// Skip the product and copy the factor at the ultrafilter's point.
  bool principal_fast_path = false;
  /// Largest Cartesian product enumerated.
  std::size_t max_product = std::size_t{1} << 20;
};

struct UltraproductModel {
  Model model;
  /// Representative tuple <a[i] : i in I> of each element.
  std::vector<std::vector<Element>> representatives;
  SetFamily ultrafilter;
  bool fast_path = false;
};

/// Product of the factors modulo agreement on a member of D. Relations hold
/// where they hold on a D-large set of coordinates; functions act
/// coordinatewise. Classes are numbered by their lexicographically least
/// tuple whatever representatives are chosen.
UltraproductModel ultraproduct(const IndexedFamily& family, const SetFamily& ultrafilter,
                               const UltraproductOptions& options = {});

struct LosReport {
  bool in_ultraproduct = false;
  /// M_i |= s, per index.
  std::vector<bool> in_factors;
  Subset truth_set = 0;
  bool truth_set_large = false;
  /// in_ultraproduct == truth_set_large.
  bool transfer_holds = false;
};

LosReport los_check(const IndexedFamily& family, const SetFamily& ultrafilter, const Formula& sentence,
                    const UltraproductOptions& options = {});
LosReport los_check(const UltraproductModel& up, const IndexedFamily& family, const Formula& sentence);

enum class IsoVerdict { Isomorphic, NotIsomorphic, Inconclusive };

struct IsoOptions {
  /// Search nodes before the verdict becomes Inconclusive.
  std::size_t max_nodes = 1000000;
  /// Largest tuple length of the diagram sentences tried as witnesses.
  std::size_t max_witness_vars = 3;
};

struct IsoResult {
  IsoVerdict verdict = IsoVerdict::Inconclusive;
  /// first element i maps to map[i] in the second model.
  std::vector<Element> map;
  /// A sentence true in exactly one of the two models, when found.
  std::optional<Formula> distinguishing;
  bool distinguishing_holds_in_first = false;
  std::size_t nodes = 0;
  std::string reason;
};

/// Backtracking search for an isomorphism, pruned by per-element
/// invariants. On failure looks for a short existential sentence separating
/// the models, falling back to a cardinality sentence.
IsoResult iso_check(const Model& first, const Model& second, const IsoOptions& options = {});

/// Checks that `map` is a bijection preserving and reflecting everything.
bool is_isomorphism(const Model& first, const Model& second, const std::vector<Element>& map);

/// Prime-field model F_p over the ring signature.
Model prime_field(std::size_t p);

std::string to_string(IsoVerdict v);

}  // namespace modelglass
