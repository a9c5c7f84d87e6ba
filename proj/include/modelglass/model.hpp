#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "modelglass/bitset.hpp"
#include "modelglass/signature.hpp"

namespace modelglass {

/// Domain elements are dense indices 0..n-1.
using Element = std::uint32_t;

/// Partial map from variable names to elements.
using Assignment = std::map<std::string, Element>;

/// Row-major index of a tuple over a domain of size n.
inline std::size_t tuple_index(std::span<const Element> tuple, std::size_t n) {
  std::size_t idx = 0;
  for (Element e : tuple) idx = idx * n + e;
  return idx;
}

std::size_t checked_power(std::size_t base, std::size_t exponent);

/// A finite structure for a signature. Immutable once built; equality is
/// never stored and always interpreted as identity.
class Model {
 public:
  const Signature& signature() const noexcept { return sig_; }
  std::size_t size() const noexcept { return size_; }

  bool holds(std::size_t relation, std::span<const Element> tuple) const;
  bool holds_at(std::size_t relation, std::size_t index) const { return relations_[relation].test(index); }
  Element apply(std::size_t function, std::span<const Element> args) const {
    return functions_[function][tuple_index(args, size_)];
  }
  Element apply_at(std::size_t function, std::size_t index) const { return functions_[function][index]; }
  Element constant(std::size_t c) const { return constants_[c]; }

  /// Membership bitset of relation `r` (r >= 1) over row-major tuple indices.
  const Bitset& relation_table(std::size_t r) const { return relations_[r]; }
  const std::vector<Element>& function_table(std::size_t f) const { return functions_[f]; }

  friend bool operator==(const Model&, const Model&) = default;

 private:
  friend class ModelBuilder;
  Model() = default;

  Signature sig_;
  std::size_t size_ = 0;
  std::vector<Bitset> relations_;                // index 0 (equality) left empty
  std::vector<std::vector<Element>> functions_;  // row-major tables
  std::vector<Element> constants_;
};

/// Incremental construction with validation of every model invariant.
class ModelBuilder {
 public:
  ModelBuilder(Signature sig, std::size_t size);

  const Signature& signature() const noexcept { return model_.sig_; }
  std::size_t size() const noexcept { return model_.size_; }

  ModelBuilder& add_tuple(std::size_t relation, std::span<const Element> tuple);
  ModelBuilder& add_tuple(std::string_view relation, std::initializer_list<Element> tuple);
  ModelBuilder& set_function(std::size_t function, std::span<const Element> args, Element value);
  ModelBuilder& set_function(std::string_view function, std::initializer_list<Element> args, Element value);
  ModelBuilder& set_constant(std::size_t constant, Element value);
  ModelBuilder& set_constant(std::string_view constant, Element value);

  /// Throws if a function value or constant is missing.
  Model build() const;

 private:
  void check_element(Element e) const;

  Model model_;
  std::vector<Bitset> defined_;
  std::vector<bool> constant_defined_;
};

/// Model file: `model SIZE`, then `rel R: (0,1) ...`, `fun f: (0,0)->1 ...`,
/// `const c = 0`. `#` starts a comment.
Model load_model(std::string_view text, const Signature& sig);
std::string model_to_text(const Model& m);

/// Chain 0 < 1 < ... < n-1 over `rel < /2 infix`.
Model linear_order(std::size_t n);
/// Z/nZ with + and * (and binary - when requested), constants 0 and 1.
Model cyclic_ring(std::size_t n, bool with_minus = false);

}  // namespace modelglass
