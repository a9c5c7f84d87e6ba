#include "modelglass/model.hpp"

#include <limits>

#include "modelglass/error.hpp"

namespace modelglass {

std::size_t checked_power(std::size_t base, std::size_t exponent) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && out > std::numeric_limits<std::size_t>::max() / base) {
      throw CapExceeded("table size " + std::to_string(base) + "^" + std::to_string(exponent) + " overflows");
    }
    out *= base;
  }
  return out;
}

bool Model::holds(std::size_t relation, std::span<const Element> tuple) const {
  if (relation == 0) return tuple[0] == tuple[1];
  return relations_[relation].test(tuple_index(tuple, size_));
}

ModelBuilder::ModelBuilder(Signature sig, std::size_t size) {
  if (size == 0) throw Error("model domain must be nonempty");
  model_.sig_ = std::move(sig);
  model_.size_ = size;
  const auto& rels = model_.sig_.relations();
  model_.relations_.resize(rels.size());
  for (std::size_t r = 1; r < rels.size(); ++r) {
    model_.relations_[r] = Bitset(checked_power(size, rels[r].arity));
  }
  const auto& fns = model_.sig_.functions();
  model_.functions_.resize(fns.size());
  defined_.resize(fns.size());
  for (std::size_t f = 0; f < fns.size(); ++f) {
    std::size_t cells = checked_power(size, fns[f].arity);
    model_.functions_[f].assign(cells, 0);
    defined_[f] = Bitset(cells);
  }
  model_.constants_.assign(model_.sig_.constants().size(), 0);
  constant_defined_.assign(model_.sig_.constants().size(), false);
}

void ModelBuilder::check_element(Element e) const {
  if (e >= model_.size_) {
    throw Error("element " + std::to_string(e) + " out of range for domain of size " + std::to_string(model_.size_));
  }
}

ModelBuilder& ModelBuilder::add_tuple(std::size_t relation, std::span<const Element> tuple) {
  const auto& decl = model_.sig_.relations().at(relation);
  if (relation == 0) throw Error("equality is interpreted as identity and cannot be stored");
  if (tuple.size() != decl.arity) throw Error("tuple arity mismatch for relation '" + decl.name + "'");
  for (Element e : tuple) check_element(e);
  model_.relations_[relation].set(tuple_index(tuple, model_.size_));
  return *this;
}

ModelBuilder& ModelBuilder::add_tuple(std::string_view relation, std::initializer_list<Element> tuple) {
  auto r = model_.sig_.find_relation(relation);
  if (!r) throw Error("unknown relation '" + std::string(relation) + "'");
  return add_tuple(*r, std::span<const Element>(tuple.begin(), tuple.size()));
}

ModelBuilder& ModelBuilder::set_function(std::size_t function, std::span<const Element> args, Element value) {
  const auto& decl = model_.sig_.functions().at(function);
  if (args.size() != decl.arity) throw Error("argument count mismatch for function '" + decl.name + "'");
  for (Element e : args) check_element(e);
  check_element(value);
  std::size_t idx = tuple_index(args, model_.size_);
  if (defined_[function].test(idx)) throw Error("function redefinition: '" + decl.name + "'");
  defined_[function].set(idx);
  model_.functions_[function][idx] = value;
  return *this;
}

ModelBuilder& ModelBuilder::set_function(std::string_view function, std::initializer_list<Element> args,
                                         Element value) {
  auto f = model_.sig_.find_function(function);
  if (!f) throw Error("unknown function '" + std::string(function) + "'");
  return set_function(*f, std::span<const Element>(args.begin(), args.size()), value);
}

ModelBuilder& ModelBuilder::set_constant(std::size_t constant, Element value) {
  check_element(value);
  if (constant_defined_.at(constant)) {
    throw Error("constant redefinition: '" + model_.sig_.constants()[constant] + "'");
  }
  constant_defined_[constant] = true;
  model_.constants_[constant] = value;
  return *this;
}

ModelBuilder& ModelBuilder::set_constant(std::string_view constant, Element value) {
  auto c = model_.sig_.find_constant(constant);
  if (!c) throw Error("unknown constant '" + std::string(constant) + "'");
  return set_constant(*c, value);
}

Model ModelBuilder::build() const {
  for (std::size_t f = 0; f < defined_.size(); ++f) {
    if (!defined_[f].all()) {
      std::size_t missing = (~defined_[f]).find_first();
      std::string args;
      std::size_t n = model_.size_;
      std::size_t arity = model_.sig_.functions()[f].arity;
      std::vector<Element> tuple(arity);
      for (std::size_t i = arity; i-- > 0;) {
        tuple[i] = static_cast<Element>(missing % n);
        missing /= n;
      }
      for (std::size_t i = 0; i < arity; ++i) args += (i ? "," : "") + std::to_string(tuple[i]);
      throw Error("missing function value: '" + model_.sig_.functions()[f].name + "' at (" + args + ")");
    }
  }
  for (std::size_t c = 0; c < constant_defined_.size(); ++c) {
    if (!constant_defined_[c]) throw Error("missing constant value: '" + model_.sig_.constants()[c] + "'");
  }
  return model_;
}

Model linear_order(std::size_t n) {
  ModelBuilder b(order_signature(), n);
  for (Element i = 0; i < n; ++i) {
    for (Element j = i + 1; j < n; ++j) b.add_tuple("<", {i, j});
  }
  return b.build();
}

Model cyclic_ring(std::size_t n, bool with_minus) {
  ModelBuilder b(ring_signature(with_minus), n);
  for (Element i = 0; i < n; ++i) {
    for (Element j = 0; j < n; ++j) {
      b.set_function("+", {i, j}, static_cast<Element>((i + j) % n));
      b.set_function("*", {i, j}, static_cast<Element>((static_cast<std::size_t>(i) * j) % n));
      if (with_minus) b.set_function("-", {i, j}, static_cast<Element>((i + n - j) % n));
    }
  }
  b.set_constant("0", 0);
  b.set_constant("1", static_cast<Element>(1 % n));
  return b.build();
}

}  // namespace modelglass
