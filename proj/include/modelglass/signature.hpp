#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace modelglass {

enum class Fixity { Prefix, Infix };

struct SymbolDecl {
  std::string name;
  std::size_t arity = 0;
  Fixity fixity = Fixity::Prefix;

  friend bool operator==(const SymbolDecl&, const SymbolDecl&) = default;
};

/// Relation, function and constant symbols of a first-order language.
///
/// Equality is always relation 0, binary and infix. Symbol names are unique
/// across all three kinds; infix symbols are binary.
class Signature {
 public:
  static constexpr std::string_view kEquality = "=";

  Signature();

  void add_relation(std::string name, std::size_t arity, Fixity fixity = Fixity::Prefix);
  void add_function(std::string name, std::size_t arity, Fixity fixity = Fixity::Prefix);
  void add_constant(std::string name);

  const std::vector<SymbolDecl>& relations() const noexcept { return relations_; }
  const std::vector<SymbolDecl>& functions() const noexcept { return functions_; }
  const std::vector<std::string>& constants() const noexcept { return constants_; }

  std::optional<std::size_t> find_relation(std::string_view name) const;
  std::optional<std::size_t> find_function(std::string_view name) const;
  std::optional<std::size_t> find_constant(std::string_view name) const;
  bool declares(std::string_view name) const;

  /// Names made of non-identifier characters, e.g. "<" or "+".
  std::vector<std::string> symbolic_names() const;

  std::string to_text() const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  void check_new_name(const std::string& name, std::size_t arity, Fixity fixity) const;

  std::vector<SymbolDecl> relations_;
  std::vector<SymbolDecl> functions_;
  std::vector<std::string> constants_;
};

/// True for names built from letters, digits, '_' and '\''.
bool is_identifier_name(std::string_view name);

/// Letter followed by letters, digits or primes.
bool is_variable_name(std::string_view name);

/// Parses `rel NAME /ARITY [infix]; fun NAME /ARITY [infix]; const NAME`.
Signature parse_signature(std::string_view text);

Signature graph_signature();
Signature order_signature();
/// {+, *, 0, 1}, optionally with binary "-".
Signature ring_signature(bool with_minus = false);

}  // namespace modelglass
