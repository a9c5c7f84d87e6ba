#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "modelglass/signature.hpp"
#include "modelglass/syntax.hpp"

namespace modelglass {

struct ParseWarning {
  std::string message;
  std::size_t line = 0;
  std::size_t column = 0;
};

/// Parses a formula over `sig`.
///
/// Connectives by decreasing precedence: `!`, `&`, `|`, `->` (right
/// associative), `<->`. `forall x.` / `exists x.` scope to the end of the
/// enclosing parenthesized group. Infix function symbols bind as
/// multiplicative (`*`, `/`, `%`) above additive (everything else); infix
/// relations sit between two terms. Shadowed binders produce warnings.
Formula parse_formula(std::string_view text, const Signature& sig, std::vector<ParseWarning>* warnings = nullptr);

Term parse_term(std::string_view text, const Signature& sig);

}  // namespace modelglass
