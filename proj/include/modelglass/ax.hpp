#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "modelglass/syntax.hpp"

namespace modelglass {

struct AxOptions {
  /// Upper bound on the number of universally quantified coefficients.
  std::size_t max_coefficients = 64;
};

/// Exponent vectors of all monomials of total degree <= k in n variables,
/// highest degree first and lexicographically descending within a degree.
std::vector<std::vector<std::size_t>> graded_lex_monomials(std::size_t n, std::size_t k);

/// Number of coefficient quantifiers in the injective-implies-surjective
/// sentence: n * C(n + k, k).
std::size_t ax_coefficient_count(std::size_t n, std::size_t k);

/// Sentence over {+, *} stating that every polynomial map (x1..xn) -> (p1..pn)
/// of degree <= k that is injective is surjective. Coefficients are
/// universally quantified, p1's coefficients first.
Formula build_ax_sentence(std::size_t n, std::size_t k, const AxOptions& options = {});

}  // namespace modelglass
