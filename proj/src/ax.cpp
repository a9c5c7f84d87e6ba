#include "modelglass/ax.hpp"

#include "modelglass/error.hpp"

namespace modelglass {

namespace {

void monomials_of_degree(std::size_t n, std::size_t degree, std::size_t var, std::vector<std::size_t>& current,
                         std::vector<std::vector<std::size_t>>& out) {
  if (var + 1 == n) {
    current[var] = degree;
    out.push_back(current);
    return;
  }
  for (std::size_t e = degree + 1; e-- > 0;) {
    current[var] = e;
    monomials_of_degree(n, degree - e, var + 1, current, out);
  }
}

std::string coefficient_name(std::size_t index) {
  constexpr std::size_t kLetters = 23;  // a..w; x, y, z name the map's variables
  std::string name(1, static_cast<char>('a' + index % kLetters));
  if (index >= kLetters) name += std::to_string(index / kLetters);
  return name;
}

std::string vector_var(char base, std::size_t i, std::size_t n) {
  std::string name(1, base);
  if (n > 1) name += std::to_string(i + 1);
  return name;
}

Term monomial_term(const Term& coefficient, const std::vector<std::size_t>& exponents,
                   const std::vector<std::string>& vars) {
  Term acc = coefficient;
  for (std::size_t v = 0; v < exponents.size(); ++v) {
    for (std::size_t e = 0; e < exponents[v]; ++e) acc = Term::apply("*", {acc, Term::variable(vars[v])}, true);
  }
  return acc;
}

}  // namespace

std::vector<std::vector<std::size_t>> graded_lex_monomials(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current(n, 0);
  for (std::size_t d = k + 1; d-- > 0;) monomials_of_degree(n, d, 0, current, out);
  return out;
}

std::size_t ax_coefficient_count(std::size_t n, std::size_t k) {
  // C(n + k, k), computed incrementally to stay exact.
  std::size_t binom = 1;
  for (std::size_t i = 1; i <= k; ++i) binom = binom * (n + i) / i;
  return n * binom;
}

Formula build_ax_sentence(std::size_t n, std::size_t k, const AxOptions& options) {
  if (n == 0) throw Error("ax sentence: arity n must be >= 1");
  if (k == 0) throw Error("ax sentence: degree k must be >= 1 (constant maps are degenerate)");
  std::size_t count = ax_coefficient_count(n, k);
  if (count > options.max_coefficients) {
    throw CapExceeded("ax sentence (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ") needs " +
                      std::to_string(count) + " coefficient quantifiers; cap is " +
                      std::to_string(options.max_coefficients));
  }

  const auto monomials = graded_lex_monomials(n, k);
  std::vector<std::string> xs, ys, zs;
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(vector_var('x', i, n));
    ys.push_back(vector_var('y', i, n));
    zs.push_back(vector_var('z', i, n));
  }

  std::vector<std::string> coefficients;
  // polynomial(i, vars) for the i-th component
  auto polynomial = [&](std::size_t component, const std::vector<std::string>& vars) {
    std::size_t base = component * monomials.size();
    Term acc = monomial_term(Term::variable(coefficients[base]), monomials[0], vars);
    for (std::size_t m = 1; m < monomials.size(); ++m) {
      acc = Term::apply("+", {acc, monomial_term(Term::variable(coefficients[base + m]), monomials[m], vars)}, true);
    }
    return acc;
  };
  for (std::size_t i = 0; i < count; ++i) coefficients.push_back(coefficient_name(i));

  std::vector<Formula> same_image, same_input, hits_target;
  for (std::size_t i = 0; i < n; ++i) {
    same_image.push_back(Formula::equals(polynomial(i, xs), polynomial(i, ys)));
    same_input.push_back(Formula::equals(Term::variable(xs[i]), Term::variable(ys[i])));
    hits_target.push_back(Formula::equals(polynomial(i, xs), Term::variable(zs[i])));
  }

  Formula injective = Formula::implies(conjoin(same_image), conjoin(same_input));
  for (std::size_t i = n; i-- > 0;) injective = Formula::forall(ys[i], injective);
  for (std::size_t i = n; i-- > 0;) injective = Formula::forall(xs[i], injective);

  Formula surjective = conjoin(hits_target);
  for (std::size_t i = n; i-- > 0;) surjective = Formula::exists(xs[i], surjective);
  for (std::size_t i = n; i-- > 0;) surjective = Formula::forall(zs[i], surjective);

  Formula sentence = Formula::implies(injective, surjective);
  for (std::size_t i = count; i-- > 0;) sentence = Formula::forall(coefficients[i], sentence);
  return sentence;
}

}  // namespace modelglass
