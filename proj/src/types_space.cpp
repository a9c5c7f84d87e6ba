#include "modelglass/types_space.hpp"

#include <algorithm>

#include "modelglass/error.hpp"
#include "modelglass/eval.hpp"

namespace modelglass {

PartialType make_partial_type(const Model& m, std::vector<Element> parameters, std::vector<Formula> formulas) {
  PartialType p;
  p.parameter_names = parameter_names(m.signature(), parameters.size());
  p.parameters = std::move(parameters);
  p.formulas = std::move(formulas);
  return p;
}

PartialTypeCheck check_partial_type(const Model& m, const PartialType& p) {
  if (p.parameter_names.size() != p.parameters.size()) throw Error("parameter names and values differ in number");
  Assignment params;
  for (std::size_t i = 0; i < p.parameters.size(); ++i) {
    if (p.parameters[i] >= m.size()) throw Error("parameter " + std::to_string(p.parameters[i]) + " is outside the domain");
    params[p.parameter_names[i]] = p.parameters[i];
  }

  PartialTypeCheck out;
  for (const auto& f : p.formulas) {
    VariableSet free = free_variables(f);
    for (const auto& [name, value] : params) free.erase(name);
    if (free.size() != 1) {
      throw Error("type formula '" + print_formula(f) + "' has " + std::to_string(free.size()) +
                  " free variables besides the parameters; exactly one is required");
    }
    if (out.variable.empty()) {
      out.variable = *free.begin();
    } else if (out.variable != *free.begin()) {
      throw Error("type formulas use different variables '" + out.variable + "' and '" + *free.begin() + "'");
    }
  }

  out.realizations = Bitset(m.size(), true);
  for (const auto& f : p.formulas) {
    Bitset sol = solution_set(m, f, {out.variable}, params).extension.members();
    out.realizations &= sol;
    out.solution_sets.push_back(std::move(sol));
  }
  out.is_partial_type = out.realizations.any();
  if (!out.is_partial_type) {
    std::vector<std::size_t> keep(p.formulas.size());
    for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
    for (std::size_t i = keep.size(); i-- > 0;) {
      Bitset rest(m.size(), true);
      for (std::size_t j : keep) {
        if (j != keep[i]) rest &= out.solution_sets[j];
      }
      if (rest.none()) keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(i));
    }
    out.inconsistent = std::move(keep);
  }
  return out;
}

Bitset realizations(const Model& m, const PartialType& p) {
  auto check = check_partial_type(m, p);
  if (!check.is_partial_type) throw Error("not a partial type: the solution sets have empty intersection");
  return check.realizations;
}

std::vector<std::size_t> TypePartition::block_of(std::size_t domain) const {
  std::vector<std::size_t> out(domain, 0);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (Element e : blocks[b].elements) out[e] = b;
  }
  return out;
}

TypePartition complete_types(const Model& m, const std::vector<Element>& params, std::size_t rank_bound,
                             const AlgebraOptions& options) {
  AtomPartition atoms = atom_partition(m, params, rank_bound, 1, options);
  TypePartition out;
  out.rank_bound = rank_bound;
  out.parameters = params;
  out.parameter_names = atoms.parameter_names;
  out.complete = atoms.complete;
  out.notes = atoms.notes;
  for (auto& atom : atoms.atoms) {
    TypeBlock block{{}, 0, atom.witness};
    for (std::size_t e : atom.tuples.elements()) block.elements.push_back(static_cast<Element>(e));
    block.witness = block.elements.front();
    out.blocks.push_back(std::move(block));
  }
  return out;
}

DloTypes count_dlo_types(std::size_t n) {
  DloTypes out;
  auto a = [](std::size_t i) { return "a" + std::to_string(i); };
  if (n == 0) {
    out.descriptions.push_back("x = x");
  } else {
    out.descriptions.push_back("x < " + a(1));
    for (std::size_t i = 1; i <= n; ++i) {
      out.descriptions.push_back("x = " + a(i));
      if (i < n) out.descriptions.push_back(a(i) + " < x < " + a(i + 1));
    }
    out.descriptions.push_back(a(n) + " < x");
  }
  out.count = out.descriptions.size();
  return out;
}

void check_embedding(const Model& source, const Model& target, const std::vector<Element>& embedding) {
  if (!(source.signature() == target.signature())) throw Error("models have different signatures");
  if (embedding.size() != source.size()) throw Error("embedding must map every element of the source");
  std::vector<bool> hit(target.size(), false);
  for (std::size_t i = 0; i < embedding.size(); ++i) {
    if (embedding[i] >= target.size()) throw Error("embedding sends " + std::to_string(i) + " outside the target");
    if (hit[embedding[i]]) throw Error("embedding is not injective at " + std::to_string(embedding[i]));
    hit[embedding[i]] = true;
  }
  const auto& sig = source.signature();
  const std::size_t n = source.size();
  auto for_tuples = [&](std::size_t arity, auto&& f) {
    std::vector<Element> t(arity, 0);
    std::vector<Element> image(arity, 0);
    const std::size_t total = checked_power(n, arity);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rest = idx;
      for (std::size_t i = arity; i-- > 0;) {
        t[i] = static_cast<Element>(rest % n);
        image[i] = embedding[t[i]];
        rest /= n;
      }
      f(t, image);
    }
  };
  for (std::size_t r = 1; r < sig.relations().size(); ++r) {
    for_tuples(sig.relations()[r].arity, [&](const std::vector<Element>& t, const std::vector<Element>& image) {
      if (source.holds(r, t) != target.holds(r, image)) {
        throw Error("embedding does not preserve relation '" + sig.relations()[r].name + "'");
      }
    });
  }
  for (std::size_t f = 0; f < sig.functions().size(); ++f) {
    for_tuples(sig.functions()[f].arity, [&](const std::vector<Element>& t, const std::vector<Element>& image) {
      if (embedding[source.apply(f, t)] != target.apply(f, image)) {
        throw Error("embedding does not commute with function '" + sig.functions()[f].name + "'");
      }
    });
  }
  for (std::size_t c = 0; c < sig.constants().size(); ++c) {
    if (embedding[source.constant(c)] != target.constant(c)) {
      throw Error("embedding does not fix constant '" + sig.constants()[c] + "'");
    }
  }
}

SaturationReport saturation_report(const Model& source, const Model& target, const std::vector<Element>& embedding,
                                   const std::vector<Element>& params, std::size_t rank_bound,
                                   const AlgebraOptions& options) {
  check_embedding(source, target, embedding);
  SaturationReport report;
  report.rank_bound = rank_bound;
  for (Element a : params) {
    if (a >= source.size()) throw Error("parameter " + std::to_string(a) + " is outside the source");
    report.parameters_in_target.push_back(embedding[a]);
  }
  std::vector<bool> in_image(target.size(), false);
  for (Element e : embedding) in_image[e] = true;

  TypePartition types = complete_types(target, report.parameters_in_target, rank_bound, options);
  report.complete = types.complete;
  for (auto& block : types.blocks) {
    SaturationEntry entry{std::move(block), {}, false};
    for (Element e : entry.block.elements) {
      if (in_image[e]) entry.image_realizers.push_back(e);
    }
    entry.realized_in_image = !entry.image_realizers.empty();
    if (!entry.realized_in_image) ++report.omitted;
    report.types.push_back(std::move(entry));
  }
  return report;
}

}  // namespace modelglass
