#include "modelglass/ultraproduct.hpp"

#include <random>
#include <unordered_map>

#include "modelglass/error.hpp"
#include "modelglass/eval.hpp"

namespace modelglass {

namespace {

void check_family(const IndexedFamily& family, const SetFamily& ultrafilter) {
  if (family.models.empty()) throw Error("the index set must be nonempty");
  for (const auto& m : family.models) {
    if (!(m.signature() == family.models.front().signature())) throw Error("factors have different signatures");
  }
  if (ultrafilter.base() != family.models.size()) {
    throw Error("ultrafilter lives on a base of " + std::to_string(ultrafilter.base()) + " points but there are " +
                std::to_string(family.models.size()) + " factors");
  }
  if (!is_ultrafilter(ultrafilter)) throw Error("not an ultrafilter: " + format_family(ultrafilter));
}

Subset agreement(const std::vector<Element>& a, const std::vector<Element>& b) {
  Subset s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) s |= Subset{1} << i;
  }
  return s;
}

// Classes of the product under D-agreement. Tuples are bucketed by their
// restriction to the limit set, and each bucket is confirmed against the
// definition by testing the agreement set for membership in D.
class Quotient {
 public:
  Quotient(const IndexedFamily& family, const SetFamily& d) : family_(family), d_(d) {
    core_ = subset_elements(limit_points(d));
  }

  std::size_t class_of(const std::vector<Element>& tuple) const {
    auto it = index_.find(key(tuple));
    if (it == index_.end() || !d_.contains(agreement(tuple, leaders_[it->second]))) {
      throw Error("tuple falls outside every class; the ultrafilter is inconsistent with its limit set");
    }
    return it->second;
  }

  std::size_t add(const std::vector<Element>& tuple) {
    auto [it, inserted] = index_.try_emplace(key(tuple), leaders_.size());
    if (inserted) {
      leaders_.push_back(tuple);
    } else if (!d_.contains(agreement(tuple, leaders_[it->second]))) {
      throw Error("tuples with the same restriction to the limit set disagree on a D-large set");
    }
    return it->second;
  }

  const std::vector<std::vector<Element>>& leaders() const { return leaders_; }

 private:
  std::uint64_t key(const std::vector<Element>& tuple) const {
    std::uint64_t k = 0;
    for (std::size_t i : core_) k = k * family_.models[i].size() + tuple[i];
    return k;
  }

  const IndexedFamily& family_;
  const SetFamily& d_;
  std::vector<std::size_t> core_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<std::vector<Element>> leaders_;
};

}  // namespace

Model prime_field(std::size_t p) {
  if (p < 2) throw Error("not a prime: " + std::to_string(p));
  for (std::size_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) throw Error("not a prime: " + std::to_string(p));
  }
  return cyclic_ring(p);
}

UltraproductModel ultraproduct(const IndexedFamily& family, const SetFamily& ultrafilter,
                               const UltraproductOptions& options) {
  check_family(family, ultrafilter);
  const std::size_t m = family.models.size();
  const Signature& sig = family.models.front().signature();

  if (options.principal_fast_path) {
    const std::size_t point = subset_elements(limit_points(ultrafilter)).front();
    const Model& factor = family.models[point];
    std::vector<std::vector<Element>> reps(factor.size(), std::vector<Element>(m, 0));
    for (std::size_t e = 0; e < factor.size(); ++e) reps[e][point] = static_cast<Element>(e);
    return UltraproductModel{factor, std::move(reps), ultrafilter, true};
  }

  std::size_t product = 1;
  for (const auto& f : family.models) {
    if (product > options.max_product / f.size()) {
      throw CapExceeded("Cartesian product exceeds the cap of " + std::to_string(options.max_product) + " tuples");
    }
    product *= f.size();
  }

  // Lexicographic enumeration: the first tuple met in each class is its
  // least, which fixes the class numbering.
  Quotient quotient(family, ultrafilter);
  std::vector<std::vector<Element>> reps;
  std::vector<std::size_t> seen;
  std::mt19937_64 rng(options.seed);
  std::vector<Element> tuple(m, 0);
  for (std::size_t idx = 0; idx < product; ++idx) {
    std::size_t c = quotient.add(tuple);
    if (c == reps.size()) {
      reps.push_back(tuple);
      seen.push_back(1);
    } else {
      ++seen[c];
      if (options.representatives == Representatives::LexGreatest) {
        reps[c] = tuple;
      } else if (options.representatives == Representatives::Seeded) {
        // Reservoir sampling keeps a uniform choice per class.
        if (std::uniform_int_distribution<std::size_t>(0, seen[c] - 1)(rng) == 0) reps[c] = tuple;
      }
    }
    for (std::size_t i = m; i-- > 0;) {
      if (++tuple[i] < family.models[i].size()) break;
      tuple[i] = 0;
    }
  }

  const std::size_t classes = reps.size();
  ModelBuilder builder(sig, classes);
  auto for_class_tuples = [&](std::size_t arity, auto&& f) {
    std::vector<Element> cls(arity, 0);
    const std::size_t total = checked_power(classes, arity);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rest = idx;
      for (std::size_t i = arity; i-- > 0;) {
        cls[i] = static_cast<Element>(rest % classes);
        rest /= classes;
      }
      f(cls);
    }
  };
  std::vector<Element> coords;
  for (std::size_t r = 1; r < sig.relations().size(); ++r) {
    const std::size_t arity = sig.relations()[r].arity;
    coords.assign(arity, 0);
    for_class_tuples(arity, [&](const std::vector<Element>& cls) {
      Subset holds = 0;
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t a = 0; a < arity; ++a) coords[a] = reps[cls[a]][i];
        if (family.models[i].holds(r, coords)) holds |= Subset{1} << i;
      }
      if (ultrafilter.contains(holds)) builder.add_tuple(r, cls);
    });
  }
  for (std::size_t f = 0; f < sig.functions().size(); ++f) {
    const std::size_t arity = sig.functions()[f].arity;
    coords.assign(arity, 0);
    for_class_tuples(arity, [&](const std::vector<Element>& cls) {
      std::vector<Element> value(m);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t a = 0; a < arity; ++a) coords[a] = reps[cls[a]][i];
        value[i] = family.models[i].apply(f, coords);
      }
      builder.set_function(f, cls, static_cast<Element>(quotient.class_of(value)));
    });
  }
  for (std::size_t c = 0; c < sig.constants().size(); ++c) {
    std::vector<Element> value(m);
    for (std::size_t i = 0; i < m; ++i) value[i] = family.models[i].constant(c);
    builder.set_constant(c, static_cast<Element>(quotient.class_of(value)));
  }
  return UltraproductModel{builder.build(), std::move(reps), ultrafilter, false};
}

LosReport los_check(const UltraproductModel& up, const IndexedFamily& family, const Formula& sentence) {
  if (!is_sentence(sentence)) throw Error("not a sentence: " + print_formula(sentence));
  LosReport report;
  report.in_ultraproduct = eval_formula(up.model, sentence, {});
  for (std::size_t i = 0; i < family.models.size(); ++i) {
    bool holds = eval_formula(family.models[i], sentence, {});
    report.in_factors.push_back(holds);
    if (holds) report.truth_set |= Subset{1} << i;
  }
  report.truth_set_large = up.ultrafilter.contains(report.truth_set);
  report.transfer_holds = report.in_ultraproduct == report.truth_set_large;
  return report;
}

LosReport los_check(const IndexedFamily& family, const SetFamily& ultrafilter, const Formula& sentence,
                    const UltraproductOptions& options) {
  if (!is_sentence(sentence)) throw Error("not a sentence: " + print_formula(sentence));
  return los_check(ultraproduct(family, ultrafilter, options), family, sentence);
}

std::string to_string(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::Isomorphic:
      return "isomorphic";
    case IsoVerdict::NotIsomorphic:
      return "not-isomorphic";
    case IsoVerdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

}  // namespace modelglass
