#include "modelglass/definable.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "modelglass/error.hpp"

namespace modelglass {

Assignment AtomPartition::parameter_assignment() const {
  Assignment a;
  for (std::size_t i = 0; i < parameters.size(); ++i) a[parameter_names[i]] = parameters[i];
  return a;
}

std::vector<std::string> parameter_names(const Signature& sig, std::size_t count) {
  std::vector<std::string> names;
  for (std::size_t i = 1; names.size() < count; ++i) {
    std::string name = "p" + std::to_string(i);
    while (sig.declares(name)) name += '\'';
    names.push_back(std::move(name));
  }
  return names;
}

namespace {

struct TermValues {
  Term term;
  std::vector<Element> values;
};

class Refiner {
 public:
  Refiner(const Model& m, const std::vector<Element>& params, const std::vector<std::string>& pnames,
          const AlgebraOptions& options)
      : m_(m), n_(m.size()), params_(params), pnames_(pnames), options_(options) {}

  std::vector<Atom> level(std::size_t k, std::size_t rank, bool& complete, std::vector<std::string>& notes) {
    const std::size_t total = checked_power(n_, k);
    if (total > options_.max_table) {
      throw CapExceeded("tuple space of " + std::to_string(total) + " exceeds the table cap");
    }
    Partition part(total);

    auto terms = term_closure(k, total, complete, notes);
    atomic_generators(terms, part, complete, notes);

    if (rank > 0) {
      if (total > options_.max_table / std::max<std::size_t>(n_, 1)) {
        complete = false;
        notes.push_back("rank " + std::to_string(rank) + " at arity " + std::to_string(k) +
                        ": projections skipped, tuple space over the table cap");
      } else {
        auto below = level(k + 1, rank - 1, complete, notes);
        const std::string bound = var(k + 1);
        for (const auto& atom : below) {
          if (!count_formula(complete, notes)) break;
          Bitset projected(total);
          atom.tuples.for_each([&](std::size_t idx) { projected.set(idx / n_); });
          part.refine(projected, Formula::exists(bound, atom.witness));
        }
      }
    }
    return part.atoms();
  }

 private:
  struct Partition {
    explicit Partition(std::size_t total) : cls(total, 0), literals(1) {}

    void refine(const Bitset& gen, const Formula& f) {
      const std::size_t classes = literals.size();
      std::vector<char> in(classes, 0), out(classes, 0);
      for (std::size_t i = 0; i < cls.size(); ++i) (gen.test(i) ? in : out)[cls[i]] = 1;
      std::vector<std::uint32_t> fresh(classes, 0);
      for (std::size_t c = 0; c < classes; ++c) {
        if (!in[c] || !out[c]) continue;
        fresh[c] = static_cast<std::uint32_t>(literals.size());
        literals.push_back(literals[c]);
        literals.back().push_back(f);
        literals[c].push_back(Formula::negation(f));
      }
      for (std::size_t i = 0; i < cls.size(); ++i) {
        if (gen.test(i) && fresh[cls[i]] != 0) cls[i] = fresh[cls[i]];
      }
    }

    std::vector<Atom> atoms() const {
      std::vector<Atom> out;
      for (const auto& lits : literals) {
        out.push_back({Bitset(cls.size()),
                       lits.empty() ? Formula::equals(Term::variable("x1"), Term::variable("x1")) : conjoin(lits)});
      }
      for (std::size_t i = 0; i < cls.size(); ++i) out[cls[i]].tuples.set(i);
      std::sort(out.begin(), out.end(),
                [](const Atom& a, const Atom& b) { return a.tuples.find_first() < b.tuples.find_first(); });
      return out;
    }

    std::vector<std::uint32_t> cls;
    std::vector<std::vector<Formula>> literals;
  };

  static std::string var(std::size_t i) { return "x" + std::to_string(i); }

  bool count_formula(bool& complete, std::vector<std::string>& notes) {
    if (formulas_ >= options_.max_formulas) {
      if (complete || !cap_noted_) notes.push_back("formula cap of " + std::to_string(options_.max_formulas) + " reached");
      cap_noted_ = true;
      complete = false;
      return false;
    }
    ++formulas_;
    return true;
  }

  std::vector<TermValues> term_closure(std::size_t k, std::size_t total, bool& complete,
                                       std::vector<std::string>& notes) {
    std::vector<TermValues> terms;
    std::set<std::vector<Element>> seen;
    auto add = [&](Term t, std::vector<Element> values) {
      if (seen.insert(values).second) terms.push_back({std::move(t), std::move(values)});
    };
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Element> values(total);
      std::size_t stride = checked_power(n_, k - 1 - i);
      for (std::size_t idx = 0; idx < total; ++idx) values[idx] = static_cast<Element>((idx / stride) % n_);
      add(Term::variable(var(i + 1)), std::move(values));
    }
    for (std::size_t i = 0; i < params_.size(); ++i) {
      add(Term::variable(pnames_[i]), std::vector<Element>(total, params_[i]));
    }
    const auto& sig = m_.signature();
    for (std::size_t c = 0; c < sig.constants().size(); ++c) {
      add(Term::constant(sig.constants()[c]), std::vector<Element>(total, m_.constant(c)));
    }

    // Breadth-first rounds; each new term uses at least one term from the
    // previous round so no combination is tried twice.
    std::size_t round_start = 0;
    bool capped = false;
    while (!capped) {
      const std::size_t round_end = terms.size();
      for (std::size_t f = 0; f < sig.functions().size() && !capped; ++f) {
        const std::size_t arity = sig.functions()[f].arity;
        std::vector<std::size_t> pick(arity, 0);
        while (!capped) {
          bool fresh_arg = arity == 0 ? round_start == 0 : false;
          for (std::size_t a : pick) fresh_arg = fresh_arg || a >= round_start;
          if (fresh_arg) {
            std::vector<Element> values(total);
            std::vector<Element> args(arity);
            for (std::size_t idx = 0; idx < total; ++idx) {
              for (std::size_t a = 0; a < arity; ++a) args[a] = terms[pick[a]].values[idx];
              values[idx] = m_.apply(f, args);
            }
            if (!seen.contains(values)) {
              if (terms.size() >= options_.max_terms) {
                capped = true;
                complete = false;
                notes.push_back("term cap of " + std::to_string(options_.max_terms) + " reached at arity " +
                                std::to_string(k));
                break;
              }
              std::vector<Term> args_terms;
              for (std::size_t a : pick) args_terms.push_back(terms[a].term);
              add(Term::apply(sig.functions()[f].name, std::move(args_terms),
                              sig.functions()[f].fixity == Fixity::Infix),
                  std::move(values));
            }
          }
          std::size_t i = arity;
          while (i-- > 0) {
            if (++pick[i] < round_end) break;
            pick[i] = 0;
          }
          if (i == static_cast<std::size_t>(-1)) break;
        }
      }
      if (terms.size() == round_end) break;
      round_start = round_end;
    }
    return terms;
  }

  void atomic_generators(const std::vector<TermValues>& terms, Partition& part, bool& complete,
                         std::vector<std::string>& notes) {
    const auto& sig = m_.signature();
    const std::size_t total = part.cls.size();
    std::set<Bitset> tried;
    for (std::size_t r = 0; r < sig.relations().size(); ++r) {
      const std::size_t arity = sig.relations()[r].arity;
      const bool infix = sig.relations()[r].fixity == Fixity::Infix;
      std::vector<std::size_t> pick(arity, 0);
      while (true) {
        // Equality is symmetric and reflexive: only strictly ordered pairs.
        bool skip = r == 0 && pick[0] >= pick[1];
        if (!skip) {
          if (!count_formula(complete, notes)) return;
          Bitset gen(total);
          std::vector<Element> args(arity);
          for (std::size_t idx = 0; idx < total; ++idx) {
            for (std::size_t a = 0; a < arity; ++a) args[a] = terms[pick[a]].values[idx];
            bool holds = r == 0 ? args[0] == args[1] : m_.holds(r, args);
            if (holds) gen.set(idx);
          }
          if (gen.any() && !gen.all() && tried.insert(gen).second) {
            std::vector<Term> ts;
            for (std::size_t a : pick) ts.push_back(terms[a].term);
            part.refine(gen, Formula::atomic(sig.relations()[r].name, std::move(ts), infix));
          }
        }
        std::size_t i = arity;
        while (i-- > 0) {
          if (++pick[i] < terms.size()) break;
          pick[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
      }
    }
  }

  const Model& m_;
  std::size_t n_;
  const std::vector<Element>& params_;
  const std::vector<std::string>& pnames_;
  AlgebraOptions options_;
  std::size_t formulas_ = 0;
  bool cap_noted_ = false;
};

}  // namespace

AtomPartition atom_partition(const Model& m, const std::vector<Element>& params, std::size_t rank_bound,
                             std::size_t k, const AlgebraOptions& options) {
  if (k == 0) throw Error("definable sets need at least one free variable");
  for (Element p : params) {
    if (p >= m.size()) throw Error("parameter " + std::to_string(p) + " is outside the domain");
  }
  AtomPartition out;
  out.domain = m.size();
  out.arity = k;
  out.rank_bound = rank_bound;
  for (std::size_t i = 1; i <= k; ++i) out.variables.push_back("x" + std::to_string(i));
  out.parameter_names = parameter_names(m.signature(), params.size());
  out.parameters = params;
  Refiner refiner(m, params, out.parameter_names, options);
  out.atoms = refiner.level(k, rank_bound, out.complete, out.notes);
  return out;
}

DefinableAlgebra definable_algebra(const Model& m, const std::vector<Element>& params, std::size_t rank_bound,
                                   std::size_t k, const AlgebraOptions& options) {
  DefinableAlgebra out;
  out.partition = atom_partition(m, params, rank_bound, k, options);
  out.complete = out.partition.complete;
  const auto& atoms = out.partition.atoms;
  const std::size_t total = checked_power(m.size(), k);

  std::size_t family = options.max_family;
  if (atoms.size() < 63 && (std::size_t{1} << atoms.size()) <= options.max_family) {
    family = std::size_t{1} << atoms.size();
  } else {
    out.complete = false;
    out.partition.notes.push_back(std::to_string(atoms.size()) + " atoms: family truncated to " +
                                  std::to_string(options.max_family) + " unions");
  }
  const Term x1 = Term::variable("x1");
  for (std::size_t mask = 0; mask < family; ++mask) {
    DefinableMember member{Bitset(total), Formula::equals(x1, x1)};
    std::vector<Formula> parts;
    for (std::size_t a = 0; a < atoms.size() && a < 63; ++a) {
      if (mask >> a & 1U) {
        member.extension |= atoms[a].tuples;
        parts.push_back(atoms[a].witness);
      }
    }
    if (parts.empty()) {
      member.witness = Formula::negation(Formula::equals(x1, x1));
    } else if (parts.size() < atoms.size()) {
      member.witness = disjoin(parts);
    }
    out.members.push_back(std::move(member));
  }
  return out;
}

bool is_boolean_algebra(const std::vector<Bitset>& family, std::size_t base_size) {
  std::set<Bitset> members;
  for (const auto& s : family) {
    if (s.size() != base_size) return false;
    members.insert(s);
  }
  if (!members.contains(Bitset(base_size)) || !members.contains(Bitset(base_size, true))) return false;
  for (const auto& a : members) {
    if (!members.contains(~a)) return false;
    for (const auto& b : members) {
      if (!members.contains(a & b)) return false;
    }
  }
  return true;
}

}  // namespace modelglass
