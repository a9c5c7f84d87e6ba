#include <algorithm>
#include <set>

#include "modelglass/error.hpp"
#include "modelglass/eval.hpp"
#include "modelglass/ultraproduct.hpp"

namespace modelglass {

namespace {

template <typename F>
void for_tuples(std::size_t n, std::size_t arity, F&& f) {
  std::vector<Element> t(arity, 0);
  const std::size_t total = checked_power(n, arity);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = arity; i-- > 0;) {
      t[i] = static_cast<Element>(rest % n);
      rest /= n;
    }
    f(t);
  }
}

// Isomorphism-invariant counts per element: occurrences at each position of
// each relation, preimage sizes under each function, constant membership.
std::vector<std::vector<std::size_t>> invariants(const Model& m) {
  const auto& sig = m.signature();
  const std::size_t n = m.size();
  std::vector<std::vector<std::size_t>> inv(n);
  for (std::size_t r = 1; r < sig.relations().size(); ++r) {
    const std::size_t arity = sig.relations()[r].arity;
    std::vector<std::vector<std::size_t>> at(n, std::vector<std::size_t>(arity + 1, 0));
    for_tuples(n, arity, [&](const std::vector<Element>& t) {
      if (!m.holds(r, t)) return;
      bool diagonal = true;
      for (std::size_t a = 0; a < arity; ++a) {
        ++at[t[a]][a];
        diagonal = diagonal && t[a] == t[0];
      }
      if (diagonal && arity > 0) ++at[t[0]][arity];
    });
    for (std::size_t e = 0; e < n; ++e) inv[e].insert(inv[e].end(), at[e].begin(), at[e].end());
  }
  for (std::size_t f = 0; f < sig.functions().size(); ++f) {
    std::vector<std::size_t> pre(n, 0);
    for_tuples(n, sig.functions()[f].arity, [&](const std::vector<Element>& t) { ++pre[m.apply(f, t)]; });
    for (std::size_t e = 0; e < n; ++e) inv[e].push_back(pre[e]);
  }
  for (std::size_t c = 0; c < sig.constants().size(); ++c) {
    for (std::size_t e = 0; e < n; ++e) inv[e].push_back(m.constant(c) == e ? 1 : 0);
  }
  return inv;
}

class IsoSearch {
 public:
  IsoSearch(const Model& a, const Model& b, const IsoOptions& options)
      : a_(a), b_(b), n_(a.size()), options_(options), inv_a_(invariants(a)), inv_b_(invariants(b)) {}

  IsoResult run() {
    IsoResult out;
    auto sorted_a = inv_a_, sorted_b = inv_b_;
    std::sort(sorted_a.begin(), sorted_a.end());
    std::sort(sorted_b.begin(), sorted_b.end());
    if (sorted_a != sorted_b) {
      out.verdict = IsoVerdict::NotIsomorphic;
      out.reason = "element invariants differ";
      return out;
    }
    map_.assign(n_, kUnset);
    inverse_.assign(n_, kUnset);
    // Rare invariants first: fewer candidates near the root.
    order_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) order_[i] = static_cast<Element>(i);
    std::stable_sort(order_.begin(), order_.end(), [&](Element x, Element y) {
      return std::count(inv_a_.begin(), inv_a_.end(), inv_a_[x]) < std::count(inv_a_.begin(), inv_a_.end(), inv_a_[y]);
    });
    bool found = extend(0);
    out.nodes = nodes_;
    if (found) {
      out.verdict = IsoVerdict::Isomorphic;
      out.map = map_;
      out.reason = "isomorphism found";
    } else if (nodes_ >= options_.max_nodes) {
      out.verdict = IsoVerdict::Inconclusive;
      out.reason = "search cap of " + std::to_string(options_.max_nodes) + " nodes reached";
    } else {
      out.verdict = IsoVerdict::NotIsomorphic;
      out.reason = "exhaustive search found no isomorphism";
    }
    return out;
  }

 private:
  static constexpr Element kUnset = static_cast<Element>(-1);

  bool extend(std::size_t depth) {
    if (depth == n_) return is_isomorphism(a_, b_, map_);
    const Element x = order_[depth];
    for (Element y = 0; y < n_; ++y) {
      if (inverse_[y] != kUnset || inv_a_[x] != inv_b_[y]) continue;
      if (++nodes_ > options_.max_nodes) return false;
      map_[x] = y;
      inverse_[y] = x;
      if (consistent(x) && extend(depth + 1)) return true;
      map_[x] = kUnset;
      inverse_[y] = kUnset;
      if (nodes_ > options_.max_nodes) return false;
    }
    return false;
  }

  // Every relation tuple and function value among assigned elements that
  // involves x must agree.
  bool consistent(Element x) const {
    const auto& sig = a_.signature();
    std::vector<Element> assigned;
    for (Element e = 0; e < n_; ++e) {
      if (map_[e] != kUnset) assigned.push_back(e);
    }
    std::vector<Element> t, image;
    for (std::size_t r = 1; r < sig.relations().size(); ++r) {
      if (!check_tuples(assigned, x, sig.relations()[r].arity, t, image, [&] {
            return a_.holds(r, t) == b_.holds(r, image);
          })) {
        return false;
      }
    }
    for (std::size_t f = 0; f < sig.functions().size(); ++f) {
      if (!check_tuples(assigned, x, sig.functions()[f].arity, t, image, [&] {
            Element v = a_.apply(f, t);
            Element w = b_.apply(f, image);
            if (map_[v] != kUnset) return map_[v] == w;
            return inverse_[w] == kUnset;
          })) {
        return false;
      }
    }
    for (std::size_t c = 0; c < sig.constants().size(); ++c) {
      Element v = a_.constant(c);
      if (map_[v] != kUnset && map_[v] != b_.constant(c)) return false;
      if (map_[v] == kUnset && inverse_[b_.constant(c)] != kUnset) return false;
    }
    return true;
  }

  template <typename Check>
  bool check_tuples(const std::vector<Element>& assigned, Element x, std::size_t arity, std::vector<Element>& t,
                    std::vector<Element>& image, Check&& check) const {
    if (arity == 0) return true;
    const std::size_t k = assigned.size();
    std::vector<std::size_t> pick(arity, 0);
    t.assign(arity, 0);
    image.assign(arity, 0);
    while (true) {
      bool has_x = false;
      for (std::size_t i = 0; i < arity; ++i) {
        t[i] = assigned[pick[i]];
        image[i] = map_[t[i]];
        has_x = has_x || t[i] == x;
      }
      if (has_x && !check()) return false;
      std::size_t i = arity;
      while (i-- > 0) {
        if (++pick[i] < k) break;
        pick[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) return true;
    }
  }

  const Model& a_;
  const Model& b_;
  std::size_t n_;
  IsoOptions options_;
  std::vector<std::vector<std::size_t>> inv_a_, inv_b_;
  std::vector<Element> order_, map_, inverse_;
  std::size_t nodes_ = 0;
};

struct Literal {
  Formula formula;
  bool positive;
};

// Atomic facts about a tuple, over variables only: equalities, relation
// atoms and function graphs, each taken positively or negatively.
std::vector<Literal> diagram(const Model& m, const std::vector<Element>& tuple, const std::vector<std::string>& names) {
  const auto& sig = m.signature();
  const std::size_t k = tuple.size();
  std::vector<Literal> out;
  auto add = [&](Formula f, bool holds) { out.push_back({holds ? f : Formula::negation(f), holds}); };
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      add(Formula::equals(Term::variable(names[i]), Term::variable(names[j])), tuple[i] == tuple[j]);
    }
  }
  for (std::size_t r = 1; r < sig.relations().size(); ++r) {
    const auto& decl = sig.relations()[r];
    for_tuples(k, decl.arity, [&](const std::vector<Element>& pick) {
      std::vector<Term> args;
      std::vector<Element> values;
      for (Element p : pick) {
        args.push_back(Term::variable(names[p]));
        values.push_back(tuple[p]);
      }
      add(Formula::atomic(decl.name, std::move(args), decl.fixity == Fixity::Infix), m.holds(r, values));
    });
  }
  for (std::size_t f = 0; f < sig.functions().size(); ++f) {
    const auto& decl = sig.functions()[f];
    for_tuples(k, decl.arity, [&](const std::vector<Element>& pick) {
      std::vector<Term> args;
      std::vector<Element> values;
      for (Element p : pick) {
        args.push_back(Term::variable(names[p]));
        values.push_back(tuple[p]);
      }
      Term applied = Term::apply(decl.name, args, decl.fixity == Fixity::Infix);
      Element v = m.apply(f, values);
      for (std::size_t j = 0; j < k; ++j) add(Formula::equals(applied, Term::variable(names[j])), v == tuple[j]);
    });
  }
  return out;
}

Formula close_existentially(const std::vector<Literal>& lits, const std::vector<std::string>& names) {
  std::vector<Formula> parts;
  for (const auto& l : lits) parts.push_back(l.formula);
  Formula body = parts.empty() ? Formula::equals(Term::variable(names[0]), Term::variable(names[0])) : conjoin(parts);
  for (std::size_t i = names.size(); i-- > 0;) body = Formula::exists(names[i], body);
  return body;
}

// An existential sentence true of some tuple of `holds_in` and false in
// `fails_in`, shortened by dropping literals that are not needed: negative
// ones first, then positive ones from the back.
std::optional<std::vector<Literal>> separate(const Model& holds_in, const Model& fails_in, std::size_t m,
                                             const std::vector<std::string>& names, std::set<std::string>& tried) {
  std::optional<std::vector<Literal>> best;
  for_tuples(holds_in.size(), m, [&](const std::vector<Element>& tuple) {
    auto lits = diagram(holds_in, tuple, names);
    Formula s = close_existentially(lits, names);
    if (!tried.insert(print_formula(s)).second) return;
    if (eval_formula(fails_in, s, {})) return;
    for (bool positive : {false, true}) {
      for (std::size_t i = lits.size(); i-- > 0;) {
        if (lits[i].positive != positive || lits.size() == 1) continue;
        auto shorter = lits;
        shorter.erase(shorter.begin() + static_cast<std::ptrdiff_t>(i));
        if (!eval_formula(fails_in, close_existentially(shorter, names), {})) lits = std::move(shorter);
      }
    }
    auto negatives = [](const std::vector<Literal>& ls) {
      return std::count_if(ls.begin(), ls.end(), [](const Literal& l) { return !l.positive; });
    };
    if (!best || lits.size() < best->size() || (lits.size() == best->size() && negatives(lits) < negatives(*best))) {
      best = std::move(lits);
    }
  });
  return best;
}

Formula cardinality_sentence(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      parts.push_back(Formula::negation(Formula::equals(Term::variable(names[i]), Term::variable(names[j]))));
    }
  }
  Formula body = parts.empty() ? Formula::equals(Term::variable(names[0]), Term::variable(names[0])) : conjoin(parts);
  for (std::size_t i = n; i-- > 0;) body = Formula::exists(names[i], body);
  return body;
}

void find_distinguishing(const Model& first, const Model& second, const IsoOptions& options, IsoResult& out) {
  for (std::size_t m = 1; m <= options.max_witness_vars; ++m) {
    std::vector<std::string> names;
    if (m <= 3) {
      names.assign({"x", "y", "z"});
      names.resize(m);
    } else {
      for (std::size_t i = 1; i <= m; ++i) names.push_back("x" + std::to_string(i));
    }
    std::set<std::string> tried_first, tried_second;
    auto from_first = separate(first, second, m, names, tried_first);
    auto from_second = separate(second, first, m, names, tried_second);
    if (!from_first && !from_second) continue;
    bool use_first = from_first && (!from_second || from_first->size() <= from_second->size());
    out.distinguishing = close_existentially(use_first ? *from_first : *from_second, names);
    out.distinguishing_holds_in_first = use_first;
    return;
  }
  if (first.size() != second.size()) {
    out.distinguishing = cardinality_sentence(std::max(first.size(), second.size()));
    out.distinguishing_holds_in_first = first.size() > second.size();
  }
}

}  // namespace

bool is_isomorphism(const Model& first, const Model& second, const std::vector<Element>& map) {
  if (!(first.signature() == second.signature())) return false;
  if (first.size() != second.size() || map.size() != first.size()) return false;
  std::vector<bool> hit(second.size(), false);
  for (Element e : map) {
    if (e >= second.size() || hit[e]) return false;
    hit[e] = true;
  }
  const auto& sig = first.signature();
  bool ok = true;
  std::vector<Element> image;
  for (std::size_t r = 1; r < sig.relations().size() && ok; ++r) {
    for_tuples(first.size(), sig.relations()[r].arity, [&](const std::vector<Element>& t) {
      image.resize(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) image[i] = map[t[i]];
      ok = ok && first.holds(r, t) == second.holds(r, image);
    });
  }
  for (std::size_t f = 0; f < sig.functions().size() && ok; ++f) {
    for_tuples(first.size(), sig.functions()[f].arity, [&](const std::vector<Element>& t) {
      image.resize(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) image[i] = map[t[i]];
      ok = ok && map[first.apply(f, t)] == second.apply(f, image);
    });
  }
  for (std::size_t c = 0; c < sig.constants().size() && ok; ++c) ok = map[first.constant(c)] == second.constant(c);
  return ok;
}

IsoResult iso_check(const Model& first, const Model& second, const IsoOptions& options) {
  if (!(first.signature() == second.signature())) throw Error("models have different signatures");
  IsoResult out;
  if (first.size() != second.size()) {
    out.verdict = IsoVerdict::NotIsomorphic;
    out.reason = "domains have sizes " + std::to_string(first.size()) + " and " + std::to_string(second.size());
  } else {
    out = IsoSearch(first, second, options).run();
  }
  if (out.verdict == IsoVerdict::NotIsomorphic) find_distinguishing(first, second, options, out);
  return out;
}

}  // namespace modelglass
