#include "modelglass/half_graph.hpp"

#include "modelglass/error.hpp"
#include "modelglass/eval.hpp"

namespace modelglass {

namespace {

class Ladder {
 public:
  Ladder(const std::vector<Bitset>& rows, std::size_t k) : rows_(rows), n_(rows.size()), k_(k), cols_(n_, Bitset(n_)) {
    for (std::size_t u = 0; u < n_; ++u) rows_[u].for_each([&](std::size_t v) { cols_[v].set(u); });
  }

  std::optional<HalfGraphWitness> run() {
    if (k_ == 0 || 2 * k_ > n_) return std::nullopt;
    Bitset used(n_);
    Bitset common(n_, true);  // adjacent to every chosen a
    Bitset avoid(n_, true);   // not reached from any chosen b
    if (choose_a(0, used, common, avoid)) return HalfGraphWitness{a_, b_};
    return std::nullopt;
  }

 private:
  // a_i must miss b_1..b_{i-1}; afterwards b_{i+1}..b_k must all come from
  // the common out-neighborhood.
  bool choose_a(std::size_t i, Bitset& used, const Bitset& common, const Bitset& avoid) {
    Bitset cand = avoid - used;
    for (std::size_t a = cand.find_first(); a != Bitset::npos; a = cand.find_next(a + 1)) {
      Bitset next_common = common & rows_[a];
      next_common.reset(a);
      Bitset free_common = next_common - used;
      if (free_common.count() < k_ - i - 1) continue;
      // b_i comes from the old common set but outside a's row.
      Bitset b_cand = (common - rows_[a]) - used;
      b_cand.reset(a);
      if (b_cand.none()) continue;
      used.set(a);
      a_.push_back(static_cast<Element>(a));
      if (choose_b(i, used, next_common, avoid, b_cand)) return true;
      a_.pop_back();
      used.reset(a);
    }
    return false;
  }

  bool choose_b(std::size_t i, Bitset& used, const Bitset& common, const Bitset& avoid, const Bitset& cand) {
    for (std::size_t b = cand.find_first(); b != Bitset::npos; b = cand.find_next(b + 1)) {
      if (i + 1 == k_) {
        b_.push_back(static_cast<Element>(b));
        return true;
      }
      used.set(b);
      Bitset next_avoid = avoid - cols_[b];
      if ((next_avoid - used).count() >= k_ - i - 1 && (common - used).count() >= k_ - i - 1) {
        b_.push_back(static_cast<Element>(b));
        if (choose_a(i + 1, used, common, next_avoid)) return true;
        b_.pop_back();
      }
      used.reset(b);
    }
    return false;
  }

  const std::vector<Bitset>& rows_;
  std::size_t n_;
  std::size_t k_;
  std::vector<Bitset> cols_;
  std::vector<Element> a_, b_;
};

bool pattern_holds(std::size_t n, const HalfGraphWitness& w, auto&& related) {
  const std::size_t k = w.a.size();
  if (w.b.size() != k) return false;
  Bitset seen(n);
  for (const auto* side : {&w.a, &w.b}) {
    for (Element e : *side) {
      if (e >= n || seen.test(e)) return false;
      seen.set(e);
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (related(w.a[i], w.b[j]) != (i < j)) return false;
    }
  }
  return true;
}

}  // namespace

std::optional<HalfGraphWitness> find_ladder(const std::vector<Bitset>& rows, std::size_t k) {
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw Error("relation rows must be square");
  }
  return Ladder(rows, k).run();
}

std::optional<HalfGraphWitness> find_half_graph(const Graph& g, std::size_t k) {
  if (k == 0) throw Error("half-graph height must be positive");
  std::vector<Bitset> rows;
  for (Vertex v = 0; v < g.size(); ++v) rows.push_back(g.neighbors(v));
  return find_ladder(rows, k);
}

bool is_half_graph_witness(const Graph& g, const HalfGraphWitness& w) {
  return pattern_holds(g.size(), w, [&](Element a, Element b) { return g.has_edge(a, b); });
}

namespace {

std::vector<Bitset> formula_rows(const Model& m, const Formula& phi, const std::string& x, const std::string& y,
                                 const Assignment& parameters) {
  if (x == y) throw Error("the x and y blocks must be different variables");
  VariableSet free = free_variables(phi);
  free.erase(x);
  free.erase(y);
  for (const auto& [name, value] : parameters) free.erase(name);
  if (!free.empty()) throw Error("variable '" + *free.begin() + "' is in neither block nor a parameter");
  auto sol = solution_set(m, phi, {x, y}, parameters);
  const std::size_t n = m.size();
  std::vector<Bitset> rows(n, Bitset(n));
  sol.extension.members().for_each([&](std::size_t idx) { rows[idx / n].set(idx % n); });
  return rows;
}

}  // namespace

std::optional<HalfGraphWitness> order_property(const Model& m, const Formula& phi, const std::string& x,
                                               const std::string& y, std::size_t k, const Assignment& parameters) {
  if (k == 0) throw Error("order-property height must be positive");
  return find_ladder(formula_rows(m, phi, x, y, parameters), k);
}

bool is_order_witness(const Model& m, const Formula& phi, const std::string& x, const std::string& y,
                      const HalfGraphWitness& w, const Assignment& parameters) {
  return pattern_holds(m.size(), w, [&](Element a, Element b) {
    Assignment as = parameters;
    as[x] = a;
    as[y] = b;
    return reference::eval_formula(m, phi, as);
  });
}

}  // namespace modelglass
