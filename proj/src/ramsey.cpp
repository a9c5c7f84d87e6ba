#include "modelglass/ramsey.hpp"

#include <algorithm>
#include <cmath>

#include "modelglass/error.hpp"

namespace modelglass {

namespace {

class CliqueSearch {
 public:
  explicit CliqueSearch(const Graph& g) : g_(g) {}

  std::vector<Vertex> run() {
    Bitset all(g_.size(), true);
    std::vector<Vertex> r;
    expand(r, all);
    return best_;
  }

 private:
  // Greedy sequential coloring of p in index order; returns the vertices in
  // color order with their color numbers (1-based).
  void color(const Bitset& p, std::vector<Vertex>& order, std::vector<std::size_t>& colors) const {
    Bitset left = p;
    std::size_t c = 0;
    while (left.any()) {
      ++c;
      Bitset avail = left;
      for (std::size_t v = avail.find_first(); v != Bitset::npos; v = avail.find_next(v + 1)) {
        order.push_back(static_cast<Vertex>(v));
        colors.push_back(c);
        left.reset(v);
        avail -= g_.neighbors(static_cast<Vertex>(v));
      }
    }
  }

  void expand(std::vector<Vertex>& r, Bitset p) {
    if (p.none()) {
      if (r.size() > best_.size()) best_ = r;
      return;
    }
    std::vector<Vertex> order;
    std::vector<std::size_t> colors;
    color(p, order, colors);
    // Highest colors first; the bound only prunes on strict improvement, so
    // the first maximum found (in this fixed order) is kept.
    for (std::size_t idx = order.size(); idx-- > 0;) {
      if (r.size() + colors[idx] <= best_.size()) return;
      Vertex v = order[idx];
      r.push_back(v);
      expand(r, p & g_.neighbors(v));
      r.pop_back();
      p.reset(v);
    }
  }

  const Graph& g_;
  std::vector<Vertex> best_;
};

}  // namespace

std::vector<Vertex> greedy_clique(const Graph& g) {
  Bitset cand(g.size(), true);
  std::vector<Vertex> out;
  while (cand.any()) {
    std::size_t pick = Bitset::npos, score = 0;
    cand.for_each([&](std::size_t v) {
      std::size_t s = (g.neighbors(static_cast<Vertex>(v)) & cand).count();
      if (pick == Bitset::npos || s > score) {
        pick = v;
        score = s;
      }
    });
    out.push_back(static_cast<Vertex>(pick));
    cand &= g.neighbors(static_cast<Vertex>(pick));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> max_clique(const Graph& g, const HomogeneousOptions& options) {
  if (g.size() > options.exact_cap) {
    throw CapExceeded("exact clique search is capped at " + std::to_string(options.exact_cap) + " vertices");
  }
  auto c = CliqueSearch(g).run();
  std::sort(c.begin(), c.end());
  return c;
}

HomogeneousSets max_homogeneous(const Graph& g, const HomogeneousOptions& options) {
  HomogeneousSets out;
  const Graph co = g.complement();
  if (g.size() <= options.exact_cap) {
    out.clique = max_clique(g, options);
    out.independent = max_clique(co, options);
  } else {
    out.exact = false;
    out.clique = greedy_clique(g);
    out.independent = greedy_clique(co);
  }
  out.hom = std::max(out.clique.size(), out.independent.size());
  return out;
}

bool is_clique(const Graph& g, const std::vector<Vertex>& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= g.size()) return false;
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[i] == s[j] || !g.has_edge(s[i], s[j])) return false;
    }
  }
  return true;
}

bool is_independent(const Graph& g, const std::vector<Vertex>& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= g.size()) return false;
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[i] == s[j] || g.has_edge(s[i], s[j])) return false;
    }
  }
  return true;
}

Family parse_graph_family(const std::string& name) {
  if (name == "cliques") return Family::Cliques;
  if (name == "multipartite") return Family::Multipartite;
  if (name == "random") return Family::Random;
  throw Error("unknown graph family '" + name + "' (expected cliques, multipartite or random)");
}

std::string to_string(Family f) {
  switch (f) {
    case Family::Cliques:
      return "cliques";
    case Family::Multipartite:
      return "multipartite";
    case Family::Random:
      return "random";
  }
  return "cliques";
}

Graph family_instance(Family f, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error("family sizes must be positive");
  if (f == Family::Random) return generators::random_graph(n, 1, 2, seed);
  std::size_t m = 1;
  while (m * m < n) ++m;
  std::vector<std::size_t> sizes(m, n / m);
  for (std::size_t i = 0; i < n % m; ++i) ++sizes[i];
  Graph g = generators::clique_union(sizes);
  return f == Family::Cliques ? g : g.complement();
}

RamseyReport stable_ramsey_report(Family family, std::size_t k, const std::vector<std::size_t>& sizes,
                                  std::size_t seeds, std::uint64_t first_seed, const HomogeneousOptions& options) {
  if (k == 0) throw Error("half-graph bound must be positive");
  RamseyReport report;
  report.family = family;
  report.k = k;
  for (std::size_t n : sizes) {
    for (std::size_t s = 0; s < std::max<std::size_t>(seeds, 1); ++s) {
      RamseyRow row;
      row.n = n;
      row.seed = first_seed + s;
      Graph g = family_instance(family, n, row.seed);
      if (auto w = find_half_graph(g, k)) {
        row.stable = false;
        row.rejected_by = *w;
        report.log.push_back(to_string(family) + " n=" + std::to_string(n) + " seed=" + std::to_string(row.seed) +
                             ": has a half-graph of height " + std::to_string(k) + ", skipped");
        report.rows.push_back(std::move(row));
        continue;
      }
      auto h = max_homogeneous(g, options);
      row.clique = h.clique.size();
      row.independent = h.independent.size();
      row.hom = h.hom;
      row.exact = h.exact;
      row.exponent = n > 1 ? std::log(static_cast<double>(h.hom)) / std::log(static_cast<double>(n)) : 0.0;
      row.at_least_sqrt = h.hom * h.hom >= n;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace modelglass
