#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "modelglass/bitset.hpp"
#include "modelglass/model.hpp"

namespace modelglass {

using Vertex = std::uint32_t;

/// Simple undirected graph: symmetric, irreflexive, neighbors as bitsets.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  std::size_t size() const noexcept { return adj_.size(); }
  void add_edge(Vertex u, Vertex v);
  void remove_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const { return adj_[u].test(v); }
  const Bitset& neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].count(); }
  std::size_t edge_count() const;

  Graph complement() const;
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<Bitset> adj_;
};

/// One `u v` pair per line, 0-based; `#` comments. The vertex count is one
/// past the largest endpoint, or `vertices` if that is larger.
Graph load_edge_list(std::string_view text, std::size_t vertices = 0);
std::string edge_list_text(const Graph& g);

/// Graph from a model whose signature has a binary relation `E`; throws if
/// E is not symmetric and irreflexive.
Graph graph_from_model(const Model& m, std::string_view relation = "E");
Model graph_model(const Graph& g);

/// Edge-list text or model text (starting with `model`), detected by content.
Graph load_graph(std::string_view text);

namespace generators {

Graph empty(std::size_t n);
Graph complete(std::size_t n);
Graph cycle(std::size_t n);
Graph complete_bipartite(std::size_t m, std::size_t n);
/// a_i = i, b_j = k + j; edge a_i b_j iff i < j.
Graph half_graph(std::size_t k);
/// Disjoint cliques of the given sizes, numbered consecutively.
Graph clique_union(const std::vector<std::size_t>& sizes);
/// Complement of clique_union(sizes).
Graph complete_multipartite(const std::vector<std::size_t>& sizes);
/// G(n, p) with p = num/den, from a seeded 64-bit Mersenne twister.
Graph random_graph(std::size_t n, std::uint64_t num, std::uint64_t den, std::uint64_t seed);
/// Splits n into `parts` sizes, each at least `min_part`, chosen by `seed`.
std::vector<std::size_t> random_part_sizes(std::size_t n, std::size_t parts, std::size_t min_part,
                                           std::uint64_t seed);

}  // namespace generators

}  // namespace modelglass
