#include "modelglass/graph.hpp"

#include <cctype>
#include <charconv>
#include <random>

#include "modelglass/error.hpp"

namespace modelglass {

Graph::Graph(std::size_t n) : adj_(n, Bitset(n)) {}

void Graph::add_edge(Vertex u, Vertex v) {
  if (u >= size() || v >= size()) throw Error("edge endpoint out of range");
  if (u == v) throw Error("loops are not allowed (vertex " + std::to_string(u) + ")");
  adj_[u].set(v);
  adj_[v].set(u);
}

void Graph::remove_edge(Vertex u, Vertex v) {
  adj_[u].reset(v);
  adj_[v].reset(u);
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : adj_) twice += row.count();
  return twice / 2;
}

Graph Graph::complement() const {
  Graph g(size());
  for (Vertex v = 0; v < size(); ++v) {
    g.adj_[v] = ~adj_[v];
    g.adj_[v].reset(v);
  }
  return g;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < size(); ++u) {
    for (std::size_t v = adj_[u].find_next(u + 1); v != Bitset::npos; v = adj_[u].find_next(v + 1)) {
      out.emplace_back(u, static_cast<Vertex>(v));
    }
  }
  return out;
}

Graph load_edge_list(std::string_view text, std::size_t vertices) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::size_t n = vertices;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    std::size_t end = text.find('\n');
    std::string_view line = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::size_t> numbers;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r' || line[pos] == ',')) {
        ++pos;
      }
      if (pos >= line.size()) break;
      std::size_t value = 0;
      auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), value);
      if (ec != std::errc{}) throw ParseError("expected a vertex number", line_no, pos + 1);
      pos = static_cast<std::size_t>(ptr - line.data());
      numbers.push_back(value);
    }
    if (numbers.empty()) continue;
    if (numbers.size() != 2) throw ParseError("expected exactly two vertices", line_no, 1);
    if (numbers[0] == numbers[1]) throw ParseError("loop at vertex " + std::to_string(numbers[0]), line_no, 1);
    if (std::max(numbers[0], numbers[1]) >= (std::size_t{1} << 24)) throw ParseError("vertex number too large", line_no, 1);
    edges.emplace_back(static_cast<Vertex>(numbers[0]), static_cast<Vertex>(numbers[1]));
    n = std::max(n, std::max(numbers[0], numbers[1]) + 1);
  }
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

std::string edge_list_text(const Graph& g) {
  std::string out;
  for (auto [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

Graph graph_from_model(const Model& m, std::string_view relation) {
  auto r = m.signature().find_relation(relation);
  if (!r || m.signature().relations()[*r].arity != 2) {
    throw Error("model has no binary relation '" + std::string(relation) + "'");
  }
  Graph g(m.size());
  for (Element u = 0; u < m.size(); ++u) {
    for (Element v = 0; v < m.size(); ++v) {
      const Element t[2] = {u, v};
      const Element s[2] = {v, u};
      bool uv = m.holds(*r, t);
      if (uv && u == v) throw Error("relation has a loop at " + std::to_string(u));
      if (uv != m.holds(*r, s)) throw Error("relation is not symmetric");
      if (uv && u < v) g.add_edge(u, v);
    }
  }
  return g;
}

Model graph_model(const Graph& g) {
  ModelBuilder b(graph_signature(), g.size());
  for (auto [u, v] : g.edges()) {
    b.add_tuple("E", {u, v});
    b.add_tuple("E", {v, u});
  }
  return b.build();
}

Graph load_graph(std::string_view text) {
  std::size_t pos = 0;
  while (true) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos < text.size() && text[pos] == '#') {
      pos = text.find('\n', pos);
      if (pos == std::string_view::npos) break;
      continue;
    }
    break;
  }
  if (pos != std::string_view::npos && text.substr(pos, 5) == "model") {
    return graph_from_model(load_model(text, graph_signature()));
  }
  return load_edge_list(text);
}

namespace generators {

Graph empty(std::size_t n) { return Graph(n); }

Graph complete(std::size_t n) { return Graph(n).complement(); }

Graph cycle(std::size_t n) {
  if (n < 3) throw Error("a cycle needs at least 3 vertices");
  Graph g(n);
  for (Vertex v = 0; v < n; ++v) g.add_edge(v, static_cast<Vertex>((v + 1) % n));
  return g;
}

Graph complete_bipartite(std::size_t m, std::size_t n) {
  Graph g(m + n);
  for (Vertex u = 0; u < m; ++u) {
    for (Vertex v = 0; v < n; ++v) g.add_edge(u, static_cast<Vertex>(m + v));
  }
  return g;
}

Graph half_graph(std::size_t k) {
  Graph g(2 * k);
  for (Vertex i = 0; i < k; ++i) {
    for (Vertex j = i + 1; j < k; ++j) g.add_edge(i, static_cast<Vertex>(k + j));
  }
  return g;
}

Graph clique_union(const std::vector<std::size_t>& sizes) {
  std::size_t n = 0;
  for (std::size_t s : sizes) n += s;
  Graph g(n);
  Vertex start = 0;
  for (std::size_t s : sizes) {
    for (Vertex u = start; u < start + s; ++u) {
      for (Vertex v = u + 1; v < start + s; ++v) g.add_edge(u, v);
    }
    start += static_cast<Vertex>(s);
  }
  return g;
}

Graph complete_multipartite(const std::vector<std::size_t>& sizes) { return clique_union(sizes).complement(); }

Graph random_graph(std::size_t n, std::uint64_t num, std::uint64_t den, std::uint64_t seed) {
  if (den == 0 || num > den) throw Error("edge probability must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> draw(0, den - 1);
  Graph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (draw(rng) < num) g.add_edge(u, v);
    }
  }
  return g;
}

std::vector<std::size_t> random_part_sizes(std::size_t n, std::size_t parts, std::size_t min_part,
                                           std::uint64_t seed) {
  if (parts == 0 || parts * min_part > n) throw Error("cannot split " + std::to_string(n) + " into such parts");
  std::vector<std::size_t> sizes(parts, min_part);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> which(0, parts - 1);
  for (std::size_t extra = n - parts * min_part; extra > 0; --extra) ++sizes[which(rng)];
  return sizes;
}

}  // namespace generators

}  // namespace modelglass
