#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modelglass/graph.hpp"
#include "modelglass/half_graph.hpp"

namespace modelglass {

struct HomogeneousOptions {
  /// Exact branch-and-bound up to this many vertices, greedy beyond.
  std::size_t exact_cap = 64;
};

struct HomogeneousSets {
  std::vector<Vertex> clique;
  std::vector<Vertex> independent;
  std::size_t hom = 0;
  /// False when n exceeded the cap and the sets are only the best found.
  bool exact = true;
};

/// Maximum clique by branch-and-bound with greedy coloring bounds; vertices
/// expand lowest index first, so the result is deterministic.
std::vector<Vertex> max_clique(const Graph& g, const HomogeneousOptions& options = {});
/// Greedy clique (repeatedly take the candidate with most candidate
/// neighbors, lowest index on ties).
std::vector<Vertex> greedy_clique(const Graph& g);

HomogeneousSets max_homogeneous(const Graph& g, const HomogeneousOptions& options = {});

bool is_clique(const Graph& g, const std::vector<Vertex>& s);
bool is_independent(const Graph& g, const std::vector<Vertex>& s);

enum class Family { Cliques, Multipartite, Random };
Family parse_graph_family(const std::string& name);
std::string to_string(Family f);

/// One instance of a family at size n. Cliques: ceil(sqrt n) cliques of
/// near-equal size. Multipartite: its complement. Random: G(n, 1/2).
Graph family_instance(Family f, std::size_t n, std::uint64_t seed);

struct RamseyRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  bool stable = true;
  std::optional<HalfGraphWitness> rejected_by;
  std::size_t clique = 0;
  std::size_t independent = 0;
  std::size_t hom = 0;
  /// log hom / log n; 0 for n = 1.
  double exponent = 0;
  bool exact = true;
  /// hom^2 >= n, checked in integers.
  bool at_least_sqrt = false;
};

struct RamseyReport {
  Family family = Family::Cliques;
  std::size_t k = 0;
  std::vector<RamseyRow> rows;
  std::vector<std::string> log;
};

/// For each size and each of `seeds` seeds: builds the instance, rejects it
/// (with the witness, logged) if it has a k-half-graph, else measures hom.
RamseyReport stable_ramsey_report(Family family, std::size_t k, const std::vector<std::size_t>& sizes,
                                  std::size_t seeds = 1, std::uint64_t first_seed = 0,
                                  const HomogeneousOptions& options = {});

}  // namespace modelglass
