#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "modelglass/bitset.hpp"
#include "modelglass/graph.hpp"
#include "modelglass/model.hpp"
#include "modelglass/syntax.hpp"

namespace modelglass {

/// a_1..a_k, b_1..b_k, all distinct, with R(a_i, b_j) iff i < j.
struct HalfGraphWitness {
  std::vector<Element> a;
  std::vector<Element> b;
};

/// Exact search over a directed relation given as rows: R(u, v) iff
/// rows[u].test(v). Chooses a_1, b_1, a_2, b_2, ... lowest index first,
/// pruning when too few vertices remain for the later a's or b's.
std::optional<HalfGraphWitness> find_ladder(const std::vector<Bitset>& rows, std::size_t k);

std::optional<HalfGraphWitness> find_half_graph(const Graph& g, std::size_t k);

/// Checks the defining pattern directly, independent of any search.
bool is_half_graph_witness(const Graph& g, const HalfGraphWitness& w);

/// Order property for phi(x; y): materializes the solution set of phi over
/// (x, y) and runs the same search. Other free variables must be fixed by
/// `parameters`.
std::optional<HalfGraphWitness> order_property(const Model& m, const Formula& phi, const std::string& x,
                                               const std::string& y, std::size_t k,
                                               const Assignment& parameters = {});

bool is_order_witness(const Model& m, const Formula& phi, const std::string& x, const std::string& y,
                      const HalfGraphWitness& w, const Assignment& parameters = {});

}  // namespace modelglass
