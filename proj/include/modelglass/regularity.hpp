#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "modelglass/graph.hpp"

namespace modelglass {

using Rational = boost::rational<std::int64_t>;

std::string format_rational(const Rational& r);
/// "1/4", "3", "0.25".
Rational parse_rational(const std::string& text);

/// e(X, Y) / (|X| |Y|). X and Y nonempty and disjoint.
Rational edge_density(const Graph& g, const std::vector<Vertex>& x, const std::vector<Vertex>& y);

struct IrregularWitness {
  std::vector<Vertex> x;
  std::vector<Vertex> y;
  Rational density;
};

enum class PairMethod { Exact, DensityBound, Sampled };
std::string to_string(PairMethod m);

struct PairVerdict {
  /// For Sampled this means only "no violation found".
  bool regular = true;
  PairMethod method = PairMethod::Exact;
  Rational density;
  Rational eps;
  std::optional<IrregularWitness> witness;
  /// Sampled only.
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  /// Fold of every sampled subset pair, so two runs can be compared.
  std::uint64_t transcript = 0;
};

struct RegularityOptions {
  /// Largest side for the exact check.
  std::size_t exact_cap = 12;
};

/// Smallest sizes a sub-pair must reach: ceil(eps |X|), at least 1.
std::size_t size_threshold(std::size_t side, const Rational& eps);

/// Every X' in X, Y' in Y with |X'| >= eps|X|, |Y'| >= eps|Y| has
/// |d(X', Y') - d(X, Y)| <= eps. Enumerates the subsets of the smaller side;
/// for each one the extreme densities over subsets of the other side of a
/// given size come from its vertices sorted by degree. The reported witness
/// is the first violation in that enumeration order. OpenMP over subsets.
PairVerdict regular_pair_exact(const Graph& g, const std::vector<Vertex>& x, const std::vector<Vertex>& y,
                               const Rational& eps, const RegularityOptions& options = {});

/// Single-threaded version of regular_pair_exact, kept for testing.
PairVerdict regular_pair_exact_serial(const Graph& g, const std::vector<Vertex>& x, const std::vector<Vertex>& y,
                                      const Rational& eps, const RegularityOptions& options = {});

/// Random sub-pairs meeting the size thresholds; stops at the first
/// violation. Deterministic in the seed.
PairVerdict regular_pair_sampled(const Graph& g, const std::vector<Vertex>& x, const std::vector<Vertex>& y,
                                 const Rational& eps, std::size_t trials, std::uint64_t seed);

/// Exact sufficient test for nearly homogeneous pairs. With M missing
/// edges every admissible sub-pair's density lies in
/// [1 - M/(tx ty), 1], and dually with E present edges; if both deviations
/// stay within eps the pair is regular. Returns nullopt when inconclusive.
std::optional<PairVerdict> regular_pair_by_density(const Graph& g, const std::vector<Vertex>& x,
                                                   const std::vector<Vertex>& y, const Rational& eps);

/// Recomputes a witness's density and deviation from scratch.
bool witness_violates(const Graph& g, const std::vector<Vertex>& x, const std::vector<Vertex>& y, const Rational& eps,
                      const IrregularWitness& w);

}  // namespace modelglass
