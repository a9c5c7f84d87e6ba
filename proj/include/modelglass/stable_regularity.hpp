#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "modelglass/error.hpp"
#include "modelglass/graph.hpp"
#include "modelglass/half_graph.hpp"
#include "modelglass/regularity.hpp"

namespace modelglass {

/// The input has a k-half-graph, so the stable partitioner does not apply.
class NotStable : public Error {
 public:
  NotStable(const std::string& message, HalfGraphWitness witness) : Error(message), witness_(std::move(witness)) {}
  const HalfGraphWitness& witness() const noexcept { return witness_; }

 private:
  HalfGraphWitness witness_;
};

struct StableRegularityOptions {
  /// Piece budget is ceil(base^(1/eps)) unless max_pieces is set.
  std::int64_t budget_base = 2;
  std::size_t max_pieces = 0;
  std::size_t exact_cap = 12;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  std::size_t max_rounds = 32;
};

struct BlockPair {
  std::size_t i = 0;
  std::size_t j = 0;
  PairVerdict verdict;
};

struct PartitionCertificate {
  std::vector<std::vector<Vertex>> blocks;
  Rational eps;
  std::size_t k = 0;
  /// Every pair i < j of blocks, in order.
  std::vector<BlockPair> pairs;
  bool pass = false;
  std::size_t min_block = 0;
  std::size_t max_block = 0;
  bool equitable = false;
  std::int64_t budget_base = 2;
  std::size_t budget = 0;
  std::size_t rounds = 0;
  std::vector<std::string> notes;

  std::size_t irregular_pairs() const;
};

std::size_t piece_budget(const Rational& eps, std::int64_t base);

/// Equitable partition with every pair checked. Starts from clusters of
/// vertices with nearly equal neighborhoods, cuts them into pieces of two
/// adjacent sizes, and on an irregular pair splits blocks by majority
/// adjacency to the current blocks and to the witness. Throws NotStable if
/// G has a k-half-graph. Never reports pass unless every pair passed.
PartitionCertificate stable_regularity(const Graph& g, const Rational& eps, std::size_t k,
                                       const StableRegularityOptions& options = {});

struct CertificateCheck {
  bool ok = true;
  std::vector<std::string> problems;
};

/// Re-checks a certificate without trusting its verdicts: partition and
/// balance, then every pair again (exact where the sides allow, homogeneous
/// pairs directly, sampled with the recorded seed and trials otherwise).
CertificateCheck validate_certificate(const Graph& g, const PartitionCertificate& cert,
                                      const StableRegularityOptions& options = {});

}  // namespace modelglass
