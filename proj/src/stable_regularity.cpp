#include "modelglass/stable_regularity.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <omp.h>

namespace modelglass {

std::size_t PartitionCertificate::irregular_pairs() const {
  return static_cast<std::size_t>(
      std::count_if(pairs.begin(), pairs.end(), [](const BlockPair& p) { return !p.verdict.regular; }));
}

std::size_t piece_budget(const Rational& eps, std::int64_t base) {
  if (eps <= 0) throw Error("eps must be positive");
  if (base < 1) throw Error("budget base must be at least 1");
  constexpr std::size_t limit = 1U << 20;
  Rational inv = Rational(1) / eps;
  if (inv.denominator() == 1) {
    std::size_t b = 1;
    for (std::int64_t i = 0; i < inv.numerator(); ++i) {
      b *= static_cast<std::size_t>(base);
      if (b >= limit) return limit;
    }
    return b;
  }
  double v = std::ceil(std::pow(static_cast<double>(base),
                                static_cast<double>(inv.numerator()) / static_cast<double>(inv.denominator())));
  return v >= static_cast<double>(limit) ? limit : static_cast<std::size_t>(v);
}

namespace {

using Blocks = std::vector<std::vector<Vertex>>;

// Greedy clusters: a vertex joins the first cluster whose founder's
// neighborhood differs from its own in at most tau places (ignoring the two
// vertices themselves).
Blocks cluster(const Graph& g, std::size_t tau) {
  Blocks out;
  std::vector<Vertex> founder;
  for (Vertex v = 0; v < g.size(); ++v) {
    bool placed = false;
    for (std::size_t c = 0; c < out.size() && !placed; ++c) {
      Bitset diff = (g.neighbors(v) - g.neighbors(founder[c])) | (g.neighbors(founder[c]) - g.neighbors(v));
      diff.reset(v);
      diff.reset(founder[c]);
      if (diff.count() <= tau) {
        out[c].push_back(v);
        placed = true;
      }
    }
    if (!placed) {
      out.push_back({v});
      founder.push_back(v);
    }
  }
  return out;
}

// Largest s such that every cluster cuts into pieces of size s or s + 1
// within the budget; pieces are consecutive runs of the cluster.
std::optional<Blocks> equitize(const Blocks& clusters, std::size_t budget) {
  std::size_t smallest = clusters.front().size();
  for (const auto& c : clusters) smallest = std::min(smallest, c.size());
  for (std::size_t s = smallest; s >= 1; --s) {
    std::size_t pieces = 0;
    bool ok = true;
    for (const auto& c : clusters) {
      std::size_t q = (c.size() + s) / (s + 1);
      if (q * s > c.size()) {
        ok = false;
        break;
      }
      pieces += q;
    }
    if (!ok || pieces > budget) continue;
    Blocks out;
    for (const auto& c : clusters) {
      std::size_t q = (c.size() + s) / (s + 1);
      std::size_t big = c.size() - q * s;  // pieces of size s + 1
      std::size_t at = 0;
      for (std::size_t p = 0; p < q; ++p) {
        std::size_t len = s + (p < big ? 1 : 0);
        out.emplace_back(c.begin() + static_cast<std::ptrdiff_t>(at), c.begin() + static_cast<std::ptrdiff_t>(at + len));
        at += len;
      }
    }
    return out;
  }
  return std::nullopt;
}

std::uint64_t pair_seed(std::uint64_t seed, std::size_t i, std::size_t j) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (1 + i) + 0xbf58476d1ce4e5b9ULL * (1 + j);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

PairVerdict check_pair(const Graph& g, const std::vector<Vertex>& x, const std::vector<Vertex>& y, const Rational& eps,
                       const StableRegularityOptions& options, std::uint64_t seed) {
  if (auto v = regular_pair_by_density(g, x, y, eps)) return *v;
  if (std::min(x.size(), y.size()) <= options.exact_cap) {
    return regular_pair_exact_serial(g, x, y, eps, RegularityOptions{options.exact_cap});
  }
  return regular_pair_sampled(g, x, y, eps, options.trials, seed);
}

std::vector<BlockPair> check_all(const Graph& g, const Blocks& blocks, const Rational& eps,
                                 const StableRegularityOptions& options) {
  std::vector<BlockPair> pairs;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks.size(); ++j) pairs.push_back({i, j, {}});
  }
  const auto count = static_cast<std::int64_t>(pairs.size());
  // Each slot is written by one iteration, so the result does not depend on
  // the schedule.
#pragma omp parallel for schedule(dynamic) if (count > 8 && omp_get_max_threads() > 1 && !omp_in_parallel())
  for (std::int64_t p = 0; p < count; ++p) {
    auto& bp = pairs[static_cast<std::size_t>(p)];
    bp.verdict = check_pair(g, blocks[bp.i], blocks[bp.j], eps, options, pair_seed(options.seed, bp.i, bp.j));
  }
  return pairs;
}

// Splits a block by whether each vertex sees more than half of `target`.
std::vector<std::vector<Vertex>> split_by_majority(const Graph& g, const std::vector<Vertex>& block,
                                                   const std::vector<Vertex>& target) {
  std::vector<Vertex> heavy, light;
  for (Vertex v : block) {
    std::size_t seen = 0;
    for (Vertex t : target) seen += g.has_edge(v, t) ? 1 : 0;
    (2 * seen > target.size() ? heavy : light).push_back(v);
  }
  if (heavy.empty() || light.empty()) return {block};
  return {heavy, light};
}

// One refinement round. Vertices of a block are grouped by their majority
// fingerprint against every current block; blocks in an irregular pair are
// further split against the witness on the other side.
Blocks refine(const Graph& g, const Blocks& blocks, const std::vector<BlockPair>& pairs) {
  Blocks pieces;
  for (const auto& block : blocks) {
    std::map<std::vector<bool>, std::vector<Vertex>> groups;
    std::vector<std::vector<bool>> order;
    for (Vertex v : block) {
      std::vector<bool> print;
      for (const auto& other : blocks) {
        std::size_t seen = 0;
        for (Vertex t : other) seen += g.has_edge(v, t) ? 1 : 0;
        print.push_back(2 * seen > other.size());
      }
      auto [it, fresh] = groups.try_emplace(print);
      if (fresh) order.push_back(print);
      it->second.push_back(v);
    }
    for (const auto& print : order) pieces.push_back(groups[print]);
  }
  // Witness splits, applied to whichever new piece holds the vertices.
  for (const auto& p : pairs) {
    if (p.verdict.regular || !p.verdict.witness) continue;
    for (int side = 0; side < 2; ++side) {
      const auto& target = side == 0 ? p.verdict.witness->y : p.verdict.witness->x;
      const auto& home = side == 0 ? blocks[p.i] : blocks[p.j];
      Blocks next;
      for (auto& piece : pieces) {
        if (std::find(home.begin(), home.end(), piece.front()) == home.end()) {
          next.push_back(std::move(piece));
          continue;
        }
        for (auto& part : split_by_majority(g, piece, target)) next.push_back(std::move(part));
      }
      pieces = std::move(next);
    }
  }
  for (auto& piece : pieces) std::sort(piece.begin(), piece.end());
  std::sort(pieces.begin(), pieces.end());
  return pieces;
}

void summarize(PartitionCertificate& cert) {
  cert.min_block = cert.blocks.empty() ? 0 : cert.blocks.front().size();
  cert.max_block = 0;
  for (const auto& b : cert.blocks) {
    cert.min_block = std::min(cert.min_block, b.size());
    cert.max_block = std::max(cert.max_block, b.size());
  }
  cert.equitable = cert.max_block - cert.min_block <= 1;
}

}  // namespace

PartitionCertificate stable_regularity(const Graph& g, const Rational& eps, std::size_t k,
                                       const StableRegularityOptions& options) {
  if (eps <= 0 || eps > 1) throw Error("eps must lie in (0, 1]");
  if (g.size() < 2) throw Error("need at least two vertices to partition");
  if (auto w = find_half_graph(g, k)) {
    throw NotStable("graph has a half-graph of height " + std::to_string(k) +
                        "; the stable partitioner does not apply, use a general regularity partition",
                    *w);
  }
  PartitionCertificate cert;
  cert.eps = eps;
  cert.k = k;
  cert.budget_base = options.budget_base;
  cert.budget = options.max_pieces != 0 ? options.max_pieces : piece_budget(eps, options.budget_base);

  const std::size_t tau = std::max<std::size_t>(
      2, static_cast<std::size_t>(boost::rational_cast<std::int64_t>(eps * Rational(static_cast<std::int64_t>(g.size())) / Rational(4))));
  Blocks clusters = cluster(g, tau);
  if (clusters.size() == 1) {
    // A single cluster still needs two blocks to say anything.
    const auto& only = clusters.front();
    std::size_t half = only.size() / 2;
    clusters = {std::vector<Vertex>(only.begin(), only.begin() + static_cast<std::ptrdiff_t>(half)),
                std::vector<Vertex>(only.begin() + static_cast<std::ptrdiff_t>(half), only.end())};
  }
  cert.notes.push_back("initial clusters: " + std::to_string(clusters.size()) + " (neighborhood distance <= " +
                       std::to_string(tau) + ")");

  while (true) {
    ++cert.rounds;
    auto blocks = equitize(clusters, cert.budget);
    if (!blocks) {
      cert.notes.push_back("piece budget " + std::to_string(cert.budget) + " exhausted in round " +
                           std::to_string(cert.rounds));
      break;
    }
    cert.blocks = std::move(*blocks);
    cert.pairs = check_all(g, cert.blocks, eps, options);
    if (cert.irregular_pairs() == 0) {
      cert.pass = true;
      break;
    }
    if (cert.rounds >= options.max_rounds) {
      cert.notes.push_back("round limit reached");
      break;
    }
    Blocks next = refine(g, cert.blocks, cert.pairs);
    if (next.size() <= cert.blocks.size()) {
      cert.notes.push_back("refinement made no progress in round " + std::to_string(cert.rounds));
      break;
    }
    clusters = std::move(next);
  }
  summarize(cert);
  if (!cert.equitable) cert.pass = false;
  return cert;
}

CertificateCheck validate_certificate(const Graph& g, const PartitionCertificate& cert,
                                      const StableRegularityOptions& options) {
  CertificateCheck out;
  auto fail = [&](std::string msg) {
    out.ok = false;
    out.problems.push_back(std::move(msg));
  };
  std::vector<int> owner(g.size(), -1);
  for (std::size_t b = 0; b < cert.blocks.size(); ++b) {
    if (cert.blocks[b].empty()) fail("block " + std::to_string(b) + " is empty");
    for (Vertex v : cert.blocks[b]) {
      if (v >= g.size()) {
        fail("block " + std::to_string(b) + " has vertex " + std::to_string(v) + " outside the graph");
      } else if (owner[v] != -1) {
        fail("vertex " + std::to_string(v) + " is in two blocks");
      } else {
        owner[v] = static_cast<int>(b);
      }
    }
  }
  if (std::count(owner.begin(), owner.end(), -1) > 0) fail("blocks do not cover every vertex");
  if (!out.ok) return out;
  std::size_t lo = g.size(), hi = 0;
  for (const auto& b : cert.blocks) {
    lo = std::min(lo, b.size());
    hi = std::max(hi, b.size());
  }
  if (hi - lo > 1) fail("block sizes range from " + std::to_string(lo) + " to " + std::to_string(hi));
  const std::size_t m = cert.blocks.size();
  if (cert.pairs.size() != m * (m - 1) / 2) fail("certificate does not list every pair");
  std::size_t expect = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j, ++expect) {
      if (expect >= cert.pairs.size()) break;
      const auto& p = cert.pairs[expect];
      const std::string name = "pair (" + std::to_string(i) + ", " + std::to_string(j) + ")";
      if (p.i != i || p.j != j) {
        fail(name + " is out of order");
        continue;
      }
      const auto& x = cert.blocks[i];
      const auto& y = cert.blocks[j];
      std::size_t edges = 0;
      for (Vertex u : x) {
        for (Vertex v : y) edges += g.has_edge(u, v) ? 1 : 0;
      }
      Rational d(static_cast<std::int64_t>(edges), static_cast<std::int64_t>(x.size() * y.size()));
      if (d != p.verdict.density) fail(name + " density is " + format_rational(d));
      if (!p.verdict.regular) {
        if (!p.verdict.witness || !witness_violates(g, x, y, cert.eps, *p.verdict.witness)) {
          fail(name + " is marked irregular without a valid witness");
        }
        continue;
      }
      bool regular = false;
      if (edges == 0 || edges == x.size() * y.size()) {
        regular = true;  // every sub-pair has the same density
      } else if (std::min(x.size(), y.size()) <= options.exact_cap) {
        regular = regular_pair_exact_serial(g, x, y, cert.eps, RegularityOptions{options.exact_cap}).regular;
      } else if (p.verdict.method == PairMethod::Sampled) {
        auto again = regular_pair_sampled(g, x, y, cert.eps, p.verdict.trials, p.verdict.seed);
        regular = again.regular && again.transcript == p.verdict.transcript;
      } else {
        // Density bound, recomputed here from the counts.
        const auto tx = static_cast<std::int64_t>(size_threshold(x.size(), cert.eps));
        const auto ty = static_cast<std::int64_t>(size_threshold(y.size(), cert.eps));
        const auto total = static_cast<std::int64_t>(x.size() * y.size());
        const auto e = static_cast<std::int64_t>(edges);
        Rational up = Rational(1) - d, down = d - std::max(Rational(0), Rational(1) - Rational(total - e, tx * ty));
        Rational sparse_up = std::min(Rational(1), Rational(e, tx * ty)) - d;
        regular = std::max(up, down) <= cert.eps || std::max(d, sparse_up) <= cert.eps;
      }
      if (!regular) fail(name + " does not re-check as regular");
    }
  }
  if (cert.pass && cert.irregular_pairs() != 0) fail("certificate passes with irregular pairs");
  return out;
}

}  // namespace modelglass
