#include "modelglass/regularity.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>
#include <random>

#include <omp.h>

#include "modelglass/error.hpp"

namespace modelglass {

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text) {
  auto number = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) throw Error("not a rational number: '" + text + "'");
    return v;
  };
  std::string_view s = text;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::int64_t den = number(s.substr(slash + 1));
    if (den == 0) throw Error("zero denominator in '" + text + "'");
    return Rational(number(s.substr(0, slash)), den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view frac = s.substr(dot + 1);
    if (frac.size() > 15) throw Error("too many decimals in '" + text + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    std::int64_t whole = dot == 0 ? 0 : number(s.substr(0, dot));
    std::int64_t part = frac.empty() ? 0 : number(frac);
    if (whole < 0 || (dot > 0 && s[0] == '-')) throw Error("negative decimals are not supported: '" + text + "'");
    return Rational(whole * scale + part, scale);
  }
  return Rational(number(s));
}

namespace {

void check_sides(const Graph& g, const std::vector<Vertex>& x, const std::vector<Vertex>& y) {
  if (x.empty() || y.empty()) throw Error("both sides of a pair must be nonempty");
  Bitset seen(g.size());
  for (const auto* side : {&x, &y}) {
    for (Vertex v : *side) {
      if (v >= g.size()) throw Error("vertex " + std::to_string(v) + " is not in the graph");
      if (seen.test(v)) throw Error("the sides of a pair must be disjoint sets (vertex " + std::to_string(v) + ")");
      seen.set(v);
    }
  }
}

std::size_t cross_edges(const Graph& g, const std::vector<Vertex>& x, const std::vector<Vertex>& y) {
  std::size_t e = 0;
  for (Vertex u : x) {
    for (Vertex v : y) e += g.has_edge(u, v) ? 1 : 0;
  }
  return e;
}

Rational deviation(const Rational& a, const Rational& b) { return a > b ? a - b : b - a; }

// Exact check with the smaller side S enumerated as bit masks and the
// other side T handled by sorting.
class ExactPair {
 public:
  ExactPair(const Graph& g, const std::vector<Vertex>& x, const std::vector<Vertex>& y, const Rational& eps)
      : x_(x), y_(y), eps_(eps) {
    swapped_ = y.size() < x.size();
    s_ = swapped_ ? &y_ : &x_;
    t_ = swapped_ ? &x_ : &y_;
    density_ = Rational(static_cast<std::int64_t>(cross_edges(g, x, y)),
                        static_cast<std::int64_t>(x.size() * y.size()));
    ts_ = size_threshold(s_->size(), eps);
    tt_ = size_threshold(t_->size(), eps);
    for (Vertex t : *t_) {
      std::uint32_t mask = 0;
      for (std::size_t i = 0; i < s_->size(); ++i) {
        if (g.has_edge(t, (*s_)[i])) mask |= 1U << i;
      }
      adj_.push_back(mask);
    }
  }

  std::uint32_t masks() const { return static_cast<std::uint32_t>((std::uint64_t{1} << s_->size()) - 1); }
  const Rational& density() const { return density_; }

  // Sizes s of T' ascending; the densest T' before the sparsest.
  std::optional<IrregularWitness> check(std::uint32_t mask) const {
    const std::size_t a = static_cast<std::size_t>(std::popcount(mask));
    if (a < ts_) return std::nullopt;
    const std::size_t m = t_->size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = std::popcount(adj_[i] & mask);
    // Heaviest first, highest index first among equal weights, so a dense
    // witness comes out as a final segment of T.
    std::sort(order.begin(), order.end(),
              [&](std::size_t p, std::size_t q) { return w[p] != w[q] ? w[p] > w[q] : p > q; });
    std::vector<std::size_t> prefix(m + 1, 0), suffix(m + 1, 0);
    for (std::size_t i = 0; i < m; ++i) prefix[i + 1] = prefix[i] + static_cast<std::size_t>(w[order[i]]);
    // Lightest vertices, lowest index first among equal weights.
    std::vector<std::size_t> low(m);
    std::iota(low.begin(), low.end(), 0);
    std::stable_sort(low.begin(), low.end(), [&](std::size_t p, std::size_t q) { return w[p] < w[q]; });
    for (std::size_t i = 0; i < m; ++i) suffix[i + 1] = suffix[i] + static_cast<std::size_t>(w[low[i]]);
    for (std::size_t s = tt_; s <= m; ++s) {
      const auto pairs = static_cast<std::int64_t>(a * s);
      for (int side = 0; side < 2; ++side) {
        const std::size_t e = side == 0 ? prefix[s] : suffix[s];
        Rational d(static_cast<std::int64_t>(e), pairs);
        if (deviation(d, density_) > eps_) {
          const auto& pick = side == 0 ? order : low;
          std::vector<Vertex> sp, tp;
          for (std::size_t i = 0; i < s_->size(); ++i) {
            if (mask >> i & 1U) sp.push_back((*s_)[i]);
          }
          for (std::size_t i = 0; i < s; ++i) tp.push_back((*t_)[pick[i]]);
          std::sort(tp.begin(), tp.end());
          if (swapped_) std::swap(sp, tp);
          return IrregularWitness{std::move(sp), std::move(tp), d};
        }
      }
    }
    return std::nullopt;
  }

 private:
  std::vector<Vertex> x_, y_;
  Rational eps_;
  bool swapped_ = false;
  const std::vector<Vertex>* s_ = nullptr;
  const std::vector<Vertex>* t_ = nullptr;
  Rational density_;
  std::size_t ts_ = 1, tt_ = 1;
  std::vector<std::uint32_t> adj_;
};

PairVerdict exact_verdict(const Graph& g, const std::vector<Vertex>& x, const std::vector<Vertex>& y,
                          const Rational& eps, const RegularityOptions& options, bool parallel) {
  check_sides(g, x, y);
  if (eps <= 0) throw Error("eps must be positive");
  const std::size_t smaller = std::min(x.size(), y.size());
  if (smaller > options.exact_cap || smaller > 30) {
    throw CapExceeded("pair of sizes " + std::to_string(x.size()) + " x " + std::to_string(y.size()) +
                      " is over the exact-check cap of " + std::to_string(options.exact_cap) +
                      "; use the sampled check");
  }
  ExactPair pair(g, x, y, eps);
  PairVerdict v;
  v.method = PairMethod::Exact;
  v.density = pair.density();
  v.eps = eps;
  const std::int64_t total = static_cast<std::int64_t>(pair.masks());
  std::int64_t first = total + 1;
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 64) reduction(min : first)
    for (std::int64_t mask = 1; mask <= total; ++mask) {
      if (mask < first && pair.check(static_cast<std::uint32_t>(mask))) first = mask;
    }
  } else {
    for (std::int64_t mask = 1; mask <= total; ++mask) {
      if (pair.check(static_cast<std::uint32_t>(mask))) {
        first = mask;
        break;
      }
    }
  }
  if (first <= total) {
    v.regular = false;
    v.witness = pair.check(static_cast<std::uint32_t>(first));
  }
  return v;
}

std::uint64_t fold(std::uint64_t h, std::uint64_t v) {
  // FNV-1a over the 8 bytes of v.
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffU;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::size_t size_threshold(std::size_t side, const Rational& eps) {
  Rational need = eps * Rational(static_cast<std::int64_t>(side));
  std::int64_t t = need.numerator() / need.denominator();
  if (t * need.denominator() < need.numerator()) ++t;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::max<std::int64_t>(t, 0)));
}

Rational edge_density(const Graph& g, const std::vector<Vertex>& x, const std::vector<Vertex>& y) {
  check_sides(g, x, y);
  return Rational(static_cast<std::int64_t>(cross_edges(g, x, y)), static_cast<std::int64_t>(x.size() * y.size()));
}

std::string to_string(PairMethod m) {
  switch (m) {
    case PairMethod::Exact:
      return "exact";
    case PairMethod::DensityBound:
      return "density-bound";
    case PairMethod::Sampled:
      return "sampled";
  }
  return "exact";
}

PairVerdict regular_pair_exact(const Graph& g, const std::vector<Vertex>& x, const std::vector<Vertex>& y,
                               const Rational& eps, const RegularityOptions& options) {
  const bool parallel = omp_get_max_threads() > 1 && !omp_in_parallel() && std::min(x.size(), y.size()) >= 8;
  return exact_verdict(g, x, y, eps, options, parallel);
}

PairVerdict regular_pair_exact_serial(const Graph& g, const std::vector<Vertex>& x, const std::vector<Vertex>& y,
                                      const Rational& eps, const RegularityOptions& options) {
  return exact_verdict(g, x, y, eps, options, false);
}

PairVerdict regular_pair_sampled(const Graph& g, const std::vector<Vertex>& x, const std::vector<Vertex>& y,
                                 const Rational& eps, std::size_t trials, std::uint64_t seed) {
  check_sides(g, x, y);
  if (trials == 0) throw Error("the sampled check needs at least one trial");
  if (eps <= 0) throw Error("eps must be positive");
  PairVerdict v;
  v.method = PairMethod::Sampled;
  v.density = edge_density(g, x, y);
  v.eps = eps;
  v.seed = seed;
  const std::size_t tx = size_threshold(x.size(), eps), ty = size_threshold(y.size(), eps);
  std::mt19937_64 rng(seed);
  std::vector<Vertex> xs = x, ys = y;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t trial = 1; trial <= trials; ++trial) {
    v.trials = trial;
    std::size_t a = std::uniform_int_distribution<std::size_t>(tx, x.size())(rng);
    std::size_t b = std::uniform_int_distribution<std::size_t>(ty, y.size())(rng);
    // Partial Fisher-Yates: the first a (resp. b) entries form the sample.
    for (std::size_t i = 0; i < a; ++i) std::swap(xs[i], xs[std::uniform_int_distribution<std::size_t>(i, xs.size() - 1)(rng)]);
    for (std::size_t i = 0; i < b; ++i) std::swap(ys[i], ys[std::uniform_int_distribution<std::size_t>(i, ys.size() - 1)(rng)]);
    std::vector<Vertex> xp(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(a));
    std::vector<Vertex> yp(ys.begin(), ys.begin() + static_cast<std::ptrdiff_t>(b));
    std::sort(xp.begin(), xp.end());
    std::sort(yp.begin(), yp.end());
    for (Vertex u : xp) h = fold(h, u);
    h = fold(h, ~std::uint64_t{0});
    for (Vertex u : yp) h = fold(h, u);
    Rational d(static_cast<std::int64_t>(cross_edges(g, xp, yp)), static_cast<std::int64_t>(a * b));
    if (deviation(d, v.density) > eps) {
      v.regular = false;
      v.witness = IrregularWitness{std::move(xp), std::move(yp), d};
      break;
    }
  }
  v.transcript = h;
  return v;
}

std::optional<PairVerdict> regular_pair_by_density(const Graph& g, const std::vector<Vertex>& x,
                                                   const std::vector<Vertex>& y, const Rational& eps) {
  check_sides(g, x, y);
  const auto n = static_cast<std::int64_t>(x.size() * y.size());
  const auto present = static_cast<std::int64_t>(cross_edges(g, x, y));
  const auto missing = n - present;
  const Rational d(present, n);
  const auto floor_pairs = static_cast<std::int64_t>(size_threshold(x.size(), eps) * size_threshold(y.size(), eps));
  const Rational one(1), zero(0);
  // Sub-pair densities lie in [lo, hi] under each bound.
  Rational lo_missing = std::max(zero, one - Rational(missing, floor_pairs));
  Rational hi_present = std::min(one, Rational(present, floor_pairs));
  bool dense_ok = std::max(one - d, d - lo_missing) <= eps;
  bool sparse_ok = std::max(d, hi_present - d) <= eps;
  if (!dense_ok && !sparse_ok) return std::nullopt;
  PairVerdict v;
  v.method = PairMethod::DensityBound;
  v.density = d;
  v.eps = eps;
  return v;
}

bool witness_violates(const Graph& g, const std::vector<Vertex>& x, const std::vector<Vertex>& y, const Rational& eps,
                      const IrregularWitness& w) {
  auto inside = [](const std::vector<Vertex>& part, const std::vector<Vertex>& whole) {
    return std::all_of(part.begin(), part.end(),
                       [&](Vertex v) { return std::find(whole.begin(), whole.end(), v) != whole.end(); });
  };
  auto distinct = [](std::vector<Vertex> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (w.x.empty() || w.y.empty() || !inside(w.x, x) || !inside(w.y, y) || !distinct(w.x) || !distinct(w.y)) return false;
  if (w.x.size() < size_threshold(x.size(), eps) || w.y.size() < size_threshold(y.size(), eps)) return false;
  Rational d = edge_density(g, w.x, w.y);
  return d == w.density && deviation(d, edge_density(g, x, y)) > eps;
}

}  // namespace modelglass
