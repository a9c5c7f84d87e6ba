#include <doctest.h>

#include <cmath>
#include <numeric>

#include "modelglass/half_graph.hpp"
#include "modelglass/parser.hpp"
#include "modelglass/ramsey.hpp"
#include "modelglass/regularity.hpp"
#include "modelglass/stable_regularity.hpp"
#include "random.hpp"

using namespace modelglass;

namespace {

std::vector<Vertex> range(Vertex lo, Vertex hi) {
  std::vector<Vertex> v(hi - lo);
  std::iota(v.begin(), v.end(), lo);
  return v;
}

// Random disjoint sides of the given sizes inside {0..n-1}.
std::pair<std::vector<Vertex>, std::vector<Vertex>> random_sides(std::size_t n, std::size_t a, std::size_t b,
                                                                  testing::Rng& rng) {
  std::vector<Vertex> all = range(0, static_cast<Vertex>(n));
  std::shuffle(all.begin(), all.end(), rng.engine());
  return {{all.begin(), all.begin() + static_cast<std::ptrdiff_t>(a)},
          {all.begin() + static_cast<std::ptrdiff_t>(a), all.begin() + static_cast<std::ptrdiff_t>(a + b)}};
}

}  // namespace

TEST_CASE("graph basics") {
  Graph k22 = load_edge_list("0 2\n0 3\n1 2\n1 3\n");
  CHECK(k22 == generators::complete_bipartite(2, 2));
  CHECK(k22.edge_count() == 4);
  CHECK(load_edge_list(edge_list_text(k22)) == k22);
  CHECK(graph_from_model(graph_model(k22)) == k22);
  CHECK(load_graph(model_to_text(graph_model(k22))) == k22);
  CHECK(load_edge_list("0 1", 5).size() == 5);
  CHECK_THROWS_AS(load_edge_list("0 0"), Error);
  CHECK_THROWS_AS(graph_from_model(load_model("model 2\nrel E: (0,1)", graph_signature())), Error);
  CHECK(generators::cycle(5).edge_count() == 5);
  CHECK(generators::complete(6).complement().edge_count() == 0);
  CHECK(generators::random_graph(30, 1, 2, 9) == generators::random_graph(30, 1, 2, 9));
}

TEST_CASE("half-graph search") {
  for (std::size_t k = 2; k <= 6; ++k) {
    Graph h = generators::half_graph(k);
    auto w = find_half_graph(h, k);
    REQUIRE(w.has_value());
    CHECK(is_half_graph_witness(h, *w));
    CHECK(w->a.size() == k);
    CHECK_FALSE(find_half_graph(h, k + 1).has_value());
  }
  for (std::size_t m = 1; m <= 6; ++m) {
    for (std::size_t n = 1; n <= 6; ++n) {
      Graph kb = generators::complete_bipartite(m, n);
      CHECK_FALSE(find_half_graph(kb, 2).has_value());
      if (m + n <= 8) CHECK_FALSE(testing::brute_half_graph(kb, 2));
    }
  }
  // G(40, 1/2) contains a 4-half-graph for nearly every seed.
  std::size_t found = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Graph g = generators::random_graph(40, 1, 2, seed);
    if (auto w = find_half_graph(g, 4)) {
      CHECK(is_half_graph_witness(g, *w));
      ++found;
    }
  }
  CHECK(found >= 4);
}

TEST_CASE("half-graph search agrees with brute force") {
  testing::Rng rng(51);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = rng.between(2, 7);
    Graph g = testing::random_graph(n, rng, rng.between(1, 3), 4);
    for (std::size_t k = 1; 2 * k <= n; ++k) {
      auto w = find_half_graph(g, k);
      REQUIRE(w.has_value() == testing::brute_half_graph(g, k));
      if (w) CHECK(is_half_graph_witness(g, *w));
    }
  }
}

TEST_CASE("order property") {
  Model edgeless = graph_model(generators::empty(6));
  Formula e = parse_formula("E(x, y)", graph_signature());
  CHECK_FALSE(order_property(edgeless, e, "x", "y", 2).has_value());

  for (std::size_t k = 1; k <= 4; ++k) {
    Model chain = linear_order(2 * k);
    Formula lt = parse_formula("x < y", chain.signature());
    auto w = order_property(chain, lt, "x", "y", k);
    REQUIRE(w.has_value());
    CHECK(is_order_witness(chain, lt, "x", "y", *w));
    CHECK_FALSE(order_property(chain, lt, "x", "y", k + 1).has_value());
  }

  testing::Rng rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = testing::random_graph(rng.between(2, 9), rng);
    Model m = graph_model(g);
    for (std::size_t k = 2; k <= 3; ++k) {
      CHECK(order_property(m, e, "x", "y", k).has_value() == find_half_graph(g, k).has_value());
    }
  }
}

TEST_CASE("edge density") {
  CHECK(edge_density(generators::complete_bipartite(3, 4), range(0, 3), range(3, 7)) == Rational(1));
  CHECK(edge_density(generators::empty(4), {0, 1}, {2, 3}) == Rational(0));
  Graph g(4);
  g.add_edge(0, 2);
  CHECK(edge_density(g, {0, 1}, {2, 3}) == Rational(1, 4));
  CHECK(parse_rational("1/4") == Rational(1, 4));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(format_rational(Rational(2, 8)) == "1/4");
  CHECK_THROWS_AS(edge_density(g, {0, 1}, {1, 2}), Error);
}

TEST_CASE("exact regularity") {
  Graph kb = generators::complete_bipartite(6, 6);
  CHECK(regular_pair_exact(kb, range(0, 6), range(6, 12), Rational(1, 10)).regular);

  Graph h = generators::half_graph(8);
  auto v = regular_pair_exact(h, range(0, 8), range(8, 16), Rational(1, 4));
  CHECK_FALSE(v.regular);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->x == std::vector<Vertex>{0, 1});
  CHECK(v.witness->y == std::vector<Vertex>{14, 15});
  CHECK(witness_violates(h, range(0, 8), range(8, 16), Rational(1, 4), *v.witness));
  CHECK(regular_pair_exact(h, range(0, 8), range(8, 16), Rational(1)).regular);

  Graph big = generators::half_graph(13);
  CHECK_THROWS_AS(regular_pair_exact(big, range(0, 13), range(13, 26), Rational(1, 4)), CapExceeded);
  // Only the smaller side is capped.
  CHECK_NOTHROW(regular_pair_exact(big, range(0, 4), range(4, 26), Rational(1, 4)));
}

TEST_CASE("exact regularity agrees with brute force") {
  testing::Rng rng(53);
  const std::pair<std::int64_t, std::int64_t> eps_list[] = {{1, 4}, {1, 3}, {1, 2}, {1, 5}};
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t a = rng.between(1, 6), b = rng.between(1, 6);
    Graph g = testing::random_graph(a + b + rng.below(3), rng, rng.between(1, 3), 4);
    auto [x, y] = random_sides(g.size(), a, b, rng);
    auto [num, den] = eps_list[rng.below(4)];
    Rational eps(num, den);
    auto v = regular_pair_exact(g, x, y, eps);
    REQUIRE(v.regular == testing::brute_regular(g, x, y, num, den));
    CHECK(regular_pair_exact_serial(g, x, y, eps).regular == v.regular);
    if (!v.regular) {
      REQUIRE(v.witness.has_value());
      CHECK(witness_violates(g, x, y, eps, *v.witness));
    }
    // Swapping the sides and complementing the graph change nothing.
    CHECK(regular_pair_exact(g, y, x, eps).regular == v.regular);
    CHECK(regular_pair_exact(g.complement(), x, y, eps).regular == v.regular);
    if (auto d = regular_pair_by_density(g, x, y, eps)) CHECK(d->regular == v.regular);
  }
}

TEST_CASE("sampled regularity") {
  Graph kb = generators::complete_bipartite(10, 10);
  auto clean = regular_pair_sampled(kb, range(0, 10), range(10, 20), Rational(1, 4), 2000, 3);
  CHECK(clean.regular);
  CHECK(clean.trials == 2000);

  auto once = regular_pair_sampled(generators::half_graph(12), range(0, 12), range(12, 24), Rational(1, 4), 500, 7);
  auto twice = regular_pair_sampled(generators::half_graph(12), range(0, 12), range(12, 24), Rational(1, 4), 500, 7);
  CHECK(once.transcript == twice.transcript);
  CHECK(once.regular == twice.regular);

  // Cross-validation on pairs the exact check proves irregular.
  std::size_t checked = 0;
  for (std::size_t k = 4; k <= 12; ++k) {
    Graph h = generators::half_graph(k);
    auto x = range(0, static_cast<Vertex>(k)), y = range(static_cast<Vertex>(k), static_cast<Vertex>(2 * k));
    if (regular_pair_exact(h, x, y, Rational(1, 4)).regular) continue;
    auto s = regular_pair_sampled(h, x, y, Rational(1, 4), 10000, k);
    CHECK_FALSE(s.regular);
    REQUIRE(s.witness.has_value());
    CHECK(witness_violates(h, x, y, Rational(1, 4), *s.witness));
    ++checked;
  }
  CHECK(checked >= 5);
}

TEST_CASE("stable regularity") {
  Graph cliques = generators::clique_union({16, 16, 16, 16});
  auto cert = stable_regularity(cliques, Rational(1, 4), 3);
  CHECK(cert.pass);
  CHECK(cert.blocks.size() == 4);
  for (const auto& b : cert.blocks) CHECK(b.size() == 16);
  CHECK(cert.pairs.size() == 6);
  for (const auto& p : cert.pairs) CHECK(p.verdict.density == Rational(0));
  CHECK(validate_certificate(cliques, cert).ok);

  Graph kb = generators::complete_bipartite(32, 32);
  auto two = stable_regularity(kb, Rational(1, 4), 3);
  CHECK(two.pass);
  REQUIRE(two.blocks.size() == 2);
  CHECK(two.blocks[0] == range(0, 32));
  CHECK(two.pairs[0].verdict.density == Rational(1));

  Graph h = generators::half_graph(16);
  for (std::size_t k : {2, 3, 16}) {
    try {
      stable_regularity(h, Rational(1, 4), k);
      FAIL("a half-graph is not stable");
    } catch (const NotStable& e) {
      CHECK(is_half_graph_witness(h, e.witness()));
    }
  }
  CHECK(piece_budget(Rational(1, 4), 2) == 16);
  CHECK(piece_budget(Rational(1, 2), 3) == 9);
}

TEST_CASE("tampered certificates are caught") {
  Graph g = generators::complete_multipartite({12, 14, 10});
  auto cert = stable_regularity(g, Rational(1, 4), 3);
  REQUIRE(cert.pass);
  CHECK(validate_certificate(g, cert).ok);

  auto dropped = cert;
  dropped.blocks.back().pop_back();
  CHECK_FALSE(validate_certificate(g, dropped).ok);

  auto wrong_density = cert;
  wrong_density.pairs[0].verdict.density += Rational(1, 7);
  CHECK_FALSE(validate_certificate(g, wrong_density).ok);

  // Drop one edge between two blocks that have edges across.
  Graph other = g;
  bool dropped_edge = false;
  for (const auto& p : cert.pairs) {
    if (dropped_edge || p.verdict.density == Rational(0)) continue;
    for (Vertex u : cert.blocks[p.i]) {
      for (Vertex v : cert.blocks[p.j]) {
        if (!dropped_edge && other.has_edge(u, v)) {
          other.remove_edge(u, v);
          dropped_edge = true;
        }
      }
    }
  }
  REQUIRE(dropped_edge);
  CHECK_FALSE(validate_certificate(other, cert).ok);
}

TEST_CASE("homogeneous sets") {
  auto kn = max_homogeneous(generators::complete(7));
  CHECK(kn.clique.size() == 7);
  CHECK(kn.independent.size() == 1);
  auto c5 = max_homogeneous(generators::cycle(5));
  CHECK(c5.clique.size() == 2);
  CHECK(c5.independent.size() == 2);
  CHECK(c5.hom == 2);

  testing::Rng rng(55);
  for (int trial = 0; trial < 150; ++trial) {
    Graph g = testing::random_graph(rng.between(1, 14), rng);
    auto h = max_homogeneous(g);
    CHECK(is_clique(g, h.clique));
    CHECK(is_independent(g, h.independent));
    CHECK(h.clique.size() == testing::brute_clique_number(g));
    CHECK(h.independent.size() == testing::brute_clique_number(g.complement()));
    auto flipped = max_homogeneous(g.complement());
    CHECK(flipped.hom == h.hom);
  }
  // Self-complementary: the 5-cycle and the Paley graph on 13 vertices.
  Graph paley(13);
  for (Vertex u = 0; u < 13; ++u) {
    for (Vertex v = u + 1; v < 13; ++v) {
      const Vertex d = v - u;
      if (d == 1 || d == 3 || d == 4 || d == 9 || d == 10 || d == 12) paley.add_edge(u, v);
    }
  }
  auto p = max_homogeneous(paley);
  CHECK(p.clique.size() == p.independent.size());
  CHECK(p.hom == 3);
}

TEST_CASE("ramsey report") {
  auto cliques = stable_ramsey_report(Family::Cliques, 3, {16, 25, 40, 64});
  for (const auto& row : cliques.rows) {
    CHECK(row.stable);
    CHECK(row.at_least_sqrt);
    const auto m = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(row.n))));
    CHECK(row.hom == std::max(m, (row.n + m - 1) / m));
  }
  auto multi = stable_ramsey_report(Family::Multipartite, 3, {16, 36});
  for (const auto& row : multi.rows) CHECK(row.at_least_sqrt);

  auto random = stable_ramsey_report(Family::Random, 4, {40}, 10);
  std::size_t rejected = 0;
  for (const auto& row : random.rows) rejected += !row.stable;
  CHECK(rejected >= 8);
  CHECK(random.log.size() == rejected);

  auto single = stable_ramsey_report(Family::Cliques, 2, {1});
  CHECK(single.rows[0].hom == 1);
  CHECK(parse_graph_family("multipartite") == Family::Multipartite);
  CHECK_THROWS_AS(parse_graph_family("trees"), Error);
}
