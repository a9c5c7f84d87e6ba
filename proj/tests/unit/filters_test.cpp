#include <doctest.h>

#include <bit>

#include "modelglass/error.hpp"
#include "modelglass/filters.hpp"
#include "random.hpp"

using namespace modelglass;

namespace {

Subset set_of(std::initializer_list<std::size_t> xs) {
  Subset s = 0;
  for (std::size_t x : xs) s |= Subset{1} << x;
  return s;
}

// Straight from the definition, over an explicit list of members.
bool oracle_filter(std::size_t base, const std::vector<bool>& in) {
  const Subset full = full_subset(base);
  bool nonempty = false;
  for (Subset a = 0; a <= full; ++a) {
    if (!in[a]) continue;
    nonempty = true;
    if (a == 0) return false;
    for (Subset b = 0; b <= full; ++b) {
      if ((a & b) == a && !in[b]) return false;
      if (in[b] && !in[a & b]) return false;
    }
  }
  return nonempty;
}

bool oracle_ultrafilter(std::size_t base, const std::vector<bool>& in) {
  if (!oracle_filter(base, in)) return false;
  const Subset full = full_subset(base);
  for (Subset a = 0; a <= full; ++a) {
    if (!in[a] && !in[full & ~a]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("filter examples") {
  SetFamily above3 = principal_filter(5, set_of({3}));
  CHECK(above3.size() == 16);
  CHECK(is_filter(above3).ok);

  auto with_empty = is_filter(SetFamily(2, {0, 1, 3}));
  CHECK_FALSE(with_empty.ok);
  CHECK(with_empty.witness == std::vector<Subset>{0});

  auto pair = is_filter(SetFamily(3, {set_of({0, 1}), set_of({1, 2}), set_of({0, 1, 2})}));
  CHECK_FALSE(pair.ok);
  CHECK(pair.violation == "not closed under intersection");
  CHECK(pair.witness == std::vector<Subset>{set_of({0, 1}), set_of({1, 2})});

  CHECK_FALSE(is_filter(SetFamily(3, {})).ok);
  auto not_up = is_filter(SetFamily(2, {set_of({0})}));
  CHECK(not_up.violation == "not upward closed");
}

TEST_CASE("generated filters") {
  SetFamily gens = parse_family("{{2,3},{3,4}} over 5");
  SetFamily f = generated_filter(gens);
  CHECK(f == principal_filter(5, set_of({3})));
  CHECK(limit_points(f) == set_of({3}));

  SetFamily whole(4, {full_subset(4)});
  CHECK(generated_filter(whole) == whole);
  CHECK_THROWS_WITH_AS(generated_filter(SetFamily(2, {set_of({0}), set_of({1})})),
                       doctest::Contains("empty intersection"), Error);
}

TEST_CASE("ultrafilters") {
  CHECK(is_ultrafilter(principal_ultrafilter(4, 2)));
  CHECK_FALSE(is_ultrafilter(SetFamily(3, {full_subset(3)})));
  // Co-singletons plus the base: {0,1} and {1,2} meet in {1}, which is absent.
  SetFamily frechet(3, {set_of({1, 2}), set_of({0, 2}), set_of({0, 1}), full_subset(3)});
  CHECK_FALSE(is_filter(frechet).ok);
  CHECK_FALSE(is_ultrafilter(frechet));

  auto three = enumerate_ultrafilters(3);
  CHECK(three.size() == 3);
  for (const auto& u : three) {
    CHECK(is_filter(u).ok);
    CHECK(is_ultrafilter(u));
  }
  auto one = enumerate_ultrafilters(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == SetFamily(1, {set_of({0})}));
  CHECK_THROWS_AS(enumerate_ultrafilters(13), CapExceeded);

  CHECK(limit_points(principal_ultrafilter(5, 3)) == set_of({3}));
  CHECK(limit_points(SetFamily(5, {full_subset(5)})) == full_subset(5));
}

TEST_CASE("all families over a base of size 3 against the definitions") {
  // 2^8 families; the oracle finds exactly the three principal ultrafilters.
  std::size_t filters = 0, ultras = 0;
  for (std::uint32_t fam = 0; fam < 256; ++fam) {
    std::vector<bool> in(8);
    std::vector<Subset> members;
    for (Subset a = 0; a < 8; ++a) {
      in[a] = (fam >> a & 1U) != 0;
      if (in[a]) members.push_back(a);
    }
    SetFamily f(3, members);
    const bool is_f = oracle_filter(3, in);
    const bool is_u = oracle_ultrafilter(3, in);
    CHECK(is_filter(f).ok == is_f);
    CHECK(is_ultrafilter(f) == is_u);
    filters += is_f;
    ultras += is_u;
  }
  CHECK(filters == 7);
  CHECK(ultras == 3);
}

TEST_CASE("random generated filters") {
  testing::Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t base = rng.between(1, 8);
    const Subset full = full_subset(base);
    Subset seed = 0;
    while (seed == 0) seed = rng.engine()() & full;
    std::vector<Subset> gens;
    for (std::size_t i = rng.between(1, 4); i > 0; --i) gens.push_back((rng.engine()() & full) | seed);
    SetFamily f = generated_filter(SetFamily(base, gens));
    CHECK(is_filter(f).ok);
    const Subset lim = limit_points(f);
    CHECK(lim != 0);
    CHECK(f.contains(lim));
    CHECK(is_ultrafilter(f) == (std::popcount(lim) == 1));
    CHECK(generated_filter(f) == f);
    for (Subset g : gens) CHECK(f.contains(g));
  }
}

TEST_CASE("family text") {
  SetFamily f = parse_family("{{2,3},{3,4}} over 5");
  CHECK(f.base() == 5);
  CHECK(format_family(f).find("{2,3}") != std::string::npos);
  CHECK(parse_family(format_family(f)) == f);
  CHECK(parse_family("{{0},{1}}").base() == 2);
  CHECK(parse_family("{{}} over 3").contains(0));
  CHECK_THROWS_AS(parse_family("{{5}} over 3"), ParseError);
  CHECK_THROWS_AS(parse_family("{{1,2}"), ParseError);
  CHECK(format_subset(set_of({0, 2})) == "{0,2}");
  CHECK(subset_elements(set_of({1, 4})) == std::vector<std::size_t>{1, 4});
}
