#include <doctest.h>

#include "modelglass/error.hpp"
#include "modelglass/eval.hpp"
#include "modelglass/parser.hpp"
#include "modelglass/ultraproduct.hpp"
#include "random.hpp"

using namespace modelglass;

namespace {

IndexedFamily chains(std::initializer_list<std::size_t> lengths) {
  IndexedFamily fam;
  for (std::size_t n : lengths) fam.models.push_back(linear_order(n));
  return fam;
}

}  // namespace

TEST_CASE("principal ultraproducts collapse to the factor") {
  IndexedFamily fam = chains({2, 3, 4});
  for (std::size_t i = 0; i < 3; ++i) {
    auto up = ultraproduct(fam, principal_ultrafilter(3, i));
    CHECK(up.model.size() == fam.models[i].size());
    auto iso = iso_check(up.model, fam.models[i]);
    CHECK(iso.verdict == IsoVerdict::Isomorphic);
    CHECK(is_isomorphism(up.model, fam.models[i], iso.map));

    UltraproductOptions fast;
    fast.principal_fast_path = true;
    auto quick = ultraproduct(fam, principal_ultrafilter(3, i), fast);
    CHECK(quick.fast_path);
    CHECK(iso_check(quick.model, up.model).verdict == IsoVerdict::Isomorphic);
  }
  IndexedFamily single = chains({3});
  CHECK(iso_check(ultraproduct(single, principal_ultrafilter(1, 0)).model, single.models[0]).verdict ==
        IsoVerdict::Isomorphic);

  Model z5 = cyclic_ring(5);
  IndexedFamily power{{z5, z5, z5}};
  CHECK(iso_check(ultraproduct(power, principal_ultrafilter(3, 2)).model, z5).verdict == IsoVerdict::Isomorphic);
}

TEST_CASE("representatives never change the quotient") {
  IndexedFamily fam{{cyclic_ring(3), cyclic_ring(5), cyclic_ring(2)}};
  SetFamily d = principal_ultrafilter(3, 1);
  auto least = ultraproduct(fam, d);
  for (auto rep : {Representatives::LexGreatest, Representatives::Seeded}) {
    UltraproductOptions o;
    o.representatives = rep;
    o.seed = 17;
    auto other = ultraproduct(fam, d, o);
    CHECK(other.model == least.model);
    for (std::size_t e = 0; e < least.representatives.size(); ++e) {
      CHECK(other.representatives[e][1] == least.representatives[e][1]);
    }
  }
}

TEST_CASE("los transfer") {
  IndexedFamily fam = chains({2, 3, 4});
  Formula three = parse_formula("exists x. exists y. exists z. (x < y & y < z)", fam.models[0].signature());
  auto r = los_check(fam, principal_ultrafilter(3, 2), three);
  CHECK(r.in_ultraproduct);
  CHECK(r.in_factors == std::vector<bool>{false, true, true});
  CHECK(r.truth_set == Subset{0b110});
  CHECK(r.truth_set_large);
  CHECK(r.transfer_holds);

  auto taut = los_check(fam, principal_ultrafilter(3, 0), parse_formula("forall x. x = x", fam.models[0].signature()));
  CHECK(taut.in_ultraproduct);
  CHECK(taut.transfer_holds);

  CHECK_THROWS_AS(los_check(fam, principal_ultrafilter(3, 0), parse_formula("x = x", fam.models[0].signature())), Error);
  CHECK_THROWS_AS(ultraproduct(fam, SetFamily(3, {0b111})), Error);
}

TEST_CASE("los transfer on random families") {
  testing::Rng rng(61);
  auto sigs = testing::fixed_signatures();
  for (int trial = 0; trial < 60; ++trial) {
    const Signature& sig = sigs[trial % sigs.size()];
    IndexedFamily fam;
    const std::size_t m = rng.between(1, 3);
    for (std::size_t i = 0; i < m; ++i) fam.models.push_back(testing::random_model(sig, rng.between(1, 3), rng));
    SetFamily d = principal_ultrafilter(m, rng.below(m));
    auto up = ultraproduct(fam, d);
    for (int s = 0; s < 4; ++s) {
      Formula f = testing::close_formula(testing::random_formula(sig, rng, 4, {"x", "y"}), rng);
      auto r = los_check(up, fam, f);
      CHECK(r.transfer_holds);
      CHECK(r.in_ultraproduct == reference::eval_formula(up.model, f, {}));
    }
  }
}

TEST_CASE("isomorphism checks") {
  auto chain = iso_check(linear_order(2), linear_order(3));
  CHECK(chain.verdict == IsoVerdict::NotIsomorphic);
  REQUIRE(chain.distinguishing.has_value());
  CHECK_FALSE(chain.distinguishing_holds_in_first);
  CHECK(print_formula(*chain.distinguishing) == "exists x. exists y. exists z. ((x < y) & (y < z))");

  Model edgeless = load_model("model 2\nrel E:\n", graph_signature());
  Model k2 = load_model("model 2\nrel E: (0,1) (1,0)\n", graph_signature());
  auto g = iso_check(edgeless, k2);
  CHECK(g.verdict == IsoVerdict::NotIsomorphic);
  REQUIRE(g.distinguishing.has_value());
  CHECK(print_formula(*g.distinguishing) == "exists x. exists y. E(x, y)");
  CHECK_FALSE(eval_formula(edgeless, *g.distinguishing, {}));
  CHECK(eval_formula(k2, *g.distinguishing, {}));

  IsoOptions tiny;
  tiny.max_nodes = 1;
  Model z7 = cyclic_ring(7);
  CHECK(iso_check(z7, z7, tiny).verdict != IsoVerdict::NotIsomorphic);
  CHECK(to_string(IsoVerdict::Inconclusive) == "inconclusive");

  CHECK(prime_field(5) == cyclic_ring(5));
  CHECK_THROWS_AS(prime_field(6), Error);
}
