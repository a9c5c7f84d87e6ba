#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "modelglass/cli.hpp"

using modelglass::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(MODELGLASS_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("usage") {
  CHECK(call({"--help"}).code == 0);
  CHECK(call({}).code == 2);
  CHECK(call({"nonsense"}).code == 2);
  CHECK(call({"eval", "--sentence", "forall x. ("}).code == 2);
}

TEST_CASE("eval") {
  auto r = call({"eval", "--model", data("z5.model"), "--sig", data("ring.sig"), "--sentence", "forall x. x + 0 = x"});
  CHECK(r.code == 0);
  CHECK(r.out == "true\n");
  auto f = call({"eval", "--model", data("z5.model"), "--sig", data("ring.sig"), "--sentence", "exists x. x * x = 1 + 1"});
  CHECK(f.out == "false\n");
  auto missing = call({"eval", "--model", data("absent.model"), "--sig", data("ring.sig"), "--sentence", "x = x"});
  CHECK(missing.code != 0);
}

TEST_CASE("graph commands") {
  auto none = call({"graph", "half-graph", "--k", "2", data("k22.edges")});
  CHECK(none.code == 0);
  CHECK(none.out == "none\n");
  auto found = call({"graph", "half-graph", "--k", "8", data("half8.edges")});
  CHECK(found.code == 0);
  CHECK(found.out != "none\n");
  auto reg = call({"graph", "regularity", "--eps", "1/4", "--k", "3", data("cliques4x16.edges")});
  CHECK(reg.code == 0);
}

TEST_CASE("json output is deterministic") {
  std::vector<std::string> args{"graph", "pair", "--format", "json", "--seed", "5", "--eps", "1/4",
                                "--x", "0,1,2,3,4,5,6,7", "--y", "8,9,10,11,12,13,14,15", data("half8.edges")};
  auto a = call(args);
  auto b = call(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["schema"] == 1);
  CHECK(j["tool"] == "modelglass");
  CHECK(j.contains("result"));
}

TEST_CASE("filters and types") {
  auto f = call({"filter", "{{2,3},{3,4}} over 5", "--generate"});
  CHECK(f.code == 0);
  CHECK(f.out.find("{3}") != std::string::npos);
  auto u = call({"filter", "--enumerate", "3"});
  CHECK(u.code == 0);
  auto t = call({"types", "--dlo", "2"});
  CHECK(t.code == 0);
  CHECK(t.out.find('5') != std::string::npos);
  auto bad = call({"filter", "{{0},{1}} over 2", "--generate"});
  CHECK(bad.code == 1);
}
