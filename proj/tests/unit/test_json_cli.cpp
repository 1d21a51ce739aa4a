#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "abelmoments/cli.hpp"
#include "abelmoments/json_io.hpp"

using namespace abelmoments;
using io::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("json round trips") {
  const Partition lambda{3, 1, 1};
  CHECK(io::partition_from_json(io::to_json(lambda)) == lambda);
  CHECK(io::parse_partition("[]") == Partition{});
  CHECK_THROWS_AS(io::parse_partition("[1,2]"), DomainError);
  CHECK_THROWS_AS(io::parse_partition("nope"), DomainError);

  CHECK(io::rational_from_json(json("3/9")) == Rational(1, 3));
  CHECK(io::rational_from_json(json(4)) == Rational(4));
  CHECK(io::to_json(Rational(-2, 4)) == json("-1/2"));

  Distribution d;
  d.p = 3;
  d.masses[Partition{1}] = Rational(1, 4);
  d.masses[Partition{}] = Rational(3, 4);
  const Distribution back = io::distribution_from_json(io::to_json(d));
  CHECK(back.p == 3);
  CHECK(back.masses == d.masses);

  const MomentTable table = moments_from_distribution(d);
  const MomentTable table_back = io::moment_table_from_json(io::to_json(table));
  CHECK(table_back.entries == table.entries);
  CHECK(table_back.finite());

  const MomentTable ones = io::moment_table_from_json(json::parse(R"({"p":2,"provider":{"kind":"constant","value":"1"}})"));
  CHECK_FALSE(ones.finite());
  CHECK(ones.at(Partition{4, 4}) == Rational(1));
}

TEST_CASE("multi-prime tables from json") {
  const json dense = json::parse(R"({"primes":[2,3],"entries":[{"partitions":[[1],[1]],"value":"1"}]})");
  const MultiMomentTable t = io::multi_moment_table_from_json(dense);
  CHECK(t.primes == std::vector<long>{2, 3});
  CHECK(t.at({Partition{1}, Partition{1}}) == Rational(1));
  CHECK(t.at({Partition{1}, Partition{}}) == Rational(0));
  const MultiMomentTable again = io::multi_moment_table_from_json(io::to_json(t));
  CHECK(again.entries == t.entries);
}

TEST_CASE("sim config from json keeps defaults") {
  const sim::SimConfig c = io::sim_config_from_json(json::parse(R"({"p":3,"n":6})"));
  CHECK(c.p == 3);
  CHECK(c.n == 6);
  CHECK(c.d == 1);
  CHECK(c.sample_count == 1000);
}

TEST_CASE("cli sur-count") {
  Run r = run({"sur-count", "--lambda", "[2,1]", "--mu", "[1]", "--p", "2"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out == "3\n");
  r = run({"sur-count", "--lambda", "[1,1,1]", "--mu", "[1,1]", "--p", "3", "--brute"});
  CHECK(r.out == "624\n");
}

TEST_CASE("cli moments and invert") {
  const std::string dist = R"({"p":2,"entries":[{"partition":[],"value":"1/2"},{"partition":[1],"value":"1/2"}]})";
  Run m = run({"moments", "--dist-json", dist});
  REQUIRE(m.code == 0);
  const json table = json::parse(m.out);
  Run inv = run({"invert", "--moments-json", table.dump(), "--nu", "[1]"});
  CHECK(inv.code == 0);
  CHECK(inv.out == "1/2\n");
  Run js = run({"invert", "--moments-json", table.dump(), "--nu", "[]", "--json", "--decimal", "3"});
  const json parsed = json::parse(js.out);
  CHECK(parsed["value"] == "1/2");
  CHECK(parsed["diagnostics"]["mode"] == "exact-finite-support");
  CHECK(parsed["decimal_preview"]["value"] == "0.500");
}

TEST_CASE("cli files and fixed level") {
  const std::string path = "cli_test_moments.json";
  {
    std::ofstream f(path);
    f << R"({"p":3,"entries":[{"partition":[],"value":"1"},{"partition":[1],"value":"2"},{"partition":[2],"value":"6"}]})";
  }
  // Moments of a point mass at Z/9: #Sur to Z/3 is 2, to Z/9 is 6.
  Run r = run({"invert-fixed-level", "--moments", path, "--nu", "[1]", "--level", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "1/1\n");
  r = run({"invert", "--moments", path, "--nu", "[2]"});
  CHECK(r.out == "1/1\n");
  std::remove(path.c_str());
}

TEST_CASE("cli invert-multi") {
  const std::string table = R"({"primes":[2,3],"factors":[{"p":2,"provider":{"kind":"constant","value":"1"}},{"p":3,"provider":{"kind":"constant","value":"1"}}]})";
  Run r = run({"invert-multi", "--moments-json", table, "--nu", "[[],[]]", "--mode", "cap", "--cap", "10"});
  CHECK(r.code == 0);
  CHECK(r.out.find('/') != std::string::npos);
}

TEST_CASE("cli error paths and exit codes") {
  CHECK(run({}).code == cli::kExitError);
  CHECK(run({"--help"}).code == cli::kExitOk);
  CHECK(run({"sur-count", "--lambda", "[1,2]", "--mu", "[1]"}).code == cli::kExitError);
  CHECK(run({"invert", "--moments-json", "{", "--nu", "[]"}).code == cli::kExitError);
  const std::string ones = R"({"p":2,"provider":{"kind":"constant","value":"1"}})";
  CHECK(run({"invert", "--moments-json", ones, "--nu", "[]"}).code == cli::kExitError);
  const Run nc = run({"invert", "--moments-json", ones, "--nu", "[]", "--mode", "adaptive", "--tolerance",
                      "1/1000000000000000000000000000000", "--hard-cap", "4"});
  CHECK(nc.code == cli::kExitNonConvergence);
  CHECK(json::parse(nc.out)["converged"] == false);
}

TEST_CASE("cli verify and partitions") {
  Run v = run({"verify", "--suite", "hl-cancellation", "--max-size", "3"});
  CHECK(v.code == 0);
  CHECK(v.out.find("passed 22/22") != std::string::npos);
  Run p = run({"partitions", "--max-size", "2"});
  CHECK(p.out == "[[],[1],[2],[1,1]]\n");
  Run c = run({"partitions", "--conjugate", "[3,1]"});
  CHECK(c.out == "[2,1,1]\n");
}

TEST_CASE("cli simulate is deterministic") {
  const std::vector<std::string> base{"simulate", "--p", "2", "--n", "4", "--samples", "500", "--seed", "3"};
  std::vector<std::string> sharded = base;
  sharded.insert(sharded.end(), {"--shards", "5"});
  const Run a = run(base), b = run(sharded);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const json report = json::parse(a.out);
  CHECK(report["rows"].size() == 4);
}
