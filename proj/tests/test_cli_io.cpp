// Copyright 2026 The chorefair Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "chorefair/bench.hpp"
#include "chorefair/cli.hpp"
#include "chorefair/errors.hpp"
#include "chorefair/generate.hpp"
#include "chorefair/io.hpp"
#include "chorefair/solve.hpp"
#include "support.hpp"

using namespace chorefair;
using chorefair::testing::q;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Fresh directory per test case, removed on scope exit.
class Scratch {
 public:
  Scratch() {
    static std::atomic<int> counter{0};
    dir_ = fs::temp_directory_path() /
           ("chorefair-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("nothing thrown");
  return ErrorKind::ParseError;
}

nlohmann::json json_of(const std::string& text) { return nlohmann::json::parse(text); }

}  // namespace

TEST_CASE("parse_instance minimal document") {
  const InstanceFile f = parse_instance(R"({"version": 1, "n": 1, "m": 1, "costs": [["7/2"]]})");
  CHECK(f.instance.n() == 1);
  CHECK(f.instance.m() == 1);
  CHECK(f.instance.cost(0, 0) == q(7, 2));
  CHECK_FALSE(f.provenance.has_value());

  const InstanceFile ints = parse_instance(R"({"version": 1, "n": 1, "m": 2, "costs": [[3, "0"]]})");
  CHECK(ints.instance.cost(0, 0) == q(3));
}

TEST_CASE("parse_instance names the bad cell") {
  try {
    parse_instance(R"({"version": 1, "n": 2, "m": 2, "costs": [["1", "2"], ["3/0", "1"]]})");
    FAIL("accepted 3/0");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("costs[1][0]") != std::string::npos);
  }
  CHECK(kind_of([] { parse_instance("{\"version\": 1, \"n\": 1"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_instance(R"({"version": 2, "n": 1, "m": 1, "costs": [["1"]]})"); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([] { parse_instance(R"({"version": 1, "n": 1, "m": 1, "costs": [[1.5]]})"); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([] { parse_instance(R"({"version": 1, "n": 2, "m": 1, "costs": [["1"]]})"); }) ==
        ErrorKind::ValidationError);
  CHECK(kind_of([] { parse_instance(R"({"version": 1, "n": 1, "m": 1, "costs": [["-1"]]})"); }) ==
        ErrorKind::ValidationError);
}

TEST_CASE("golden instance file round-trips byte for byte") {
  const std::string text = read_text(testing::data_path("instance_golden.json"));
  const InstanceFile f = parse_instance(text);
  CHECK(emit_instance(f) == text);
  CHECK(f.instance.labels().size() == 4);
  REQUIRE(f.provenance.has_value());
  CHECK(f.provenance->kind == "uniform");
}

TEST_CASE("instance and allocation round trips") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const GenKind kind = static_cast<GenKind>(seed % 4);
    const InstanceFile f = generate_instance(kind, 1 + seed % 5, seed % 9, seed);
    CHECK(parse_instance(emit_instance(f)) == f);
  }
  InstanceFile plain{Instance({{q(1, 3), q(0)}, {q(5), q(22, 7)}}, {"a", "b \"quoted\""}), std::nullopt};
  CHECK(parse_instance(emit_instance(plain)) == plain);

  const AllocationFile a{Allocation({{0, 3}, {}, {1}}), true};
  CHECK(parse_allocation(emit_allocation(a)) == a);
  CHECK(kind_of([] { parse_allocation(R"({"version": 1, "bundles": [[0], [0]], "partial": false})"); }) ==
        ErrorKind::BundleOverlap);
}

TEST_CASE("generators") {
  GenParams p;
  p.eps = q(1, 4);
  const InstanceFile bi = generate_instance(GenKind::BiValued, 4, 10, 7, p);
  for (const auto& row : bi.instance.costs())
    for (const Rational& c : row) CHECK((c == q(1, 4) || c == q(1)));
  REQUIRE(bi.provenance.has_value());
  CHECK(bi.provenance->seed == 7);
  CHECK(bi.provenance->params.at("eps") == "1/4");

  const InstanceFile ido = generate_instance(GenKind::Ido, 5, 12, 3);
  const auto order = sorted_order(ido.instance, 0);
  for (Agent i = 1; i < 5; ++i) CHECK(sorted_order(ido.instance, i) == order);

  const InstanceFile same = generate_instance(GenKind::Identical, 3, 6, 9);
  CHECK(same.instance.costs()[0] == same.instance.costs()[2]);

  const InstanceFile uni = generate_instance(GenKind::Uniform, 3, 30, 5);
  for (const auto& row : uni.instance.costs())
    for (const Rational& c : row) CHECK((c >= q(0) && c <= q(1000)));

  CHECK(emit_instance(generate_instance(GenKind::Uniform, 3, 8, 42)) ==
        emit_instance(generate_instance(GenKind::Uniform, 3, 8, 42)));
  CHECK(emit_instance(generate_instance(GenKind::Uniform, 3, 8, 42)) !=
        emit_instance(generate_instance(GenKind::Uniform, 3, 8, 43)));

  CHECK(kind_of([] { generate_instance(GenKind::Uniform, 0, 3, 1); }) == ErrorKind::BadParams);
  GenParams bad;
  bad.eps = q(1);
  CHECK(kind_of([&] { generate_instance(GenKind::BiValued, 3, 3, 1, bad); }) == ErrorKind::BadParams);
  CHECK(kind_of([] { parse_gen_kind("gaussian"); }) == ErrorKind::BadParams);
}

TEST_CASE("rng is reproducible and in range") {
  Rng a(123), b(123);
  for (int k = 0; k < 1000; ++k) {
    const long x = a.between(-3, 3);
    CHECK(x == b.between(-3, 3));
    CHECK((x >= -3 && x <= 3));
  }
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(5, 9) == derive_seed(5, 9));
}

TEST_CASE("run_solver dispatch") {
  GenParams p;
  const Instance bi3 = generate_instance(GenKind::BiValued, 3, 7, 1, p).instance;
  const SolveResult a = run_solver(bi3, Algorithm::Auto);
  CHECK(a.algorithm == "bi3");
  CHECK(a.bound == q(1));
  CHECK(a.within_bound());

  const Instance five = generate_instance(GenKind::Uniform, 5, 20, 11).instance;
  const SolveResult g = run_solver(five, Algorithm::General);
  CHECK(g.bound == q(75));
  CHECK(g.within_bound());
  CHECK(run_solver(five, Algorithm::Auto).algorithm == "general");

  const Instance four = generate_instance(GenKind::Uniform, 4, 9, 2).instance;
  CHECK(kind_of([&] { run_solver(four, Algorithm::Three); }) == ErrorKind::InapplicableAlgorithm);
  CHECK(kind_of([&] { run_solver(four, Algorithm::Bin); }) == ErrorKind::InapplicableAlgorithm);

  const Instance two = make_instance({{5, 4, 3}, {1, 1, 1}});
  const SolveResult dc = run_solver(two, Algorithm::Auto);
  CHECK(dc.algorithm == "divide-and-choose");
  CHECK(dc.report.alpha <= ExtRational(1));

  const SolveResult t = run_solver(four, Algorithm::Trivial);
  CHECK(t.bound == q(5));
  CHECK(t.within_bound());
  CHECK(run_solver(make_instance({{1}, {1}, {1}}), Algorithm::Trivial).bound == q(0));

  const SolveResult solo = run_solver(make_instance({{1, 2}}), Algorithm::Auto);
  CHECK(solo.allocation.bundle(0) == ItemSet{0, 1});
}

TEST_CASE("cli generate, solve and verify") {
  Scratch s;
  const std::string inst = s.path("inst.json");
  const std::string alloc = s.path("alloc.json");
  REQUIRE(cli({"generate", "--kind", "bivalued", "--n", "3", "--m", "6", "--seed", "7", "--out", inst}).code ==
          kExitOk);

  const Run solved = cli({"solve", "--in", inst, "--out", alloc});
  REQUIRE(solved.code == kExitOk);
  const auto report = json_of(solved.out);
  CHECK(report["algorithm"] == "bi3");
  CHECK(report["bound"] == "1");
  CHECK(report["within_bound"] == true);
  CHECK(report["provenance"]["seed"] == 7);
  CHECK_FALSE(report.contains("wall_ms"));

  // The emitted allocation re-verifies from disk to the same alpha.
  const Run verified = cli({"verify", "--in", inst, "--alloc", alloc, "--alpha", "1"});
  CHECK(verified.code == kExitOk);
  CHECK(json_of(verified.out)["alpha"] == report["alpha"]);

  CHECK(json_of(cli({"solve", "--in", inst, "--timing"}).out).contains("wall_ms"));
}

TEST_CASE("cli verify exit codes") {
  Scratch s;
  const std::string inst = s.path("inst.json");
  write_text(inst, emit_instance({make_instance({{3, 1, 2}, {1, 1, 1}}), std::nullopt}));

  const std::string bad = s.path("bad.json");
  write_text(bad, emit_allocation({Allocation({{0, 1}, {2}}), false}));
  const Run over = cli({"verify", "--in", inst, "--alloc", bad, "--alpha", "1"});
  CHECK(over.code == kExitBoundViolated);
  const auto r = json_of(over.out);
  CHECK(r["alpha"] == "3/2");
  CHECK(r["witness"]["envier"] == 0);
  CHECK(r["witness"]["envied"] == 1);
  CHECK(r["witness"]["removed"] == 1);
  CHECK(cli({"verify", "--in", inst, "--alloc", bad, "--alpha", "3/2"}).code == kExitOk);

  const std::string singles = s.path("singles.json");
  write_text(singles, emit_allocation({Allocation({{0}, {1}}), true}));
  const Run zero = cli({"verify", "--in", inst, "--alloc", singles, "--alpha", "0"});
  CHECK(zero.code == kExitOk);
  CHECK(json_of(zero.out)["partial"] == true);

  const std::string wrong = s.path("wrong.json");
  write_text(wrong, emit_allocation({Allocation({{0}, {1}, {2}}), false}));
  CHECK(cli({"verify", "--in", inst, "--alloc", wrong}).code == kExitUsage);
}

TEST_CASE("cli usage and parse errors") {
  Scratch s;
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"solve"}).code == kExitUsage);
  CHECK(cli({"solve", "--in", s.path("missing.json")}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);

  const std::string broken = s.path("broken.json");
  write_text(broken, R"({"version": 1, "n": 1, "m": 1, "costs": [["3/0"]]})");
  const Run bad = cli({"solve", "--in", broken});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("costs[0][0]") != std::string::npos);

  const std::string neg = s.path("neg.json");
  write_text(neg, R"({"version": 1, "n": 1, "m": 2, "costs": [["1", "-2"]]})");
  const Run negative = cli({"solve", "--in", neg});
  CHECK(negative.code == kExitUsage);
  CHECK(negative.err.find("NegativeCost") != std::string::npos);

  const std::string four = s.path("four.json");
  REQUIRE(cli({"generate", "--n", "4", "--m", "6", "--out", four}).code == kExitOk);
  CHECK(cli({"solve", "--algorithm", "three", "--in", four}).code == kExitUsage);
  CHECK(cli({"solve", "--algorithm", "simplex", "--in", four}).code == kExitUsage);
  CHECK(cli({"bench", "--suite", "nope"}).code == kExitUsage);
  CHECK(cli({"generate", "--n", "0", "--m", "1"}).code == kExitUsage);
}

TEST_CASE("cli oracle") {
  Scratch s;
  const std::string inst = s.path("inst.json");
  write_text(inst, emit_instance({make_instance({{1, 1, 1, 1}, {1, 1, 1, 1}}), std::nullopt}));
  const Run r = cli({"oracle", "--in", inst});
  CHECK(r.code == kExitOk);
  const auto j = json_of(r.out);
  CHECK(j["best_alpha"] == "1/2");
  CHECK(j["efx_exists"] == true);
  CHECK(j["states_examined"].get<long>() >= 1);
  CHECK(cli({"oracle", "--in", inst, "--budget", "4"}).code == kExitUsage);
}

TEST_CASE("cli output is deterministic") {
  Scratch s;
  const Run a = cli({"generate", "--kind", "ido", "--n", "4", "--m", "9", "--seed", "5"});
  const Run b = cli({"generate", "--kind", "ido", "--n", "4", "--m", "9", "--seed", "5"});
  CHECK(a.out == b.out);

  const std::string c1 = s.path("a.csv");
  const std::string c2 = s.path("b.csv");
  const Run first = cli({"bench", "--suite", "tail", "--count", "50", "--out", c1});
  const Run second = cli({"bench", "--suite", "tail", "--count", "50", "--out", c2});
  CHECK(first.code == kExitOk);
  CHECK(first.out == second.out);
  CHECK(read_text(c1) == read_text(c2));
  CHECK(read_text(c1).rfind("suite,kind,key,count,max_alpha,bound,failures\n", 0) == 0);
}

TEST_CASE("bench reports do not depend on the thread count") {
  for (const std::string& suite : {"three-general", "round-robin", "bin"}) {
    BenchOptions one;
    one.count = 40;
    one.threads = 1;
    BenchOptions three = one;
    three.threads = 3;
    const BenchReport a = run_bench(suite, one);
    CHECK(a.ok());
    CHECK(report_csv(a) == report_csv(run_bench(suite, three)));
  }
  CHECK(kind_of([] { run_bench("nope"); }) == ErrorKind::UnknownSuite);
  const auto names = suite_names();
  CHECK(std::set<std::string>(names.begin(), names.end()).count("oracle-cross") == 1);
}
