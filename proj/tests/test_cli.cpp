#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "sortnet/dispatch.hpp"
#include "sortnet/io.hpp"

using namespace sortnet;
using namespace sortnet::testing;

namespace {

std::string cli_bin() {
  const char* bin = std::getenv("SORTNET_CLI_BIN");
  return bin ? bin : "";
}

std::string corpus_dir() {
  const char* dir = std::getenv("SORTNET_CORPUS");
  return dir ? dir : "corpus";
}

int run(const std::string& args, std::string* out = nullptr) {
  const std::string out_path = "cli_test_stdout.txt";
  int status = std::system((cli_bin() + " " + args + " > " + out_path + " 2>/dev/null").c_str());
  if (out) {
    std::ifstream in(out_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    *out = ss.str();
  }
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("dispatch: auto rules by variant and target") {
  SolveOptions options;
  Digraph small(3);
  small.add_edge(0, 1);
  Instance tiny{Variant::RSPP, small, {{0, 1, std::nullopt}}, 1, std::nullopt};
  CHECK(choose_algorithm(tiny, options) == Algorithm::Oracle);  // tiny input

  // The example network carries five commodities, past the tiny threshold.
  Instance big_rspp = example_rspp_instance(1);
  CHECK(choose_algorithm(big_rspp, options) == Algorithm::T1);
  big_rspp.target = 2;
  CHECK(choose_algorithm(big_rspp, options) == Algorithm::RsppColorcode);

  Instance spp = example_spp_instance(1);
  spp.graph = big_rspp.graph;
  CHECK(choose_algorithm(spp, options) == Algorithm::SppKernel);
  spp.target = 2;
  CHECK(choose_algorithm(spp, options) == Algorithm::SppRamsey);
  options.decomposition = build_nice_tree_decomposition(spp.graph);
  CHECK(choose_algorithm(spp, options) == Algorithm::Twdp);

  Digraph wide(9);
  wide.add_edge(0, 1);
  Instance pl{Variant::RSPP_PL, wide, {{0, 1, std::nullopt}}, 2, 3};
  CHECK(choose_algorithm(pl, {}) == Algorithm::Twdp);
}

TEST_CASE("dispatch: forced algorithms reject mismatched instances") {
  SolveOptions options;
  options.algorithm = Algorithm::T1;
  CHECK_THROWS_AS(choose_algorithm(example_spp_instance(1), options), std::invalid_argument);
  options.algorithm = Algorithm::Twdp;
  CHECK_THROWS_AS(choose_algorithm(example_rspp_instance(1), options), std::invalid_argument);
  options.algorithm = Algorithm::SppKernel;
  CHECK_THROWS_AS(choose_algorithm(example_spp_instance(2), options), std::invalid_argument);
}

TEST_CASE("cli: solve with the polynomial algorithm and validate the output") {
  REQUIRE(!cli_bin().empty());
  const std::string instance_path = corpus_dir() + "/example_rspp.instance";
  std::string out;
  int code = run("solve " + instance_path + " --algo t1 --output cli_test_sol.txt", &out);
  CHECK(code == 0);
  CHECK(out.find("YES") == 0);

  Instance instance = parse_instance(read_file(instance_path));
  Digraph h = parse_solution(read_file("cli_test_sol.txt"), instance);
  CHECK(validate_solution(instance, h).valid);
}

TEST_CASE("cli: validate the shipped solution files") {
  REQUIRE(!cli_bin().empty());
  CHECK(run("validate " + corpus_dir() + "/example_spp.instance " + corpus_dir() +
            "/example_spp_t2.solution") == 0);
  CHECK(run("validate " + corpus_dir() + "/example_rspp.instance " + corpus_dir() +
            "/example_rspp_t1.solution") == 0);
}

TEST_CASE("cli: malformed input exits with a usage error") {
  REQUIRE(!cli_bin().empty());
  write_file("cli_test_bad.instance", "{ definitely not an instance ]");
  CHECK(run("solve cli_test_bad.instance") == 2);
  CHECK(run("solve corpus_that_does_not_exist.instance") == 2);
}

TEST_CASE("cli: min-target reproduces the worked example") {
  REQUIRE(!cli_bin().empty());
  std::string out;
  CHECK(run("min-target " + corpus_dir() + "/example_spp.instance", &out) == 0);
  CHECK(out == "2\n");
  CHECK(run("min-target " + corpus_dir() + "/example_rspp.instance", &out) == 0);
  CHECK(out == "1\n");
}

TEST_CASE("cli: identical seeds give byte-identical outputs") {
  REQUIRE(!cli_bin().empty());
  // Random coloring mode forces the seed into play; two commodities keep the
  // color count inside the template budget.
  Digraph d(8);
  for (int v = 0; v + 1 < 8; ++v) d.add_edge(v, v + 1);
  d.add_edge(0, 4);
  Instance two{Variant::RSPP, d,
               {{0, 7, std::nullopt}, {4, 6, std::nullopt}}, 2, std::nullopt};
  write_file("cli_test_rspp2.instance", serialize_instance(two));
  int a = run("solve cli_test_rspp2.instance --algo rspp-colorcode --coloring-mode random"
              " --seed 5 --trials 50 --output cli_test_a.txt");
  int b = run("solve cli_test_rspp2.instance --algo rspp-colorcode --coloring-mode random"
              " --seed 5 --trials 50 --output cli_test_b.txt");
  CHECK(a == 0);
  CHECK(b == 0);
  CHECK(read_file("cli_test_a.txt") == read_file("cli_test_b.txt"));
}

TEST_CASE("cli: solvers and the oracle agree across the shipped corpus") {
  REQUIRE(!cli_bin().empty());
  for (const std::string name :
       {"example_spp.instance", "example_rspp.instance", "random_rspp_11.instance",
        "random_spp_21.instance", "random_pl_31.instance"}) {
    const std::string path = corpus_dir() + "/" + name;
    int with_auto = run("solve " + path + " --algo auto");
    int with_oracle = run("solve " + path + " --algo oracle");
    CAPTURE(name);
    CHECK(with_auto == with_oracle);
  }
}

TEST_CASE("cli: budget exhaustion maps to exit code 3") {
  REQUIRE(!cli_bin().empty());
  CHECK(run("solve " + corpus_dir() + "/example_rspp.instance --algo oracle --max-witnesses 1") ==
        3);
}
