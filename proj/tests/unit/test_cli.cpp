#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "mdse/cli.hpp"
#include "mdse/document.hpp"
#include "test_support.hpp"

using namespace mdse;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) {
  return (std::filesystem::path(MDSE_FIXTURE_DIR) / name).string();
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("format_probability is fixed with nine decimals") {
  CHECK(cli::format_probability(0.57) == "0.570000000");
  CHECK(cli::format_probability(1.0) == "1.000000000");
  CHECK(cli::format_probability(6.0 / 7.0) == "0.857142857");
}

TEST_CASE("validate") {
  const Run ok = run({"validate", fixture("minimal.mdse"), "--strict"});
  CHECK(ok.code == cli::kExitOk);
  CHECK(contains(ok.out, "result: passed"));

  const Run loop = run({"validate", fixture("loop.mdse")});
  CHECK(loop.code == cli::kExitValidation);
  CHECK(contains(loop.out, "  loop\t"));
  CHECK(contains(loop.out, "result: failed"));
}

TEST_CASE("infer") {
  const Run r = run({"infer", fixture("financial.mdse"), "--event", "3"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.rfind("0.570000000\n", 0) == 0);
  CHECK(contains(r.out, "formula: full-probability"));

  const Run prime = run({"infer", fixture("minimal.mdse"), "--event", "3", "--expanded"});
  CHECK(prime.code == cli::kExitOk);
  CHECK(prime.out.rfind("0.600000000\n", 0) == 0);

  const Run product = run({"infer", fixture("minimal.mdse"), "--event", "3", "--mode", "and"});
  CHECK(product.out.rfind("0.050000000\n", 0) == 0);

  CHECK(run({"infer", fixture("loop.mdse"), "--event", "1"}).code == cli::kExitValidation);
  CHECK(run({"infer", fixture("financial.mdse"), "--event", "0"}).code == cli::kExitUsage);
  CHECK(run({"infer", fixture("financial.mdse")}).code == cli::kExitUsage);
  CHECK(run({"infer", fixture("financial.mdse"), "--event", "3", "--mode", "xor"}).code == cli::kExitUsage);
}

TEST_CASE("posterior and update") {
  const Run r = run({"posterior", fixture("reweighting.mdse"), "--group", "0", "--event", "2"});
  CHECK(r.code == cli::kExitOk);
  CHECK(contains(r.out, "0.857142857"));
  CHECK(contains(r.out, "0.142857143"));
  CHECK(contains(r.out, "map: 0"));

  const auto dir = std::filesystem::temp_directory_path() / "mdse-cli-test";
  std::filesystem::create_directories(dir);
  const std::string updated = (dir / "updated.mdse").string();
  const Run u = run({"update", fixture("reweighting.mdse"), "--group", "0", "--event", "2", "--out", updated});
  CHECK(u.code == cli::kExitOk);
  const MdseGraph g = load_graph_file(updated);
  CHECK(std::abs(g.prior(NodeId{0}) - 6.0 / 7.0) < 1e-12);
  std::filesystem::remove_all(dir);
}

TEST_CASE("zero evidence maps to the numeric exit code") {
  const auto dir = std::filesystem::temp_directory_path() / "mdse-cli-zero";
  std::filesystem::create_directories(dir);
  GraphBuilder b;
  const auto h = b.add_hypothesis_group(std::vector<double>{0.5, 0.5}, GroupRole::Star);
  const NodeId a = b.add_event(EventKind::Star);
  b.add_edge(h[0], a, 0.0);
  b.add_edge(h[1], a, 0.0);
  const std::string path = (dir / "zero.mdse").string();
  save_graph_file(path, b.freeze());
  const Run r = run({"posterior", path, "--group", "0", "--event", "2"});
  CHECK(r.code == cli::kExitNumeric);
  CHECK(contains(r.err, "ZeroEvidence"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("generate is deterministic and reproduces the fixture") {
  const std::vector<std::string> args{"generate", "--seed", "7", "--n-star", "2", "--n-prime", "2",
                                      "--groups-star", "1", "--groups-prime", "1", "--max-group-size",
                                      "3", "--fixed-group-size", "--relaxed"};
  const Run first = run(args);
  const Run second = run(args);
  CHECK(first.code == cli::kExitOk);
  CHECK(first.out == second.out);
  CHECK(first.out == serialize_graph(load_graph_file(fixture("random-seed7.mdse"))));
}

TEST_CASE("oracle-check") {
  const Run r = run({"oracle-check", fixture("random-seed7.mdse"), "--all"});
  CHECK(r.code == cli::kExitOk);
  CHECK(contains(r.out, "result: agree"));

  const auto report = cli::run_oracle_check(mdse::testing::minimal_graph(), true);
  CHECK(report.passed);
  CHECK(report.max_delta <= 1e-12);
  CHECK_FALSE(report.rows.empty());
}

TEST_CASE("bench subcommand") {
  const Run r = run({"bench", "--sizes", "16:8:0.25,32:16:0.125", "--repetitions", "3"});
  CHECK(r.code == cli::kExitOk);
  CHECK(contains(r.out, "n,m,e,median_ns,repetitions"));
  CHECK(contains(r.out, "fit(edges): skipped"));
  CHECK(run({"bench", "--sizes", "16:8"}).code == cli::kExitUsage);
}

TEST_CASE("usage errors and help") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitOk);
  CHECK(run({"validate", fixture("absent.mdse")}).code == cli::kExitUsage);
}
