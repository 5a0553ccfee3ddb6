#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "testutil.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "crnloci_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out = scratch_dir() / ("out" + std::to_string(counter) + ".txt");
  const fs::path err = scratch_dir() / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string command = testutil::env_dir("CRN_CLI") + " " + args + " >" + out.string() +
                              " 2>" + err.string();
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

std::string fixture(const std::string& name) {
  return testutil::env_dir("CRN_FIXTURES") + "/" + name;
}

std::string corpus(const std::string& name) {
  return testutil::env_dir("CRN_CORPUS") + "/" + name;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path path = scratch_dir() / name;
  fs::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

// Lines in the block that starts right after `label`, stopping at the first
// line that is not indented deeper than the label.
int indented_rows_after(const std::string& text, const std::string& label) {
  std::istringstream lines(text);
  std::string line;
  bool in_block = false;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (in_block) {
      if (line.rfind("    [", 0) == 0)
        ++rows;
      else
        break;
    }
    if (contains(line, label)) in_block = true;
  }
  return rows;
}

}  // namespace

TEST_CASE("check reports the basic invariants") {
  const RunResult r = run_cli("check " + fixture("brusselator.crn"));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "species: X Y"));
  CHECK(contains(r.out, "vertices: 4   edges: 5"));
  CHECK(contains(r.out, "linkage classes: 1   weakly reversible: yes"));
  CHECK(contains(r.out, "stoichiometric dimension: 2"));
  CHECK(contains(r.out, "dynamics kernel dimension: 0"));
  CHECK(contains(r.out, "balanced kernel dimension: 0"));
  CHECK(r.err.empty());
}

TEST_CASE("check --bases prints the kernel bases") {
  const RunResult r = run_cli("check " + fixture("square_complete.crn") + " --bases");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "dynamics kernel dimension: 4"));
  CHECK(contains(r.out, "balanced kernel dimension: 3"));
  CHECK(indented_rows_after(r.out, "dynamics kernel basis:") == 4);
  CHECK(indented_rows_after(r.out, "balanced kernel basis:") == 3);
}

TEST_CASE("parse errors exit with code 2 and a located message") {
  const struct {
    const char* file;
    const char* slug;
    int line;
    int column;
  } cases[] = {
      {"err_unknown_token.crn", "unknown-token", 2, 8},
      {"err_negative_coefficient.crn", "negative-coefficient", 1, 5},
      {"err_self_loop.crn", "self-loop", 1, 7},
      {"err_empty.crn", "empty-file", 1, 1},
      {"err_bad_declaration.crn", "bad-declaration", 1, 11},
      {"err_declaration_not_first.crn", "bad-declaration", 2, 1},
  };
  for (const auto& c : cases) {
    CAPTURE(c.file);
    const std::string path = corpus(c.file);
    const RunResult r = run_cli("check " + path);
    CHECK(r.exit_code == 2);
    const std::string expected = path + ":" + std::to_string(c.line) + ":" +
                                 std::to_string(c.column) + ": error: " + c.slug + ":";
    CHECK(contains(r.err, expected));
  }
}

TEST_CASE("duplicate reactions warn but succeed") {
  const std::string path = corpus("warn_duplicate_edge.crn");
  const RunResult r = run_cli("check " + path);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.err, path + ":2:3: warning: duplicate-edge:"));
  CHECK(contains(r.out, "edges: 2"));
}

TEST_CASE("missing files exit with code 2") {
  const RunResult r = run_cli("check /nonexistent/net.crn");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.err, "error: cannot read /nonexistent/net.crn"));
}

TEST_CASE("pair analysis of the Brusselator against its host") {
  const RunResult r =
      run_cli("pair " + fixture("brusselator.crn") + " " + fixture("brusselator_host.crn"));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "realizable flux dimension: 6"));
  CHECK(contains(r.out, "stoichiometric dimension (host): 2"));
  CHECK(contains(r.out, "positive flux gate: feasible"));
  CHECK(contains(r.out, "realization gate: feasible"));
  CHECK(contains(r.out, "balanced realizable flux dimension: 3"));
  CHECK(contains(r.out, "R-disguised toric locus dimension (pair): 5"));
  CHECK(contains(r.out, "disguised toric locus dimension (pair): 5"));
  CHECK_FALSE(contains(r.out, "clamped"));
}

TEST_CASE("pair --witness prints re-checkable certificates") {
  const RunResult r = run_cli("pair " + fixture("thomas.crn") + " " + fixture("thomas_host.crn") +
                              " --witness");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "flux witness:"));
  CHECK(contains(r.out, "host flux witness:"));
  CHECK(contains(r.out, "network rate witness:"));
}

TEST_CASE("pair --trace prints the per-vertex product matrices") {
  const RunResult r = run_cli("pair " + fixture("brusselator.crn") + " " +
                              fixture("brusselator_host.crn") + " --trace");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "per-vertex matrices:"));
  CHECK(contains(r.out, "vertex Y:"));
  CHECK(contains(r.out, "constraint rows (annihilating the network span):"));
  CHECK(contains(r.out, "outgoing host reaction vectors (columns):"));
  CHECK(contains(r.out, "[ -2 0 2 ]"));
}

TEST_CASE("pair clamps the square to its rate-space bound") {
  const RunResult r =
      run_cli("pair " + fixture("square.crn") + " " + fixture("square_complete.crn"));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "realizable flux dimension: 12"));
  CHECK(contains(r.out, "balanced realizable flux dimension: 9"));
  CHECK(contains(r.out,
                 "R-disguised toric locus dimension (pair): 8  "
                 "(clamped to the rate-space bound 8)"));
  CHECK(contains(r.out, "disguised toric locus dimension (pair): 8"));
}

TEST_CASE("pair rejects species mismatches with exit code 3") {
  const RunResult r =
      run_cli("pair " + fixture("brusselator.crn") + " " + fixture("circadian_host.crn"));
  CHECK(r.exit_code == 3);
  CHECK(contains(r.err, "declare different species"));
}

TEST_CASE("pair rejects non-reversible hosts unless overridden") {
  const std::string args = "pair " + fixture("brusselator.crn") + " " + fixture("thomas.crn");
  const RunResult refused = run_cli(args);
  CHECK(refused.exit_code == 4);
  CHECK(contains(refused.err, "is not weakly reversible; rerun with --allow-nonwr"));

  const RunResult allowed = run_cli(args + " --allow-nonwr");
  CHECK(allowed.exit_code == 0);
  CHECK(contains(allowed.out, "weakly reversible: no"));
  CHECK(contains(allowed.out, "disguised toric locus dimension (pair): undefined (gate infeasible)"));
}

TEST_CASE("scan finds the fixture maxima") {
  const RunResult r = run_cli("scan " + fixture("thomas.crn"));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "(6 edges, upper bound 6)"));
  CHECK(contains(r.out, "vertex set: sources   enumeration: exhaustive"));
  CHECK(contains(r.out, "early exit: yes"));
  CHECK(contains(r.out, "R-disguised toric locus dimension: 6"));
  CHECK(contains(r.out, "disguised toric locus dimension: 6"));
  CHECK(contains(r.out, "best candidate ("));
}

TEST_CASE("scan refuses oversized candidate spaces unless capped") {
  const fs::path chain = write_file("chain.crn",
                                    "species X\n0 -> X\nX -> 2X\n2X -> 3X\n3X -> 4X\n"
                                    "4X -> 5X\n5X -> 6X\n6X -> 7X\n");
  const RunResult refused = run_cli("scan " + chain.string());
  CHECK(refused.exit_code == 5);
  CHECK(contains(refused.err, "rerun with a candidate cap"));

  const RunResult capped = run_cli("scan " + chain.string() + " --cap 100");
  CHECK(capped.exit_code == 0);
  CHECK(contains(capped.out, "enumeration: capped"));
  CHECK(contains(capped.out, "candidates evaluated: 100"));
}

TEST_CASE("scan with an explicit candidate directory") {
  const fs::path dir = scratch_dir() / "candidates_ok";
  fs::create_directories(dir);
  fs::copy_file(fixture("brusselator_host.crn"), dir / "host.crn",
                fs::copy_options::overwrite_existing);
  const RunResult r =
      run_cli("scan " + fixture("brusselator.crn") + " --candidates " + dir.string());
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "enumeration: explicit-list"));
  CHECK(contains(r.out, "candidates evaluated: 1"));
  CHECK(contains(r.out, "disguised toric locus dimension: 5"));
}

TEST_CASE("invalid explicit candidates exit with code 5") {
  const fs::path not_subgraph = scratch_dir() / "candidates_not_subgraph";
  fs::create_directories(not_subgraph);
  fs::copy_file(fixture("thomas_host.crn"), not_subgraph / "host.crn",
                fs::copy_options::overwrite_existing);
  const RunResult a =
      run_cli("scan " + fixture("brusselator.crn") + " --candidates " + not_subgraph.string());
  CHECK(a.exit_code == 5);
  CHECK(contains(a.err, "is not a subgraph of the complete graph"));

  write_file("candidates_nonwr/host.crn", "species X Y\nX -> X + 2*Y\n");
  const RunResult b = run_cli("scan " + fixture("brusselator.crn") + " --candidates " +
                              (scratch_dir() / "candidates_nonwr").string());
  CHECK(b.exit_code == 5);
  CHECK(contains(b.err, "is not weakly reversible"));

  const fs::path empty = scratch_dir() / "candidates_empty";
  fs::create_directories(empty);
  const RunResult c =
      run_cli("scan " + fixture("brusselator.crn") + " --candidates " + empty.string());
  CHECK(c.exit_code == 5);
  CHECK(contains(c.err, "no .crn candidates"));
}

TEST_CASE("JSON reports are byte-stable apart from the wall clock") {
  const fs::path first = scratch_dir() / "scan1.json";
  const fs::path second = scratch_dir() / "scan2.json";
  const RunResult a =
      run_cli("scan " + fixture("brusselator.crn") + " --json " + first.string());
  const RunResult b = run_cli("scan " + fixture("brusselator.crn") + " --jobs 4 --json " +
                              second.string());
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  nlohmann::ordered_json one = nlohmann::ordered_json::parse(slurp(first));
  nlohmann::ordered_json two = nlohmann::ordered_json::parse(slurp(second));
  CHECK(one["payload"]["wall_ms"].is_number_integer());
  one["payload"].erase("wall_ms");
  two["payload"].erase("wall_ms");
  CHECK(one.dump() == two.dump());

  CHECK(one["schema_version"] == 1);
  CHECK(one["tool"]["name"] == "crnloci");
  CHECK(one["command"] == "scan");
  REQUIRE(one["inputs"].size() == 1);
  CHECK(one["inputs"][0]["sha256"].get<std::string>().size() == 64);
  CHECK(one["payload"]["locus_dim"] == 5);
  CHECK(one["payload"]["upper_bound"] == 5);
  CHECK(one["payload"]["enumeration_mode"] == "exhaustive");
}

TEST_CASE("pair JSON payload records the ambient clamp") {
  const fs::path path = scratch_dir() / "pair_square.json";
  const RunResult r = run_cli("pair " + fixture("square.crn") + " " +
                              fixture("square_complete.crn") + " --witness --json " +
                              path.string());
  CHECK(r.exit_code == 0);
  const nlohmann::ordered_json doc = nlohmann::ordered_json::parse(slurp(path));
  CHECK(doc["command"] == "pair");
  REQUIRE(doc["inputs"].size() == 2);
  const nlohmann::ordered_json& payload = doc["payload"];
  CHECK(payload["realizable_flux_dim"] == 12);
  CHECK(payload["balanced_realizable_dim"] == 9);
  CHECK(payload["ambient_bound"] == 8);
  CHECK(payload["ambient_capped"] == true);
  CHECK(payload["real_locus_dim"] == 8);
  CHECK(payload["locus_dim"] == 8);
  CHECK(payload["flux_gate"]["feasible"] == true);
  CHECK(payload["flux_gate"]["witness"].is_array());

  const fs::path brussel = scratch_dir() / "pair_brussel.json";
  run_cli("pair " + fixture("brusselator.crn") + " " + fixture("brusselator_host.crn") +
          " --json " + brussel.string());
  const nlohmann::ordered_json plain = nlohmann::ordered_json::parse(slurp(brussel));
  CHECK(plain["payload"]["ambient_capped"] == false);
  CHECK(plain["payload"]["locus_dim"] == 5);
}

TEST_CASE("the version flag prints the tool version") {
  const RunResult r = run_cli("--version");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "0.1.0"));
}
