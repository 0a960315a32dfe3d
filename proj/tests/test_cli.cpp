#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_shell(const std::string& cmd) {
  RunResult r;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.out.append(buf.data(), got);
  }
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// Runs the CLI under test with stderr folded into stdout.
RunResult run_cli(const std::string& args) {
  return run_shell(std::string(PATCHCAT_CLI_PATH) + " " + args);
}

std::string write_temp(const std::string& name, const std::string& body) {
  std::string path = std::string("cli_tmp_") + name;
  std::ofstream f(path, std::ios::trunc | std::ios::binary);
  REQUIRE(f.good());
  f << body;
  return path;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("mv report passes with five exactness clauses") {
  RunResult r = run_cli("mv report --group gm --field f5 --seed 7");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"h0_injective\": true"));
  CHECK(contains(r.out, "\"h0_equalizer_exact\": true"));
  CHECK(contains(r.out, "\"h0_overlap_exact\": true"));
  CHECK(contains(r.out, "\"h1_restriction_exact\": true"));
  CHECK(contains(r.out, "\"h1_lane_exact\": true"));
  CHECK(contains(r.out, "\"passed\": true"));
  CHECK(!contains(r.out, "timestamp"));
}

TEST_CASE("malformed cocycle input exits 2 and names the location") {
  std::string path = write_temp(
      "bad_cocycle.json",
      R"({"field": "f5", "n": 1, "entries": [[{"0": "nope"}]]})");
  RunResult r = run_cli("birkhoff factor --input " + path);
  CHECK(r.exit_code == 2);
  CHECK(contains(r.out, "entries[0][0]"));
  std::remove(path.c_str());
}

TEST_CASE("non-positive sample counts exit 2") {
  RunResult r = run_cli("patch roundtrip --field f5 --seed 1 --samples 0");
  CHECK(r.exit_code == 2);
}

TEST_CASE("a missing seed on a randomized suite exits 2") {
  RunResult r = run_cli("patch roundtrip --field f5 --samples 3");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.out, "--seed"));
}

TEST_CASE("an exhausted enumeration budget exits 3") {
  RunResult r = run_cli("fincat verify --budget 1");
  CHECK(r.exit_code == 3);
}

TEST_CASE("a failing check exits 1") {
  RunResult r = run_cli(
      "mv report --context two-chart --group gm --field f5 --seed 9 "
      "--mutate-connecting");
  CHECK(r.exit_code == 1);
  CHECK(contains(r.out, "\"h0_overlap_exact\": false"));
  CHECK(contains(r.out, "\"passed\": false"));
}

TEST_CASE("help exits 0 and unknown flags exit 2") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("mv report --help").exit_code == 0);
  CHECK(run_cli("--no-such-flag").exit_code == 2);
  CHECK(run_cli("no-such-command").exit_code == 2);
}

TEST_CASE("reruns with the same seed are byte-identical") {
  for (const std::string& args :
       {std::string("mv report --group gm --field f5 --seed 7 --samples 20"),
        std::string("patch roundtrip --field q --seed 5 --samples 3"),
        std::string("eq check-coherence --field f5 --seed 5 --samples 2"),
        std::string("birkhoff reconstruct --field f5 --seed 2 --samples 3")}) {
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("factor and glue consume and produce the documented schemas") {
  std::string cocycle = write_temp(
      "cocycle.json",
      R"({"field": "f5", "n": 2, "entries":
          [[{"1": "1"}, {"0": "1"}], [{}, {"-1": "1"}]]})");
  RunResult fac = run_cli("birkhoff factor --input " + cocycle);
  CHECK(fac.exit_code == 0);
  CHECK(contains(fac.out, "\"product_verified\": true"));
  std::remove(cocycle.c_str());

  std::string datum = write_temp("datum.json", R"({
    "context": "bl", "field": "f5",
    "carriers": [
      {"ring": {"kind": "local_at_zero", "p": 5},
       "relations": {"ring": {"kind": "local_at_zero", "p": 5},
                     "rows": 1, "cols": 0, "entries": []}},
      {"ring": {"kind": "laurent", "p": 5},
       "relations": {"ring": {"kind": "laurent", "p": 5},
                     "rows": 1, "cols": 0, "entries": []}}],
    "glue": {"ring": {"kind": "rational_functions", "p": 5},
             "rows": 1, "cols": 1,
             "entries": [{"num": ["0", "1"], "den": ["1"]}]}})");
  RunResult glued = run_cli("patch glue --context bl --field f5 --input " +
                            datum + " --output cli_tmp_glued.json");
  CHECK(glued.exit_code == 0);
  CHECK(contains(glued.out, "\"free_rank\": 1"));
  std::ifstream out("cli_tmp_glued.json");
  REQUIRE(out.good());
  std::string body((std::istreambuf_iterator<char>(out)),
                   std::istreambuf_iterator<char>());
  CHECK(contains(body, "\"kind\": \"poly\""));

  RunResult mismatch = run_cli("patch glue --field q --input " + datum);
  CHECK(mismatch.exit_code == 2);
  CHECK(contains(mismatch.out, "does not match"));

  std::remove(datum.c_str());
  std::remove("cli_tmp_glued.json");
}

TEST_CASE("the output directory variable resolves relative report paths") {
  std::filesystem::create_directory("cli_tmp_dir");
  RunResult r = run_shell(
      "env PATCHCAT_OUT_DIR=cli_tmp_dir " + std::string(PATCHCAT_CLI_PATH) +
      " patch roundtrip --field f5 --seed 4 --samples 2 --output rt.json");
  CHECK(r.exit_code == 0);
  std::ifstream f("cli_tmp_dir/rt.json");
  REQUIRE(f.good());
  std::string body((std::istreambuf_iterator<char>(f)),
                   std::istreambuf_iterator<char>());
  CHECK(contains(body, "\"timestamp\""));
  CHECK(contains(body, "\"passed\": true"));
  std::filesystem::remove_all("cli_tmp_dir");

  RunResult missing = run_cli("modcat snf --input nonexistent_file.json");
  CHECK(missing.exit_code == 2);  // unreadable input is an input error
}

}  // TEST_SUITE
