// End-to-end cases against the installed binary. The test runner passes
// the binary location through MLQSL_BIN.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

CmdResult run_cli(const std::string& args) {
  const char* bin = std::getenv("MLQSL_BIN");
  if (bin == nullptr) {
    throw std::runtime_error("MLQSL_BIN must point at the cli binary");
  }
  const std::string cmd = std::string(bin) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    throw std::runtime_error("popen failed for: " + cmd);
  }
  CmdResult result;
  char buf[4096];
  size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) {
    result.output.append(buf, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  size_t pos = 0;
  while (pos < text.size()) {
    const size_t end = text.find('\n', pos);
    if (end == std::string::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return lines;
}

double field_after(const std::string& text, const std::string& key) {
  const size_t at = text.find(key);
  REQUIRE(at != std::string::npos);
  return std::strtod(text.c_str() + at + key.size(), nullptr);
}

}  // namespace

TEST_CASE("alpha endpoint and golden evaluations") {
  const CmdResult one = run_cli("alpha --epsilon 0 --method newton");
  CHECK(one.exit_code == 0);
  CHECK(one.output.find("alpha       = 1\n") != std::string::npos);

  const CmdResult mid = run_cli("alpha --epsilon 0.5 --method upper");
  CHECK(mid.exit_code == 0);
  CHECK(mid.output.find("0.264994849371") != std::string::npos);

  const CmdResult json = run_cli("alpha --epsilon 0.5 --method upper --format json");
  CHECK(json.exit_code == 0);
  CHECK(json.output.find("\"alpha\": 0.264994849371") != std::string::npos);
}

TEST_CASE("alpha reports legacy divergence with exit 1") {
  const CmdResult r = run_cli("alpha --epsilon 0.9 --method glm --glm-p 0.5");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("left_bracket") != std::string::npos);
}

TEST_CASE("alpha rejects invalid input with exit 2") {
  CHECK(run_cli("alpha --epsilon 1.5").exit_code == 2);
  CHECK(run_cli("alpha").exit_code == 2);
  CHECK(run_cli("alpha --epsilon 0.5 --method upper --precision 3").exit_code == 2);
  CHECK(run_cli("alpha --epsilon 0.5 --method upper --glm-p 0.5").exit_code == 2);
}

TEST_CASE("table reproduces the historical seven-figure agreement") {
  const CmdResult r =
      run_cli("table --start 0.01 --stop 0.99 --steps 99 --methods lower,upper --format csv");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 100);
  CHECK(lines[0] ==
        "epsilon,alpha_lower,alpha_upper,alpha_newton,alpha_glm,max_rel_diff,"
        "iters_newton,status");
  for (size_t i = 1; i < lines.size(); ++i) {
    // max_rel_diff is the sixth field.
    size_t pos = 0;
    for (int commas = 0; commas < 5; ++commas) pos = lines[i].find(',', pos) + 1;
    const double diff = std::strtod(lines[i].c_str() + pos, nullptr);
    CAPTURE(lines[i]);
    CHECK(diff <= 1e-7);
  }
}

TEST_CASE("table covers both trivial endpoints") {
  const CmdResult r = run_cli("table --start 0 --stop 1 --steps 2 --format csv");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 3);
  CHECK(lines[1].rfind("0,1,1,1,1,", 0) == 0);
  CHECK(lines[2].rfind("1,0,0,0,0,", 0) == 0);
}

TEST_CASE("table stays converged in the near-singular regime") {
  const CmdResult r = run_cli(
      "table --start 0.999 --stop 0.9999 --steps 10 --methods upper,newton --format csv");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 11);
  for (size_t i = 1; i < lines.size(); ++i) {
    CAPTURE(lines[i]);
    CHECK(lines[i].substr(lines[i].size() - 3) == ",ok");
  }
}

TEST_CASE("saturate emits the balanced state at zero overlap") {
  const CmdResult r = run_cli("saturate --epsilon 0");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("a1_sq       = 0.5\n") != std::string::npos);
  CHECK(r.output.find("gap_time    = 3.14159265359\n") != std::string::npos);
}

TEST_CASE("saturate round-trips its bound at eps 0.25") {
  const CmdResult r = run_cli("saturate --epsilon 0.25");
  REQUIRE(r.exit_code == 0);
  CHECK(field_after(r.output, "residual    = ") <= 1e-8);
}

TEST_CASE("saturate rejects the degenerate overlap") {
  CHECK(run_cli("saturate --epsilon 1").exit_code == 2);
}

TEST_CASE("verify is clean and byte-deterministic") {
  const CmdResult a = run_cli("verify --seed 42 --samples 200 --format json");
  const CmdResult b = run_cli("verify --seed 42 --samples 200 --format json");
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("\"violations\": 0") != std::string::npos);
}

TEST_CASE("verify rejects an empty sample budget") {
  CHECK(run_cli("verify --samples 0").exit_code == 2);
}

TEST_CASE("verify csv header is stable") {
  const CmdResult r = run_cli("verify --seed 3 --samples 5 --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(lines_of(r.output)[0] ==
        "sample,levels,epsilon,bound_standard,bound_strengthened,passage,margin,"
        "skipped,violation");
}

TEST_CASE("bench emits one row per backend") {
  const CmdResult r = run_cli("bench --eps 0.5 --reps 1 --format csv");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "method,median_us,mean_us,evaluations");
}

TEST_CASE("usage errors and help behave like a unix tool") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("bogus").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("precision flag shapes csv output") {
  const CmdResult r = run_cli("alpha --epsilon 0.5 --method upper --format csv --precision 4");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("0.265,") != std::string::npos);
}

TEST_CASE("output flag writes the same bytes to a file") {
  const std::string path = "/tmp/mlqsl_cli_case_table.csv";
  const CmdResult direct = run_cli("table --start 0.2 --stop 0.8 --steps 4 --format csv");
  const CmdResult to_file =
      run_cli("table --start 0.2 --stop 0.8 --steps 4 --format csv --output " + path);
  REQUIRE(direct.exit_code == 0);
  REQUIRE(to_file.exit_code == 0);
  CHECK(to_file.output.empty());
  FILE* f = std::fopen(path.c_str(), "rb");
  REQUIRE(f != nullptr);
  std::string bytes;
  char buf[4096];
  size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) bytes.append(buf, got);
  std::fclose(f);
  std::remove(path.c_str());
  CHECK(bytes == direct.output);
}
