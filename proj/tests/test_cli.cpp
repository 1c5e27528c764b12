#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "orderk/output.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(ORDERK_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("pmf command with all engines reports a tiny cross-engine deviation") {
  RunResult r = run_cli("pmf --k 2 --lambda 1 --n-max 6 --engine all");
  REQUIRE(r.exit_code == 0);
  orderk::OutputRecord rec = orderk::parse_csv(r.out);
  CHECK(rec.command == "pmf");
  CHECK(rec.columns.back() == "max_rel_dev");
  REQUIRE(rec.rows.size() == 7);
  for (const auto& row : rec.rows) CHECK(std::stod(row.back()) <= 1e-12);
}

TEST_CASE("oracle budget maps to exit code 3") {
  CHECK(run_cli("pmf --k 2 --lambda 1 --n-max 70 --engine oracle").exit_code == 3);
}

TEST_CASE("usage errors map to exit code 2") {
  CHECK(run_cli("pmf --k 2").exit_code == 2);
  CHECK(run_cli("stats --k 2").exit_code == 2);
  CHECK(run_cli("stats --k 2 --lambda 1 --mean 3").exit_code == 2);
  CHECK(run_cli("stats --k 0 --lambda 1").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("stats by mean or lambda") {
  RunResult r = run_cli("stats --k 2 --mean 3");
  REQUIRE(r.exit_code == 0);
  orderk::OutputRecord rec = orderk::parse_csv(r.out);
  REQUIRE(rec.rows.size() == 1);
  auto cell = [&](const std::string& col) {
    for (std::size_t c = 0; c < rec.columns.size(); ++c)
      if (rec.columns[c] == col) return rec.rows[0][c];
    return std::string();
  };
  CHECK(cell("mean") == "3");
  CHECK(cell("variance") == "5");
  CHECK(cell("median") == "3");
  CHECK(cell("modes") == "2");

  r = run_cli("stats --k 4 --lambda 0.05");
  rec = orderk::parse_csv(r.out);
  CHECK(cell("median") == "0");
  CHECK(cell("modes") == "0");

  r = run_cli("stats --k 3 --mean 12");
  rec = orderk::parse_csv(r.out);
  CHECK(cell("median") == "12");
  CHECK(cell("modes") == "11");
}

TEST_CASE("boundary sweep tracks the k=1 expansion") {
  RunResult r = run_cli("boundaries --kind median --k 1 --n-from 100 --n-to 103");
  REQUIRE(r.exit_code == 0);
  orderk::OutputRecord rec = orderk::parse_csv(r.out);
  REQUIRE(rec.rows.size() == 4);
  for (const auto& row : rec.rows) {
    double dev = std::stod(row[7]);  // deviation column
    CHECK(std::fabs(dev) <= 1e-6);
  }
}

TEST_CASE("double-modes command") {
  RunResult r = run_cli("double-modes --k 2");
  REQUIRE(r.exit_code == 0);
  orderk::OutputRecord rec = orderk::parse_csv(r.out);
  REQUIRE(rec.rows.size() == 1);
  CHECK(std::stod(rec.rows[0][1]) == doctest::Approx(0.7320508).epsilon(1e-6));
  CHECK(rec.rows[0][3] == "0;2");
}

TEST_CASE("verify --list names every suite and json output is byte-stable") {
  RunResult r = run_cli("verify --list");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("median-formula\n") != std::string::npos);
  CHECK(r.out.find("power-law\n") != std::string::npos);

  RunResult a = run_cli("verify --suite table-1-tuples --format json");
  RunResult b = run_cli("verify --suite table-1-tuples --format json");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  orderk::OutputRecord rec = orderk::parse_json(a.out);
  CHECK(rec.rows[0][2] == "true");
}

TEST_CASE("claims command emits the index") {
  RunResult r = run_cli("claims");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("| median-formula |") != std::string::npos);
}

TEST_CASE("tolerance override is accepted by the solvers") {
  RunResult r = run_cli("boundaries --kind median --k 1 --n-from 0 --n-to 0 --tol 1e-10");
  REQUIRE(r.exit_code == 0);
  orderk::OutputRecord rec = orderk::parse_csv(r.out);
  CHECK(std::stod(rec.rows[0][3]) == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(rec.provenance.at("lambda_rel_tol") == "1e-10");
}

TEST_CASE("near-tie histogram data at the k=15 first double mode") {
  RunResult r = run_cli("pmf --k 15 --lambda 0.25023 --n-max 60");
  REQUIRE(r.exit_code == 0);
  orderk::OutputRecord rec = orderk::parse_csv(r.out);
  auto h_at = [&](std::size_t n) { return std::stod(rec.rows[n][4]); };
  CHECK(h_at(0) == 1.0);
  CHECK(std::fabs(h_at(25) - 1.0) < 0.01);    // joint maximum with 0 sits here
  CHECK(std::fabs(h_at(15) - 0.9945) < 1e-3); // local maximum, not global
  for (std::size_t n = 1; n <= 60; ++n)
    if (n != 25) CHECK(h_at(n) < h_at(25));
}

TEST_CASE("golden outputs stay in sync") {
  const std::pair<const char*, const char*> cases[] = {
      {"pmf --k 2 --lambda 1 --n-max 6 --engine all", "pmf_k2_l1_all.csv"},
      {"stats --k 3 --mean 12", "stats_k3_mean12.csv"},
      {"boundaries --kind median --k 1 --n-from 100 --n-to 103", "boundaries_median_k1.csv"},
  };
  for (const auto& [args, file] : cases) {
    RunResult r = run_cli(args);
    REQUIRE(r.exit_code == 0);
    std::ifstream f(std::string(ORDERK_SOURCE_DIR "/tests/golden/") + file, std::ios::binary);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    CAPTURE(file);
    CHECK(ss.str() == r.out);
  }
}
