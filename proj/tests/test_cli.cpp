#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// End-to-end checks of the installed command line driver.  The binary path
// comes in through CURVOSC_CLI_PATH so the suite follows whatever build
// directory ctest runs from.

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args) {
  const std::string out_path = "/tmp/curvosc_cli_out.txt";
  const std::string err_path = "/tmp/curvosc_cli_err.txt";
  const std::string cmd =
      std::string(CURVOSC_CLI_PATH) + " " + args + " >" + out_path + " 2>" + err_path;
  const int status = std::system(cmd.c_str());
  RunResult res;
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  res.out = slurp(out_path);
  res.err = slurp(err_path);
  return res;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

// Data rows of a CSV artifact: skips the schema comment and the header.
std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("classify reports the regime and closed-form constants") {
  const auto res = run("classify --lambda 1 --alpha 3 --J 1 --E 3");
  CHECK(res.code == 0);
  CHECK(contains(res.out, "regime=Bounded"));
  CHECK(contains(res.out, "omega=1.7320508075688772"));
  CHECK(contains(res.out, "r_min="));
  CHECK(contains(res.out, "r2_lo="));

  const auto json = run("classify --lambda 1 --alpha 3 --J 1 --E 3 --format json");
  CHECK(json.code == 0);
  CHECK(contains(json.out, "\"regime\":\"Bounded\""));
  CHECK(contains(json.out, "\"omega\":1.7320508075688772"));
}

TEST_CASE("classify accepts forbidden input as an answer, not an error") {
  const auto res = run("classify --lambda 1 --alpha 3 --J 1 --E 2");
  CHECK(res.code == 0);
  CHECK(contains(res.out, "regime=Forbidden"));
  CHECK_FALSE(contains(res.out, "r2_lo="));
}

TEST_CASE("trajectory emits a versioned CSV with the requested samples") {
  const auto res = run("trajectory --lambda 1 --alpha 3 --J 1 --E 3 --t1 5 --samples 200");
  CHECK(res.code == 0);
  CHECK(res.out.rfind("# curvosc trajectory v1\n", 0) == 0);
  CHECK(contains(res.out, "t,r,r_dot,phi,x,y,energy_rel_drift"));

  const auto rows = csv_rows(res.out);
  REQUIRE(rows.size() == 200);
  // Radial band of the (1, 3, 1, 3) orbit: r^2 in [B - A, B + A].
  const double B = 5.0 / 6.0, A = std::sqrt(13.0) / 6.0;
  for (const auto& row : rows) {
    REQUIRE(row.size() == 7);
    const double r2 = row[1] * row[1];
    CHECK(r2 >= B - A - 1e-9);
    CHECK(r2 <= B + A + 1e-9);
    CHECK(std::abs(row[6]) <= 1e-12);  // closed form drifts only by round-off
    // x, y are consistent with (r, phi)
    CHECK(std::abs(row[4] - row[1] * std::cos(row[3])) <= 1e-12);
    CHECK(std::abs(row[5] - row[1] * std::sin(row[3])) <= 1e-12);
  }
}

TEST_CASE("integrated trajectory stays within the drift budget") {
  const auto res = run(
      "trajectory --lambda -1 --alpha 2 --J 1 --E 3 --t1 10 --samples 400 --integrate");
  CHECK(res.code == 0);
  const auto rows = csv_rows(res.out);
  REQUIRE(rows.size() == 400);
  for (const auto& row : rows) {
    CHECK(row[1] < 1.0);  // sphere wall
    CHECK(std::abs(row[6]) <= 1e-8);
  }
}

TEST_CASE("repeated runs are byte identical") {
  const std::string args = "trajectory --lambda 1 --alpha 3 --J 1 --E 3 --samples 64";
  const auto first = run(args);
  const auto second = run(args);
  CHECK(first.code == 0);
  CHECK(first.out == second.out);

  const auto js = run("spectrum --lambda -1 --beta 1 --samples 0");
  const auto js2 = run("spectrum --lambda -1 --beta 1 --samples 0");
  CHECK(js.out == js2.out);
}

TEST_CASE("spectrum lists the finite ladder as a JSON array") {
  const auto res = run("spectrum --lambda 1 --beta 5.2");
  CHECK(res.code == 0);
  CHECK(res.out.rfind("[", 0) == 0);
  CHECK(contains(res.out, "\"E\":5.2000000000000002"));
  CHECK(contains(res.out, "\"E\":16"));
  CHECK(contains(res.out, "\"degeneracy\":5"));
  CHECK_FALSE(contains(res.out, "\"n\":5"));  // ladder truncates at n = 4

  std::size_t levels = 0;
  for (std::size_t pos = 0; (pos = res.out.find("\"n\":", pos)) != std::string::npos; ++pos)
    ++levels;
  CHECK(levels == 5);
}

TEST_CASE("wavefunction artifact certifies its own residual") {
  const auto res = run("wavefunction --lambda -1 --beta 1 --nr 1 --m 0 --samples 300");
  CHECK(res.code == 0);
  CHECK(res.out.rfind("# curvosc wavefunction v1\n", 0) == 0);
  const auto rows = csv_rows(res.out);
  REQUIRE(rows.size() == 300);
  CHECK(rows.front()[1] > 0.0);  // positive as r -> 0+
  for (const auto& row : rows) CHECK(std::abs(row[3]) <= 1e-8);
}

TEST_CASE("potential artifact shows the centrifugal wall") {
  const auto res = run("potential --lambda 1 --alpha 3 --J 1 --samples 100 --t0 0.001");
  CHECK(res.code == 0);
  CHECK(res.out.rfind("# curvosc potential v1\n", 0) == 0);
  const auto rows = csv_rows(res.out);
  REQUIRE(rows.size() == 100);
  CHECK(rows.front()[1] < 1e-3);    // J = 0 branch vanishes at the axis
  CHECK(rows.front()[2] > 100.0);   // J != 0 branch diverges there
}

TEST_CASE("bridge verifies the worked two-coordinate example") {
  const auto res = run(
      "bridge --kind trig --A1 2 --A2 1 --phi1 1.5707963267948966 --phi2 0 "
      "--lambda 1 --alpha 3.1622776601683795");
  CHECK(res.code == 0);
  CHECK(contains(res.out, "J=2\n"));
  CHECK(contains(res.out, "E=4.5\n"));
  CHECK(contains(res.out, "A=1.5\n"));
  CHECK(contains(res.out, "B=2.5\n"));
  CHECK(contains(res.out, "pass=true"));
}

TEST_CASE("artifacts can be routed to a file") {
  const std::string path = "/tmp/curvosc_cli_artifact.csv";
  std::remove(path.c_str());
  const auto res = run("trajectory --lambda 1 --alpha 3 --J 1 --E 3 --samples 16 --out " +
                       path);
  CHECK(res.code == 0);
  CHECK(res.out.empty());
  const std::string body = slurp(path);
  CHECK(body.rfind("# curvosc trajectory v1\n", 0) == 0);
  CHECK(csv_rows(body).size() == 16);
  std::remove(path.c_str());
}

TEST_CASE("usage and domain failures map to distinct exit codes") {
  CHECK(run("").code == 1);                 // missing subcommand
  CHECK(run("frobnicate").code == 1);       // unknown subcommand
  CHECK(run("classify --lambda 1").code == 1);  // missing required flags
  CHECK(run("classify --lambda 0 --alpha 3 --J 1 --E 3").code == 1);  // bad params
  CHECK(run("trajectory --lambda 1 --alpha 3 --J 1 --E 2").code == 1);  // Forbidden
  CHECK(run("spectrum --lambda 1 --beta 5.2 --format csv").code == 1);  // JSON only
  CHECK(run("wavefunction --lambda 1 --beta 5.2 --nr 2 --m 1").code == 1);  // n > n_max
}
