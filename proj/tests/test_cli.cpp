#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "symplecta/cli.hpp"
#include "symplecta/sweep.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
  json parsed() const { return json::parse(out); }
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = symplecta::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

const std::string kBall = R"({"kind":"ellipsoid","space":"x","Q":{"n":2,"rows":[[1,0],[0,1]]}})";
const std::string kBallP4 = R"({"kind":"ellipsoid","space":"p","Q":[[4,0],[0,4]]})";
const std::string kBallP = R"({"kind":"ellipsoid","space":"p","Q":[[1,0],[0,1]]})";

}  // namespace

TEST_CASE("dual and pair-check") {
  const Run d = cli({"dual", "--body", kBall});
  REQUIRE(d.code == 0);
  const json j = d.parsed();
  CHECK(j["space"] == "p");
  CHECK(j["Q"]["rows"][0][0].get<double>() == doctest::Approx(1.0));

  const Run ok = cli({"pair-check", "--x", kBall, "--p", kBallP});
  REQUIRE(ok.code == 0);
  CHECK(ok.parsed()["holds"] == true);
  CHECK(ok.parsed()["saturated"] == true);

  const Run bad = cli({"pair-check", "--x", kBall, "--p", kBallP4});
  CHECK(bad.code == 2);
  const json e = bad.parsed()["error"];
  CHECK(e["kind"] == "domain");
  CHECK(e["details"]["lambda_max"].get<double>() == doctest::Approx(0.5));
  CHECK(e["witness"].size() == 2);
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("malformed input exits 1") {
  CHECK(cli({"dual", "--body", "{not json"}).code == 1);
  CHECK(cli({"dual", "--body", R"({"kind":"ellipsoid","space":"q","Q":[[1]]})"}).code == 1);
  CHECK(cli({"dual"}).code == 1);
  CHECK(cli({"no-such-command"}).code == 1);
  CHECK(cli({"sweep", "--suite", "bogus"}).code == 1);
  CHECK(cli({"sweep", "--seeds", "5..2"}).code == 1);
  CHECK(cli({"dual", "--body", "/nonexistent/file.json"}).code == 1);
  CHECK(cli({"--format", "csv", "dual", "--body", kBall}).code == 1);
  const Run r = cli({"dual", "--body", "{"});
  CHECK(r.parsed()["error"]["kind"] == "malformed_input");
}

TEST_CASE("library errors exit 2") {
  const Run r = cli({"symplectic", "--action", "check", "--matrix", "[[1,0,0],[0,1,0],[0,0,1]]"});
  CHECK(r.code == 2);
  CHECK(r.parsed()["error"]["kind"] == "dimension");
  const Run nd = cli({"dual", "--body", R"({"kind":"ellipsoid","space":"x","Q":[[1,0],[0,-1]]})"});
  CHECK(nd.code == 2);
  CHECK(nd.parsed()["error"]["kind"] == "definiteness");
}

TEST_CASE("assorted subcommands") {
  const Run cap = cli({"--hbar", "2", "capacity", "--ellipsoid", "[[1,0],[0,1]]"});
  REQUIRE(cap.code == 0);
  CHECK(cap.parsed()["value"].get<double>() == doctest::Approx(2 * 3.141592653589793));

  const Run st = cli({"state-check", "--cov", R"({"Sigma":[[0.5,0],[0,0.5]]})"});
  REQUIRE(st.code == 0);
  CHECK(st.parsed()["passes"] == true);
  CHECK(st.parsed()["blob_unique"] == true);

  const Run hz = cli({"hz-pair", "--x", R"({"kind":"polytope","space":"x","vertices":[[1],[-1]]})", "--p",
                      R"({"kind":"polytope","space":"p","vertices":[[2],[-2]]})"});
  REQUIRE(hz.code == 0);
  CHECK(hz.out.find("8") != std::string::npos);

  const Run ds = cli({"ds-check", "--polar", "--n", "1", "--eps-x", "0", "--eps-p", "0"});
  REQUIRE(ds.code == 0);
  CHECK(ds.parsed()["rhs"].get<double>() == doctest::Approx(4.0));

  const Run h = cli({"hardy-check", "--a", "[[1]]", "--b", "[[1]]"});
  REQUIRE(h.code == 0);
  CHECK(h.parsed()["regime"] == "gaussian_unique");

  const Run c = cli({"concentration", "--gaussian", "1,0", "--half-width", "1"});
  REQUIRE(c.code == 0);
  CHECK(c.out.find("0.39") != std::string::npos);
}

TEST_CASE("sweep output") {
  CHECK(symplecta::to_csv({}) == "suite,property,seed,measured,bound,margin,pass\n");
  const Run a = cli({"--format", "csv", "sweep", "--suite", "theorem5", "--seeds", "0..19"});
  REQUIRE(a.code == 0);
  std::istringstream lines(a.out);
  std::string line;
  int rows = 0;
  std::getline(lines, line);
  CHECK(line == "suite,property,seed,measured,bound,margin,pass");
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.substr(line.size() - 4) == "pass");
  }
  CHECK(rows == 20);
  // Determinism.
  CHECK(cli({"--format", "csv", "sweep", "--suite", "theorem5", "--seeds", "0..19"}).out == a.out);

  const std::string path = "symplecta_test_sweep.csv";
  REQUIRE(cli({"sweep", "--suite", "capacities", "--seeds", "0..99", "--out", path}).code == 0);
  std::ifstream csv(path);
  std::getline(csv, line);
  CHECK(line == "suite,property,seed,measured,bound,margin,pass");
  int csv_rows = 0;
  while (std::getline(csv, line)) {
    ++csv_rows;
    CHECK(line.substr(line.size() - 4) == "pass");
  }
  CHECK(csv_rows >= 100);
  std::remove(path.c_str());

  const Run rs = cli({"sweep", "--suite", "rs", "--seeds", "0..9"});
  REQUIRE(rs.code == 0);
  for (const json& row : rs.parsed()) {
    CHECK(row["margin"].get<double>() >= -1e-9);
  }
  const auto all = symplecta::run_sweep({"all"}, 0, 2, 1.0);
  CHECK(all.size() > 3 * symplecta::sweep_suites().size() - 1);
  for (const auto& row : all) CHECK_MESSAGE(row.pass, (row.suite + "/" + row.property));
}

TEST_CASE("binary round trip") {
  const char* bin = std::getenv("SYMPLECTA_BIN");
  if (bin == nullptr) {
    MESSAGE("SYMPLECTA_BIN not set; skipping binary check");
    return;
  }
  const std::string cmd = std::string(bin) + " pair-check --x '" + kBall + "' --p '" + kBallP4 + "' 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 256> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) out += buf.data();
  const int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == 2);
  CHECK(json::parse(out)["error"]["kind"] == "domain");
}
