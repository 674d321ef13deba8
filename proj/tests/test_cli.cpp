#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = wdiv::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const char* env = std::getenv("WDIV_TEST_TMP");
  fs::path dir = (env && *env) ? fs::path(env) : fs::temp_directory_path() / "wdiv_cli_test";
  dir /= name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("format_number") {
  CHECK(wdiv::cli::format_number(4.0) == "4.0");
  CHECK(wdiv::cli::format_number(-0.0) == "0.0");
  CHECK(wdiv::cli::format_number(0.5) == "0.5");
  CHECK(wdiv::cli::format_number(4.09554380604223) == "4.09554380604223");
  CHECK(wdiv::cli::format_number(1e20) == "1e+20");
}

TEST_CASE("dsum prints D, main and delta") {
  const auto r = run({"dsum", "--x", "6", "--r1", "1", "--q1", "2", "--r2", "1", "--q2", "3",
                      "--allow-below-modulus"});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() >= 3);
  CHECK(l[0] == "D=4.0");
  CHECK(l[1] == "main=4.09554380604223");
  CHECK(l[2].rfind("delta=-0.0955438060422", 0) == 0);

  const auto brute = run({"dsum", "--x", "6", "--mode", "brute", "--allow-below-modulus"});
  CHECK(brute.code == 0);
  CHECK(lines(brute.out)[0] == "D=4.0");
}

TEST_CASE("exit codes") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 1);
  CHECK(run({"nosuch"}).code == 1);
  CHECK(run({"dsum"}).code == 1);                          // --x missing
  CHECK(run({"dsum", "--x", "abc"}).code == 1);             // not a number
  CHECK(run({"dsum", "--x", "6", "--q1", "0"}).code == 1);  // invalid modulus
  CHECK(run({"dsum", "--x", "3"}).code == 1);               // below q1 q2 without the policy flag
  CHECK(run({"constants", "--k", "7"}).code == 1);
  CHECK(run({"constants", "--k", "2", "--y", "10", "--A0", "x/y"}).code == 1);
}

TEST_CASE("constants reports K0 and the bookkeeping exponent") {
  const auto r = run({"constants", "--k", "2", "--y", "100", "--A0", "9/2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("name=B2\n") != std::string::npos);
  CHECK(r.out.find("K0=6\n") != std::string::npos);
  CHECK(r.out.find("s_K0=16\n") != std::string::npos);
}

TEST_CASE("moments writes CSV and a manifest with matching digest") {
  const fs::path dir = scratch("moments");
  const auto r = run({"--out-dir", dir.string(), "moments", "--T", "64", "--k", "2", "--y", "1000",
                      "--out", "moments.csv"});
  REQUIRE(r.code == 0);
  const auto csv = lines(slurp(dir / "moments.csv"));
  REQUIRE(csv.size() == 2);
  CHECK(csv[0] == "T,k,empirical,main_term,ratio,B_used");
  CHECK(csv[1].rfind("64.0,2,", 0) == 0);

  const auto m = nlohmann::json::parse(slurp(dir / "moments.manifest.json"));
  CHECK(m["command"] == "moments");
  CHECK(m["parameters"]["T"] == "64");
  REQUIRE(m["outputs"].size() == 1);
  CHECK(m["outputs"][0]["sha256"].get<std::string>().size() == 64);
}

TEST_CASE("identical runs give identical output files") {
  const fs::path a = scratch("repeat_a"), b = scratch("repeat_b");
  for (const auto& dir : {a, b})
    REQUIRE(run({"--out-dir", dir.string(), "census", "--T", "200", "--V-count", "4", "--out", "census.csv"})
                .code == 0);
  CHECK(slurp(a / "census.csv") == slurp(b / "census.csv"));
  const auto csv = lines(slurp(a / "census.csv"));
  REQUIRE(csv.size() == 5);
  CHECK(csv[0] == "V,spacing,M");
}

TEST_CASE("sweep is independent of the thread count") {
  const fs::path a = scratch("sweep1"), b = scratch("sweep3");
  REQUIRE(run({"--out-dir", a.string(), "--threads", "1", "sweep", "--T-min", "16", "--T-max", "128", "--k", "1",
               "--k", "2", "--y", "200"})
              .code == 0);
  REQUIRE(run({"--out-dir", b.string(), "--threads", "3", "sweep", "--T-min", "16", "--T-max", "128", "--k", "1",
               "--k", "2", "--y", "200"})
              .code == 0);
  const auto ca = slurp(a / "moments.csv");
  CHECK(ca == slurp(b / "moments.csv"));
  CHECK(lines(ca).size() == 1 + 4 * 2);
}

TEST_CASE("weighted series and config file") {
  const fs::path dir = scratch("weighted");
  {
    std::ofstream cfg(dir / "run.ini");
    cfg << "[weighted]\nT=8\nout=series.csv\n";
  }
  const auto r = run({"--out-dir", dir.string(), "--config", (dir / "run.ini").string(), "weighted"});
  REQUIRE(r.code == 0);
  const auto csv = lines(slurp(dir / "series.csv"));
  REQUIRE(csv.size() > 2);
  CHECK(csv[0] == "t_left,S,D,delta");

  // flags override the file
  const auto direct = run({"--config", (dir / "run.ini").string(), "weighted", "--T", "0", "--t", "4"});
  REQUIRE(direct.code == 0);
  CHECK(direct.out.rfind("S=", 0) == 0);
}
