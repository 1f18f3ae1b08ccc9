#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

#include "nrt/cli.hpp"
#include "nrt/frac_power.hpp"
#include "nrt/matrix_io.hpp"

using namespace nrt;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("nrt_cli_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  json j;
  in >> j;
  return j;
}

const char* kId2 = R"({"n":2,"re":[[1,0],[0,1]],"im":[[0,0],[0,0]]})";
const char* kD49 = R"({"n":2,"re":[[4,0],[0,9]],"im":[[0,0],[0,0]]})";
const char* kNil = R"({"n":2,"re":[[0,1],[0,0]],"im":[[0,0],[0,0]]})";

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("analyze writes a sector and radius report") {
  TempDir tmp;
  write_file(tmp.file("id2.json"), kId2);
  const int code =
      run_cli({"analyze", "--input", tmp.file("id2.json"), "--out", tmp.file("rep.json")});
  CHECK(code == 0);
  const json rep = read_json(tmp.file("rep.json"));
  CHECK(rep["radius"]["omega"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep["sector"]["alpha"].get<double>() == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(rep["sector"]["accretive"].get<bool>());
}

TEST_CASE("power output re-parses to the in-memory result bit for bit") {
  TempDir tmp;
  write_file(tmp.file("d49.json"), kD49);
  const int code = run_cli({"power", "--t", "0.5", "--input", tmp.file("d49.json"), "--out",
                            tmp.file("r.json")});
  CHECK(code == 0);

  const ComplexMatrix expected =
      fractional_power(read_matrix_file(tmp.file("d49.json")), 0.5).value;
  const ComplexMatrix reparsed = read_matrix_file(tmp.file("r.json"));
  CHECK((reparsed - expected).cwiseAbs().maxCoeff() == 0.0);

  ComplexMatrix d23(2, 2);
  d23 << 2, 0, 0, 3;
  CHECK((reparsed - d23).cwiseAbs().maxCoeff() <= 1e-10);

  const json meta = read_json(tmp.file("r.json"))["power_meta"];
  CHECK(meta["method"].get<std::string>() == "both");
  CHECK(meta["discrepancy"].get<double>() <= 1e-9);
}

TEST_CASE("power with an integer exponent") {
  TempDir tmp;
  write_file(tmp.file("nil.json"), kNil);
  const int code = run_cli({"power", "--k", "2", "--input", tmp.file("nil.json"), "--out",
                            tmp.file("sq.json")});
  CHECK(code == 0);
  CHECK(read_matrix_file(tmp.file("sq.json")).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("range exports the boundary CSV") {
  TempDir tmp;
  write_file(tmp.file("id2.json"), kId2);
  const int code = run_cli(
      {"range", "--input", tmp.file("id2.json"), "--m", "16", "--out", tmp.file("b.csv")});
  CHECK(code == 0);
  std::ifstream in(tmp.file("b.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == "theta,re,im");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 16);
}

TEST_CASE("verify exits zero without violations and writes the report") {
  TempDir tmp;
  const int code = run_cli({"verify", "--class", "ad", "--pid", "P3", "--samples", "6",
                            "--seed", "1", "--n-max", "4", "--t", "0.25", "--t", "0.75",
                            "--out", tmp.file("v.json")});
  CHECK(code == 0);
  const json rep = read_json(tmp.file("v.json"));
  CHECK(rep["P3"]["samples"].get<long>() == 12);
  CHECK(rep["P3"]["violations"].get<long>() == 0);
  CHECK(rep["config_echo"]["class"].get<std::string>() == "ad");
}

TEST_CASE("verify exit code flags violations (hairline tolerance)") {
  TempDir tmp;
  // P9 margins are tiny but nonzero negative numbers; an absurd tolerance
  // must trip the nonzero exit path.
  const int code = run_cli({"verify", "--class", "hpd", "--pid", "P9", "--samples", "8",
                            "--seed", "2", "--n-max", "5", "--tol", "1e-18", "--out",
                            tmp.file("v.json")});
  CHECK(code == 4);
}

TEST_CASE("identical verify invocations produce identical reports") {
  TempDir tmp;
  const std::vector<std::string> argv = {"verify",  "--class", "accretive", "--pid", "P4",
                                         "--samples", "5",     "--seed",    "9",    "--n-max",
                                         "3",       "--out",   ""};
  auto run_to = [&](const std::string& path) {
    auto a = argv;
    a.back() = path;
    CHECK(run_cli(a) == 0);
    json j = read_json(path);
    j.erase("meta");
    return j.dump();
  };
  CHECK(run_to(tmp.file("a.json")) == run_to(tmp.file("b.json")));
}

TEST_CASE("hunt writes a report and exits zero on clean runs") {
  TempDir tmp;
  const int code = run_cli({"hunt", "--budget", "40", "--seed", "3", "--class", "ad",
                            "--n-min", "2", "--n-max", "3", "--t-min", "0.2", "--t-max",
                            "0.8", "--out", tmp.file("h.json")});
  CHECK(code == 0);
  const json rep = read_json(tmp.file("h.json"));
  CHECK(rep["iterations"].get<long>() == 40);
  CHECK_FALSE(rep["counterexample"].get<bool>());
  CHECK(rep["best_margin"].get<double>() >= -1e-8);
}

TEST_CASE("usage and compute errors map to exit codes 1 and 2") {
  TempDir tmp;
  CHECK(run_cli({"analyze"}) == 1);                                    // missing --input
  CHECK(run_cli({"analyze", "--input", tmp.file("nope.json")}) == 1);  // unreadable file
  CHECK(run_cli({"frobnicate"}) == 1);                                 // unknown subcommand

  write_file(tmp.file("bad.json"), R"({"n":2,"re":[[1,0]],"im":[[0,0],[0,0]]})");
  CHECK(run_cli({"analyze", "--input", tmp.file("bad.json")}) == 1);  // ragged rows

  write_file(tmp.file("nil.json"), kNil);
  CHECK(run_cli({"power", "--t", "0.5", "--input", tmp.file("nil.json"), "--out",
                 tmp.file("x.json")}) == 2);  // defective and on the branch cut
  CHECK(run_cli({"power", "--input", tmp.file("nil.json")}) == 1);  // neither --t nor --k
}

TEST_SUITE_END();
