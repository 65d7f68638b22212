#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "mrays/angle.hpp"
#include "mrays/cli.hpp"
#include "mrays/kneading.hpp"

using namespace mrays;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> w;
  for (std::string s; in >> s;) w.push_back(s);
  return w;
}

std::vector<std::string> lines(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> v;
  for (std::string s; std::getline(in, s);) v.push_back(s);
  return v;
}

}  // namespace

TEST_CASE("kneading and classes") {
  CHECK(run({"knead", "9/56"}).out == "110|1\n");
  CHECK(run({"knead", "25/56"}).out == "100|101\n");
  CHECK(run({"knead", "1/2"}).out == "1|0\n");
  CHECK(run({"--machine", "knead", "18/112"}).out == "9/56 110|1\n");
  CHECK(run({"knead", "0.1"}).code == 1);
  CHECK(run({"misiurewicz", "9/56"}).out == "9/56 11/56 15/56\n");
  CHECK(run({"--machine", "misiurewicz", "11/56"}).out == "11/56 3 3 1 9/56,11/56,15/56\n");
  CHECK(run({"count", "--max", "7"}).out == "1 1 3 6 15 27 63\n");
  CHECK(lines(run({"--machine", "count", "--max", "7"}).out).back() == "7 63");
  CHECK(run({"--machine", "address", "1/5"}).out == "1/5 1-3-4\n");
}

TEST_CASE("pair records round-trip") {
  Run r = run({"--machine", "pairs", "--period", "5"});
  REQUIRE(r.code == 0);
  auto ls = lines(r.out);
  CHECK(ls.size() == 15);
  for (const std::string& l : ls) {
    auto w = words(l);
    REQUIRE(w.size() == 6);
    CHECK(w[0] == "5");
    Angle lo = parse_angle(w[1]), hi = parse_angle(w[2]);
    CHECK(lo.to_string() == w[1]);
    CHECK(hi.to_string() == w[2]);
    CHECK(lo < hi);
    CHECK(kneading(lo).to_string() == w[3]);
    CHECK(KneadingSequence::parse(w[3]).to_string() == w[3]);
    CHECK((w[5] == "primitive" || w[5] == "satellite"));
  }
  Run one = run({"--machine", "pair", "4/15"});
  CHECK(one.out == "4 1/5 4/15 |110* 1-3-4 primitive\n");
}

TEST_CASE("numerical subcommands") {
  Run r = run({"--machine", "trace", "--parameter", "--angle", "1/2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("landed") != std::string::npos);

  r = run({"--machine", "solve", "center", "--period", "3"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out).size() == 3);

  r = run({"solve", "misiurewicz", "--preperiod", "1", "--period", "1", "--seed", "-2.1"});
  CHECK(r.code == 0);
}

TEST_CASE("render writes a PPM") {
  auto path = std::filesystem::temp_directory_path() / "mrays_cli_render.ppm";
  Run r = run({"render", "--size", "40x30", "--iterations", "64", "--ray", "1/3", "-o", path.string()});
  CHECK(r.code == 0);
  CHECK(std::filesystem::file_size(path) == 13 + 40 * 30 * 3);
  std::filesystem::remove(path);
  CHECK(run({"render", "--size", "40x30", "-o", "/nonexistent-dir/x.ppm"}).code == 1);
}

TEST_CASE("exit codes") {
  CHECK(run({"knead", "1/3"}).code == 0);
  CHECK(run({"address", "9/56"}).code == 1);       // not periodic
  CHECK(run({"pair", "1/2"}).code == 1);
  CHECK(run({"misiurewicz", "1/3"}).code == 1);
  CHECK(run({"knead", "3/2"}).code == 1);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"pairs"}).code == 2);
  CHECK(run({"pairs", "--period", "99"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("installed binary") {
  const std::string bin = MRAYS_BINARY;
  CHECK(std::system((bin + " knead 9/56 > /dev/null").c_str()) == 0);
  int status = std::system((bin + " knead 3/2 > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(status) == 1);
  status = std::system((bin + " --bogus > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
