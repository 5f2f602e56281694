#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "toricdyn/io/json_io.hpp"
#include "toricdyn/io/svg.hpp"

using namespace toricdyn;
using io::Json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("toricdyn_cli_" + std::to_string(std::rand()))) { fs::create_directories(dir_); }
  ~Scratch() { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) const {
    const auto path = dir_ / name;
    std::ofstream(path) << content;
    return path.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

std::string error_kind(const Result& r) { return Json::parse(r.err).at("kind").get<std::string>(); }

bool has_integer_number(const Json& j) {
  if (j.is_number_integer()) return true;
  if (j.is_structured())
    for (const auto& x : j)
      if (has_integer_number(x)) return true;
  return false;
}

}  // namespace

TEST_CASE("degrees of the Fibonacci map report the golden ratio") {
  Scratch s;
  auto r = run({"degrees", "--matrix", s.file("fib.json", R"([["1","1"],["1","0"]])")});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(std::abs(j["lambdas"][1].get<double>() - (1 + std::sqrt(5.0)) / 2) < 1e-10);
  CHECK(j["det"] == "-1");
  CHECK_FALSE(has_integer_number(j));

  auto bits = run({"degrees", "--matrix", s.path("fib.json"), "--log2", "--lmax", "5"});
  auto jb = Json::parse(bits.out);
  CHECK(std::abs(jb["entropy_log2"].get<double>() - std::log2((1 + std::sqrt(5.0)) / 2)) < 1e-10);
}

TEST_CASE("cremona prints binomial rows") {
  CHECK(run({"cremona", "--n", "3"}).out == "1 3 3 1\n");
  auto j = Json::parse(run({"cremona", "--n", "2", "--format", "json"}).out);
  CHECK(j["degrees"] == Json::array({"1", "2", "1"}));
}

TEST_CASE("pullback with both methods") {
  Scratch s;
  auto id = s.file("id.txt", "2\n1 0\n0 1\n");
  auto r = run({"pullback", "--matrix", id, "--k", "1", "--method", "both"});
  CHECK(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["matrix"] == Json::parse(R"([["1","0"],["0","1"]])"));
  CHECK(j["agree"] == true);
  CHECK(j["basis"] == Json::parse(R"([["1"],["2"]])"));
  CHECK_FALSE(has_integer_number(j));

  auto cat = s.file("cat.json", "[[2,1],[1,1]]");
  CHECK(run({"pullback", "--matrix", cat, "--k", "1", "--method", "both", "--format", "table"}).out == "1 1\n1 2\n");
}

TEST_CASE("input errors exit with code 2 and a kind") {
  Scratch s;
  auto singular = run({"degrees", "--matrix", s.file("s.json", "[[1,2],[2,4]]")});
  CHECK(singular.code == 2);
  CHECK(error_kind(singular) == "SINGULAR");

  auto range = run({"pullback", "--matrix", s.file("d.json", "[[2,0],[0,3]]"), "--k", "3"});
  CHECK(range.code == 2);
  CHECK(error_kind(range) == "OUT_OF_RANGE");

  auto ragged = run({"degrees", "--matrix", s.file("r.json", "[[1,2],[3]]")});
  CHECK(ragged.code == 2);
  CHECK(error_kind(ragged) == "DIMENSION_MISMATCH");

  auto garbage = run({"degrees", "--matrix", s.file("g.json", "[[1,2],")});
  CHECK(garbage.code == 2);
  CHECK(error_kind(garbage) == "INVALID_INPUT");

  auto missing = run({"degrees", "--matrix", s.path("nope.json")});
  CHECK(missing.code == 2);

  auto usage = run({"pullback"});
  CHECK(usage.code == 2);
  CHECK(error_kind(usage) == "INVALID_INPUT");

  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("matrix readers") {
  CHECK(io::matrix_from_text("2\n1 -2\n+3 4\n") == lattice::IntegerMatrix{{1, -2}, {3, 4}});
  CHECK_THROWS_AS(io::matrix_from_text("2\n1 2 3\n"), Error);
  CHECK_THROWS_AS(io::matrix_from_text("2\n1 2 3 4 5"), Error);
  CHECK_THROWS_AS(io::matrix_from_text("2\n1 x 3 4"), Error);
  const BigInt big("1267650600228229401496703205376");
  lattice::IntegerMatrix a(1, 1);
  a(0, 0) = -big;
  CHECK(io::matrix_from_json(io::matrix_to_json(a)) == a);
  CHECK(io::matrix_from_text(io::matrix_to_text(a)) == a);
  CHECK(io::matrix_from_json(Json::parse(R"({"matrix": [[1, "2"], ["-3", 4]]})")) == lattice::IntegerMatrix{{1, 2}, {-3, 4}});
}

TEST_CASE("fan emit, validate and refine") {
  Scratch s;
  auto emitted = run({"fan", "emit", "--type", "pn", "--n", "3"});
  REQUIRE(emitted.code == 0);
  auto j = Json::parse(emitted.out);
  CHECK(j["cones"].size() == 4);
  CHECK_FALSE(has_integer_number(j));
  auto fan = io::fan_from_json(j);
  CHECK(fan.cones() == fans::fan_pn(3).cones());

  CHECK(run({"fan", "validate", "--fan", s.file("p3.json", emitted.out)}).code == 0);

  auto overlapping = s.file("bad.json", R"({"rank": 2, "complete": false, "cones": [
      {"generators": [[1,0],[0,1]]}, {"generators": [[1,1],[0,1]]}]})");
  auto bad = run({"fan", "validate", "--fan", overlapping});
  CHECK(bad.code == 1);
  CHECK(Json::parse(bad.out)["ok"] == false);

  auto refined = run({"fan", "refine", "--fan", s.file("p2.json", run({"fan", "emit", "--type", "pn", "--n", "2"}).out), "--matrix",
                      s.file("j.json", "[[-1,0],[0,-1]]")});
  REQUIRE(refined.code == 0);
  CHECK(Json::parse(refined.out)["cones"].size() == 6);

  auto line = run({"fan", "validate", "--fan", s.file("line.json", R"({"rank": 2, "cones": [{"generators": [[1,0],[-1,0]]}]})")});
  CHECK(line.code == 2);
  CHECK(error_kind(line) == "NOT_STRONGLY_CONVEX");
}

TEST_CASE("weight subcommands") {
  Scratch s;
  auto p1 = s.file("p1.json", run({"fan", "emit", "--type", "p1n", "--n", "2"}).out);
  auto basis = Json::parse(run({"weight", "basis", "--type", "p1n", "--n", "2", "--k", "1"}).out);
  REQUIRE(basis["basis"].size() == 2);
  auto c1 = s.file("c1.json", basis["basis"][0]["weight"].dump());
  auto c2 = s.file("c2.json", basis["basis"][1]["weight"].dump());
  CHECK(run({"weight", "verify", "--fan", p1, "--weight", c1}).code == 0);

  auto cup = run({"weight", "cup", "--fan", p1, "--weight", c1, "--with", c2});
  REQUIRE(cup.code == 0);
  CHECK(Json::parse(cup.out)["value"] == "1");
  CHECK(Json::parse(run({"weight", "cup", "--fan", p1, "--weight", c1, "--with", c1}).out)["value"] == "0");

  auto lopsided = s.file("bad.json", R"({"codim": 1, "values": [{"cone": [[1,0]], "value": "1"}]})");
  auto unbalanced = run({"weight", "verify", "--fan", p1, "--weight", lopsided});
  CHECK(unbalanced.code == 1);
  CHECK(error_kind(unbalanced) == "INVARIANT_FAILURE");

  auto stranger = s.file("stranger.json", R"({"codim": 1, "values": [{"cone": [[1,1]], "value": "1"}]})");
  CHECK(run({"weight", "verify", "--fan", p1, "--weight", stranger}).code == 2);

  auto pulled = run({"weight", "pullback", "--matrix", s.file("m.json", "[[2,1],[1,1]]"), "--fan", p1, "--weight", c1});
  REQUIRE(pulled.code == 0);
  auto pj = Json::parse(pulled.out);
  auto src = s.file("src.json", pj["fan"].dump());
  auto w = s.file("w.json", pj["weight"].dump());
  CHECK(run({"weight", "verify", "--fan", src, "--weight", w}).code == 0);

  auto incompatible = run({"weight", "pullback", "--matrix", s.path("m.json"), "--fan", p1, "--weight", c1, "--src", p1});
  CHECK(incompatible.code == 2);
  CHECK(error_kind(incompatible) == "INCOMPATIBLE");
}

TEST_CASE("growth writes a plot") {
  Scratch s;
  auto r = run({"growth", "--matrix", s.file("d.json", "[[2,0],[0,3]]"), "--k", "1", "--plot", s.path("g.svg")});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["degrees"].size() == 8);
  CHECK(j["degrees"][4] == "243");
  std::ifstream svg(s.path("g.svg"));
  std::string text((std::istreambuf_iterator<char>(svg)), std::istreambuf_iterator<char>());
  CHECK(text.rfind("<svg", 0) == 0);
  CHECK(text.find("<polyline") != std::string::npos);
}

TEST_CASE("--out redirects the result") {
  Scratch s;
  auto r = run({"cremona", "--n", "2", "--out", s.path("c.txt")});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(s.path("c.txt"));
  std::string line;
  std::getline(in, line);
  CHECK(line == "1 2 1");
}

TEST_CASE("batch corpora") {
  auto oracle = run({"batch", "--n", "2", "--count", "50", "--checks", "oracle"});
  CHECK(oracle.code == 0);
  auto j = Json::parse(oracle.out);
  CHECK(j["results"]["oracle"]["pass"] == "50");
  CHECK(j["first_counterexample"].is_null());
  CHECK_FALSE(has_integer_number(j));

  auto weight = run({"batch", "--n", "3", "--bound", "3", "--count", "50", "--checks", "weight"});
  CHECK(weight.code == 0);
  CHECK(Json::parse(weight.out)["results"]["weight"]["pass"] == "50");

  CHECK(run({"batch", "--n", "2", "--count", "0"}).code == 2);
  CHECK(run({"batch", "--n", "2", "--bound", "0"}).code == 2);
  CHECK(run({"batch", "--n", "2", "--checks", "nonsense"}).code == 2);
}

TEST_CASE("batch reports are byte-identical across runs and thread caps") {
  const std::vector<std::string> args{"batch", "--n", "2", "--count", "4", "--seed", "11"};
  const auto first = run(args);
  CHECK(first.code == 0);
  CHECK(run(args).out == first.out);
  ::setenv("TORICDYN_THREADS", "1", 1);
  const auto capped = run(args);
  ::unsetenv("TORICDYN_THREADS");
  CHECK(capped.out == first.out);
  auto single = run({"batch", "--n", "2", "--count", "1", "--seed", "11"});
  CHECK(run({"batch", "--n", "2", "--count", "1", "--seed", "11"}).out == single.out);
}

TEST_CASE("batch reports the first counterexample and exits 1") {
  // Corpus item 39 of the mixed acceptance corpus is a slow non-tie case at l = 30.
  auto r = run({"batch", "--n", "3", "--count", "1", "--seed", "39", "--checks", "growth"});
  CHECK(r.code == 1);
  auto j = Json::parse(r.out);
  CHECK(j["ok"] == false);
  CHECK(j["first_counterexample"]["matrix"] == Json::parse(R"([["-2","0","0"],["3","-2","1"],["-2","1","0"]])"));
  CHECK(error_kind(r) == "INVARIANT_FAILURE");
}
