#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tropmod/cli/cli.hpp"
#include "tropmod/graphs/graph_io.hpp"
#include "tropmod/io/json_io.hpp"
#include "tropmod/markings/marking.hpp"
#include "tropmod/markings/teichmuller.hpp"
#include "tropmod/moduli/moduli.hpp"
#include "tropmod/voronoi/short_vectors.hpp"

using namespace tropmod;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out, err;
  json value() const { return json::parse(out); }
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("tropmod_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string file(const std::string& name, const json& j) const {
    const fs::path p = dir / name;
    std::ofstream(p) << j.dump();
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

json tailed_theta() {
  return graph_to_json(WeightedGraph({0, 0, 0}, {{0, 1}, {0, 1}, {0, 1}, {1, 2}, {2, 2}}));
}

json tailed_theta_marking() {
  auto step = [](int e, int d) { return json{{"edge", e}, {"dir", d}}; };
  return {{"basepoint", 1},
          {"petals", {{step(0, -1), step(1, 1)}, {step(2, -1), step(1, 1)}, {step(3, 1), step(4, 1), step(3, -1)}}}};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("period of the tailed theta graph") {
  Scratch s;
  const Result r = run({"period", "-i", s.file("g.json", tailed_theta()), "-m", s.file("m.json", tailed_theta_marking()), "-l",
                        s.file("l.json", {"1", "2", "3", "4", "5"})});
  REQUIRE(r.status == 0);
  CHECK(r.value()["period"] == json({{"3", "2", "0"}, {"2", "5", "0"}, {"0", "0", "5"}}));
  CHECK(r.value()["petals"] == json({"a- b", "c- b", "d e d-"}));
  // Rational lengths stay exact.
  const Result half = run({"period", "-i", s.path("g.json"), "-m", s.path("m.json"), "-l",
                           s.file("h.json", {"1/2", "1/3", 1, 1, "7/5"})});
  CHECK(half.value()["period"][0][0] == "5/6");
  CHECK(half.value()["period"][2][2] == "7/5");
}

TEST_CASE("enumerate") {
  Scratch s;
  const Result r = run({"enumerate", "--genus", "2", "--dot", s.path("h.dot")});
  REQUIRE(r.status == 0);
  const json j = r.value();
  CHECK(j["classes"].size() == 7);
  CHECK(j["classes"].size() == enumerate_stable(2).size());
  const Result pure = run({"enumerate", "--genus", "2", "--pure"});
  CHECK(pure.value()["classes"].size() == 3);
  for (const auto& c : pure.value()["classes"]) CHECK(c["pure"] == true);
  // DOT: one node line per class and one edge line per covering relation.
  const std::string dot = slurp(s.path("h.dot"));
  std::size_t nodes = 0, edges = 0;
  std::istringstream lines(dot);
  for (std::string line; std::getline(lines, line);) {
    if (line.find("->") != std::string::npos)
      ++edges;
    else if (line.find("[label") != std::string::npos)
      ++nodes;
  }
  CHECK(nodes == j["classes"].size());
  CHECK(edges == j["covers"].size());
  CHECK(run({"enumerate", "--genus", "2", "--jobs", "3"}).out == r.out);
}

TEST_CASE("forms") {
  Scratch s;
  const std::string q = s.file("q.json", json::parse(R"([["1", "1/2"], ["1/2", "1"]])"));
  const Result mv = run({"minvec", "-q", q});
  REQUIRE(mv.status == 0);
  CHECK(mv.value()["mu"] == "1");
  CHECK(mv.value()["vectors"].size() == 6);

  const Result pc = run({"perfect-cone", "-q", q});
  CHECK(pc.value()["perfect"] == true);
  CHECK(same_cone(cone_from_json(pc.value()["cone"]),
                  IdealCone::make({{1, -1, 1}, {1, 0, 0}, {0, 0, 1}}, 3)));

  const Result sc = run({"secondary-cone", "-q", s.file("d.json", {{1, 0}, {0, 0}})});
  REQUIRE(sc.status == 0);
  CHECK(same_cone(cone_from_json(sc.value()["cone"]), IdealCone::make({{1, 0, 0}}, 3)));

  const Result de = run({"delone", "-q", q});
  CHECK(de.value()["cells"].size() == 2);

  const Result gl = run({"gl-equiv", "-a", q, "-b", s.file("b.json", json::parse(R"([["1", "-1/2"], ["-1/2", "1"]])"))});
  CHECK(gl.value()["equivalent"] == true);
  CHECK(run({"gl-equiv", "-a", q, "-b", s.file("i.json", {{1, 0}, {0, 1}})}).value()["equivalent"] == false);

  const Result red = run({"reduce2", "-q", s.file("r.json", {{5, 3}, {3, 2}})});
  CHECK(red.value()["reduced"] == json::parse(R"([["1", "-1"], ["-1", "2"]])"));
}

TEST_CASE("jacobian and torelli") {
  Scratch s;
  const std::string theta = s.file("t.json", graph_to_json(named::theta()));
  const std::string ones = s.file("l.json", {1, 1, 1});
  const Result j = run({"jacobian", "-i", theta, "-l", ones});
  CHECK(j.value()["form"] == json::parse(R"([["2", "1"], ["1", "2"]])"));
  CHECK(j.value()["rank"] == 2);
  const Result t = run({"torelli", "-i", theta, "-l", ones});
  CHECK(t.value()["tag"] == "rank2:2,-1,2");
}

TEST_CASE("compat-check") {
  const Result v = run({"compat-check", "--genus", "2"});
  REQUIRE(v.status == 0);
  CHECK(v.value()["ok"] == true);
  CHECK(v.value()["cells"].size() == 7);
  const Result p = run({"compat-check", "--genus", "2", "--sigma", "P", "--jobs", "2"});
  CHECK(p.value()["ok"] == true);
  const Result scope = run({"compat-check", "--genus", "3", "--sigma", "P"});
  CHECK(scope.status == 1);
  CHECK(scope.value()["error"]["code"] == "out_of_scope");
}

TEST_CASE("patch and quotient") {
  Scratch s;
  const Result p = run({"patch", "--genus", "2", "--depth", "1", "-o", s.path("p.json")});
  REQUIRE(p.status == 0);
  CHECK(p.out.empty());
  const json pj = json::parse(slurp(s.path("p.json")));
  const std::string fan = s.file("fan.json", pj["fan"]), action = s.file("action.json", pj["action"]);
  const Result q = run({"quotient", "--fan", fan, "--action", action, "--check", "200", "--seed", "5"});
  REQUIRE(q.status == 0);
  const StackyFan qf = fan_from_json(q.value()["fan"]);
  CHECK(find_fan_isomorphism(qf, build_moduli_fan(2), false).has_value());
  CHECK(q.value()["bijection"]["ok"] == true);
  CHECK(run({"quotient", "--fan", s.path("p.json"), "--check", "200", "--seed", "5"}).out == q.out);
}

TEST_CASE("determinism and round trips") {
  Scratch s;
  const std::vector<std::vector<std::string>> commands = {
      {"enumerate", "--genus", "3"},
      {"delone", "-q", s.file("q.json", {{2, 1, 1}, {1, 2, 1}, {1, 1, 2}})},
      {"secondary-cone", "-q", s.path("q.json")},
      {"compat-check", "--genus", "2"},
      {"patch", "--genus", "2", "--depth", "1"},
  };
  for (const auto& c : commands) {
    const Result a = run(c), b = run(c);
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(json::parse(a.out).dump(2) + "\n" == a.out);
  }
  const json pj = run({"patch", "--genus", "2", "--depth", "1"}).value();
  CHECK(fan_to_json(fan_from_json(pj["fan"])) == pj["fan"]);
  CHECK(action_to_json(action_from_json(pj["action"])) == pj["action"]);
  const Marking m = standard_marking(named::dumbbell());
  CHECK(marking_to_json(marking_from_json(named::dumbbell(), marking_to_json(m))) == marking_to_json(m));
  const IdealCone c = IdealCone::make({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3, {0b011});
  CHECK(cone_from_json(cone_to_json(c)) == c);
}

TEST_CASE("errors") {
  Scratch s;
  const Result indef = run({"delone", "-q", s.file("q.json", {{1, 2}, {2, 1}})});
  CHECK(indef.status == 1);
  CHECK(indef.value()["error"]["code"] == "not_definite");
  CHECK(run({"minvec", "-q", s.file("n.json", {{1, 2}, {3, 1}})}).value()["error"]["code"] == "not_symmetric");
  CHECK(run({"minvec", "-q", s.file("f.json", {{1.5, 0}, {0, 1}})}).value()["error"]["code"] == "bad_json");
  CHECK(run({"minvec", "-q", s.file("x.json", {{"1/0", 0}, {0, 1}})}).value()["error"]["code"] == "bad_rational");
  CHECK(run({"minvec", "-q", s.path("missing.json")}).value()["error"]["code"] == "io_error");
  CHECK(run({"jacobian", "-i", s.file("g.json", graph_to_json(named::theta())), "-l", s.file("l.json", {1, 1})})
            .value()["error"]["code"] == "bad_lengths");
  CHECK(run({"enumerate", "--genus", "9"}).status == 1);
  CHECK(run({}).status == 2);
  CHECK(run({"frobnicate"}).status == 2);
  CHECK(run({"minvec"}).status == 2);
  CHECK(run({"compat-check", "--genus", "2", "--sigma", "Q"}).status == 2);
  CHECK(run({"--help"}).status == 0);
}
