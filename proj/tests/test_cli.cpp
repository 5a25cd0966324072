#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

using json = nlohmann::ordered_json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = carnot::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = "carnot_cli_test_" + name;
  std::ofstream(path) << content;
  return path;
}

const std::string data = CARNOT_TEST_DATA;

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("dims") {
    auto r = run({"dims", "-r", "4", "-s", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("total: 30") != std::string::npos);
    r = run({"--format", "json", "dims", "-r", "2", "-s", "4"});
    CHECK(json::parse(r.out)["dimensions"] == json::array({2, 1, 2, 3}));
    r = run({"dims", "-r", "2", "-s", "2"});
    CHECK(r.out.find("g2: 1") != std::string::npos);
    CHECK(run({"dims", "-r", "1", "-s", "2"}).code == 2);
  }

  TEST_CASE("casimirs") {
    auto r = run({"--format", "json", "casimirs", "-r", "2", "-s", "3"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["functions"][0]["polynomial"] == "x112");
    CHECK(j["functions"][1]["polynomial"] == "x212");
    CHECK(j["functions"][2]["polynomial"] == "2*x1*x212 - 2*x2*x112 + x12^2");
    r = run({"casimirs", "-r", "4", "-s", "3", "--verify"});
    CHECK(r.code == 0);
    CHECK(r.out.find("22 functions") != std::string::npos);
    CHECK(r.out.find("all verified") != std::string::npos);
    CHECK(run({"casimirs", "-r", "2", "-s", "5"}).code == 2);
  }

  TEST_CASE("json output is byte-identical across runs") {
    const std::vector<std::string> args{"--format", "json", "casimirs", "-r", "3", "-s", "3"};
    CHECK(run(args).out == run(args).out);
  }

  TEST_CASE("verify") {
    auto r = run({"verify", "-r", "4", "-s", "3", data + "/appendix_c1.txt"});
    CHECK(r.code == 0);
    CHECK(r.out == "line 1: true\n");
    const auto f = temp_file("x1.txt", "# comment\nx1\nx112\n");
    r = run({"verify", "-r", "2", "-s", "3", f});
    CHECK(r.code == 1);
    CHECK(r.out == "line 2: false (witness {x2, f} = -x12)\nline 3: true\n");
    const auto bad = temp_file("bad.txt", "x112\nx1 + * x2\n");
    r = run({"verify", "-r", "2", "-s", "3", bad});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);
  }

  TEST_CASE("orbit presets and points") {
    auto r = run({"orbit", "--example-5.1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("2*x3*x113*x223 - 2*x3*x213^2 - x13^2*x223 + 2*x13*x23*x213 - x23^2*x113") != std::string::npos);
    r = run({"orbit", "--example-5.1-degenerate"});
    CHECK(r.code == 0);
    CHECK(r.out.find("2*x3*x113*x212 - 2*x12*x23*x113 - x13^2*x212 + 2*x13*x23*x112") != std::string::npos);
    const auto zero = temp_file("zero.json", "{}");
    r = run({"--format", "json", "orbit", "-r", "3", "-s", "3", "--point", zero});
    CHECK(json::parse(r.out)["type"] == "point");
    CHECK(json::parse(r.out)["orbit_dim"] == 0);
    const auto generic = temp_file("generic.json", R"({"x112": "1", "x123": "2", "x223": "-1", "x313": "3", "x212": "5"})");
    r = run({"--format", "json", "orbit", "-r", "3", "-s", "3", "--point", generic});
    CHECK(json::parse(r.out)["type"] == "affine subspace");
    CHECK(json::parse(r.out)["orbit_dim"] == 6);
    CHECK(run({"orbit", "-r", "3", "-s", "3"}).code == 2);
    CHECK(run({"orbit", "-r", "4", "-s", "3", "--example-5.1"}).code == 2);
  }

  TEST_CASE("orbit on a stratum file") {
    const auto s = temp_file("stratum.json", R"({"set_zero": ["x312", "x313", "x323"],
      "witness_point": {"x112": "1", "x123": "1", "x213": "1"}})");
    const auto r = run({"--format", "json", "orbit", "-r", "3", "-s", "3", "--stratum", s});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["rank_b12"] == 2);
    CHECK(j["orbit_functions"].size() == 1);
  }

  TEST_CASE("flow") {
    auto r = run({"flow", "--preset", "cartan-circle"});
    CHECK(r.code == 0);
    CHECK(r.out.find("periodic, period ≈ 6.2832") != std::string::npos);
    r = run({"flow", "--preset", "zero-bracket", "-T", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("behavior: constant") != std::string::npos);
    r = run({"flow", "--preset", "cartan-circle", "--dt", "0.25", "--conservation-tol", "1e-14"});
    CHECK(r.code == 1);
    r = run({"flow", "--preset", "cartan-circle", "-T", "0.01", "--csv", "-"});
    CHECK(r.out.rfind("t,x1,x2,x12,x112,x212\n", 0) == 0);
    const auto metric = temp_file("metric.json", R"([["2", "0"], ["0", "1"]])");
    r = run({"--format", "json", "flow", "--preset", "cartan-circle", "--metric", metric});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["conservation"]["pass"] == true);
    CHECK(run({"flow", "--preset", "nothing"}).code == 2);
    CHECK(run({"flow", "--preset", "cartan-circle", "--dt", "0"}).code == 2);
  }

  TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--format", "yaml", "dims", "-r", "2", "-s", "2"}).code == 2);
    CHECK(run({"--help"}).code == 0);
  }
}
